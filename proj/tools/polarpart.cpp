// polarpart: build algebraic polarity graphs, partition them, verify.
//
//   polarpart build     <family> [--q Q | --e E | --spec F] [--out edges.txt]
//   polarpart partition <family> ... [--out part.txt]   (writes part.txt.keys.json too)
//   polarpart verify    <family> ... [--out report.json]
//   polarpart verify    --edges G --partition P [--expect complete|achromatic|optimal]
//   polarpart oracle    --edges G
//   polarpart report    <family> ... [--out DIR]
//
// Exit codes: 0 all verdicts pass, 1 a verification failed, 2 bad config.

#include <polarpart/graph.hpp>
#include <polarpart/oracle.hpp>
#include <polarpart/parallel.hpp>
#include <polarpart/report.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace polarpart;

namespace {

struct Options {
    std::optional<std::uint64_t> q;
    std::optional<std::uint32_t> e;
    std::string spec_path;
    std::string mode = "auto";
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::uint64_t ceiling = kDefaultCeiling;
    bool override_small_e = false;
    std::string out;
    std::string edges;
    std::string partition;
    std::string expect = "complete";
};

void add_run_flags(CLI::App* app, Options& o)
{
    app->add_option("--mode", o.mode, "exhaustive, sampled or auto")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    app->add_option("--seed", o.seed, "seed for every sampled check");
    app->add_option("--workers", o.workers, "worker threads (0: all cores)");
    app->add_option("--ceiling", o.ceiling, "largest vertex count to materialize");
    app->add_option("--out", o.out, "output path");
}

void add_families(CLI::App* app, Options& o)
{
    auto* plane = app->add_subcommand("plane", "biaffine plane over GF(q^2) with its unitary polarity");
    plane->add_option("--q", o.q, "prime power q")->required();
    auto* gq = app->add_subcommand("gq", "generalized quadrangle, q = 2^(2e+1)");
    gq->add_option("--e", o.e, "exponent e")->required();
    gq->add_flag("--override-small-e", o.override_small_e, "allow e = 0");
    auto* gh = app->add_subcommand("gh", "generalized hexagon, q = 3^(2e+1)");
    gh->add_option("--e", o.e, "exponent e")->required();
    gh->add_flag("--override-small-e", o.override_small_e, "allow e = 0");
    auto* gho = app->add_subcommand("gh-original", "hexagon in original coordinates, q = 3^k");
    gho->add_option("--q", o.q, "power of 3")->required();
    auto* gen = app->add_subcommand("generic", "system read from a JSON spec");
    gen->add_option("--spec", o.spec_path, "spec file")->required()->check(CLI::ExistingFile);
    for (auto* s : {plane, gq, gh, gho, gen})
        add_run_flags(s, o);
}

RunConfig make_config(const std::string& family, const Options& o)
{
    RunConfig cfg;
    cfg.family = family;
    cfg.q = o.q;
    cfg.e = o.e;
    cfg.seed = o.seed;
    cfg.workers = o.workers == 0 ? default_workers() : o.workers;
    cfg.ceiling = o.ceiling;
    cfg.override_small_e = o.override_small_e;
    cfg.mode = o.mode == "exhaustive" ? ModeChoice::exhaustive
             : o.mode == "sampled"    ? ModeChoice::sampled
                                      : ModeChoice::automatic;
    if (family == "generic") {
        std::ifstream in(o.spec_path);
        try {
            cfg.spec = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::exception& ex) {
            throw ConfigError(std::string("cannot parse spec: ") + ex.what());
        }
    }
    return cfg;
}

std::string family_of(CLI::App* cmd)
{
    for (auto* s : cmd->get_subcommands())
        return s->get_name();
    return "";
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write " + path);
    f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string edges_text(const Graph& g)
{
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

std::string partition_text(const Partition& p)
{
    std::ostringstream os;
    write_partition(os, p);
    return os.str();
}

Graph load_graph(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot read " + path);
    try {
        return read_edge_list(f);
    }
    catch (const GraphError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
}

Partition load_partition(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot read " + path);
    try {
        return read_partition(f);
    }
    catch (const GraphError& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
}

void summarize(const nlohmann::json& rep)
{
    std::cerr << rep.value("family", "?") << ": " << (rep.value("ok", false) ? "ok" : "FAILED");
    if (rep.contains("verdicts")) {
        const auto& v = rep["verdicts"];
        std::cerr << " (complete=" << v.value("complete", false) << " achromatic=" << v.value("achromatic", false)
                  << " optimal=" << v.value("optimally_complete", false) << ")";
    }
    std::cerr << "\n";
    if (!rep.value("ok", false) && rep.contains("witnesses"))
        for (const auto& w : rep["witnesses"])
            std::cerr << "  " << w.at("kind").get<std::string>() << " " << w.at("detail").dump() << "\n";
}

int run(int argc, char** argv)
{
    CLI::App app{"Complete partitions of algebraic polarity graphs"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build", "write the edge list");
    add_families(build, o);
    build->require_subcommand(1);
    auto* part = app.add_subcommand("partition", "write the partition and class-key sidecar");
    add_families(part, o);
    part->require_subcommand(1);
    auto* verify = app.add_subcommand("verify", "write the JSON report");
    add_families(verify, o);
    verify->require_subcommand(0, 1);
    verify->add_option("--edges", o.edges, "edge list to check instead of a family");
    verify->add_option("--partition", o.partition, "partition of --edges");
    verify->add_option("--expect", o.expect, "verdict that must hold")
        ->check(CLI::IsMember({"complete", "achromatic", "optimal"}));
    verify->add_option("--out", o.out, "report path");
    auto* oracle = app.add_subcommand("oracle", "exact psi, chi_a and chi of a tiny graph");
    oracle->add_option("--edges", o.edges, "edge list")->required();
    auto* report = app.add_subcommand("report", "build, partition and verify into --out");
    add_families(report, o);
    report->require_subcommand(1);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (oracle->parsed()) {
            const Graph g = load_graph(o.edges);
            if (g.vertex_count() > kOracleMaxVertices)
                throw ConfigError("oracle handles at most " + std::to_string(kOracleMaxVertices) + " vertices");
            const nlohmann::json j{{"n", g.vertex_count()},
                                   {"edges", g.edge_count()},
                                   {"psi", brute_force_psi(g)},
                                   {"chi_a", brute_force_chi_a(g)},
                                   {"chi", brute_force_chi(g)},
                                   {"edge_bound", edge_bound_parts(g.edge_count())}};
            std::cout << dump(j);
            return 0;
        }

        if (verify->parsed() && verify->get_subcommands().empty()) {
            if (o.edges.empty() || o.partition.empty())
                throw ConfigError("verify needs a family or both --edges and --partition");
            const Graph g = load_graph(o.edges);
            const Partition p = load_partition(o.partition);
            if (p.vertex_count() != g.vertex_count())
                throw ConfigError("partition covers " + std::to_string(p.vertex_count()) + " vertices, graph has " +
                                  std::to_string(g.vertex_count()));
            bool ok = false;
            const auto rep = verify_files(g, p, o.expect, ok);
            write_text(o.out, dump(rep));
            summarize(rep);
            return ok ? 0 : 1;
        }

        CLI::App* cmd = build->parsed() ? build : part->parsed() ? part : verify->parsed() ? verify : report;
        const RunConfig cfg = make_config(family_of(cmd), o);
        if ((cmd == build || cmd == part) && cfg.mode == ModeChoice::sampled)
            throw ConfigError("build and partition need an explicit graph; sampled mode only verifies");
        Artifacts art = run_pipeline(cfg);

        if (cmd == build || cmd == part) {
            if (!art.graph)
                throw ConfigError("graph was not materialized: " + art.report.value("witnesses", nlohmann::json()).dump());
            if (cmd == build) {
                write_text(o.out, edges_text(*art.graph));
            }
            else {
                write_text(o.out, partition_text(*art.partition));
                write_text(o.out.empty() ? "" : o.out + ".keys.json", dump(art.class_keys));
            }
            return 0;
        }
        if (cmd == verify) {
            write_text(o.out, dump(art.report));
            summarize(art.report);
            return art.ok ? 0 : 1;
        }

        const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
        fs::create_directories(dir);
        if (art.graph)
            write_text((dir / "edges.txt").string(), edges_text(*art.graph));
        if (art.partition) {
            write_text((dir / "partition.txt").string(), partition_text(*art.partition));
            write_text((dir / "classes.json").string(), dump(art.class_keys));
        }
        write_text((dir / "report.json").string(), dump(art.report));
        summarize(art.report);
        return art.ok ? 0 : 1;
    }
    catch (const ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
