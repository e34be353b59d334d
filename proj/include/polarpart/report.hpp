#pragma once

// End-to-end runs: resolve a family, build its graph, partition it, verify
// the partition and assemble a JSON report. Everything random goes through
// the one seed in RunConfig, and reports carry no timing, so identical
// configs give identical bytes.

#include <polarpart/adg.hpp>
#include <polarpart/construct.hpp>
#include <polarpart/cycles.hpp>
#include <polarpart/families.hpp>
#include <polarpart/graph.hpp>
#include <polarpart/oracle.hpp>
#include <polarpart/partitions.hpp>
#include <polarpart/verify.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarpart {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ModeChoice : std::uint8_t { automatic, exhaustive, sampled };

struct RunConfig {
    std::string family; // plane, gq, gh, gh-original, generic
    std::optional<std::uint64_t> q;
    std::optional<std::uint32_t> e;
    nlohmann::json spec; // generic only
    ModeChoice mode = ModeChoice::automatic;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::uint64_t ceiling = kDefaultCeiling;
    bool override_small_e = false;
    SampleConfig samples;
};

struct Artifacts {
    std::optional<Graph> graph; // polarity graph when there is one, else the bipartite graph
    std::string graph_kind;
    std::optional<Partition> partition;
    nlohmann::json class_keys;
    nlohmann::json report;
    bool ok = false;
};

namespace detail {

    struct Instance {
        Family fam;
        bool has_polarity = true;
    };

    inline Instance resolve(const RunConfig& cfg)
    {
        auto need_q = [&] {
            if (!cfg.q)
                throw ConfigError(cfg.family + " needs --q");
            return *cfg.q;
        };
        auto need_e = [&] {
            if (!cfg.e)
                throw ConfigError(cfg.family + " needs --e");
            return *cfg.e;
        };
        try {
            if (cfg.family == "plane")
                return {plane_family(need_q()), true};
            if (cfg.family == "gq")
                return {gq_family(need_e(), cfg.override_small_e), true};
            if (cfg.family == "gh")
                return {gh_family(need_e(), cfg.override_small_e), true};
            if (cfg.family == "gh-original") {
                const auto q = need_q();
                AdgSpec spec = gh_original_spec(q);
                return {{"gh-original", q, 0, std::move(spec), PolaritySpec{}}, false};
            }
            if (cfg.family == "generic") {
                if (cfg.spec.is_null())
                    throw ConfigError("generic needs --spec");
                AdgSpec spec = AdgSpec::from_json(cfg.spec);
                const bool even = spec.dim() % 2 == 0;
                if (even && spec.field().degree() % 2 != 0)
                    throw ConfigError("even m needs a field of square order");
                bool pol = false;
                if (even)
                    pol = is_point_line_symmetric(spec, cfg.seed).symmetric;
                PolaritySpec p = pol ? PolaritySpec::uniform(spec.dim(), spec.field().degree() / 2) : PolaritySpec{};
                const std::uint64_t q = spec.q();
                return {{"generic", q, 0, std::move(spec), std::move(p)}, pol};
            }
        }
        catch (const ConfigError&) {
            throw;
        }
        catch (const nlohmann::json::exception& ex) {
            throw ConfigError(std::string("bad spec: ") + ex.what());
        }
        catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        }
        throw ConfigError("unknown family '" + cfg.family + "'");
    }

    inline nlohmann::json field_json(const gf::Field& f)
    {
        return {{"p", f.characteristic()}, {"k", f.degree()}, {"order", f.order()}, {"modulus", f.modulus()}};
    }

    inline nlohmann::json degree_multiset(const Graph& g)
    {
        std::map<std::uint32_t, std::uint64_t> d;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            ++d[g.degree(v)];
        nlohmann::json j = nlohmann::json::object();
        for (auto [k, c] : d)
            j[std::to_string(k)] = c;
        return j;
    }

    inline nlohmann::json witnesses_json(const std::vector<Witness>& w)
    {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : w)
            a.push_back(to_json(x));
        return a;
    }

    inline nlohmann::json bounds_json(std::uint64_t n, std::uint64_t edges, std::uint64_t delta, std::uint64_t r)
    {
        const auto up = certify_upper(n, edges, delta, r);
        return {{"r", r},
                {"binom_ub", edge_bound_parts(edges)},
                {"binom_holds", binom2(r) <= edges},
                {"prop1",
                 {{"at_r", proposition_bound(n, delta, r)},
                  {"at_r_plus_1", proposition_bound(n, delta, r + 1)},
                  {"n", n},
                  {"delta", delta}}},
                {"upper_certified", up.certified},
                {"upper_argument", up.argument},
                {"eq6_ratio", edges ? ratio_eq6(r, edges) : 0.0},
                {"eq6_at_least_half_sqrt2", edges ? ratio_at_least_half_sqrt2(r, edges) : false},
                {"eq6_at_least_one", r * r >= 2 * edges}};
    }

    inline std::optional<Cycle> exact_cycle(const Graph& g, std::uint32_t len)
    {
        return len == 4 ? contains_c4(g) : find_cycle_of_length(g, len);
    }

    /// Class-key sidecar for mixed-radix class ids with the given digit
    /// ranges; `subfield_digit[i]` turns digit i from a subfield index into an
    /// element code.
    inline nlohmann::json radix_keys(const std::string& family, std::uint32_t r, const std::vector<std::uint32_t>& radix,
                                     const gf::Subfield* sub, const std::vector<bool>& subfield_digit)
    {
        nlohmann::json classes = nlohmann::json::array();
        for (std::uint32_t id = 0; id < r; ++id) {
            std::vector<std::uint32_t> digits(radix.size());
            std::uint32_t rest = id;
            for (std::size_t i = radix.size(); i-- > 0;) {
                digits[i] = rest % radix[i];
                rest /= radix[i];
                if (sub && subfield_digit[i])
                    digits[i] = sub->element(digits[i]).code;
            }
            classes.push_back({{"class", id}, {"key", digits}});
        }
        return {{"family", family}, {"classes", classes}};
    }

    /// Compares the closed-form contact of every class pair, and every
    /// class's loop vertex, against the materialized graph.
    template <class Part>
    nlohmann::json closed_form_check(const AdgSpec& spec, const Graph& g, const Part& part,
                                     std::vector<Witness>& wit, bool& ok)
    {
        const std::uint32_t r = part.class_count();
        constexpr Vertex none = std::numeric_limits<Vertex>::max();
        std::vector<std::pair<Vertex, Vertex>> edge_of(std::size_t{r} * r, {none, none});
        g.for_each_edge([&](Vertex u, Vertex v) {
            const auto a = part.class_of(u), b = part.class_of(v);
            if (a != b) {
                edge_of[std::size_t{a} * r + b] = {u, v};
                edge_of[std::size_t{b} * r + a] = {v, u};
            }
        });
        std::vector<Vertex> loop_of(r, none);
        for (Vertex v : g.loop_vertices())
            loop_of[part.class_of(v)] = v;

        std::vector<ClassKey> keys;
        for (std::uint32_t c = 0; c < r; ++c)
            keys.push_back(part.key(c));
        std::uint64_t pairs = 0, match = 0, loops = 0;
        for (std::uint32_t a = 0; a < r; ++a) {
            const Contact lc = part.unique_edge(keys[a], keys[a]);
            if (lc.is_loop() && encode_elems(spec, lc.first) == loop_of[a])
                ++loops;
            else if (wit.size() < 16)
                wit.push_back({"loop_formula", {{"class", a}, {"formula", encode_elems(spec, lc.first)}}});
            for (std::uint32_t b = a + 1; b < r; ++b) {
                ++pairs;
                const Contact c = part.unique_edge(keys[a], keys[b]);
                const std::pair<Vertex, Vertex> f{static_cast<Vertex>(encode_elems(spec, c.first)),
                                                  static_cast<Vertex>(encode_elems(spec, c.second))};
                if (f == edge_of[std::size_t{a} * r + b])
                    ++match;
                else if (wit.size() < 16)
                    wit.push_back({"edge_formula", {{"classes", {a, b}}, {"formula", {f.first, f.second}}}});
            }
        }
        ok = match == pairs && loops == r;
        return {{"pairs_checked", pairs}, {"pairs_match", match}, {"loops_checked", r}, {"loops_match", loops}};
    }

    inline std::vector<std::uint32_t> cycle_lengths(const std::string& family)
    {
        if (family == "plane" || family == "gq" || family == "gh")
            return forbidden_lengths(family);
        return {4};
    }

    inline nlohmann::json cycles_json(const std::vector<CycleCheck>& checks)
    {
        nlohmann::json j{{"C4", "not_checked"}, {"C6", "not_checked"}, {"C8", "not_checked"}, {"C10", "not_checked"}};
        for (const auto& c : checks)
            j["C" + std::to_string(c.length)] = c.status();
        return j;
    }

    struct Built {
        nlohmann::json report;
        std::optional<Graph> graph;
        std::optional<Partition> partition;
        nlohmann::json keys;
        bool ok = false;
    };

    template <class Part>
    Built family_exhaustive(const Family& fam, const Part& part, nlohmann::json keys, const RunConfig& cfg)
    {
        Built out;
        nlohmann::json& rep = out.report;
        std::vector<Witness> wit;
        const AdgSpec& spec = fam.spec;

        const auto pc = check_polarity(spec, fam.polarity, CheckMode::exhaustive, cfg.seed);
        rep["polarity_check"] = pc.to_json();
        if (!pc.ok) {
            wit.push_back({"polarity", {{"clause", PolarityCheck::clause_name(pc.failed)}, {"witness", pc.witness}}});
            rep["witnesses"] = witnesses_json(wit);
            rep["seeds"] = nlohmann::json::array();
            return out;
        }
        const PolarityGraph pg(spec, fam.polarity);
        Graph g = build_polarity(pg, cfg.ceiling);
        const Graph bip = build_bipartite(spec, 2 * cfg.ceiling);
        const auto absolute = pg.absolute_points();
        Partition p = part.partition();

        rep["counts"] = {{"n", g.vertex_count()},
                         {"edges", g.edge_count()},
                         {"loops", g.loop_count()},
                         {"absolute", absolute.size()},
                         {"degrees", degree_multiset(g)},
                         {"exact", true}};
        const Verdict v = verdict(g, p);
        wit.insert(wit.end(), v.witnesses.begin(), v.witnesses.end());
        rep["verdicts"] = v.to_json();
        rep["verdicts"]["basis"] = "exhaustive";

        bool cf_ok = false;
        rep["closed_form"] = closed_form_check(spec, g, part, wit, cf_ok);
        rep["closed_form"]["ok"] = cf_ok;

        const LuwReport luw = luw_report(bip, g, absolute, fam.name == "gh" ? 5 : 4);
        rep["luw"] = luw.to_json();
        if (!luw.ok())
            wit.push_back({"luw", rep["luw"]});

        rep["bounds"] = bounds_json(g.vertex_count(), g.edge_count(), g.max_degree(), p.class_count());
        const bool upper = rep["bounds"]["upper_certified"].get<bool>();
        rep["bounds"]["chi_a_equals_psi_equals_r"] = v.achromatic && upper;

        const WitnessRecord rec = witness_record(fam.name, fam.q, g, p, v);
        rep["record"] = rec.to_json();
        rep["cycles"] = cycles_json(rec.cycles);
        for (const auto& c : rec.cycles)
            if (c.witness)
                wit.push_back({"cycle", {{"length", c.length}, {"cycle", *c.witness}}});

        rep["witnesses"] = witnesses_json(wit);
        rep["seeds"] = nlohmann::json::array();
        out.ok = v.optimally_complete && cf_ok && luw.ok() && rec.ok();
        out.graph = std::move(g);
        out.partition = std::move(p);
        out.keys = std::move(keys);
        return out;
    }

    template <class Part>
    Built family_sampled(const Family& fam, const Part& part, const RunConfig& cfg)
    {
        Built out;
        nlohmann::json& rep = out.report;
        std::vector<Witness> wit;
        const AdgSpec& spec = fam.spec;

        const auto pc = check_polarity(spec, fam.polarity, CheckMode::sampled, cfg.seed);
        rep["polarity_check"] = pc.to_json();
        rep["seeds"] = {cfg.seed};
        if (!pc.ok) {
            wit.push_back({"polarity", {{"clause", PolarityCheck::clause_name(pc.failed)}, {"witness", pc.witness}}});
            rep["witnesses"] = witnesses_json(wit);
            return out;
        }
        const PolarityGraph pg(spec, fam.polarity);
        SampleConfig sc = cfg.samples;
        sc.seed = cfg.seed;
        sc.workers = cfg.workers;
        sc.cycle_kmax = cycle_lengths(fam.name).back() / 2;
        const SampledReport s = verify_sampled(pg, part, sc);
        wit.insert(wit.end(), s.witnesses.begin(), s.witnesses.end());

        const std::uint64_t n = s.vertices, q = spec.q();
        // Every point has q candidate neighbors, one fewer when absolute.
        const std::uint64_t edges = (n * q - s.absolute) / 2;
        rep["counts"] = {{"n", n}, {"edges", edges}, {"loops", s.absolute}, {"absolute", s.absolute},
                         {"exact", false}, {"edges_basis", "degree formula, spot-checked"}};
        const bool pairs_ok = s.pairs_single_edge == s.pairs_checked;
        const bool within_ok = s.within_clean == s.within_checked;
        rep["verdicts"] = {{"classes", s.classes},
                           {"complete", pairs_ok},
                           {"achromatic", pairs_ok && within_ok},
                           {"optimally_complete", pairs_ok && within_ok && edges == binom2(s.classes)},
                           {"basis", "sampled"}};
        rep["sampling"] = {{"seed", s.seed},
                           {"absolute_full_scan", s.absolute},
                           {"pairs_checked", s.pairs_checked},
                           {"pairs_single_edge", s.pairs_single_edge},
                           {"pairs_match_formula", s.pairs_match_formula},
                           {"within_checked", s.within_checked},
                           {"within_clean", s.within_clean},
                           {"degree_checked", s.degree_checked},
                           {"degree_ok", s.degree_ok},
                           {"degree_non_absolute", s.degree_non_absolute},
                           {"symmetry_checked", s.symmetry_checked},
                           {"symmetry_ok", s.symmetry_ok},
                           {"cycle_starts", s.cycles.starts},
                           {"cycle_explored", s.cycles.explored},
                           {"cycle_kmax", s.cycle_kmax}};
        rep["closed_form"] = {{"pairs_checked", s.pairs_checked}, {"pairs_match", s.pairs_match_formula},
                              {"ok", s.pairs_match_formula == s.pairs_checked}};
        rep["bounds"] = bounds_json(n, edges, q, s.classes);
        rep["bounds"]["chi_a_equals_psi_equals_r"] = false;
        rep["bounds"]["lower_bound_basis"] = "sampled";

        WitnessRecord rec;
        rec.family = fam.name;
        rec.q = fam.q;
        rec.r = s.classes;
        rec.k = s.class_size;
        rec.partition_verified = pairs_ok;
        rec.partition_sampled = true;
        for (auto len : cycle_lengths(fam.name)) {
            CycleCheck c;
            c.length = len;
            c.sampled = true;
            c.free = !s.cycles.witness || s.cycles.witness->size() != len;
            if (s.cycles.witness && s.cycles.witness->size() == len)
                c.witness = s.cycles.witness;
            rec.cycles.push_back(std::move(c));
        }
        rep["record"] = rec.to_json();
        rep["cycles"] = cycles_json(rec.cycles);
        rep["witnesses"] = witnesses_json(wit);
        out.ok = s.ok() && rec.ok() && rep["verdicts"]["optimally_complete"].get<bool>();
        return out;
    }

    /// phi maps the original hexagon coordinates onto GH_q.
    inline nlohmann::json phi_check(const AdgSpec& orig, std::vector<Witness>& wit, bool& ok)
    {
        const gf::Field& f = orig.field();
        const AdgSpec gh = gh_spec(f);
        const std::uint64_t side = orig.side_size();
        std::vector<char> hit_p(side, 0), hit_l(side, 0);
        std::uint64_t edges = 0, mapped = 0;
        bool bij = true;
        for (VertexId v = 0; v < side; ++v) {
            const auto pe = orig.to_elems(orig.decode(v));
            const auto pimg = gh_phi(f, {Side::point, pe});
            const VertexId pid = gh.encode(gh.to_coords(pimg.coords));
            bij = bij && !hit_p[pid];
            hit_p[pid] = 1;
            const auto limg = gh_phi(f, {Side::line, pe});
            const VertexId lid = gh.encode(gh.to_coords(limg.coords));
            bij = bij && !hit_l[lid];
            hit_l[lid] = 1;

            const Coords pc = gh.to_coords(pimg.coords);
            for (const auto& l : orig.neighbors_of_point(pe)) {
                ++edges;
                const auto li = gh_phi(f, {Side::line, l});
                if (gh.incident(pc, gh.to_coords(li.coords)))
                    ++mapped;
                else if (wit.size() < 16)
                    wit.push_back({"phi_edge", {{"point", v}, {"line", orig.encode(orig.to_coords(l))}}});
            }
        }
        ok = bij && mapped == edges;
        return {{"bijective", bij}, {"edges", edges}, {"edges_mapped", mapped}, {"ok", ok}};
    }

    inline Built general_run(const Family& fam, bool has_polarity, const RunConfig& cfg)
    {
        Built out;
        nlohmann::json& rep = out.report;
        std::vector<Witness> wit;
        const AdgSpec& spec = fam.spec;
        const std::uint32_t m = spec.dim();
        bool ok = true;

        const Graph bip = build_bipartite(spec, cfg.ceiling);
        if (fam.name == "gh-original") {
            bool phi_ok = false;
            rep["phi"] = phi_check(spec, wit, phi_ok);
            ok = ok && phi_ok;
        }

        std::optional<gf::QuadBasis> basis;
        if (m % 2 == 0)
            basis = gf::QuadBasis::find(spec.field());

        // Bipartite partition (odd m, or even m with the mu split).
        Partition bp = m % 2 == 1 ? general_odd_partition(spec) : general_even_partition(spec, *basis);
        const Verdict bv = verdict(bip, bp);
        wit.insert(wit.end(), bv.witnesses.begin(), bv.witnesses.end());
        rep["bipartite"] = {{"n", bip.vertex_count()},
                            {"edges", bip.edge_count()},
                            {"verdicts", bv.to_json()},
                            {"bounds", bounds_json(bip.vertex_count(), bip.edge_count(), bip.max_degree(),
                                                   bp.class_count())}};
        ok = ok && bv.complete && rep["bipartite"]["bounds"]["eq6_at_least_half_sqrt2"].get<bool>();
        const std::uint32_t q = spec.q();
        std::vector<std::uint32_t> radix;
        std::vector<bool> sub_digit;

        if (!has_polarity) {
            rep["counts"] = {{"n", bip.vertex_count()}, {"edges", bip.edge_count()}, {"loops", 0},
                             {"absolute", nullptr}, {"degrees", degree_multiset(bip)}, {"exact", true}};
            rep["verdicts"] = rep["bipartite"]["verdicts"];
            rep["bounds"] = rep["bipartite"]["bounds"];
            std::vector<CycleCheck> cyc;
            CycleCheck c4{4, !contains_c4(bip), false, std::nullopt};
            cyc.push_back(c4);
            rep["cycles"] = cycles_json(cyc);
            if (m % 2 == 1) {
                radix.assign((m + 1) / 2, q);
                sub_digit.assign(radix.size(), false);
                out.keys = radix_keys(fam.name, bp.class_count(), radix, nullptr, sub_digit);
            }
            else {
                radix.assign(m / 2, q);
                radix.push_back(basis->subfield().order());
                sub_digit.assign(radix.size(), false);
                sub_digit.back() = true;
                out.keys = radix_keys(fam.name, bp.class_count(), radix, &basis->subfield(), sub_digit);
            }
            out.graph = bip;
            out.partition = std::move(bp);
        }
        else {
            const auto pc = check_polarity(spec, fam.polarity, CheckMode::exhaustive, cfg.seed);
            rep["polarity_check"] = pc.to_json();
            if (!pc.ok)
                throw SpecError("conjugation map is not a polarity: " + pc.witness);
            const PolarityGraph pg(spec, fam.polarity);
            Graph g = build_polarity(pg, cfg.ceiling);
            const auto absolute = pg.absolute_points();
            Partition p = general_polarity_partition(spec, *basis, cfg.seed);
            const Verdict v = verdict(g, p);
            wit.insert(wit.end(), v.witnesses.begin(), v.witnesses.end());
            rep["counts"] = {{"n", g.vertex_count()},      {"edges", g.edge_count()},
                             {"loops", g.loop_count()},    {"absolute", absolute.size()},
                             {"degrees", degree_multiset(g)}, {"exact", true}};
            rep["verdicts"] = v.to_json();
            rep["bounds"] = bounds_json(g.vertex_count(), g.edge_count(), g.max_degree(), p.class_count());
            const LuwReport luw = luw_report(bip, g, absolute, 3);
            rep["luw"] = luw.to_json();
            std::vector<CycleCheck> cyc;
            CycleCheck c4{4, !contains_c4(g), false, std::nullopt};
            cyc.push_back(c4);
            rep["cycles"] = cycles_json(cyc);
            ok = ok && v.optimally_complete && luw.ok() &&
                 rep["bounds"]["eq6_at_least_half_sqrt2"].get<bool>();
            radix.assign(m, basis->subfield().order());
            radix[0] = q;
            sub_digit.assign(m, true);
            sub_digit[0] = false;
            out.keys = radix_keys(fam.name, p.class_count(), radix, &basis->subfield(), sub_digit);
            out.graph = std::move(g);
            out.partition = std::move(p);
        }
        rep["witnesses"] = witnesses_json(wit);
        rep["seeds"] = nlohmann::json::array();
        out.ok = ok;
        return out;
    }

} // namespace detail

/// Runs the full pipeline for cfg. Throws ConfigError for invalid or
/// unsupported configurations.
inline Artifacts run_pipeline(const RunConfig& cfg)
{
    const detail::Instance inst = detail::resolve(cfg);
    const Family& fam = inst.fam;
    const AdgSpec& spec = fam.spec;
    const std::uint64_t main_n = inst.has_polarity ? spec.side_size() : 2 * spec.side_size();

    bool sampled = false;
    switch (cfg.mode) {
    case ModeChoice::exhaustive:
        if (main_n > cfg.ceiling)
            throw ConfigError("graph has " + std::to_string(main_n) + " vertices, above the ceiling " +
                              std::to_string(cfg.ceiling) + "; use --mode sampled");
        break;
    case ModeChoice::sampled:
        sampled = true;
        break;
    case ModeChoice::automatic:
        sampled = main_n > cfg.ceiling;
        break;
    }
    const bool closed_form = fam.name == "plane" || fam.name == "gq" || fam.name == "gh";
    if (sampled && !closed_form)
        throw ConfigError("sampled mode is only available for plane, gq and gh");

    nlohmann::json params{{"q", fam.q}, {"m", spec.dim()}, {"field", detail::field_json(spec.field())},
                          {"mode", sampled ? "sampled" : "exhaustive"}, {"ceiling", cfg.ceiling}};
    if (fam.name == "gq" || fam.name == "gh")
        params["e"] = fam.e;
    if (fam.name == "generic")
        params["spec"] = spec.to_json();
    if (inst.has_polarity)
        params["polarity"] = fam.polarity.to_json();

    detail::Built b;
    if (fam.name == "plane") {
        const PlanePartition part(fam, gf::QuadBasis::find(spec.field()));
        params["beta"] = part.basis().beta().code;
        b = sampled ? detail::family_sampled(fam, part, cfg) : detail::family_exhaustive(fam, part, key_sidecar(part.keys()), cfg);
    }
    else if (fam.name == "gq") {
        const GqPartition part(fam);
        b = sampled ? detail::family_sampled(fam, part, cfg) : detail::family_exhaustive(fam, part, key_sidecar(part.keys()), cfg);
    }
    else if (fam.name == "gh") {
        const GhPartition part(fam);
        if (sampled) {
            b = detail::family_sampled(fam, part, cfg);
        }
        else {
            std::vector<ClassKey> keys;
            for (std::uint32_t c = 0; c < part.class_count(); ++c)
                keys.push_back(part.key(c));
            b = detail::family_exhaustive(fam, part, key_sidecar(keys), cfg);
        }
    }
    else {
        try {
            b = detail::general_run(fam, inst.has_polarity, cfg);
        }
        catch (const GraphError& ex) {
            throw ConfigError(ex.what());
        }
    }

    Artifacts out;
    b.report["family"] = fam.name;
    b.report["params"] = std::move(params);
    b.report["graph"] = inst.has_polarity ? "polarity" : "bipartite";
    b.report["ok"] = b.ok;
    out.graph_kind = inst.has_polarity ? "polarity" : "bipartite";
    out.graph = std::move(b.graph);
    out.partition = std::move(b.partition);
    out.class_keys = std::move(b.keys);
    out.report = std::move(b.report);
    out.ok = b.ok;
    return out;
}

/// Report for a user-supplied graph and partition. `expect` names the
/// verdict that decides ok: complete, achromatic or optimal.
inline nlohmann::json verify_files(const Graph& g, const Partition& p, const std::string& expect, bool& ok)
{
    const Verdict v = verdict(g, p);
    nlohmann::json rep;
    rep["family"] = "input";
    rep["params"] = {{"expect", expect}};
    rep["counts"] = {{"n", g.vertex_count()}, {"edges", g.edge_count()}, {"loops", g.loop_count()},
                     {"absolute", g.loop_count()}, {"exact", true}};
    rep["verdicts"] = v.to_json();
    rep["bounds"] = detail::bounds_json(g.vertex_count(), g.edge_count(), g.max_degree(), p.class_count());
    rep["cycles"] = detail::cycles_json({});
    rep["witnesses"] = detail::witnesses_json(v.witnesses);
    rep["seeds"] = nlohmann::json::array();
    if (expect == "complete")
        ok = v.complete;
    else if (expect == "achromatic")
        ok = v.achromatic;
    else if (expect == "optimal")
        ok = v.optimally_complete;
    else
        throw ConfigError("unknown expectation '" + expect + "'");
    rep["ok"] = ok;
    return rep;
}

} // namespace polarpart
