#include <polarpart/report.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace polarpart;

namespace {

RunConfig plane(std::uint64_t q)
{
    RunConfig cfg;
    cfg.family = "plane";
    cfg.q = q;
    return cfg;
}

std::string dump_all(const Artifacts& a)
{
    std::ostringstream os;
    write_edge_list(os, *a.graph);
    write_partition(os, *a.partition);
    os << a.class_keys.dump() << a.report.dump();
    return os.str();
}

} // namespace

TEST(Report, PlaneFields)
{
    const Artifacts a = run_pipeline(plane(2));
    ASSERT_TRUE(a.ok);
    ASSERT_TRUE(a.graph && a.partition);
    EXPECT_EQ(a.graph_kind, "polarity");
    const auto& r = a.report;
    EXPECT_EQ(r["family"], "plane");
    EXPECT_EQ(r["params"]["mode"], "exhaustive");
    EXPECT_EQ(r["counts"]["n"], 16);
    EXPECT_EQ(r["counts"]["edges"], 28);
    EXPECT_EQ(r["counts"]["loops"], 8);
    EXPECT_EQ(r["verdicts"]["optimally_complete"], true);
    EXPECT_EQ(r["closed_form"]["pairs_match"], 28);
    EXPECT_EQ(r["bounds"]["r"], 8);
    EXPECT_EQ(r["bounds"]["upper_certified"], true);
    EXPECT_NEAR(r["bounds"]["eq6_ratio"].get<double>(), 1.0690449676, 1e-9);
    EXPECT_EQ(r["cycles"]["C4"], "pass");
    EXPECT_EQ(r["record"]["r"], 8);
    EXPECT_EQ(r["record"]["k"], 2);
    EXPECT_EQ(r["luw"]["incidences"], 64);
    EXPECT_EQ(a.class_keys["classes"].size(), 8u);
}

TEST(Report, Deterministic)
{
    EXPECT_EQ(dump_all(run_pipeline(plane(3))), dump_all(run_pipeline(plane(3))));
    RunConfig gq;
    gq.family = "gq";
    gq.e = 1;
    const Artifacts a = run_pipeline(gq);
    EXPECT_TRUE(a.ok);
    EXPECT_EQ(a.report["cycles"]["C6"], "pass");
    EXPECT_EQ(a.report["bounds"]["prop1"]["at_r_plus_1"], false);
}

TEST(Report, ConfigErrors)
{
    RunConfig gq;
    gq.family = "gq";
    gq.e = 0;
    EXPECT_THROW(run_pipeline(gq), ConfigError);
    gq.override_small_e = true;
    EXPECT_TRUE(run_pipeline(gq).ok);

    RunConfig big = plane(5);
    big.ceiling = 100;
    big.mode = ModeChoice::exhaustive;
    EXPECT_THROW(run_pipeline(big), ConfigError);

    RunConfig gen;
    gen.family = "generic";
    gen.spec = {{"field", {{"p", 2}, {"k", 2}}}, {"fs", {"l1*p1"}}};
    gen.mode = ModeChoice::sampled;
    EXPECT_THROW(run_pipeline(gen), ConfigError);

    RunConfig none;
    none.family = "nope";
    EXPECT_THROW(run_pipeline(none), ConfigError);
    RunConfig bare;
    bare.family = "plane";
    EXPECT_THROW(run_pipeline(bare), ConfigError);
}

TEST(Report, SampledModeAtSmallSize)
{
    RunConfig cfg = plane(3);
    cfg.mode = ModeChoice::sampled;
    cfg.samples.pair_samples = 500;
    cfg.samples.within_samples = 100;
    cfg.samples.degree_samples = 100;
    cfg.samples.symmetry_samples = 100;
    const Artifacts a = run_pipeline(cfg);
    EXPECT_TRUE(a.ok);
    EXPECT_FALSE(a.graph.has_value());
    EXPECT_EQ(a.report["params"]["mode"], "sampled");
    EXPECT_EQ(a.report["counts"]["edges"], 351);
    EXPECT_EQ(a.report["counts"]["exact"], false);
    EXPECT_EQ(a.report["record"]["exact"], false);
}

TEST(Report, TamperedInputFails)
{
    const Artifacts a = run_pipeline(plane(2));
    const Graph& g = *a.graph;
    const Graph h = g.without_edge(0, g.neighbors(0)[0]);
    bool ok = true;
    const auto rep = verify_files(h, *a.partition, "complete", ok);
    EXPECT_FALSE(ok);
    EXPECT_EQ(rep["ok"], false);
    ASSERT_FALSE(rep["witnesses"].empty());
    EXPECT_EQ(rep["witnesses"][0]["kind"], "missing_pair");

    bool good = false;
    verify_files(g, *a.partition, "optimal", good);
    EXPECT_TRUE(good);
    EXPECT_THROW(verify_files(g, *a.partition, "nice", good), ConfigError);
}

TEST(Report, GenericSpec)
{
    RunConfig cfg;
    cfg.family = "generic";
    cfg.spec = {{"field", {{"p", 2}, {"k", 2}}}, {"fs", {"l1*p1 + l1 + p1"}}};
    const Artifacts a = run_pipeline(cfg);
    EXPECT_TRUE(a.ok) << a.report.dump(2);
    EXPECT_EQ(a.graph_kind, "polarity");
    EXPECT_EQ(a.partition->class_count(), 8u);

    // Odd m: no polarity, bipartite odd partition.
    cfg.spec = {{"field", {{"p", 3}, {"k", 1}}}, {"fs", {"l1*p1", "l1*p1^2"}}};
    const Artifacts b = run_pipeline(cfg);
    EXPECT_TRUE(b.ok) << b.report.dump(2);
    EXPECT_EQ(b.graph_kind, "bipartite");
    EXPECT_EQ(b.graph->vertex_count(), 54u);
    EXPECT_EQ(b.partition->class_count(), 9u);
}
