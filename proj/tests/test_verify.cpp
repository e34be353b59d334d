#include <polarpart/construct.hpp>
#include <polarpart/families.hpp>
#include <polarpart/oracle.hpp>
#include <polarpart/partitions.hpp>
#include <polarpart/verify.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace polarpart;

namespace {

using Edges = std::vector<std::pair<Vertex, Vertex>>;

Graph random_graph(std::mt19937_64& rng, Vertex n, double p)
{
    Edges e;
    std::bernoulli_distribution coin(p);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

// Plain enumeration of every set partition (restricted growth strings), no
// pruning: {max complete parts, max complete independent parts, min proper}.
struct Naive {
    std::uint32_t psi = 0, chi_a = 0, chi = 0;
};

Naive naive_numbers(const Graph& g)
{
    const Vertex n = g.vertex_count();
    Naive out;
    out.chi = n;
    if (n == 0)
        return out;
    std::vector<std::uint32_t> rgs(n, 0);
    for (;;) {
        const std::uint32_t r = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<char>> joined(r, std::vector<char>(r, 0));
        bool independent = true;
        g.for_each_edge([&](Vertex u, Vertex v) {
            joined[rgs[u]][rgs[v]] = joined[rgs[v]][rgs[u]] = 1;
            independent = independent && rgs[u] != rgs[v];
        });
        bool complete = true;
        for (std::uint32_t a = 0; a < r; ++a)
            for (std::uint32_t b = a + 1; b < r; ++b)
                complete = complete && joined[a][b];
        if (complete)
            out.psi = std::max(out.psi, r);
        if (complete && independent)
            out.chi_a = std::max(out.chi_a, r);
        if (independent)
            out.chi = std::min(out.chi, r);
        // Next restricted growth string.
        Vertex i = n - 1;
        for (;;) {
            if (i == 0)
                return out;
            std::uint32_t prefix_max = 0;
            for (Vertex j = 0; j < i; ++j)
                prefix_max = std::max(prefix_max, rgs[j]);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                for (Vertex j = i + 1; j < n; ++j)
                    rgs[j] = 0;
                break;
            }
            --i;
        }
    }
}

Graph cycle4()
{
    const Edges e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return Graph::from_edges(4, e);
}

} // namespace

TEST(Verdict, CycleExample)
{
    const Verdict v = verdict(cycle4(), Partition({0, 1, 2, 2}, 3));
    EXPECT_TRUE(v.complete);
    EXPECT_FALSE(v.achromatic);
    EXPECT_FALSE(v.optimally_complete);
    ASSERT_FALSE(v.witnesses.empty());
    EXPECT_EQ(v.witnesses[0].kind, "within_edge");
    const Verdict w = verdict(cycle4(), Partition({0, 1, 0, 1}, 2));
    EXPECT_TRUE(w.achromatic);
    EXPECT_FALSE(w.optimally_complete); // 4 edges, C(2,2) = 1
    const Verdict m = verdict(cycle4(), Partition({0, 1, 2, 3}, 4));
    EXPECT_FALSE(m.complete);
    EXPECT_EQ(m.witnesses[0].kind, "missing_pair");
    EXPECT_EQ(m.witnesses[0].detail["classes"], nlohmann::json({0, 2}));
}

TEST(Verdict, FamilyPartitions)
{
    const Family plane = plane_family(2);
    const Graph g = build_polarity(PolarityGraph(plane.spec, plane.polarity));
    const Partition p = PlanePartition(plane, gf::QuadBasis::find(plane.spec.field())).partition();
    const Verdict v = verdict(g, p);
    EXPECT_TRUE(v.complete && v.achromatic && v.optimally_complete);
    EXPECT_EQ(v.loops, 8u);
    // Removing any edge leaves a named missing pair.
    const Graph h = g.without_edge(0, g.neighbors(0)[0]);
    const Verdict t = verdict(h, p);
    EXPECT_FALSE(t.complete);
    ASSERT_EQ(t.witnesses[0].kind, "missing_pair");
    const auto cls = t.witnesses[0].detail["classes"];
    const std::uint32_t a = p.class_of(0), b = p.class_of(g.neighbors(0)[0]);
    EXPECT_EQ(cls, nlohmann::json({std::min(a, b), std::max(a, b)}));

    const Family gq = gq_family(1);
    const Graph gg = build_polarity(PolarityGraph(gq.spec, gq.polarity));
    EXPECT_TRUE(verdict(gg, GqPartition(gq).partition()).optimally_complete);
}

TEST(Bounds, DegreeBound)
{
    EXPECT_TRUE(proposition_bound(512, 8, 64));
    EXPECT_FALSE(proposition_bound(512, 8, 65));
    const std::uint64_t q = 27, n = q * q * q * q * q;
    EXPECT_EQ(n / (q * q * q + 1), 728u);
    EXPECT_FALSE(proposition_bound(n, q, q * q * q + 1));
    EXPECT_TRUE(proposition_bound(n, q, q * q * q));
    EXPECT_THROW(proposition_bound(5, 1, 0), std::invalid_argument);

    const auto gq_up = certify_upper(512, 2016, 8, 64);
    EXPECT_TRUE(gq_up.certified);
    const auto plane_up = certify_upper(16, 28, 4, 8);
    EXPECT_TRUE(plane_up.certified);
    EXPECT_EQ(plane_up.argument, "edge_count");
    // With spare edges only the proposition can certify.
    const auto prop_only = certify_upper(512, 4000, 8, 64);
    EXPECT_TRUE(prop_only.certified);
    EXPECT_EQ(prop_only.argument, "proposition");
    EXPECT_FALSE(certify_upper(100, 4000, 50, 10).certified);
}

TEST(Bounds, Ratio)
{
    EXPECT_NEAR(ratio_eq6(8, 28), 8 / std::sqrt(56.0), 1e-12);
    EXPECT_GT(ratio_eq6(8, 28), 1.0);
    EXPECT_TRUE(ratio_at_least_half_sqrt2(8, 28));
    EXPECT_TRUE(ratio_at_least_half_sqrt2(4, 16)); // exactly 1/sqrt(2)
    EXPECT_FALSE(ratio_at_least_half_sqrt2(3, 16));
    EXPECT_THROW(ratio_eq6(1, 0), std::invalid_argument);
    // Optimally complete: e = C(r, 2) gives r / sqrt(r^2 - r) > 1.
    for (std::uint64_t r = 2; r < 50; ++r)
        EXPECT_GT(ratio_eq6(r, r * (r - 1) / 2), 1.0);
}

TEST(Oracle, KnownGraphs)
{
    const Graph c4 = cycle4();
    EXPECT_EQ(brute_force_psi(c4), 3u);
    EXPECT_EQ(brute_force_chi_a(c4), 2u);
    EXPECT_EQ(brute_force_chi(c4), 2u);
    Edges k4;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v)
            k4.emplace_back(u, v);
    const Graph k = Graph::from_edges(4, k4);
    EXPECT_EQ(brute_force_psi(k), 4u);
    EXPECT_EQ(brute_force_chi_a(k), 4u);
    const Graph empty = Graph::from_edges(5, Edges{});
    EXPECT_EQ(brute_force_psi(empty), 1u);
    EXPECT_EQ(brute_force_chi_a(empty), 1u);
    EXPECT_EQ(edge_bound_parts(0), 1u);
    EXPECT_EQ(edge_bound_parts(28), 8u);
    EXPECT_EQ(edge_bound_parts(27), 7u);
    EXPECT_THROW(brute_force_psi(Graph::from_edges(13, Edges{})), GraphError);
    // Loops are ignored.
    const Graph looped = Graph::from_edges(4, Edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 2}});
    EXPECT_EQ(brute_force_psi(looped), 3u);
}

TEST(Oracle, MatchesNaiveEnumeration)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const Vertex n = 1 + static_cast<Vertex>(rng() % 7);
        const Graph g = random_graph(rng, n, 0.2 + 0.1 * static_cast<double>(rng() % 7));
        const Naive want = naive_numbers(g);
        ASSERT_EQ(brute_force_psi(g), want.psi);
        ASSERT_EQ(brute_force_chi_a(g), want.chi_a);
        ASSERT_EQ(brute_force_chi(g), want.chi);
    }
}

TEST(Oracle, ChainOnRandomGraphs)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Vertex n = 1 + static_cast<Vertex>(rng() % 8);
        const Graph g = random_graph(rng, n, 0.15 + 0.1 * static_cast<double>(rng() % 8));
        const auto psi = brute_force_psi(g), chi_a = brute_force_chi_a(g), chi = brute_force_chi(g);
        const double e = static_cast<double>(g.edge_count());
        EXPECT_LE(chi, chi_a);
        EXPECT_LE(chi_a, psi);
        EXPECT_LE(psi, static_cast<std::uint32_t>(std::floor(std::sqrt(2 * e + 0.25) + 0.5)));
        EXPECT_LE(psi, edge_bound_parts(g.edge_count()));
        // Any random partition the verifier calls complete has r <= psi.
        for (int k = 0; k < 20; ++k) {
            const std::uint32_t r = 1 + static_cast<std::uint32_t>(rng() % n);
            std::vector<std::uint32_t> cls(n);
            for (Vertex v = 0; v < n; ++v)
                cls[v] = v < r ? v : static_cast<std::uint32_t>(rng() % r);
            const Partition p(cls, r);
            const Verdict v = verdict(g, p);
            if (v.complete) {
                EXPECT_LE(r, psi);
                if (certify_upper(n, g.edge_count(), g.max_degree(), r).certified) {
                    EXPECT_EQ(r, psi);
                }
            }
            if (v.achromatic) {
                EXPECT_LE(r, chi_a);
            }
        }
    }
}

TEST(Luw, PlaneAndGq)
{
    for (std::uint64_t q : {2u, 3u}) {
        const Family fam = plane_family(q);
        const PolarityGraph pg(fam.spec, fam.polarity);
        const Graph g = build_polarity(pg);
        const Graph b = build_bipartite(fam.spec);
        const auto abs = pg.absolute_points();
        const LuwReport rep = luw_report(b, g, abs, 3);
        EXPECT_TRUE(rep.ok());
        EXPECT_TRUE(rep.degree_relation);
        EXPECT_TRUE(rep.incidence_reconciled);
        EXPECT_FALSE(rep.literal_relation);
        if (q == 2) {
            EXPECT_EQ(rep.incidences, 64u);
            EXPECT_EQ(rep.polarity_edges, 28u);
            EXPECT_EQ(rep.absolute, 8u);
        }
        EXPECT_EQ(rep.girth_bipartite, 6u);
    }
    const Family gq = gq_family(1);
    const PolarityGraph pg(gq.spec, gq.polarity);
    const Graph g = build_polarity(pg);
    const LuwReport rep = luw_report(build_bipartite(gq.spec), g, pg.absolute_points(), 4);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.girth_bipartite, 8u);
    EXPECT_EQ(rep.incidences, 4096u);
    ASSERT_EQ(rep.transfers.size(), 3u);
    EXPECT_TRUE(rep.transfers[0].bipartite_free && rep.transfers[0].polarity_free.value());
    EXPECT_TRUE(rep.transfers[1].bipartite_free && rep.transfers[1].polarity_free.value());
    EXPECT_FALSE(rep.transfers[2].bipartite_free);

    // A wrong absolute set breaks the degree relation.
    std::vector<VertexId> wrong{0};
    const Family plane = plane_family(2);
    const PolarityGraph ppg(plane.spec, plane.polarity);
    const LuwReport bad = luw_report(build_bipartite(plane.spec), build_polarity(ppg), wrong, 2);
    EXPECT_FALSE(bad.ok());
    EXPECT_TRUE(bad.degree_witness.has_value());
}

TEST(Records, FamilyWitnesses)
{
    for (std::uint64_t q : {2u, 3u}) {
        const Family fam = plane_family(q);
        const Graph g = build_polarity(PolarityGraph(fam.spec, fam.polarity));
        const Partition p = PlanePartition(fam, gf::QuadBasis::find(fam.spec.field())).partition();
        const auto rec = witness_record("plane", q, g, p, verdict(g, p));
        EXPECT_EQ(rec.r, q * q * q);
        EXPECT_EQ(rec.k, q);
        EXPECT_TRUE(rec.ok());
        EXPECT_TRUE(rec.exact());
    }
    const Family gq = gq_family(1);
    const Graph g = build_polarity(PolarityGraph(gq.spec, gq.polarity));
    const Partition p = GqPartition(gq).partition();
    const auto rec = witness_record("gq", 8, g, p, verdict(g, p));
    EXPECT_EQ(rec.r, 64u);
    EXPECT_EQ(rec.k, 8u);
    ASSERT_EQ(rec.cycles.size(), 2u);
    EXPECT_TRUE(rec.ok());
    EXPECT_EQ(rec.to_json()["cycles"]["C6"], "pass");
    EXPECT_THROW(forbidden_lengths("generic"), std::invalid_argument);
}
