#include <polarpart/construct.hpp>
#include <polarpart/families.hpp>
#include <polarpart/partitions.hpp>
#include <polarpart/verify.hpp>

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace polarpart;
using gf::Field;

namespace {

VertexId enc(const AdgSpec& s, const std::vector<gf::Elem>& c) { return s.encode(s.to_coords(c)); }

// For every class pair, scans all member pairs with the adjacency test (not
// the materialized graph) and compares with the closed form.
template <class Part>
void expect_closed_form_exhaustive(const Family& fam, const Part& part)
{
    const PolarityGraph pg(fam.spec, fam.polarity);
    const Partition p = part.partition();
    std::vector<std::vector<VertexId>> members(part.class_count());
    for (VertexId v = 0; v < p.vertex_count(); ++v)
        members[p.class_of(v)].push_back(v);
    for (std::uint32_t a = 0; a < part.class_count(); ++a) {
        ASSERT_EQ(members[a].size(), part.class_size());
        for (std::uint32_t i = 0; i < part.class_size(); ++i)
            ASSERT_EQ(part.class_of(part.member(a, i)), a);
        const ClassKey ka = part.key(a);
        ASSERT_EQ(part.class_id(ka), a);
        // Loop vertex: the unique absolute point of the class.
        std::vector<VertexId> abs;
        for (VertexId v : members[a])
            if (pg.is_absolute(v))
                abs.push_back(v);
        ASSERT_EQ(abs.size(), 1u);
        const Contact lc = part.unique_edge(ka, ka);
        ASSERT_TRUE(lc.is_loop());
        ASSERT_EQ(enc(fam.spec, lc.first), abs[0]);
        for (std::uint32_t b = a + 1; b < part.class_count(); ++b) {
            std::vector<std::pair<VertexId, VertexId>> found;
            for (VertexId u : members[a])
                for (VertexId w : members[b])
                    if (pg.adjacent(u, w))
                        found.emplace_back(u, w);
            ASSERT_EQ(found.size(), 1u) << "classes " << a << "," << b;
            const Contact c = part.unique_edge(ka, part.key(b));
            ASSERT_EQ(enc(fam.spec, c.first), found[0].first);
            ASSERT_EQ(enc(fam.spec, c.second), found[0].second);
        }
    }
}

// Relabels classes by first appearance so partitions can be compared up to
// renaming.
std::vector<std::uint32_t> canonical(const Partition& p)
{
    std::map<std::uint32_t, std::uint32_t> rename;
    std::vector<std::uint32_t> out;
    for (VertexId v = 0; v < p.vertex_count(); ++v) {
        const auto c = p.class_of(v);
        if (!rename.count(c))
            rename.emplace(c, static_cast<std::uint32_t>(rename.size()));
        out.push_back(rename[c]);
    }
    return out;
}

} // namespace

TEST(Partitions, PlaneClosedFormExhaustive)
{
    for (std::uint64_t q : {2u, 3u}) {
        const Family fam = plane_family(q);
        const PlanePartition part(fam, gf::QuadBasis::find(fam.spec.field()));
        EXPECT_EQ(part.class_count(), q * q * q);
        expect_closed_form_exhaustive(fam, part);
    }
}

TEST(Partitions, GqClosedFormExhaustive)
{
    const Family fam = gq_family(1);
    const GqPartition part(fam);
    EXPECT_EQ(part.class_count(), 64u);
    const auto z = part.unique_edge(part.key(0), part.key(0));
    EXPECT_EQ(enc(fam.spec, z.first), 0u); // (0,0) -> loop vertex (0,0,0)
    expect_closed_form_exhaustive(fam, part);
}

TEST(Partitions, GhClosedFormAtSmallestField)
{
    const Family fam = gh_family(0, true);
    const GhPartition part(fam);
    EXPECT_EQ(part.class_count(), 27u);
    EXPECT_EQ(part.class_size(), 9u);
    const auto z = part.unique_edge(part.key(0), part.key(0));
    EXPECT_EQ(enc(fam.spec, z.first), 0u);
    expect_closed_form_exhaustive(fam, part);
}

TEST(Partitions, GhFormulaSolvesTheEquationsAtQ27)
{
    // Formula output is an edge by direct substitution into the adjacency
    // equations, for random class pairs.
    const Family fam = gh_family(1);
    const GhPartition part(fam);
    EXPECT_EQ(part.class_count(), 19683u);
    EXPECT_EQ(part.class_size(), 729u);
    const PolarityGraph pg(fam.spec, fam.polarity);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const auto a = static_cast<std::uint32_t>(rng() % part.class_count());
        const auto b = static_cast<std::uint32_t>(rng() % part.class_count());
        const Contact c = part.unique_edge(part.key(a), part.key(b));
        const VertexId u = enc(fam.spec, c.first), w = enc(fam.spec, c.second);
        EXPECT_EQ(part.class_of(u), a);
        EXPECT_EQ(part.class_of(w), b);
        if (a == b)
            EXPECT_TRUE(pg.is_absolute(u));
        else
            EXPECT_TRUE(pg.adjacent(u, w) && pg.adjacent(w, u));
    }
}

TEST(Partitions, SampledVerifierAgreesWithExhaustive)
{
    const Family fam = plane_family(3);
    const PlanePartition part(fam, gf::QuadBasis::find(fam.spec.field()));
    const PolarityGraph pg(fam.spec, fam.polarity);
    SampleConfig cfg;
    cfg.pair_samples = 2000;
    cfg.within_samples = 200;
    cfg.degree_samples = 200;
    cfg.symmetry_samples = 200;
    cfg.cycle_starts = 3;
    cfg.cycle_kmax = 2;
    cfg.workers = 3;
    const auto rep = verify_sampled(pg, part, cfg);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.absolute, 27u);
    // Same seed, different worker count: same counts and witnesses.
    cfg.workers = 1;
    const auto again = verify_sampled(pg, part, cfg);
    EXPECT_EQ(again.pairs_match_formula, rep.pairs_match_formula);
    EXPECT_EQ(again.cycles.explored, rep.cycles.explored);

    // The GQ polarity graph has 6-cycles-free balls but 8-cycles: the
    // sampled search must find one.
    const Family gq = gq_family(1);
    const GqPartition gp(gq);
    const PolarityGraph gpg(gq.spec, gq.polarity);
    cfg.cycle_kmax = 4;
    const auto grep = verify_sampled(gpg, gp, cfg);
    ASSERT_TRUE(grep.cycles.witness);
    EXPECT_EQ(grep.cycles.witness->size(), 8u);
    EXPECT_FALSE(grep.ok());
}

TEST(Partitions, OddToyIsComplete)
{
    const AdgSpec s(Field::of_order(2), {Expr::parse("p1*l1"), Expr::parse("p1^2*l1")});
    const Partition p = general_odd_partition(s);
    EXPECT_EQ(p.class_count(), 4u);
    const Verdict v = verdict(build_bipartite(s), p);
    EXPECT_TRUE(v.complete);
    std::vector<std::uint32_t> swap{1, 0, 2, 3};
    EXPECT_TRUE(verdict(build_bipartite(s), general_odd_partition(s, swap)).complete);
    EXPECT_THROW(general_odd_partition(s, {0, 0, 1, 2}), PartitionError);
    EXPECT_THROW(general_odd_partition(AdgSpec(Field::of_order(4), {Expr::parse("p1*l1")})), PartitionError);
}

TEST(Partitions, GqBipartiteOddPartition)
{
    const Family fam = gq_family(1);
    const Partition p = general_odd_partition(fam.spec);
    EXPECT_EQ(p.class_count(), 64u);
    for (auto s : p.class_sizes())
        EXPECT_EQ(s, 16u); // q points and q lines
    EXPECT_TRUE(verdict(build_bipartite(fam.spec), p).complete);
}

TEST(Partitions, EvenBipartiteIsComplete)
{
    for (std::uint64_t order : {4u, 9u}) {
        const AdgSpec s(Field::of_order(order), {Expr::parse("p1*l1")});
        const auto basis = gf::QuadBasis::find(s.field());
        const Partition p = general_even_partition(s, basis);
        const std::uint64_t q = basis.subfield().order();
        EXPECT_EQ(p.class_count(), q * q * q);
        EXPECT_TRUE(verdict(build_bipartite(s), p).complete);
    }
}

TEST(Partitions, PolarityPartitionMatchesPlane)
{
    const Family fam = plane_family(2);
    const auto basis = gf::QuadBasis::find(fam.spec.field());
    const Partition general = general_polarity_partition(fam.spec, basis);
    const Partition plane = PlanePartition(fam, basis).partition();
    EXPECT_EQ(canonical(general), canonical(plane));
    const Graph g = build_polarity(PolarityGraph(fam.spec, fam.polarity));
    EXPECT_EQ(pair_edge_matrix(g, general), pair_edge_matrix(g, plane));
}

TEST(Partitions, PolarityToysAreOptimal)
{
    const Field f4 = Field::of_order(4);
    const std::vector<AdgSpec> toys{
        AdgSpec(f4, {Expr::parse("l1*p1 + l1 + p1")}),
        AdgSpec(f4, {Expr::parse("l1*p1"), Expr::parse("l1*p2 + p1*l2"), Expr::parse("l1*p3 + p1*l3 + l2*p2")}),
    };
    for (const auto& s : toys) {
        const auto basis = gf::QuadBasis::find(f4);
        const Partition p = general_polarity_partition(s, basis);
        std::uint64_t r = 2;
        for (std::uint32_t i = 0; i < s.dim(); ++i)
            r *= 2;
        EXPECT_EQ(p.class_count(), r); // q^(m+1)
        const Graph g = build_polarity(build_polarity_graph(s, generic_conjugation_polarity(s)));
        const Verdict v = verdict(g, p);
        EXPECT_TRUE(v.optimally_complete) << s.to_json().dump();
        EXPECT_EQ(g.loop_count(), r);
    }
    EXPECT_THROW(general_polarity_partition(AdgSpec(f4, {Expr::parse("l1^2*p1")}), gf::QuadBasis::find(f4)),
                 PartitionError);
}

TEST(Partitions, KeySidecar)
{
    const Family fam = gq_family(1);
    const GqPartition part(fam);
    const auto j = key_sidecar(part.keys());
    EXPECT_EQ(j["family"], "gq");
    EXPECT_EQ(j["classes"].size(), 64u);
    EXPECT_EQ(j["classes"][9]["key"], nlohmann::json({1, 1}));
}
