#include <polarpart/construct.hpp>
#include <polarpart/families.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace polarpart;
using gf::Field;

namespace {

std::map<std::uint32_t, std::uint64_t> degrees(const Graph& g)
{
    std::map<std::uint32_t, std::uint64_t> d;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        ++d[g.degree(v)];
    return d;
}

// Checks that phi is a bijection on each side mapping every incidence of the
// original hexagon to an incidence of GH_q.
void expect_phi_isomorphism(std::uint64_t q)
{
    const AdgSpec orig = gh_original_spec(q);
    const Field& f = orig.field();
    const AdgSpec gh = gh_spec(f);
    const std::uint64_t n = orig.side_size();
    std::vector<char> seen_p(n, 0), seen_l(n, 0);
    std::uint64_t edges = 0;
    for (VertexId v = 0; v < n; ++v) {
        const auto c = orig.to_elems(orig.decode(v));
        const auto pi = gh_phi(f, {Side::point, c});
        const auto li = gh_phi(f, {Side::line, c});
        const VertexId a = gh.encode(gh.to_coords(pi.coords)), b = gh.encode(gh.to_coords(li.coords));
        ASSERT_FALSE(seen_p[a]);
        ASSERT_FALSE(seen_l[b]);
        seen_p[a] = seen_l[b] = 1;
        for (const auto& l : orig.neighbors_of_point(c)) {
            const auto img = gh_phi(f, {Side::line, l});
            ASSERT_TRUE(gh.incident(gh.to_coords(pi.coords), gh.to_coords(img.coords)));
            ++edges;
        }
    }
    EXPECT_EQ(edges, n * q);
}

} // namespace

TEST(Families, PlaneCounts)
{
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        const Family fam = plane_family(q);
        EXPECT_EQ(fam.spec.q(), q * q);
        const PolarityGraph pg = build_polarity_graph(fam.spec, fam.polarity);
        const Graph g = build_polarity(pg);
        const std::uint64_t n = q * q * q * q;
        EXPECT_EQ(g.vertex_count(), n);
        EXPECT_EQ(g.loop_count(), q * q * q);
        // 2e + loops = sum of q^2 incidences per point.
        EXPECT_EQ(2 * g.edge_count() + g.loop_count(), n * q * q);
        const auto d = degrees(g);
        EXPECT_EQ(d.size(), 2u);
        EXPECT_EQ(d.at(q * q - 1), q * q * q);
        EXPECT_EQ(d.at(q * q), n - q * q * q);
    }
}

TEST(Families, PlaneSmallestCases)
{
    const Family fam = plane_family(2);
    const PolarityGraph pg = build_polarity_graph(fam.spec, fam.polarity);
    const Graph g = build_polarity(pg);
    EXPECT_EQ(g.edge_count(), 28u);
    EXPECT_EQ(g.loop_count(), 8u);
    EXPECT_EQ(build_bipartite(fam.spec).edge_count(), 64u);
    const Family f3 = plane_family(3);
    EXPECT_EQ(build_polarity(build_polarity_graph(f3.spec, f3.polarity)).edge_count(), 351u);
    EXPECT_THROW(plane_family(6), gf::FieldError);
}

TEST(Families, GqCounts)
{
    const Family fam = gq_family(1);
    EXPECT_EQ(fam.q, 8u);
    const PolarityGraph pg = build_polarity_graph(fam.spec, fam.polarity);
    const Graph g = build_polarity(pg);
    EXPECT_EQ(g.vertex_count(), 512u);
    EXPECT_EQ(g.edge_count(), 2016u);
    EXPECT_EQ(g.loop_count(), 64u);
    const auto d = degrees(g);
    EXPECT_EQ(d.at(7), 64u);
    EXPECT_EQ(d.at(8), 448u);
    EXPECT_THROW(gq_family(0), SpecError);
    EXPECT_NO_THROW(gq_family(0, true));
}

TEST(Families, GhSmall)
{
    EXPECT_THROW(gh_family(0), SpecError);
    const Family fam = gh_family(0, true);
    EXPECT_EQ(fam.q, 3u);
    // At e = 0 the map is still an involutive polarity of GH_3.
    const auto check = check_polarity(fam.spec, fam.polarity, CheckMode::exhaustive);
    EXPECT_TRUE(check.ok) << check.witness;
    const Graph g = build_polarity(PolarityGraph(fam.spec, fam.polarity));
    EXPECT_EQ(g.loop_count(), 27u);
    EXPECT_EQ(g.edge_count(), 351u);
    EXPECT_THROW(gh_spec(Field::of_order(4)), SpecError);
    const Family big = gh_family(1);
    EXPECT_EQ(big.q, 27u);
    EXPECT_EQ(big.spec.side_size(), 14348907u);
    EXPECT_TRUE(check_polarity(big.spec, big.polarity, CheckMode::sampled, 1, 2000).ok);
}

TEST(Families, PhiIsAnIsomorphism)
{
    expect_phi_isomorphism(3);
    expect_phi_isomorphism(9);
    EXPECT_THROW(gh_original_spec(8), SpecError);
}

TEST(Families, ConjugationPolarity)
{
    const AdgSpec s(Field::of_order(4), {Expr::parse("l1*p1 + l1 + p1")});
    const PolaritySpec pol = generic_conjugation_polarity(s);
    EXPECT_TRUE(check_polarity(s, pol, CheckMode::exhaustive).ok);
    EXPECT_THROW(generic_conjugation_polarity(AdgSpec(Field::of_order(8), {Expr::parse("l1*p1")})), SpecError);
}
