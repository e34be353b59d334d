#pragma once

// Claim checks: partition verdicts, the max-degree bound on complete
// partitions, polarity-graph relations, edge-density ratios, (r, k) witness
// records and the sampled verification of the hexagon polarity graph.

#include <polarpart/adg.hpp>
#include <polarpart/cycles.hpp>
#include <polarpart/graph.hpp>
#include <polarpart/oracle.hpp>
#include <polarpart/parallel.hpp>
#include <polarpart/partitions.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace polarpart {

struct Witness {
    std::string kind;
    nlohmann::json detail;
};

inline nlohmann::json to_json(const Witness& w) { return {{"kind", w.kind}, {"detail", w.detail}}; }

inline std::uint64_t binom2(std::uint64_t r) { return r * (r - (r > 0 ? 1 : 0)) / 2; }

struct Verdict {
    std::uint32_t classes = 0;
    std::uint64_t edges = 0;
    bool complete = false;
    bool achromatic = false;
    bool optimally_complete = false;
    std::uint64_t min_cross = 0;
    std::uint64_t max_cross = 0;
    std::uint64_t within_edges = 0;
    std::uint64_t loops = 0;
    std::vector<Witness> witnesses;

    nlohmann::json to_json() const
    {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& x : witnesses)
            w.push_back(polarpart::to_json(x));
        return {{"classes", classes},         {"complete", complete},   {"achromatic", achromatic},
                {"optimally_complete", optimally_complete}, {"min_cross", min_cross}, {"max_cross", max_cross},
                {"within_edges", within_edges}, {"loops_within", loops}, {"witnesses", w}};
    }
};

/// complete: every pair of classes is joined; achromatic: complete and no
/// class spans an edge; optimally complete: exactly one edge per pair, none
/// inside, and e(G) = C(r, 2). Loops never count as edges.
inline Verdict verdict_from_matrix(const PairEdgeMatrix& m, std::uint64_t edges, std::size_t max_witnesses = 16)
{
    Verdict v;
    v.classes = m.class_count();
    v.edges = edges;
    const std::uint32_t r = m.class_count();
    bool complete = true, single = true;
    std::uint64_t missing = 0, multi = 0;
    v.min_cross = r > 1 ? m.cross(0, 1) : 0;
    for (std::uint32_t a = 0; a < r; ++a) {
        v.within_edges += m.within(a);
        v.loops += m.loops_within(a);
        if (m.within(a) > 0 && v.witnesses.size() < max_witnesses)
            v.witnesses.push_back({"within_edge", {{"class", a}, {"count", m.within(a)}}});
        for (std::uint32_t b = a + 1; b < r; ++b) {
            const auto c = m.cross(a, b);
            v.min_cross = std::min(v.min_cross, c);
            v.max_cross = std::max(v.max_cross, c);
            if (c == 0) {
                complete = false;
                if (missing++ < max_witnesses)
                    v.witnesses.push_back({"missing_pair", {{"classes", {a, b}}}});
            }
            if (c > 1) {
                single = false;
                if (multi++ < max_witnesses)
                    v.witnesses.push_back({"multi_edge", {{"classes", {a, b}}, {"count", c}}});
            }
        }
    }
    v.complete = complete;
    v.achromatic = complete && v.within_edges == 0;
    v.optimally_complete = v.achromatic && single && edges == binom2(r);
    if (v.achromatic && single && edges != binom2(r))
        v.witnesses.push_back({"edge_count", {{"edges", edges}, {"binom", binom2(r)}}});
    return v;
}

inline Verdict verdict(const Graph& g, const Partition& p, std::size_t max_witnesses = 16)
{
    return verdict_from_matrix(pair_edge_matrix(g, p), g.edge_count(), max_witnesses);
}

/// Necessary condition for a complete partition into r parts:
/// floor(n / r) * delta >= r - 1.
inline bool proposition_bound(std::uint64_t n, std::uint64_t delta, std::uint64_t r)
{
    if (r == 0)
        throw std::invalid_argument("r must be positive");
    return (n / r) * delta >= r - 1;
}

struct UpperBound {
    bool certified = false;
    std::string argument; // "edge_count" or "proposition"
};

/// Certifies that no complete partition has more than r parts.
inline UpperBound certify_upper(std::uint64_t n, std::uint64_t edges, std::uint64_t delta, std::uint64_t r)
{
    if (binom2(r + 1) > edges)
        return {true, "edge_count"};
    if (!proposition_bound(n, delta, r + 1))
        return {true, "proposition"};
    return {false, ""};
}

/// psi / sqrt(2e).
inline double ratio_eq6(std::uint64_t psi_lower, std::uint64_t edges)
{
    if (edges == 0)
        throw std::invalid_argument("ratio needs at least one edge");
    return static_cast<double>(psi_lower) / std::sqrt(2.0 * static_cast<double>(edges));
}

/// Exact integer form of psi / sqrt(2e) >= 1/sqrt(2).
inline bool ratio_at_least_half_sqrt2(std::uint64_t psi_lower, std::uint64_t edges)
{
    return psi_lower * psi_lower >= edges;
}

// ---------------------------------------------------------------- LUW

struct CycleTransfer {
    std::uint32_t length = 0;
    bool bipartite_free = false;
    std::optional<bool> polarity_free; // checked only when the bipartite graph is free
    std::optional<Cycle> witness;
    bool holds() const { return !bipartite_free || polarity_free.value_or(false); }
};

struct LuwReport {
    bool degree_relation = true;
    std::optional<std::string> degree_witness;
    bool loops_match_absolute = true;
    std::uint64_t incidences = 0;
    std::uint64_t polarity_edges = 0;
    std::uint64_t absolute = 0;
    bool incidence_reconciled = false; // |E(G)| = 2 e(G^pi) + N
    bool literal_relation = false;     // |E(G)| - N = e(G^pi)
    std::vector<CycleTransfer> transfers;
    std::optional<std::uint32_t> girth_bipartite;
    std::optional<std::uint32_t> girth_polarity;
    bool girth_relation = false;

    bool ok() const
    {
        bool t = true;
        for (const auto& x : transfers)
            t = t && x.holds();
        return degree_relation && loops_match_absolute && incidence_reconciled && girth_relation && t;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json tr = nlohmann::json::array();
        for (const auto& x : transfers) {
            nlohmann::json j{{"length", x.length}, {"bipartite_free", x.bipartite_free}, {"holds", x.holds()}};
            j["polarity_free"] = x.polarity_free ? nlohmann::json(*x.polarity_free) : nlohmann::json(nullptr);
            if (x.witness)
                j["witness"] = *x.witness;
            tr.push_back(j);
        }
        auto opt = [](const std::optional<std::uint32_t>& g) {
            return g ? nlohmann::json(*g) : nlohmann::json("infinity");
        };
        nlohmann::json j{{"ok", ok()},
                         {"degree_relation", degree_relation},
                         {"loops_match_absolute", loops_match_absolute},
                         {"incidences", incidences},
                         {"polarity_edges", polarity_edges},
                         {"absolute", absolute},
                         {"incidence_reconciled", incidence_reconciled},
                         {"literal_edge_relation", literal_relation},
                         {"literal_edge_difference", static_cast<std::int64_t>(incidences) -
                                                         static_cast<std::int64_t>(absolute) -
                                                         static_cast<std::int64_t>(polarity_edges)},
                         {"cycle_transfer", tr},
                         {"girth_bipartite", opt(girth_bipartite)},
                         {"girth_polarity", opt(girth_polarity)},
                         {"girth_relation", girth_relation}};
        if (degree_witness)
            j["degree_witness"] = *degree_witness;
        return j;
    }
};

/// Relations between a bipartite ADG (points 0..N-1 first) and its polarity
/// graph on the points: degree drop exactly at absolute points, incidence
/// count reconciliation, transfer of C_2k-freeness for k = 2..kmax, and
/// girth(G^pi) >= girth(G) / 2.
inline LuwReport luw_report(const Graph& bip, const Graph& pol, std::span<const VertexId> absolute,
                            std::uint32_t kmax = 4)
{
    if (bip.vertex_count() != 2 * pol.vertex_count())
        throw GraphError("bipartite graph must have twice the polarity graph's vertices");
    LuwReport rep;
    std::vector<char> is_abs(pol.vertex_count(), 0);
    for (auto v : absolute) {
        if (v >= pol.vertex_count())
            throw GraphError("absolute point out of range");
        is_abs[v] = 1;
    }
    for (Vertex v = 0; v < pol.vertex_count(); ++v) {
        const std::uint32_t expect = bip.degree(v) - (is_abs[v] ? 1 : 0);
        if (pol.degree(v) != expect && rep.degree_relation) {
            rep.degree_relation = false;
            rep.degree_witness = "vertex " + std::to_string(v) + ": degree " + std::to_string(pol.degree(v)) +
                                 ", expected " + std::to_string(expect);
        }
        if (pol.has_loop(v) != static_cast<bool>(is_abs[v]))
            rep.loops_match_absolute = false;
    }
    rep.incidences = bip.edge_count();
    rep.polarity_edges = pol.edge_count();
    rep.absolute = absolute.size();
    rep.incidence_reconciled = rep.incidences == 2 * rep.polarity_edges + rep.absolute;
    rep.literal_relation = rep.incidences - rep.absolute == rep.polarity_edges;

    for (std::uint32_t k = 2; k <= kmax; ++k) {
        CycleTransfer t;
        t.length = 2 * k;
        const auto in_bip = k == 2 ? contains_c4(bip) : find_cycle_of_length(bip, 2 * k);
        t.bipartite_free = !in_bip;
        if (t.bipartite_free) {
            auto in_pol = k == 2 ? contains_c4(pol) : find_cycle_of_length(pol, 2 * k);
            t.polarity_free = !in_pol;
            t.witness = std::move(in_pol);
        }
        rep.transfers.push_back(std::move(t));
    }
    rep.girth_bipartite = girth(bip);
    rep.girth_polarity = girth(pol);
    if (!rep.girth_polarity)
        rep.girth_relation = true;
    else if (!rep.girth_bipartite)
        rep.girth_relation = false;
    else
        rep.girth_relation = 2 * *rep.girth_polarity >= *rep.girth_bipartite;
    return rep;
}

// ---------------------------------------------------------------- (r, k) records

struct CycleCheck {
    std::uint32_t length = 0;
    bool free = false;
    bool sampled = false;
    std::optional<Cycle> witness;

    std::string status() const
    {
        if (!free)
            return "fail";
        return sampled ? "sampled" : "pass";
    }
};

/// A complete partition into r parts of size at most k in a graph avoiding
/// the listed even cycles.
struct WitnessRecord {
    std::string family;
    std::uint64_t q = 0;
    std::uint64_t r = 0;
    std::uint64_t k = 0;
    bool partition_verified = false;
    bool partition_sampled = false;
    std::vector<CycleCheck> cycles;

    bool ok() const
    {
        bool c = true;
        for (const auto& x : cycles)
            c = c && x.free;
        return partition_verified && c;
    }
    bool exact() const
    {
        bool e = !partition_sampled;
        for (const auto& x : cycles)
            e = e && !x.sampled;
        return e;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json forb = nlohmann::json::array();
        nlohmann::json cyc = nlohmann::json::object();
        for (const auto& c : cycles) {
            forb.push_back("C" + std::to_string(c.length));
            cyc["C" + std::to_string(c.length)] = c.status();
        }
        return {{"family", family}, {"q", q},        {"r", r},           {"k", k},
                {"forbidden", forb}, {"cycles", cyc}, {"exact", exact()}, {"partition_verified", partition_verified},
                {"ok", ok()}};
    }
};

/// The forbidden cycle lengths for each family's record.
inline std::vector<std::uint32_t> forbidden_lengths(const std::string& family)
{
    if (family == "plane")
        return {4};
    if (family == "gq")
        return {4, 6};
    if (family == "gh")
        return {4, 6, 8, 10};
    throw std::invalid_argument("no witness record for family '" + family + "'");
}

/// Exact record for a materialized graph.
inline WitnessRecord witness_record(const std::string& family, std::uint64_t q, const Graph& g,
                                    const Partition& p, const Verdict& v)
{
    WitnessRecord rec;
    rec.family = family;
    rec.q = q;
    rec.r = p.class_count();
    const auto sizes = p.class_sizes();
    rec.k = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    rec.partition_verified = v.complete;
    for (auto len : forbidden_lengths(family)) {
        CycleCheck c;
        c.length = len;
        c.witness = len == 4 ? contains_c4(g) : find_cycle_of_length(g, len);
        c.free = !c.witness;
        rec.cycles.push_back(std::move(c));
    }
    return rec;
}

// ---------------------------------------------------------------- sampled

struct SampleConfig {
    std::uint64_t seed = 1;
    std::uint64_t pair_samples = 100000;
    std::uint64_t within_samples = 10000;
    std::uint64_t degree_samples = 10000;
    std::uint64_t symmetry_samples = 10000;
    std::uint64_t cycle_starts = 2;
    std::uint32_t cycle_kmax = 5;
    unsigned workers = 1;
};

struct SampledReport {
    std::uint64_t vertices = 0;
    std::uint64_t absolute = 0;
    std::uint64_t classes = 0;
    std::uint64_t class_size = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t pairs_single_edge = 0;
    std::uint64_t pairs_match_formula = 0;
    std::uint64_t within_checked = 0;
    std::uint64_t within_clean = 0; // no non-loop edge, exactly one loop at the formula vertex
    std::uint64_t degree_checked = 0;
    std::uint64_t degree_ok = 0;
    std::uint64_t degree_non_absolute = 0;
    std::uint64_t symmetry_checked = 0;
    std::uint64_t symmetry_ok = 0;
    SampledCycleResult cycles;
    std::uint32_t cycle_kmax = 5;
    std::uint64_t seed = 0;
    std::vector<Witness> witnesses;

    bool absolute_ok() const { return absolute == classes; }
    bool ok() const
    {
        return absolute_ok() && pairs_single_edge == pairs_checked && pairs_match_formula == pairs_checked &&
               within_clean == within_checked && degree_ok == degree_checked && symmetry_ok == symmetry_checked &&
               !cycles.witness;
    }
};

namespace detail {
    inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

    inline VertexId encode_elems(const AdgSpec& spec, const std::vector<gf::Elem>& c)
    {
        return spec.encode(spec.to_coords(c));
    }
} // namespace detail

/// Sampled verification of a family polarity graph against its closed-form
/// partition (plane, GQ or GH). Classes fix the first coordinate, so per
/// sampled class pair the cross edges are counted exactly: each member v has
/// one candidate neighbor with the other class's first coordinate, namely the
/// point of pi(v) with that coordinate.
template <class Part>
SampledReport verify_sampled(const PolarityGraph& g, const Part& part, const SampleConfig& cfg)
{
    SampledReport rep;
    const AdgSpec& spec = g.spec();
    const std::uint32_t q = spec.q();
    rep.vertices = g.vertex_count();
    rep.classes = part.class_count();
    rep.class_size = part.class_size();
    rep.seed = cfg.seed;
    rep.cycle_kmax = cfg.cycle_kmax;
    const unsigned workers = std::max(1u, cfg.workers);

    // Absolute points, full scan.
    {
        std::vector<std::uint64_t> counts(workers, 0);
        parallel_chunks(g.vertex_count(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            for (VertexId v = lo; v < hi; ++v)
                counts[w] += g.is_absolute(v) ? 1 : 0;
        });
        for (auto c : counts)
            rep.absolute += c;
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    while (pairs.size() < cfg.pair_samples) {
        const auto a = static_cast<std::uint32_t>(detail::draw(rng, part.class_count()));
        const auto b = static_cast<std::uint32_t>(detail::draw(rng, part.class_count()));
        if (a != b)
            pairs.emplace_back(a, b);
    }
    std::vector<std::uint32_t> within;
    for (std::uint64_t i = 0; i < cfg.within_samples; ++i)
        within.push_back(static_cast<std::uint32_t>(detail::draw(rng, part.class_count())));
    std::vector<VertexId> degree_v;
    for (std::uint64_t i = 0; i < cfg.degree_samples; ++i)
        degree_v.push_back(detail::draw(rng, g.vertex_count()));
    std::vector<std::pair<VertexId, std::uint32_t>> sym;
    for (std::uint64_t i = 0; i < cfg.symmetry_samples; ++i) {
        const VertexId v = detail::draw(rng, g.vertex_count());
        sym.emplace_back(v, static_cast<std::uint32_t>(detail::draw(rng, q)));
    }
    std::vector<std::uint64_t> starts;
    for (std::uint64_t i = 0; i < cfg.cycle_starts; ++i)
        starts.push_back(detail::draw(rng, g.vertex_count()));

    struct Acc {
        std::uint64_t single = 0, match = 0, clean = 0, deg_ok = 0, non_abs = 0, sym_ok = 0;
        std::vector<std::pair<std::uint64_t, Witness>> wit;
    };
    auto note = [](Acc& acc, std::uint64_t order, Witness w) {
        if (acc.wit.size() < 16)
            acc.wit.emplace_back(order, std::move(w));
    };

    // Class pairs.
    std::vector<Acc> acc(workers);
    parallel_chunks(pairs.size(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Acc& A = acc[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto [ca, cb] = pairs[i];
            const auto kb = part.key(cb);
            const std::uint32_t r1 = kb.coords[0].code;
            std::uint64_t found = 0;
            VertexId ev = 0, eu = 0;
            for (std::uint32_t a = 0; a < part.class_size(); ++a) {
                const VertexId v = part.member(ca, a);
                const VertexId u = g.neighbor_with_first(v, r1);
                if (u != v && part.class_of(u) == cb) {
                    ++found;
                    ev = v;
                    eu = u;
                }
            }
            if (found == 1)
                ++A.single;
            else
                note(A, i, {"class_pair_edges", {{"classes", {ca, cb}}, {"edges", found}}});
            const Contact c = part.unique_edge(part.key(ca), kb);
            const VertexId fv = detail::encode_elems(spec, c.first);
            const VertexId fu = detail::encode_elems(spec, c.second);
            if (found == 1 && fv == ev && fu == eu && g.adjacent(fv, fu))
                ++A.match;
            else if (found == 1)
                note(A, i, {"closed_form_mismatch", {{"classes", {ca, cb}}, {"found", {ev, eu}}, {"formula", {fv, fu}}}});
        }
    });
    for (auto& A : acc) {
        rep.pairs_single_edge += A.single;
        rep.pairs_match_formula += A.match;
    }
    rep.pairs_checked = pairs.size();

    // Within classes.
    std::vector<Acc> acc2(workers);
    parallel_chunks(within.size(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Acc& A = acc2[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint32_t c = within[i];
            const auto key = part.key(c);
            const std::uint32_t p1 = key.coords[0].code;
            std::uint64_t inner = 0, loops = 0;
            VertexId loop_at = 0;
            for (std::uint32_t a = 0; a < part.class_size(); ++a) {
                const VertexId v = part.member(c, a);
                const VertexId u = g.neighbor_with_first(v, p1);
                if (u == v) {
                    ++loops;
                    loop_at = v;
                }
                else if (part.class_of(u) == c) {
                    ++inner;
                }
            }
            const Contact lc = part.unique_edge(key, key);
            const VertexId fv = detail::encode_elems(spec, lc.first);
            if (inner == 0 && loops == 1 && loop_at == fv)
                ++A.clean;
            else
                note(A, i, {"within_class", {{"class", c}, {"edges", inner / 2}, {"loops", loops}}});
        }
    });
    for (auto& A : acc2)
        rep.within_clean += A.clean;
    rep.within_checked = within.size();

    // Degrees and adjacency symmetry.
    std::vector<Acc> acc3(workers);
    parallel_chunks(degree_v.size(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Acc& A = acc3[w];
        std::unordered_set<VertexId> seen;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const VertexId v = degree_v[i];
            seen.clear();
            g.for_each_neighbor(v, [&](VertexId u) { seen.insert(u); });
            const bool abs = g.is_absolute(v);
            const std::uint64_t expect = q - (abs ? 1 : 0);
            if (!abs)
                ++A.non_abs;
            if (seen.size() == expect)
                ++A.deg_ok;
            else
                note(A, i, {"degree", {{"vertex", v}, {"degree", seen.size()}, {"expected", expect}}});
        }
    });
    for (auto& A : acc3) {
        rep.degree_ok += A.deg_ok;
        rep.degree_non_absolute += A.non_abs;
    }
    rep.degree_checked = degree_v.size();

    std::vector<Acc> acc4(workers);
    parallel_chunks(sym.size(), workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Acc& A = acc4[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto [v, x] = sym[i];
            const VertexId u = g.neighbor_with_first(v, x);
            bool back = false;
            if (u == v)
                back = g.is_absolute(v);
            else
                g.for_each_neighbor(u, [&](VertexId t) { back = back || t == v; });
            if (back && g.adjacent(u, v) == g.adjacent(v, u))
                ++A.sym_ok;
            else
                note(A, i, {"asymmetric", {{"vertex", v}, {"neighbor", u}}});
        }
    });
    for (auto& A : acc4)
        rep.symmetry_ok += A.sym_ok;
    rep.symmetry_checked = sym.size();

    for (auto* group : {&acc, &acc2, &acc3, &acc4}) {
        std::vector<std::pair<std::uint64_t, Witness>> all;
        for (auto& A : *group)
            all.insert(all.end(), A.wit.begin(), A.wit.end());
        std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < all.size() && i < 16; ++i)
            rep.witnesses.push_back(all[i].second);
    }

    if (!starts.empty())
        rep.cycles = sampled_even_cycle_search(
            g.vertex_count(), [&](std::uint64_t v, auto&& fn) { g.for_each_neighbor(v, fn); }, starts,
            cfg.cycle_kmax);
    if (rep.cycles.witness)
        rep.witnesses.push_back({"even_cycle", {{"cycle", *rep.cycles.witness}}});
    if (!rep.absolute_ok())
        rep.witnesses.push_back({"absolute_count", {{"absolute", rep.absolute}, {"expected", rep.classes}}});
    return rep;
}

} // namespace polarpart
