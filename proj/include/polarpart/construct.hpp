#pragma once

// Explicit graphs from algebraic specs: the bipartite incidence graph (points
// 0..N-1, lines N..2N-1) and the polarity graph on the points.

#include <polarpart/adg.hpp>
#include <polarpart/graph.hpp>

#include <cstdint>
#include <vector>

namespace polarpart {

inline constexpr std::uint64_t kDefaultCeiling = 2000000;

inline ImplicitGraph bipartite_implicit(const AdgSpec& spec)
{
    const std::uint64_t side = spec.side_size();
    return ImplicitGraph(2 * side, [&spec, side](std::uint64_t v, std::vector<std::uint64_t>& out) {
        Coords c = spec.decode(v % side), r{};
        for (std::uint32_t x = 0; x < spec.q(); ++x) {
            if (v < side) {
                spec.line_through(c, x, r);
                out.push_back(side + spec.encode(r));
            }
            else {
                spec.point_on(c, x, r);
                out.push_back(spec.encode(r));
            }
        }
    });
}

inline ImplicitGraph polarity_implicit(const PolarityGraph& g)
{
    return ImplicitGraph(
        g.vertex_count(),
        [&g](std::uint64_t v, std::vector<std::uint64_t>& out) {
            g.for_each_neighbor(v, [&](VertexId u) { out.push_back(u); });
        },
        [&g](std::uint64_t v) { return g.is_absolute(v); });
}

inline Graph build_bipartite(const AdgSpec& spec, std::uint64_t ceiling = kDefaultCeiling)
{
    return materialize(bipartite_implicit(spec), ceiling);
}

inline Graph build_polarity(const PolarityGraph& g, std::uint64_t ceiling = kDefaultCeiling)
{
    return materialize(polarity_implicit(g), ceiling);
}

} // namespace polarpart
