#pragma once

// Girth and even-cycle detection. Exact searches work on explicit graphs;
// the sampled search explores BFS balls of an implicit graph.

#include <polarpart/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polarpart {

/// Vertices of a cycle in traversal order (the closing edge is implied).
using Cycle = std::vector<std::uint64_t>;

/// A 4-cycle iff some pair of vertices has two common neighbors.
inline std::optional<Cycle> contains_c4(const Graph& g)
{
    const Vertex n = g.vertex_count();
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> via(n, none);
    std::vector<Vertex> touched;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : g.neighbors(u)) {
            for (Vertex x : g.neighbors(w)) {
                if (x == u)
                    continue;
                if (via[x] != none)
                    return Cycle{u, via[x], x, w};
                via[x] = w;
                touched.push_back(x);
            }
        }
        for (Vertex x : touched)
            via[x] = none;
        touched.clear();
    }
    return std::nullopt;
}

/// First cycle of exactly `length` edges, scanning start vertices upward and
/// requiring the start to be the cycle's smallest vertex.
inline std::optional<Cycle> find_cycle_of_length(const Graph& g, std::uint32_t length)
{
    if (length < 3)
        throw GraphError("cycle length must be at least 3");
    const Vertex n = g.vertex_count();
    constexpr std::uint32_t far = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(n, far);
    std::vector<char> on_path(n, 0);
    std::vector<Vertex> path;
    std::vector<Vertex> frontier, next, seen;

    for (Vertex s = 0; s < n; ++s) {
        // Distances to s inside the subgraph on vertices >= s, capped.
        for (Vertex v : seen)
            dist[v] = far;
        seen.assign(1, s);
        dist[s] = 0;
        frontier.assign(1, s);
        for (std::uint32_t d = 1; d <= length / 2 + 1 && !frontier.empty(); ++d) {
            next.clear();
            for (Vertex x : frontier)
                for (Vertex y : g.neighbors(x))
                    if (y > s && dist[y] == far) {
                        dist[y] = d;
                        next.push_back(y);
                        seen.push_back(y);
                    }
            frontier.swap(next);
        }

        path.assign(1, s);
        on_path[s] = 1;
        bool found = false;
        // Iterative DFS over neighbor indices.
        std::vector<std::size_t> idx(1, 0);
        while (!path.empty() && !found) {
            const Vertex cur = path.back();
            const auto nb = g.neighbors(cur);
            const auto used = static_cast<std::uint32_t>(path.size() - 1); // edges so far
            if (used == length - 1) {
                if (g.has_edge(cur, s))
                    found = true;
                else {
                    on_path[cur] = 0;
                    path.pop_back();
                    idx.pop_back();
                }
                continue;
            }
            bool advanced = false;
            while (idx.back() < nb.size()) {
                const Vertex w = nb[idx.back()++];
                if (w <= s || on_path[w])
                    continue;
                if (dist[w] == far || dist[w] > length - used - 1)
                    continue;
                path.push_back(w);
                on_path[w] = 1;
                idx.push_back(0);
                advanced = true;
                break;
            }
            if (!advanced) {
                on_path[cur] = 0;
                path.pop_back();
                idx.pop_back();
            }
        }
        if (found) {
            Cycle c(path.begin(), path.end());
            for (Vertex v : path)
                on_path[v] = 0;
            return c;
        }
    }
    return std::nullopt;
}

/// Shortest even cycle of length 4..2*kmax, or none. kmax must be 2..5.
inline std::optional<Cycle> even_cycle_free_upto(const Graph& g, std::uint32_t kmax)
{
    if (kmax < 2 || kmax > 5)
        throw GraphError("kmax must be in [2, 5]");
    if (auto c = contains_c4(g))
        return c;
    for (std::uint32_t len = 6; len <= 2 * kmax; len += 2)
        if (auto c = find_cycle_of_length(g, len))
            return c;
    return std::nullopt;
}

/// Length of the shortest cycle (loops ignored); nullopt for forests.
inline std::optional<std::uint32_t> girth(const Graph& g)
{
    const Vertex n = g.vertex_count();
    constexpr std::uint32_t far = std::numeric_limits<std::uint32_t>::max();
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<std::uint32_t> dist(n, far);
    std::vector<Vertex> parent(n, none);
    std::vector<Vertex> order;
    std::uint32_t best = far;
    for (Vertex s = 0; s < n; ++s) {
        order.assign(1, s);
        dist[s] = 0;
        parent[s] = none;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex x = order[head];
            if (2 * dist[x] >= best)
                break;
            for (Vertex y : g.neighbors(x)) {
                if (y == parent[x])
                    continue;
                if (dist[y] == far) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    order.push_back(y);
                }
                else {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
        for (Vertex v : order) {
            dist[v] = far;
            parent[v] = none;
        }
    }
    if (best == far)
        return std::nullopt;
    return best;
}

struct SampledCycleResult {
    std::optional<Cycle> witness;
    std::uint64_t starts = 0;
    std::uint64_t explored = 0; // vertices reached over all balls
};

/// For each start, grows the BFS ball of radius kmax and turns every
/// non-tree edge into the cycle through the two endpoints' common ancestor.
/// Reports the shortest even cycle of length <= 2*kmax seen. Cycles that are
/// not fundamental for some explored tree can be missed, so a clean result is
/// evidence only. `neighbors(v, fn)` must call fn(u) once per neighbor u != v.
template <class NeighborFn>
SampledCycleResult sampled_even_cycle_search(std::uint64_t vertex_count, NeighborFn&& neighbors,
                                             const std::vector<std::uint64_t>& starts, std::uint32_t kmax)
{
    if (kmax < 2 || kmax > 5)
        throw GraphError("kmax must be in [2, 5]");
    if (vertex_count > std::numeric_limits<std::uint32_t>::max())
        throw GraphError("vertex count exceeds 32-bit ids");
    constexpr std::uint8_t unseen = 0xff;
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint8_t> depth(vertex_count, unseen);
    std::vector<std::uint32_t> parent(vertex_count, none);
    std::vector<std::uint32_t> order;
    SampledCycleResult res;
    std::uint32_t best = 2 * kmax + 1;

    for (auto s64 : starts) {
        const auto s = static_cast<std::uint32_t>(s64);
        ++res.starts;
        order.assign(1, s);
        depth[s] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const std::uint32_t x = order[head];
            if (depth[x] >= kmax)
                break;
            neighbors(std::uint64_t{x}, [&](std::uint64_t y64) {
                const auto y = static_cast<std::uint32_t>(y64);
                if (y == parent[x])
                    return;
                if (depth[y] == unseen) {
                    depth[y] = static_cast<std::uint8_t>(depth[x] + 1);
                    parent[y] = x;
                    order.push_back(y);
                    return;
                }
                // Non-tree edge x-y: climb to the common ancestor.
                std::uint32_t a = x, b = y;
                std::vector<std::uint32_t> left{a}, right{b};
                while (depth[a] > depth[b]) {
                    a = parent[a];
                    left.push_back(a);
                }
                while (depth[b] > depth[a]) {
                    b = parent[b];
                    right.push_back(b);
                }
                while (a != b) {
                    a = parent[a];
                    b = parent[b];
                    left.push_back(a);
                    right.push_back(b);
                }
                const auto len = static_cast<std::uint32_t>(left.size() + right.size() - 1);
                if (len % 2 == 0 && len < best) {
                    best = len;
                    Cycle c(left.begin(), left.end());
                    for (std::size_t i = right.size() - 1; i-- > 0;)
                        c.push_back(right[i]);
                    res.witness = std::move(c);
                }
            });
        }
        res.explored += order.size();
        for (auto v : order) {
            depth[v] = unseen;
            parent[v] = none;
        }
    }
    return res;
}

} // namespace polarpart
