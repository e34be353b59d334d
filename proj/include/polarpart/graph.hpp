#pragma once

// Explicit graphs with separately stored loops, implicit graphs given by a
// neighbor rule, vertex partitions and per-class-pair edge counts.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarpart {

class GraphError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

using Vertex = std::uint32_t;

/// Undirected simple graph plus a loop flag per vertex. Degrees and edge
/// counts never include loops.
class Graph {
  public:
    Graph() = default;

    /// Builds from an edge list; u == v marks a loop. Duplicate edges throw.
    static Graph from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges)
    {
        std::vector<std::vector<Vertex>> adj(n);
        std::vector<char> loops(n, 0);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            if (u == v) {
                if (loops[u])
                    throw GraphError("duplicate loop at " + std::to_string(u));
                loops[u] = 1;
                continue;
            }
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return from_adjacency(std::move(adj), std::move(loops));
    }

    /// Builds from per-vertex neighbor lists, which must already be symmetric
    /// and loop-free.
    static Graph from_adjacency(std::vector<std::vector<Vertex>> adj, std::vector<char> loops)
    {
        Graph g;
        const auto n = static_cast<Vertex>(adj.size());
        if (loops.size() != adj.size())
            throw GraphError("loop vector size mismatch");
        g.offsets_.assign(std::size_t{n} + 1, 0);
        for (Vertex v = 0; v < n; ++v) {
            auto& a = adj[v];
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw GraphError("duplicate neighbor at vertex " + std::to_string(v));
            for (Vertex u : a) {
                if (u == v)
                    throw GraphError("loop inside adjacency list of " + std::to_string(v));
                if (u >= n)
                    throw GraphError("neighbor out of range at vertex " + std::to_string(v));
            }
            g.offsets_[v + 1] = g.offsets_[v] + a.size();
        }
        g.adj_.reserve(g.offsets_[n]);
        for (auto& a : adj)
            g.adj_.insert(g.adj_.end(), a.begin(), a.end());
        g.loops_ = std::move(loops);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u : g.neighbors(v))
                if (!g.has_edge(u, v))
                    throw GraphError("asymmetric adjacency: " + std::to_string(v) + " lists " +
                                     std::to_string(u) + " but not conversely");
        return g;
    }

    Vertex vertex_count() const { return offsets_.empty() ? 0 : static_cast<Vertex>(offsets_.size() - 1); }

    std::span<const Vertex> neighbors(Vertex v) const
    {
        check(v);
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    std::uint32_t degree(Vertex v) const
    {
        check(v);
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    std::uint64_t edge_count() const { return adj_.size() / 2; }

    std::uint64_t loop_count() const
    {
        return static_cast<std::uint64_t>(std::count(loops_.begin(), loops_.end(), 1));
    }

    bool has_loop(Vertex v) const
    {
        check(v);
        return loops_[v] != 0;
    }

    bool has_edge(Vertex u, Vertex v) const
    {
        const auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::uint32_t max_degree() const
    {
        std::uint32_t d = 0;
        for (Vertex v = 0; v < vertex_count(); ++v)
            d = std::max(d, degree(v));
        return d;
    }

    std::vector<Vertex> loop_vertices() const
    {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < vertex_count(); ++v)
            if (loops_[v])
                out.push_back(v);
        return out;
    }

    /// Calls fn(u, v) once per non-loop edge with u < v, in lexicographic order.
    template <class Fn>
    void for_each_edge(Fn&& fn) const
    {
        for (Vertex u = 0; u < vertex_count(); ++u)
            for (Vertex v : neighbors(u))
                if (u < v)
                    fn(u, v);
    }

    /// Copy without the edge {u, v}.
    Graph without_edge(Vertex u, Vertex v) const
    {
        if (!has_edge(u, v))
            throw GraphError("no edge " + std::to_string(u) + "-" + std::to_string(v));
        std::vector<std::vector<Vertex>> adj(vertex_count());
        for (Vertex a = 0; a < vertex_count(); ++a)
            for (Vertex b : neighbors(a))
                if (!((a == u && b == v) || (a == v && b == u)))
                    adj[a].push_back(b);
        return from_adjacency(std::move(adj), loops_);
    }

  private:
    void check(Vertex v) const
    {
        if (v >= vertex_count())
            throw GraphError("vertex " + std::to_string(v) + " out of range");
    }

    std::vector<std::uint64_t> offsets_;
    std::vector<Vertex> adj_;
    std::vector<char> loops_;
};

/// A graph known only through its neighbor rule.
class ImplicitGraph {
  public:
    using NeighborFn = std::function<void(std::uint64_t, std::vector<std::uint64_t>&)>;
    using LoopFn = std::function<bool(std::uint64_t)>;

    ImplicitGraph(std::uint64_t n, NeighborFn neighbors, LoopFn loop = {})
        : n_(n), neighbors_(std::move(neighbors)), loop_(std::move(loop))
    {
    }

    std::uint64_t vertex_count() const { return n_; }

    /// Neighbors of v excluding v itself.
    void neighbors(std::uint64_t v, std::vector<std::uint64_t>& out) const
    {
        out.clear();
        if (neighbors_)
            neighbors_(v, out);
    }

    bool has_loop(std::uint64_t v) const { return loop_ ? loop_(v) : false; }

  private:
    std::uint64_t n_;
    NeighborFn neighbors_;
    LoopFn loop_;
};

/// Explicit copy of an implicit graph; throws if it exceeds `limit` vertices
/// or if the rule is not symmetric.
inline Graph materialize(const ImplicitGraph& ig, std::uint64_t limit)
{
    if (ig.vertex_count() > limit)
        throw GraphError("graph has " + std::to_string(ig.vertex_count()) +
                         " vertices, above the materialization ceiling " + std::to_string(limit));
    if (ig.vertex_count() > std::numeric_limits<Vertex>::max())
        throw GraphError("vertex count exceeds 32-bit ids");
    const auto n = static_cast<Vertex>(ig.vertex_count());
    std::vector<std::vector<Vertex>> adj(n);
    std::vector<char> loops(n, 0);
    std::vector<std::uint64_t> buf;
    for (Vertex v = 0; v < n; ++v) {
        ig.neighbors(v, buf);
        adj[v].reserve(buf.size());
        for (auto u : buf) {
            if (u >= n)
                throw GraphError("neighbor rule produced out-of-range vertex");
            if (u != v)
                adj[v].push_back(static_cast<Vertex>(u));
        }
        loops[v] = ig.has_loop(v) ? 1 : 0;
    }
    return Graph::from_adjacency(std::move(adj), std::move(loops));
}

/// Assignment of every vertex to one of r nonempty classes.
class Partition {
  public:
    Partition() = default;

    Partition(std::vector<std::uint32_t> class_of, std::uint32_t class_count)
        : class_of_(std::move(class_of)), r_(class_count)
    {
        std::vector<char> used(r_, 0);
        for (std::size_t v = 0; v < class_of_.size(); ++v) {
            if (class_of_[v] >= r_)
                throw GraphError("vertex " + std::to_string(v) + " has class " + std::to_string(class_of_[v]) +
                                 " outside [0," + std::to_string(r_) + ")");
            used[class_of_[v]] = 1;
        }
        for (std::uint32_t c = 0; c < r_; ++c)
            if (!used[c])
                throw GraphError("class " + std::to_string(c) + " is empty");
    }

    std::uint64_t vertex_count() const { return class_of_.size(); }
    std::uint32_t class_count() const { return r_; }
    std::uint32_t class_of(std::uint64_t v) const { return class_of_.at(v); }
    const std::vector<std::uint32_t>& assignment() const { return class_of_; }

    std::vector<std::uint64_t> class_sizes() const
    {
        std::vector<std::uint64_t> s(r_, 0);
        for (auto c : class_of_)
            ++s[c];
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

  private:
    std::vector<std::uint32_t> class_of_;
    std::uint32_t r_ = 0;
};

/// Edge counts between and within classes.
class PairEdgeMatrix {
  public:
    static constexpr std::uint32_t kMaxClasses = 4096;

    explicit PairEdgeMatrix(std::uint32_t r) : r_(r), cross_(std::size_t{r} * r, 0), within_(r, 0), loops_(r, 0)
    {
        if (r > kMaxClasses)
            throw GraphError("too many classes for a dense pair matrix: " + std::to_string(r));
    }

    std::uint32_t class_count() const { return r_; }
    std::uint64_t cross(std::uint32_t a, std::uint32_t b) const { return cross_[std::size_t{a} * r_ + b]; }
    std::uint64_t within(std::uint32_t a) const { return within_[a]; }
    std::uint64_t loops_within(std::uint32_t a) const { return loops_[a]; }

    void add_edge(std::uint32_t a, std::uint32_t b)
    {
        if (a == b) {
            ++within_[a];
            return;
        }
        ++cross_[std::size_t{a} * r_ + b];
        ++cross_[std::size_t{b} * r_ + a];
    }
    void add_loop(std::uint32_t a) { ++loops_[a]; }

    void merge(const PairEdgeMatrix& o)
    {
        for (std::size_t i = 0; i < cross_.size(); ++i)
            cross_[i] += o.cross_[i];
        for (std::uint32_t a = 0; a < r_; ++a) {
            within_[a] += o.within_[a];
            loops_[a] += o.loops_[a];
        }
    }

    /// Sum over unordered class pairs plus within-class edges.
    std::uint64_t total_edges() const
    {
        std::uint64_t t = 0;
        for (std::uint32_t a = 0; a < r_; ++a) {
            t += within_[a];
            for (std::uint32_t b = a + 1; b < r_; ++b)
                t += cross(a, b);
        }
        return t;
    }

    friend bool operator==(const PairEdgeMatrix&, const PairEdgeMatrix&) = default;

  private:
    std::uint32_t r_;
    std::vector<std::uint64_t> cross_;
    std::vector<std::uint64_t> within_;
    std::vector<std::uint64_t> loops_;
};

inline PairEdgeMatrix pair_edge_matrix(const Graph& g, const Partition& part)
{
    if (part.vertex_count() != g.vertex_count())
        throw GraphError("partition covers " + std::to_string(part.vertex_count()) + " vertices, graph has " +
                         std::to_string(g.vertex_count()));
    PairEdgeMatrix m(part.class_count());
    g.for_each_edge([&](Vertex u, Vertex v) { m.add_edge(part.class_of(u), part.class_of(v)); });
    for (Vertex v : g.loop_vertices())
        m.add_loop(part.class_of(v));
    return m;
}

// Text formats. Edge list: "n m loops", then "u v" per edge (u < v), then
// "L v" per loop. Partition: "vertex class" per line.

inline void write_edge_list(std::ostream& os, const Graph& g)
{
    os << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.loop_count() << '\n';
    g.for_each_edge([&](Vertex u, Vertex v) { os << u << ' ' << v << '\n'; });
    for (Vertex v : g.loop_vertices())
        os << "L " << v << '\n';
}

inline Graph read_edge_list(std::istream& is)
{
    std::string line;
    std::uint64_t n = 0, m = 0, l = 0;
    if (!std::getline(is, line))
        throw GraphError("edge list is empty");
    {
        std::istringstream hs(line);
        if (!(hs >> n >> m >> l))
            throw GraphError("bad edge list header: '" + line + "'");
    }
    if (n > std::numeric_limits<Vertex>::max())
        throw GraphError("too many vertices");
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::uint64_t seen_edges = 0, seen_loops = 0;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == 'L') {
            std::istringstream ls(line.substr(1));
            std::uint64_t v = 0;
            if (!(ls >> v))
                throw GraphError("bad loop line " + std::to_string(lineno));
            edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v));
            ++seen_loops;
            continue;
        }
        std::istringstream es(line);
        std::uint64_t u = 0, v = 0;
        if (!(es >> u >> v) || u == v)
            throw GraphError("bad edge line " + std::to_string(lineno) + ": '" + line + "'");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        ++seen_edges;
    }
    if (seen_edges != m || seen_loops != l)
        throw GraphError("edge list header promises " + std::to_string(m) + " edges and " + std::to_string(l) +
                         " loops, found " + std::to_string(seen_edges) + " and " + std::to_string(seen_loops));
    return Graph::from_edges(static_cast<Vertex>(n), edges);
}

inline void write_partition(std::ostream& os, const Partition& p)
{
    for (std::uint64_t v = 0; v < p.vertex_count(); ++v)
        os << v << ' ' << p.class_of(v) << '\n';
}

/// Class ids are compacted to 0..r-1 in order of first appearance of the
/// sorted original ids.
inline Partition read_partition(std::istream& is)
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::uint64_t v = 0, c = 0;
        if (!(ls >> v >> c))
            throw GraphError("bad partition line " + std::to_string(lineno));
        rows.emplace_back(v, c);
    }
    std::vector<std::uint64_t> ids;
    for (auto& r : rows)
        ids.push_back(r.second);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<std::uint32_t> class_of(rows.size(), std::numeric_limits<std::uint32_t>::max());
    for (auto [v, c] : rows) {
        if (v >= rows.size())
            throw GraphError("partition vertex " + std::to_string(v) + " out of range");
        if (class_of[v] != std::numeric_limits<std::uint32_t>::max())
            throw GraphError("vertex " + std::to_string(v) + " assigned twice");
        class_of[v] = static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), c) - ids.begin());
    }
    return Partition(std::move(class_of), static_cast<std::uint32_t>(ids.size()));
}

} // namespace polarpart
