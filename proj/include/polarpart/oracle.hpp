#pragma once

// Exhaustive set-partition oracles for tiny graphs: pseudo-achromatic number,
// achromatic number and chromatic number. Partitions are enumerated as
// restricted growth strings with branch-and-bound on the class count.
// Loops are ignored, matching the verdict convention.

#include <polarpart/graph.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polarpart {

inline constexpr Vertex kOracleMaxVertices = 12;

/// Largest r with C(r, 2) <= e, i.e. floor(sqrt(2e + 1/4) + 1/2).
inline std::uint64_t edge_bound_parts(std::uint64_t e)
{
    std::uint64_t r = 1;
    while ((r + 1) * r / 2 <= e)
        ++r;
    return r;
}

namespace detail {

    class PartitionSearch {
      public:
        PartitionSearch(const Graph& g, bool independent) : g_(g), independent_(independent)
        {
            if (g.vertex_count() > kOracleMaxVertices)
                throw GraphError("oracle is limited to " + std::to_string(kOracleMaxVertices) + " vertices");
            n_ = g.vertex_count();
            for (Vertex v = 0; v < n_; ++v)
                for (Vertex u : g.neighbors(v))
                    nbr_[v] |= 1u << u;
            cap_ = static_cast<std::uint32_t>(std::min<std::uint64_t>(edge_bound_parts(g.edge_count()), n_));
        }

        /// Max number of classes in a complete partition (into independent
        /// sets if requested).
        std::uint32_t max_complete()
        {
            best_ = n_ == 0 ? 0 : 1;
            if (n_ > 0)
                search_max(0, 0);
            return best_;
        }

        /// Min number of independent classes.
        std::uint32_t min_proper()
        {
            best_ = n_;
            if (n_ > 0)
                search_min(0, 0);
            return best_;
        }

      private:
        bool fits(Vertex v, std::uint32_t c) const { return !independent_ || (members_[c] & nbr_[v]) == 0; }

        void search_max(Vertex v, std::uint32_t used)
        {
            if (used + (n_ - v) <= best_)
                return;
            if (v == n_) {
                if (complete(used))
                    best_ = used;
                return;
            }
            // New class first: reaches large r sooner.
            if (used < cap_) {
                members_[used] |= 1u << v;
                search_max(v + 1, used + 1);
                members_[used] &= ~(1u << v);
            }
            for (std::uint32_t c = 0; c < used; ++c) {
                if (!fits(v, c))
                    continue;
                members_[c] |= 1u << v;
                search_max(v + 1, used);
                members_[c] &= ~(1u << v);
            }
        }

        void search_min(Vertex v, std::uint32_t used)
        {
            if (used >= best_)
                return;
            if (v == n_) {
                best_ = used;
                return;
            }
            for (std::uint32_t c = 0; c < used; ++c) {
                if (!fits(v, c))
                    continue;
                members_[c] |= 1u << v;
                search_min(v + 1, used);
                members_[c] &= ~(1u << v);
            }
            members_[used] |= 1u << v;
            search_min(v + 1, used + 1);
            members_[used] &= ~(1u << v);
        }

        bool complete(std::uint32_t used) const
        {
            for (std::uint32_t a = 0; a < used; ++a) {
                std::uint32_t reach = 0;
                for (Vertex v = 0; v < n_; ++v)
                    if (members_[a] >> v & 1u)
                        reach |= nbr_[v];
                for (std::uint32_t b = a + 1; b < used; ++b)
                    if ((reach & members_[b]) == 0)
                        return false;
            }
            return true;
        }

        const Graph& g_;
        bool independent_;
        Vertex n_ = 0;
        std::uint32_t cap_ = 0;
        std::uint32_t best_ = 0;
        std::array<std::uint32_t, kOracleMaxVertices> nbr_{};
        std::array<std::uint32_t, kOracleMaxVertices> members_{};
    };

} // namespace detail

/// psi(G): the most parts in a complete partition.
inline std::uint32_t brute_force_psi(const Graph& g) { return detail::PartitionSearch(g, false).max_complete(); }

/// chi_a(G): the most parts in a complete partition into independent sets.
inline std::uint32_t brute_force_chi_a(const Graph& g)
{
    return detail::PartitionSearch(g, true).max_complete();
}

/// chi(G).
inline std::uint32_t brute_force_chi(const Graph& g)
{
    return detail::PartitionSearch(g, true).min_proper();
}

} // namespace polarpart
