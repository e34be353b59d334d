#pragma once

// Closed-form complete partitions of the family graphs and the unique
// contact (edge, or loop vertex for a class with itself) between classes.
//
// Class ids are mixed-radix encodings of the class key, first key coordinate
// most significant. Subfield coordinates use their index in the subfield's
// sorted element list.

#include <polarpart/adg.hpp>
#include <polarpart/families.hpp>
#include <polarpart/gf.hpp>
#include <polarpart/graph.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarpart {

class PartitionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Key coordinates of one class. For subfield-valued coordinates the element
/// is stored as a member of the big field.
struct ClassKey {
    std::string family;
    std::vector<gf::Elem> coords;

    friend bool operator==(const ClassKey&, const ClassKey&) = default;
};

/// The unique edge between two classes, or (first == second) the loop vertex
/// of a class with itself. Coordinates are vertex coordinates.
struct Contact {
    std::vector<gf::Elem> first;
    std::vector<gf::Elem> second;

    bool is_loop() const { return first == second; }
};

inline nlohmann::json key_sidecar(const std::vector<ClassKey>& keys)
{
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::vector<std::uint32_t> codes;
        for (auto c : keys[i].coords)
            codes.push_back(c.code);
        classes.push_back({{"class", i}, {"key", codes}});
    }
    return {{"family", keys.empty() ? "" : keys.front().family}, {"classes", classes}};
}

// ---------------------------------------------------------------- plane

/// V_{x,y} = {(x, a beta + y beta^q) : a in GF(q)} on the polarity graph of
/// p2 + l2 = p1 l1 over GF(q^2).
class PlanePartition {
  public:
    PlanePartition(const Family& fam, gf::QuadBasis basis) : basis_(std::move(basis))
    {
        if (fam.name != "plane" || !(fam.spec.field() == basis_.field()))
            throw PartitionError("basis does not belong to the plane family's field");
        big_ = basis_.field().order();
        small_ = basis_.subfield().order();
    }

    const gf::QuadBasis& basis() const { return basis_; }
    std::uint32_t class_count() const { return big_ * small_; }

    std::uint32_t class_id(const ClassKey& k) const
    {
        return k.coords.at(0).code * small_ + basis_.subfield().index_of(k.coords.at(1));
    }
    ClassKey key(std::uint32_t id) const
    {
        const gf::Field& f = basis_.field();
        return {"plane", {f.at(id / small_), basis_.subfield().element(id % small_)}};
    }

    std::uint32_t class_of(VertexId v) const
    {
        const gf::Field& f = basis_.field();
        const auto x = static_cast<std::uint32_t>(v / big_);
        const auto u = f.at(static_cast<std::uint32_t>(v % big_));
        const auto [a, t] = basis_.split_beta(u);
        return x * small_ + basis_.subfield().index_of(t);
    }

    std::uint32_t class_size() const { return small_; }
    /// The a-th member (a < q) of class id: (x, s_a beta + y beta^q).
    VertexId member(std::uint32_t id, std::uint32_t a) const
    {
        const gf::Field& f = basis_.field();
        const gf::Subfield& sub = basis_.subfield();
        const gf::Elem u = basis_.join_beta(sub.element(a), sub.element(id % small_));
        return std::uint64_t{id / small_} * big_ + f.encode(u);
    }

    Partition partition() const
    {
        const std::uint64_t n = std::uint64_t{big_} * big_;
        std::vector<std::uint32_t> cls(n);
        for (VertexId v = 0; v < n; ++v)
            cls[v] = class_of(v);
        return Partition(std::move(cls), class_count());
    }

    std::vector<ClassKey> keys() const
    {
        std::vector<ClassKey> out;
        for (std::uint32_t i = 0; i < class_count(); ++i)
            out.push_back(key(i));
        return out;
    }

    /// For V_{x,y}, V_{z,w}: with x z^q = s beta + t beta^q the edge is
    /// {(x, (s-w) beta + y beta^q), (z, (t-y) beta + w beta^q)}. For a class
    /// with itself the loop vertex is (x, (s_x - y) beta + y beta^q) where
    /// x^(q+1) = s_x beta + s_x beta^q.
    Contact unique_edge(const ClassKey& c1, const ClassKey& c2) const
    {
        const gf::Field& f = basis_.field();
        check(c1);
        check(c2);
        const gf::Elem x = c1.coords[0], y = c1.coords[1];
        const gf::Elem z = c2.coords[0], w = c2.coords[1];
        const std::uint32_t d = basis_.sub_degree();
        if (c1 == c2) {
            const auto [sx, tx] = basis_.split_beta(f.mul(x, f.frobenius(x, d)));
            (void)tx;
            const std::vector<gf::Elem> v{x, basis_.join_beta(f.sub(sx, y), y)};
            return {v, v};
        }
        const auto [s, t] = basis_.split_beta(f.mul(x, f.frobenius(z, d)));
        return {{x, basis_.join_beta(f.sub(s, w), y)}, {z, basis_.join_beta(f.sub(t, y), w)}};
    }

  private:
    void check(const ClassKey& k) const
    {
        if (k.coords.size() != 2 || !basis_.field().contains(k.coords[0]) ||
            !basis_.subfield().contains(k.coords[1]))
            throw PartitionError("not a plane class key over this field");
    }

    gf::QuadBasis basis_;
    std::uint32_t big_ = 0;
    std::uint32_t small_ = 0;
};

// ---------------------------------------------------------------- GQ

/// P_{p1,p2} = {(p1, p2, a)} on GQ_q^pi, q = 2^(2e+1).
class GqPartition {
  public:
    explicit GqPartition(const Family& fam) : field_(fam.spec.field()), e_(fam.e)
    {
        if (fam.name != "gq")
            throw PartitionError("GQ partition needs the gq family");
        q_ = field_.order();
    }

    std::uint32_t class_count() const { return q_ * q_; }
    std::uint32_t class_of(VertexId v) const { return static_cast<std::uint32_t>(v / q_); }
    std::uint32_t class_size() const { return q_; }
    VertexId member(std::uint32_t c, std::uint32_t a) const { return std::uint64_t{c} * q_ + a; }
    std::uint32_t class_id(const ClassKey& k) const { return k.coords.at(0).code * q_ + k.coords.at(1).code; }
    ClassKey key(std::uint32_t id) const { return {"gq", {field_.at(id / q_), field_.at(id % q_)}}; }

    Partition partition() const
    {
        const std::uint64_t n = std::uint64_t{q_} * q_ * q_;
        std::vector<std::uint32_t> cls(n);
        for (VertexId v = 0; v < n; ++v)
            cls[v] = class_of(v);
        return Partition(std::move(cls), class_count());
    }

    std::vector<ClassKey> keys() const
    {
        std::vector<ClassKey> out;
        for (std::uint32_t i = 0; i < class_count(); ++i)
            out.push_back(key(i));
        return out;
    }

    /// {(p1, p2, p1^2 r1^(2^(e+1)) + r2^(2^(e+1))), (r1, r2, p1^(2^(e+1)) r1^2 + p2^(2^(e+1)))};
    /// for a class with itself, the loop vertex (p1, p2, p1^(2^(e+1)+2) + p2^(2^(e+1))).
    Contact unique_edge(const ClassKey& c1, const ClassKey& c2) const
    {
        const gf::Field& f = field_;
        const gf::Elem p1 = c1.coords.at(0), p2 = c1.coords.at(1);
        const gf::Elem r1 = c2.coords.at(0), r2 = c2.coords.at(1);
        auto hi = [&](gf::Elem x) { return f.frobenius(x, e_ + 1); };
        if (c1 == c2) {
            const gf::Elem z = f.add(f.mul(hi(p1), f.mul(p1, p1)), hi(p2));
            const std::vector<gf::Elem> v{p1, p2, z};
            return {v, v};
        }
        const gf::Elem a = f.add(f.mul(f.mul(p1, p1), hi(r1)), hi(r2));
        const gf::Elem b = f.add(f.mul(hi(p1), f.mul(r1, r1)), hi(p2));
        return {{p1, p2, a}, {r1, r2, b}};
    }

  private:
    gf::Field field_;
    std::uint32_t e_;
    std::uint32_t q_ = 0;
};

// ---------------------------------------------------------------- GH

/// P_{p1,p2,p3} = {(p1, p2, p3, a, b)} on GH_q^pi, q = 3^(2e+1).
class GhPartition {
  public:
    explicit GhPartition(const Family& fam) : field_(fam.spec.field()), e_(fam.e)
    {
        if (fam.name != "gh")
            throw PartitionError("GH partition needs the gh family");
        q_ = field_.order();
    }

    std::uint32_t class_count() const { return q_ * q_ * q_; }
    std::uint32_t class_of(VertexId v) const { return static_cast<std::uint32_t>(v / (std::uint64_t{q_} * q_)); }
    /// Vertex id of the a-th member of class c (a < q^2).
    VertexId member(std::uint32_t c, std::uint32_t a) const { return std::uint64_t{c} * q_ * q_ + a; }
    std::uint32_t class_size() const { return q_ * q_; }
    std::uint32_t class_id(const ClassKey& k) const
    {
        return (k.coords.at(0).code * q_ + k.coords.at(1).code) * q_ + k.coords.at(2).code;
    }
    ClassKey key(std::uint32_t id) const
    {
        return {"gh", {field_.at(id / (q_ * q_)), field_.at(id / q_ % q_), field_.at(id % q_)}};
    }

    Partition partition() const
    {
        const std::uint64_t n = std::uint64_t{class_count()} * q_ * q_;
        std::vector<std::uint32_t> cls(n);
        for (VertexId v = 0; v < n; ++v)
            cls[v] = class_of(v);
        return Partition(std::move(cls), class_count());
    }

    /// a = p1^3 r1^(3^(e+1)) - r2^(3^(e+1)),  b = p1^3 r1^(2*3^(e+1)) - r3^(3^(e+1)),
    /// c = (p1 r1^(3^(e+1)) - p2)^(3^(e+1)),  d = (p1^2 r1^(3^(e+1)) - p3)^(3^(e+1));
    /// the edge is {(p1,p2,p3,a,b), (r1,r2,r3,c,d)}. A class with itself has
    /// c = a and d = b, i.e. a loop.
    Contact unique_edge(const ClassKey& c1, const ClassKey& c2) const
    {
        const gf::Field& f = field_;
        const gf::Elem p1 = c1.coords.at(0), p2 = c1.coords.at(1), p3 = c1.coords.at(2);
        const gf::Elem r1 = c2.coords.at(0), r2 = c2.coords.at(1), r3 = c2.coords.at(2);
        auto hi = [&](gf::Elem x) { return f.frobenius(x, e_ + 1); };
        const gf::Elem p1_3 = f.pow(p1, 3);
        if (c1 == c2) {
            const gf::Elem a = f.sub(f.mul(p1_3, hi(p1)), hi(p2));
            const gf::Elem b = f.sub(f.mul(p1_3, f.pow(hi(p1), 2)), hi(p3));
            const std::vector<gf::Elem> v{p1, p2, p3, a, b};
            return {v, v};
        }
        const gf::Elem r1h = hi(r1);
        const gf::Elem a = f.sub(f.mul(p1_3, r1h), hi(r2));
        const gf::Elem b = f.sub(f.mul(p1_3, f.mul(r1h, r1h)), hi(r3));
        const gf::Elem c = hi(f.sub(f.mul(p1, r1h), p2));
        const gf::Elem d = hi(f.sub(f.mul(f.mul(p1, p1), r1h), p3));
        return {{p1, p2, p3, a, b}, {r1, r2, r3, c, d}};
    }

  private:
    gf::Field field_;
    std::uint32_t e_;
    std::uint32_t q_ = 0;
};

// ---------------------------------------------------------------- general

/// Complete partition of a bipartite ADG over GF(q)^m, m odd: point classes
/// keyed by (p1, p3, ..., pm), line classes by (l1, l2, l4, ..., l_{m-1}),
/// joined by `pairing` (point key -> line key; identity when empty).
/// Vertex ids are bipartite ids (points first).
inline Partition general_odd_partition(const AdgSpec& spec, std::vector<std::uint32_t> pairing = {})
{
    const std::uint32_t m = spec.dim();
    if (m % 2 == 0)
        throw PartitionError("odd construction needs odd m, got " + std::to_string(m));
    const std::uint32_t q = spec.q();
    std::uint64_t keys = 1;
    for (std::uint32_t i = 0; i < (m + 1) / 2; ++i)
        keys *= q;
    if (keys > std::numeric_limits<std::uint32_t>::max())
        throw PartitionError("too many classes");
    const auto r = static_cast<std::uint32_t>(keys);
    if (pairing.empty()) {
        pairing.resize(r);
        for (std::uint32_t i = 0; i < r; ++i)
            pairing[i] = i;
    }
    if (pairing.size() != r)
        throw PartitionError("pairing has " + std::to_string(pairing.size()) + " entries, expected " +
                             std::to_string(r));
    std::vector<std::uint32_t> line_class(r, std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < r; ++i) {
        if (pairing[i] >= r || line_class[pairing[i]] != std::numeric_limits<std::uint32_t>::max())
            throw PartitionError("pairing is not a bijection");
        line_class[pairing[i]] = i;
    }

    const std::uint64_t side = spec.side_size();
    std::vector<std::uint32_t> cls(2 * side);
    for (VertexId v = 0; v < side; ++v) {
        const Coords c = spec.decode(v);
        std::uint64_t pk = 0, lk = 0;
        for (std::uint32_t i = 0; i < m; i += 2) // p1, p3, ..., pm
            pk = pk * q + c[i];
        lk = c[0]; // l1, l2, l4, ..., l_{m-1}
        for (std::uint32_t i = 1; i < m; i += 2)
            lk = lk * q + c[i];
        cls[v] = static_cast<std::uint32_t>(pk);
        cls[side + v] = line_class[lk];
    }
    return Partition(std::move(cls), r);
}

/// Complete partition of a bipartite ADG over GF(q^2)^m, m even. The last
/// coordinate is split as u' + u'' mu. Point classes are keyed by
/// (p1, p3, ..., p_{m-1}, p_m'), line classes by (l1, l2, l4, ..., l_{m-2},
/// l_m''); classes with equal key encodings are joined.
inline Partition general_even_partition(const AdgSpec& spec, const gf::QuadBasis& basis)
{
    const std::uint32_t m = spec.dim();
    if (m % 2 != 0)
        throw PartitionError("even construction needs even m, got " + std::to_string(m));
    if (!(spec.field() == basis.field()))
        throw PartitionError("basis belongs to a different field");
    const gf::Field& f = spec.field();
    const std::uint32_t big = spec.q();
    const std::uint32_t small = basis.subfield().order();
    std::uint64_t keys = small;
    for (std::uint32_t i = 0; i < m / 2; ++i)
        keys *= big;
    if (keys > std::numeric_limits<std::uint32_t>::max())
        throw PartitionError("too many classes");

    const std::uint64_t side = spec.side_size();
    std::vector<std::uint32_t> cls(2 * side);
    for (VertexId v = 0; v < side; ++v) {
        const Coords c = spec.decode(v);
        const auto [s, t] = basis.split_mu(f.at(c[m - 1]));
        std::uint64_t pk = 0;
        for (std::uint32_t i = 0; i + 1 < m; i += 2) // p1, p3, ..., p_{m-1}
            pk = pk * big + c[i];
        pk = pk * small + basis.subfield().index_of(s);
        std::uint64_t lk = c[0]; // l1, l2, l4, ..., l_{m-2}
        for (std::uint32_t i = 1; i + 1 < m; i += 2)
            lk = lk * big + c[i];
        lk = lk * small + basis.subfield().index_of(t);
        cls[v] = static_cast<std::uint32_t>(pk);
        cls[side + v] = static_cast<std::uint32_t>(lk);
    }
    return Partition(std::move(cls), static_cast<std::uint32_t>(keys));
}

/// V_{x1, y2, ..., ym} = {(x1, a2 beta + y2 beta^q, ..., am beta + ym beta^q)}
/// on the conjugation polarity graph of a point-line-symmetric system over
/// GF(q^2), m even. Vertex ids are polarity-graph (point) ids.
inline Partition general_polarity_partition(const AdgSpec& spec, const gf::QuadBasis& basis,
                                            std::uint64_t seed = 1)
{
    const std::uint32_t m = spec.dim();
    if (m % 2 != 0)
        throw PartitionError("polarity construction needs even m, got " + std::to_string(m));
    if (!(spec.field() == basis.field()))
        throw PartitionError("basis belongs to a different field");
    const auto sym = is_point_line_symmetric(spec, seed);
    if (!sym.symmetric)
        throw PartitionError("f_" + std::to_string(sym.function) + " is not point-line-symmetric");
    const gf::Field& f = spec.field();
    const std::uint32_t big = spec.q();
    const std::uint32_t small = basis.subfield().order();
    std::uint64_t keys = big;
    for (std::uint32_t i = 1; i < m; ++i)
        keys *= small;
    if (keys > std::numeric_limits<std::uint32_t>::max())
        throw PartitionError("too many classes");

    const std::uint64_t side = spec.side_size();
    std::vector<std::uint32_t> cls(side);
    for (VertexId v = 0; v < side; ++v) {
        const Coords c = spec.decode(v);
        std::uint64_t k = c[0];
        for (std::uint32_t i = 1; i < m; ++i) {
            const auto [a, t] = basis.split_beta(f.at(c[i]));
            k = k * small + basis.subfield().index_of(t);
        }
        cls[v] = static_cast<std::uint32_t>(k);
    }
    return Partition(std::move(cls), static_cast<std::uint32_t>(keys));
}

} // namespace polarpart
