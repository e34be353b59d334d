#pragma once

// Algebraically defined bipartite graphs: points (p1..pm) and lines [l1..lm]
// over GF(q), with (p) ~ [l] iff l_j + p_j = f_j(l1, p1, ..., l_{j-1}, p_{j-1})
// for j = 2..m. Polarities are coordinate permutations with Frobenius powers.

#include <polarpart/expr.hpp>
#include <polarpart/gf.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarpart {

class SpecError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxDim = 8;

using VertexId = std::uint64_t;

enum class Side : std::uint8_t { point, line };

inline const char* to_string(Side s) { return s == Side::point ? "point" : "line"; }

/// Coordinates of one vertex, as raw field encodings.
using Coords = std::array<std::uint32_t, kMaxDim>;

struct BiVertex {
    Side side = Side::point;
    std::vector<gf::Elem> coords;

    friend bool operator==(const BiVertex&, const BiVertex&) = default;
};

class AdgSpec {
  public:
    /// fs[j-2] is f_j and may reference l1..l_{j-1}, p1..p_{j-1}.
    AdgSpec(gf::Field field, std::vector<Expr> fs) : field_(std::move(field)), fs_(std::move(fs))
    {
        if (fs_.empty() || fs_.size() + 1 > kMaxDim)
            throw SpecError("dimension must be between 2 and " + std::to_string(kMaxDim));
        for (std::size_t i = 0; i < fs_.size(); ++i) {
            const std::uint32_t j = static_cast<std::uint32_t>(i) + 2;
            if (fs_[i].arity() > 2 * j - 2)
                throw SpecError("f_" + std::to_string(j) + " references a coordinate beyond " +
                                std::to_string(j - 1));
            progs_.push_back(fs_[i].compile(field_));
        }
        q_ = field_.order();
        std::uint64_t n = 1;
        for (std::uint32_t i = 0; i < dim(); ++i)
            n *= q_;
        side_size_ = n;
    }

    const gf::Field& field() const { return field_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(fs_.size()) + 1; }
    std::uint32_t q() const { return q_; }
    const std::vector<Expr>& functions() const { return fs_; }
    /// q^m: number of points (and of lines).
    std::uint64_t side_size() const { return side_size_; }

    /// f_j evaluated on interleaved (l1, p1, l2, p2, ...) encodings.
    std::uint32_t eval_f(std::uint32_t j, std::span<const std::uint32_t> interleaved) const
    {
        return progs_[j - 2].eval(field_, interleaved);
    }

    /// The unique line through point p with first coordinate l1.
    void line_through(const Coords& p, std::uint32_t l1, Coords& out) const
    {
        std::array<std::uint32_t, 2 * kMaxDim> args{};
        out[0] = l1;
        for (std::uint32_t j = 2; j <= dim(); ++j) {
            args[2 * (j - 2)] = out[j - 2];
            args[2 * (j - 2) + 1] = p[j - 2];
            const std::uint32_t rhs = eval_f(j, std::span(args.data(), 2 * (j - 1)));
            out[j - 1] = field_.raw_sub(rhs, p[j - 1]);
        }
    }

    /// The unique point on line l with first coordinate p1.
    void point_on(const Coords& l, std::uint32_t p1, Coords& out) const
    {
        std::array<std::uint32_t, 2 * kMaxDim> args{};
        out[0] = p1;
        for (std::uint32_t j = 2; j <= dim(); ++j) {
            args[2 * (j - 2)] = l[j - 2];
            args[2 * (j - 2) + 1] = out[j - 2];
            const std::uint32_t rhs = eval_f(j, std::span(args.data(), 2 * (j - 1)));
            out[j - 1] = field_.raw_sub(rhs, l[j - 1]);
        }
    }

    bool incident(const Coords& p, const Coords& l) const
    {
        std::array<std::uint32_t, 2 * kMaxDim> args{};
        for (std::uint32_t j = 2; j <= dim(); ++j) {
            args[2 * (j - 2)] = l[j - 2];
            args[2 * (j - 2) + 1] = p[j - 2];
            const std::uint32_t rhs = eval_f(j, std::span(args.data(), 2 * (j - 1)));
            if (field_.raw_add(l[j - 1], p[j - 1]) != rhs)
                return false;
        }
        return true;
    }

    /// Mixed-radix id of a coordinate tuple, first coordinate most significant.
    VertexId encode(const Coords& c) const
    {
        VertexId id = 0;
        for (std::uint32_t i = 0; i < dim(); ++i)
            id = id * q_ + c[i];
        return id;
    }
    Coords decode(VertexId id) const
    {
        Coords c{};
        for (std::uint32_t i = dim(); i-- > 0;) {
            c[i] = static_cast<std::uint32_t>(id % q_);
            id /= q_;
        }
        return c;
    }

    /// Bipartite vertex id: points first, then lines.
    VertexId bipartite_id(const BiVertex& v) const
    {
        return encode(to_coords(v.coords)) + (v.side == Side::line ? side_size_ : 0);
    }
    BiVertex bivertex(VertexId id) const
    {
        const bool line = id >= side_size_;
        const Coords c = decode(line ? id - side_size_ : id);
        return {line ? Side::line : Side::point, to_elems(c)};
    }

    Coords to_coords(const std::vector<gf::Elem>& v) const
    {
        if (v.size() != dim())
            throw SpecError("coordinate vector has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim()));
        Coords c{};
        for (std::uint32_t i = 0; i < dim(); ++i)
            c[i] = field_.encode(v[i]);
        return c;
    }
    std::vector<gf::Elem> to_elems(const Coords& c) const
    {
        std::vector<gf::Elem> v;
        for (std::uint32_t i = 0; i < dim(); ++i)
            v.push_back(field_.at(c[i]));
        return v;
    }

    /// The q lines through p, one per value of l1 in encoding order.
    std::vector<std::vector<gf::Elem>> neighbors_of_point(const std::vector<gf::Elem>& p) const
    {
        const Coords pc = to_coords(p);
        std::vector<std::vector<gf::Elem>> out;
        Coords l{};
        for (std::uint32_t l1 = 0; l1 < q_; ++l1) {
            line_through(pc, l1, l);
            out.push_back(to_elems(l));
        }
        return out;
    }
    std::vector<std::vector<gf::Elem>> neighbors_of_line(const std::vector<gf::Elem>& l) const
    {
        const Coords lc = to_coords(l);
        std::vector<std::vector<gf::Elem>> out;
        Coords p{};
        for (std::uint32_t p1 = 0; p1 < q_; ++p1) {
            point_on(lc, p1, p);
            out.push_back(to_elems(p));
        }
        return out;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& f : fs_)
            fs.push_back(f.to_json());
        return {{"field", {{"p", field_.characteristic()}, {"k", field_.degree()}, {"modulus", field_.modulus()}}},
                {"m", dim()},
                {"fs", fs}};
    }

    /// Accepts {"field": {"p", "k"}, "fs": [...]}; "m" is optional and must
    /// match fs when present.
    static AdgSpec from_json(const nlohmann::json& j)
    {
        const auto& fj = j.at("field");
        gf::Field field = gf::Field::make(fj.at("p").get<std::uint32_t>(), fj.at("k").get<std::uint32_t>());
        if (fj.contains("modulus") && fj.at("modulus").get<std::vector<std::uint32_t>>() != field.modulus())
            throw SpecError("field modulus differs from the canonical choice");
        std::vector<Expr> fs;
        for (const auto& e : j.at("fs"))
            fs.push_back(Expr::from_json(e));
        AdgSpec spec(std::move(field), std::move(fs));
        if (j.contains("m") && j.at("m").get<std::uint32_t>() != spec.dim())
            throw SpecError("m does not match the number of adjacency functions");
        return spec;
    }

  private:
    gf::Field field_;
    std::vector<Expr> fs_;
    std::vector<Expr::Program> progs_;
    std::uint32_t q_ = 0;
    std::uint64_t side_size_ = 0;
};

/// Target coordinate i takes source coordinate `source`, raised to p^frob.
struct CoordRule {
    std::uint32_t source = 0;
    std::uint32_t frob = 0;
};

struct PolaritySpec {
    Side point_image = Side::line;
    Side line_image = Side::point;
    std::vector<CoordRule> point_rules;
    std::vector<CoordRule> line_rules;

    static PolaritySpec uniform(std::uint32_t m, std::uint32_t frob)
    {
        PolaritySpec pol;
        for (std::uint32_t i = 0; i < m; ++i) {
            pol.point_rules.push_back({i, frob});
            pol.line_rules.push_back({i, frob});
        }
        return pol;
    }

    void map_coords(const gf::Field& f, bool from_point, const Coords& in, Coords& out) const
    {
        const auto& rules = from_point ? point_rules : line_rules;
        for (std::size_t i = 0; i < rules.size(); ++i)
            out[i] = f.raw_frobenius(in[rules[i].source], rules[i].frob);
    }

    BiVertex apply(const AdgSpec& spec, const BiVertex& v) const
    {
        const bool from_point = v.side == Side::point;
        Coords in = spec.to_coords(v.coords);
        Coords out{};
        map_coords(spec.field(), from_point, in, out);
        return {from_point ? point_image : line_image, spec.to_elems(out)};
    }

    nlohmann::json to_json() const
    {
        auto rules = [](const std::vector<CoordRule>& rs) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& r : rs)
                a.push_back({{"source", r.source + 1}, {"frobenius", r.frob}});
            return a;
        };
        return {{"point_image", to_string(point_image)},
                {"line_image", to_string(line_image)},
                {"point_to_line", rules(point_rules)},
                {"line_to_point", rules(line_rules)}};
    }
};

enum class CheckMode : std::uint8_t { exhaustive, sampled };

inline const char* to_string(CheckMode m) { return m == CheckMode::exhaustive ? "exhaustive" : "sampled"; }

struct PolarityCheck {
    enum class Clause : std::uint8_t { none, swap_sides, involution, adjacency };
    bool ok = true;
    Clause failed = Clause::none;
    CheckMode mode = CheckMode::exhaustive;
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> seed;
    std::string witness;

    static const char* clause_name(Clause c)
    {
        switch (c) {
        case Clause::none:
            return "none";
        case Clause::swap_sides:
            return "swap_sides";
        case Clause::involution:
            return "involution";
        case Clause::adjacency:
            return "adjacency";
        }
        return "?";
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j{{"ok", ok}, {"failed_clause", clause_name(failed)}, {"mode", to_string(mode)},
                         {"checked", checked}, {"witness", witness}};
        if (seed)
            j["seed"] = *seed;
        return j;
    }
};

namespace detail {
    inline std::string show(const AdgSpec& spec, Side s, const Coords& c)
    {
        std::string out(s == Side::point ? "(" : "[");
        for (std::uint32_t i = 0; i < spec.dim(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(c[i]);
        }
        out += s == Side::point ? ")" : "]";
        return out;
    }
} // namespace detail

/// Checks that pol swaps sides, squares to the identity, and maps incident
/// pairs to incident pairs. Sampled mode draws `samples` random points and
/// incidences.
inline PolarityCheck check_polarity(const AdgSpec& spec, const PolaritySpec& pol, CheckMode mode,
                                    std::uint64_t seed = 1, std::uint64_t samples = 100000)
{
    PolarityCheck res;
    res.mode = mode;
    if (mode == CheckMode::sampled)
        res.seed = seed;
    const std::uint32_t m = spec.dim();
    if (pol.point_rules.size() != m || pol.line_rules.size() != m)
        throw SpecError("polarity dimension does not match the spec");
    for (const auto& r : pol.point_rules)
        if (r.source >= m)
            throw SpecError("polarity rule references a missing coordinate");
    for (const auto& r : pol.line_rules)
        if (r.source >= m)
            throw SpecError("polarity rule references a missing coordinate");

    auto fail = [&](PolarityCheck::Clause c, std::string w) {
        res.ok = false;
        res.failed = c;
        res.witness = std::move(w);
        return res;
    };
    if (pol.point_image != Side::line || pol.line_image != Side::point)
        return fail(PolarityCheck::Clause::swap_sides, "points map to " + std::string(to_string(pol.point_image)) +
                                                           "s, lines map to " + to_string(pol.line_image) + "s");

    const gf::Field& f = spec.field();
    std::mt19937_64 rng(seed);
    const bool all = mode == CheckMode::exhaustive;
    const std::uint64_t count = all ? spec.side_size() : samples;

    Coords a{}, b{}, c{}, d{};
    // pi^2 = id on both sides.
    for (std::uint64_t i = 0; i < count; ++i) {
        for (int side = 0; side < 2; ++side) {
            const VertexId id = all ? i : rng() % spec.side_size();
            a = spec.decode(id);
            pol.map_coords(f, side == 0, a, b);
            pol.map_coords(f, side != 0, b, c);
            for (std::uint32_t k = 0; k < m; ++k)
                if (c[k] != a[k])
                    return fail(PolarityCheck::Clause::involution,
                                detail::show(spec, side == 0 ? Side::point : Side::line, a) + " maps back to " +
                                    detail::show(spec, side == 0 ? Side::point : Side::line, c));
        }
    }
    // (p) ~ [l]  =>  pi([l]) ~ pi((p)).
    for (std::uint64_t i = 0; i < count; ++i) {
        a = spec.decode(all ? i : rng() % spec.side_size());
        const std::uint32_t lo = all ? 0 : static_cast<std::uint32_t>(rng() % spec.q());
        const std::uint32_t hi = all ? spec.q() : lo + 1;
        for (std::uint32_t l1 = lo; l1 < hi; ++l1) {
            spec.line_through(a, l1, b);
            pol.map_coords(f, true, a, c);  // line
            pol.map_coords(f, false, b, d); // point
            ++res.checked;
            if (!spec.incident(d, c))
                return fail(PolarityCheck::Clause::adjacency,
                            detail::show(spec, Side::point, a) + " ~ " + detail::show(spec, Side::line, b) +
                                " but images " + detail::show(spec, Side::point, d) + " and " +
                                detail::show(spec, Side::line, c) + " are not incident");
        }
    }
    return res;
}

/// Polarity graph on the points of an ADG: p ~ r iff r lies on pi(p).
/// Self-incidence is recorded as a loop and never listed as a neighbor.
class PolarityGraph {
  public:
    PolarityGraph(AdgSpec spec, PolaritySpec pol) : spec_(std::move(spec)), pol_(std::move(pol))
    {
        if (pol_.point_rules.size() != spec_.dim() || pol_.line_rules.size() != spec_.dim())
            throw SpecError("polarity dimension does not match the spec");
        if (pol_.point_image != Side::line || pol_.line_image != Side::point)
            throw SpecError("map does not swap points and lines");
    }

    const AdgSpec& spec() const { return spec_; }
    const PolaritySpec& polarity() const { return pol_; }
    std::uint64_t vertex_count() const { return spec_.side_size(); }

    void polar_line(const Coords& p, Coords& line) const { pol_.map_coords(spec_.field(), true, p, line); }

    bool is_absolute(VertexId v) const
    {
        const Coords p = spec_.decode(v);
        Coords l{};
        polar_line(p, l);
        return spec_.incident(p, l);
    }

    /// The neighbor (or v itself, for a loop) with first coordinate x.
    VertexId neighbor_with_first(VertexId v, std::uint32_t x) const
    {
        const Coords p = spec_.decode(v);
        Coords l{}, r{};
        polar_line(p, l);
        spec_.point_on(l, x, r);
        return spec_.encode(r);
    }

    /// Calls fn(u) for each neighbor u != v, in increasing first coordinate.
    template <class Fn>
    void for_each_neighbor(VertexId v, Fn&& fn) const
    {
        const Coords p = spec_.decode(v);
        Coords l{}, r{};
        polar_line(p, l);
        for (std::uint32_t x = 0; x < spec_.q(); ++x) {
            spec_.point_on(l, x, r);
            const VertexId u = spec_.encode(r);
            if (u != v)
                fn(u);
        }
    }

    bool adjacent(VertexId v, VertexId u) const
    {
        const Coords p = spec_.decode(v);
        const Coords r = spec_.decode(u);
        Coords l{};
        polar_line(p, l);
        return spec_.incident(r, l);
    }

    std::uint32_t degree(VertexId v) const
    {
        std::uint32_t d = 0;
        for_each_neighbor(v, [&](VertexId) { ++d; });
        return d;
    }

    std::vector<VertexId> absolute_points() const
    {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < vertex_count(); ++v)
            if (is_absolute(v))
                out.push_back(v);
        return out;
    }

  private:
    AdgSpec spec_;
    PolaritySpec pol_;
};

/// Rejects a polarity that fails its (sampled or exhaustive) check.
inline PolarityGraph build_polarity_graph(const AdgSpec& spec, const PolaritySpec& pol,
                                          CheckMode mode = CheckMode::exhaustive, std::uint64_t seed = 1)
{
    const auto check = check_polarity(spec, pol, mode, seed);
    if (!check.ok)
        throw SpecError(std::string("not a polarity (") + PolarityCheck::clause_name(check.failed) +
                        "): " + check.witness);
    return PolarityGraph(spec, pol);
}

struct SymmetryCheck {
    bool symmetric = true;
    CheckMode mode = CheckMode::exhaustive;
    std::uint32_t function = 0; // j of the first violating f_j
    std::vector<std::uint32_t> args; // interleaved (l1, p1, ...) encodings
    std::optional<std::uint64_t> seed;
};

/// Tests f_j(x1, y1, x2, y2, ...) = f_j(y1, x1, y2, x2, ...) for every j.
/// Exhaustive when the field order is at most 9 and the domain has at most
/// 10^6 tuples; otherwise `samples` random tuples per function.
inline SymmetryCheck is_point_line_symmetric(const AdgSpec& spec, std::uint64_t seed = 1,
                                             std::uint64_t samples = 100000)
{
    SymmetryCheck res;
    const gf::Field& f = spec.field();
    const std::uint32_t q = spec.q();
    std::mt19937_64 rng(seed);
    for (std::uint32_t j = 2; j <= spec.dim(); ++j) {
        const std::uint32_t n = 2 * (j - 1);
        const Expr swapped = spec.functions()[j - 2].swapped();
        const auto sprog = swapped.compile(f);
        std::uint64_t domain = 1;
        bool small = q <= 9;
        for (std::uint32_t i = 0; i < n && small; ++i) {
            domain *= q;
            small = domain <= 1000000;
        }
        const std::uint64_t count = small ? domain : samples;
        if (!small) {
            res.mode = CheckMode::sampled;
            res.seed = seed;
        }
        std::vector<std::uint32_t> args(n);
        for (std::uint64_t t = 0; t < count; ++t) {
            std::uint64_t code = t;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (small) {
                    args[i] = static_cast<std::uint32_t>(code % q);
                    code /= q;
                }
                else {
                    args[i] = static_cast<std::uint32_t>(rng() % q);
                }
            }
            if (spec.eval_f(j, args) != sprog.eval(f, args)) {
                res.symmetric = false;
                res.function = j;
                res.args = args;
                return res;
            }
        }
    }
    return res;
}

} // namespace polarpart
