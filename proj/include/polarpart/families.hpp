#pragma once

// The concrete families: biaffine plane with its unitary polarity, the
// generalized quadrangle and hexagon with their Tits-type polarities, the
// original hexagon coordinatization and its isomorphism to GH_q, and the
// coordinatewise conjugation polarity of a point-line-symmetric system.

#include <polarpart/adg.hpp>
#include <polarpart/gf.hpp>

#include <cstdint>
#include <string>

namespace polarpart {

struct Family {
    std::string name;
    std::uint64_t q = 0; // order of the subfield the construction is named after
    std::uint32_t e = 0; // exponent parameter for gq/gh, 0 otherwise
    AdgSpec spec;
    PolaritySpec polarity;
};

/// p2 + l2 = p1 l1 over GF(q^2), pi = coordinatewise q-th power.
inline Family plane_family(std::uint64_t q)
{
    const auto [p, d] = gf::prime_power(q);
    gf::Field field = gf::Field::make(p, 2 * d);
    AdgSpec spec(field, {Expr::point(1) * Expr::line(1)});
    return {"plane", q, 0, std::move(spec), PolaritySpec::uniform(2, d)};
}

/// GQ_q over GF(q): p2 + l2 = p1 l1, p3 + l3 = p1^2 l1.
inline AdgSpec gq_spec(const gf::Field& field)
{
    return AdgSpec(field, {Expr::point(1) * Expr::line(1), Expr::point(1).pow(2) * Expr::line(1)});
}

/// q = 2^(2e+1). e = 0 is rejected unless allow_small_e is set.
inline Family gq_family(std::uint32_t e, bool allow_small_e = false)
{
    if (e == 0 && !allow_small_e)
        throw SpecError("gq needs e >= 1 (pass the small-e override to try e = 0)");
    const std::uint32_t k = 2 * e + 1;
    gf::Field field = gf::Field::make(2, k);
    PolaritySpec pol;
    // (p1, p2, p3) -> [p1^(2^(e+1)), p3^(2^e), p2^(2^(e+1))]
    pol.point_rules = {{0, e + 1}, {2, e}, {1, e + 1}};
    // [l1, l2, l3] -> (l1^(2^e), l3^(2^e), l2^(2^(e+1)))
    pol.line_rules = {{0, e}, {2, e}, {1, e + 1}};
    return {"gq", field.order(), e, gq_spec(field), std::move(pol)};
}

/// GH_q over GF(q), q a power of 3: p2 + l2 = p1 l1, p3 + l3 = p1^2 l1,
/// p4 + l4 = p1^3 l1, p5 + l5 = p1^3 l1^2.
inline AdgSpec gh_spec(const gf::Field& field)
{
    if (field.characteristic() != 3)
        throw SpecError("gh needs a field of characteristic 3");
    const Expr p1 = Expr::point(1);
    const Expr l1 = Expr::line(1);
    return AdgSpec(field, {p1 * l1, p1.pow(2) * l1, p1.pow(3) * l1, p1.pow(3) * l1.pow(2)});
}

/// q = 3^(2e+1).
inline Family gh_family(std::uint32_t e, bool allow_small_e = false)
{
    if (e == 0 && !allow_small_e)
        throw SpecError("gh needs e >= 1 (pass the small-e override to try e = 0)");
    const std::uint32_t k = 2 * e + 1;
    gf::Field field = gf::Field::make(3, k);
    PolaritySpec pol;
    // (p1..p5) -> [p1^(3^(e+1)), p4^(3^e), p5^(3^e), p2^(3^(e+1)), p3^(3^(e+1))]
    pol.point_rules = {{0, e + 1}, {3, e}, {4, e}, {1, e + 1}, {2, e + 1}};
    // [l1..l5] -> (l1^(3^e), l4^(3^e), l5^(3^e), l2^(3^(e+1)), l3^(3^(e+1)))
    pol.line_rules = {{0, e}, {3, e}, {4, e}, {1, e + 1}, {2, e + 1}};
    return {"gh", field.order(), e, gh_spec(field), std::move(pol)};
}

/// The hexagon in its original coordinates over GF(q), q a power of 3:
/// p2 + l2 = p1 l1, p3 + l3 = p1 l2, p4 + l4 = p1 l3, p5 + l5 = p2 l3 - p3 l2.
inline AdgSpec gh_original_spec(std::uint64_t q)
{
    const auto [p, d] = gf::prime_power(q);
    if (p != 3)
        throw SpecError("gh-original needs q a power of 3, got " + std::to_string(q));
    gf::Field field = gf::Field::make(3, d);
    const Expr p1 = Expr::point(1), p2 = Expr::point(2), p3 = Expr::point(3);
    const Expr l1 = Expr::line(1), l2 = Expr::line(2), l3 = Expr::line(3);
    return AdgSpec(field, {p1 * l1, p1 * l2, p1 * l3, p2 * l3 - p3 * l2});
}

/// Isomorphism from the original hexagon coordinates to GH_q:
/// (p) -> (p1, p2, p3 + p1 p2, p4 + p1 p3 + p1^2 p2, -p5 + p2^2 p1 - p2 p3),
/// [l] -> [l1, l2, l3, l4, -l5 + l2 l3].
inline BiVertex gh_phi(const gf::Field& f, const BiVertex& v)
{
    if (v.coords.size() != 5)
        throw SpecError("gh_phi needs 5 coordinates");
    const auto& c = v.coords;
    BiVertex out{v.side, c};
    if (v.side == Side::point) {
        out.coords[2] = f.add(c[2], f.mul(c[0], c[1]));
        out.coords[3] = f.add(f.add(c[3], f.mul(c[0], c[2])), f.mul(f.mul(c[0], c[0]), c[1]));
        out.coords[4] = f.sub(f.add(f.neg(c[4]), f.mul(f.mul(c[1], c[1]), c[0])), f.mul(c[1], c[2]));
    }
    else {
        out.coords[4] = f.add(f.neg(c[4]), f.mul(c[1], c[2]));
    }
    return out;
}

/// pi((p)) = [p1^q, ..., pm^q] for a system over GF(q^2). Requires
/// point-line symmetry.
inline PolaritySpec generic_conjugation_polarity(const AdgSpec& spec, std::uint64_t seed = 1)
{
    if (spec.field().degree() % 2 != 0)
        throw SpecError("conjugation polarity needs a field GF(q^2)");
    const auto sym = is_point_line_symmetric(spec, seed);
    if (!sym.symmetric) {
        std::string args;
        for (auto a : sym.args)
            args += (args.empty() ? "" : ",") + std::to_string(a);
        throw SpecError("f_" + std::to_string(sym.function) + " is not point-line-symmetric at (" + args + ")");
    }
    return PolaritySpec::uniform(spec.dim(), spec.field().degree() / 2);
}

} // namespace polarpart
