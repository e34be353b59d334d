#include <polarpart/expr.hpp>

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace polarpart;
using gf::Field;

namespace {

// Evaluates over every assignment of the first `slots` variables.
void expect_same_function(const Expr& a, const Expr& b, const Field& f, std::uint32_t slots)
{
    const auto pa = a.compile(f), pb = b.compile(f);
    std::vector<std::uint32_t> args(std::max<std::uint32_t>(slots, 1), 0);
    for (;;) {
        ASSERT_EQ(pa.eval(f, args), pb.eval(f, args));
        std::size_t i = 0;
        while (i < slots && ++args[i] == f.order())
            args[i++] = 0;
        if (i == slots)
            return;
    }
}

Expr random_expr(std::mt19937_64& rng, int depth, std::uint32_t slots, std::uint32_t order)
{
    const auto pick = rng() % (depth <= 0 ? 2 : 7);
    switch (pick) {
    case 0:
        return Expr::var(static_cast<std::uint32_t>(rng() % slots));
    case 1:
        return Expr::constant(rng() % order);
    case 2:
        return random_expr(rng, depth - 1, slots, order) + random_expr(rng, depth - 1, slots, order);
    case 3:
        return random_expr(rng, depth - 1, slots, order) - random_expr(rng, depth - 1, slots, order);
    case 4:
        return random_expr(rng, depth - 1, slots, order) * random_expr(rng, depth - 1, slots, order);
    case 5:
        return -random_expr(rng, depth - 1, slots, order);
    default:
        return random_expr(rng, depth - 1, slots, order).pow(rng() % 5);
    }
}

} // namespace

TEST(Expr, ParseAndPrint)
{
    const Expr e = Expr::parse("p1*l1");
    EXPECT_EQ(e.to_string(), (Expr::point(1) * Expr::line(1)).to_string());
    EXPECT_EQ(e.arity(), 2u);
    EXPECT_EQ(Expr::parse("p1^2*l1").arity(), 2u);
    EXPECT_EQ(Expr::parse("p2*l3 - p3*l2").arity(), 6u);
    EXPECT_EQ(Expr::parse("3").arity(), 0u);
    EXPECT_THROW(Expr::parse("p0"), ExprError);
    EXPECT_THROW(Expr::parse("(p1"), ExprError);
    EXPECT_THROW(Expr::parse("p1 +"), ExprError);
    EXPECT_THROW(Expr::parse("p1 l1"), ExprError);
}

TEST(Expr, EvaluatesByHand)
{
    const Field f = Field::of_order(9);
    const Expr e = Expr::parse("p1^3*l1^2 - l2 + 2");
    const auto prog = e.compile(f);
    for (std::uint32_t l1 = 0; l1 < 9; ++l1)
        for (std::uint32_t p1 = 0; p1 < 9; ++p1)
            for (std::uint32_t l2 = 0; l2 < 9; ++l2) {
                const gf::Elem want = f.add(
                    f.sub(f.mul(f.pow(f.at(p1), 3), f.pow(f.at(l1), 2)), f.at(l2)), f.at(2));
                const std::vector<std::uint32_t> args{l1, p1, l2};
                ASSERT_EQ(prog.eval(f, args), want.code);
            }
    EXPECT_THROW(Expr::constant(9).compile(f), ExprError);
}

TEST(Expr, RoundTripsThroughTextAndJson)
{
    std::mt19937_64 rng(7);
    const Field f = Field::of_order(4);
    for (int i = 0; i < 300; ++i) {
        const Expr e = random_expr(rng, 4, 4, f.order());
        const Expr back = Expr::parse(e.to_string());
        EXPECT_EQ(back.to_string(), e.to_string());
        expect_same_function(e, back, f, 4);
        const Expr j = Expr::from_json(e.to_json());
        EXPECT_EQ(j.to_string(), e.to_string());
        expect_same_function(e, j, f, 4);
        expect_same_function(e, Expr::from_json(nlohmann::json(e.to_string())), f, 4);
    }
}

TEST(Expr, SwapExchangesPointsAndLines)
{
    const Field f = Field::of_order(4);
    const Expr e = Expr::parse("l1^2*p1 + l2");
    const Expr s = e.swapped();
    EXPECT_EQ(s.to_string(), Expr::parse("p1^2*l1 + p2").to_string());
    const auto pe = e.compile(f), ps = s.compile(f);
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b)
            for (std::uint32_t c = 0; c < 4; ++c)
                for (std::uint32_t d = 0; d < 4; ++d) {
                    const std::vector<std::uint32_t> x{a, b, c, d}, y{b, a, d, c};
                    ASSERT_EQ(ps.eval(f, x), pe.eval(f, y));
                }
}
