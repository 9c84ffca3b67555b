#include <fracpow/deriv.hpp>
#include <fracpow/parser.hpp>
#include <fracpow/power.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fracpow;

namespace {

PowerExpr term(long long c, Rational e) { return monomial(Coeff(c), e); }

} // namespace

TEST(Canonicalize, MergesSortsAndDropsZeros)
{
    const PowerExpr merged = canonicalize({{Coeff(2), Rational(3)}, {Coeff(3), Rational(3)}});
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_EQ(merged.terms()[0].coeff, Coeff(5));
    EXPECT_TRUE(canonicalize({{Coeff(1), Rational(2)}, {Coeff(-1), Rational(2)}}).empty());
    const PowerExpr single = canonicalize({{Coeff(-8), Rational(11)}});
    EXPECT_EQ(single, term(-8, Rational(11)));
    const PowerExpr sorted = canonicalize({{Coeff(1), Rational(7, 2)}, {Coeff(-4), Rational(-1, 3)}});
    EXPECT_EQ(sorted.exponents(), (std::vector<Rational>{Rational(-1, 3), Rational(7, 2)}));
}

TEST(Canonicalize, Idempotent)
{
    const PowerExpr e = parse_expr("3x^2 + x - 2x^2 + 5 + x^(1/2)");
    EXPECT_EQ(canonicalize(e.terms()), e);
}

TEST(Evaluate, PowerFunctionConvention)
{
    EXPECT_DOUBLE_EQ(evaluate(term(1, Rational(2)), 3.0), 9.0);
    EXPECT_DOUBLE_EQ(evaluate(term(5, Rational(0)), 0.0), 5.0);
    EXPECT_NEAR(evaluate(term(1, Rational(1, 2)), 4.0), 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(evaluate(term(1, Rational(3)), 0.0), 0.0);
    EXPECT_THROW(evaluate(term(1, Rational(1)), -1.0), std::domain_error);
}

TEST(Evaluate, NegativeExponentAtZeroRaisesFlag)
{
    const Evaluation ev = evaluate_checked(term(1, Rational(-2)) + term(4, Rational(0)), 0.0);
    EXPECT_DOUBLE_EQ(ev.value, 4.0);
    EXPECT_TRUE(ev.negative_exponent_at_zero);
    EXPECT_FALSE(evaluate_checked(term(1, Rational(2)), 0.0).negative_exponent_at_zero);
}

TEST(Evaluate, LinearInCoefficients)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_real_distribution<double> xs(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
        PowerExpr e1;
        PowerExpr e2;
        for (int j = 0; j < 3; ++j) {
            e1 = e1 + monomial(Coeff(Rational(num(rng), den(rng))), Rational(num(rng), den(rng)));
            e2 = e2 + monomial(Coeff(Rational(num(rng), den(rng))), Rational(num(rng), den(rng)));
        }
        const Rational a(num(rng), den(rng));
        const Rational b(num(rng), den(rng));
        const double x = xs(rng);
        const double lhs = evaluate(Coeff(a) * e1 + Coeff(b) * e2, x);
        const double rhs = a.to_double() * evaluate(e1, x) + b.to_double() * evaluate(e2, x);
        const double scale = std::abs(a.to_double() * evaluate(e1, x)) + std::abs(b.to_double() * evaluate(e2, x));
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(scale, 1e-300));
    }
}

TEST(SemiEqual, SpanMembership)
{
    const FracResult base = derivative_def2(term(1, Rational(3)), Rational(-1));
    FracResult shifted = base;
    shifted.principal = shifted.principal + term(5, Rational(0));
    EXPECT_TRUE(semi_equal(base, shifted));
    FracResult off = base;
    off.principal = off.principal + term(1, Rational(3));
    EXPECT_FALSE(semi_equal(base, off));
    EXPECT_TRUE(semi_equal(base, base));
}

TEST(SemiEqual, InfiniteTailMembership)
{
    const FracResult base = derivative_def1(term(1, Rational(1)), Rational(1, 2));
    FracResult shifted = base;
    shifted.principal = shifted.principal + term(2, Rational(-7, 2));  // k = -3
    EXPECT_TRUE(semi_equal(base, shifted));
    shifted.principal = shifted.principal + term(2, Rational(1, 3));
    EXPECT_FALSE(semi_equal(base, shifted));
}

TEST(SemiEqual, RequiresSameOrderAndDefinition)
{
    const PowerExpr f = term(1, Rational(3));
    EXPECT_THROW(semi_equal(derivative_def2(f, Rational(-1)), derivative_def2(f, Rational(-2))), DifferentOrder);
    EXPECT_THROW(semi_equal(derivative_def1(f, Rational(-1)), derivative_def2(f, Rational(-1))), DifferentOrder);
}

TEST(EvaluateResult, Examples)
{
    const FracResult prim = derivative_def2(term(1, Rational(3)), Rational(-1));
    EXPECT_DOUBLE_EQ(evaluate_result(prim, 2.0, CoeffSequence({{-1, 7.0}})), 11.0);

    const FracResult r = derivative_def2(parse_expr("2x^3 + x^(1/2)"), Rational(1, 2));
    EXPECT_NEAR(evaluate_result(r, 1.0, CoeffSequence{}), r.principal.terms()[0].coeff.value() + r.principal.terms()[1].coeff.value(),
                1e-14);
    EXPECT_THROW(evaluate_result(r, 0.0, CoeffSequence{}), std::domain_error);
}

TEST(EvaluateResult, TruncationConvergesForInverseFactorialSquare)
{
    FracResult r30 = derivative_def1(term(1, Rational(1)), Rational(1, 2));
    FracResult r60 = r30;
    r30.family.set_truncation(30);
    r60.family.set_truncation(60);
    const CoeffSequence seq(InverseFactorialSquare{});
    for (double x : {0.5, 1.0, 2.0}) EXPECT_LT(std::abs(evaluate_result(r30, x, seq) - evaluate_result(r60, x, seq)), 1e-12);
}

TEST(EvaluateResult, RejectsNonConvergentTail)
{
    const FracResult r = derivative_def1(term(1, Rational(1)), Rational(1, 2));
    EXPECT_THROW(evaluate_result(r, 1.0, CoeffSequence(Geometric{0.5})), NonConvergentAssignment);
}

TEST(ConstantFamily, TruncationMustBePositive)
{
    EXPECT_THROW(ConstantFamily({}, {}, 0), std::invalid_argument);
    ConstantFamily f;
    EXPECT_THROW(f.set_truncation(0), std::invalid_argument);
}

TEST(CoeffSequence, RejectsNonFiniteAndNonNegativeIndices)
{
    EXPECT_THROW(CoeffSequence({{-1, std::nan("")}}), std::invalid_argument);
    EXPECT_THROW(CoeffSequence({{0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(CoeffSequence(Geometric{INFINITY}), std::invalid_argument);
}

TEST(Convergence, ClosedFormVerdicts)
{
    const ConvergenceVerdict ifs = check_convergence(CoeffSequence(InverseFactorialSquare{}), Rational(1, 2));
    EXPECT_TRUE(ifs.passes);
    EXPECT_LT(ifs.estimated_limit, 1e-6);
    EXPECT_EQ(ifs.window, (std::pair<long long, long long>{-2, -200}));
    for (std::size_t j = 0; j < ifs.estimates.size(); ++j) {
        const double n = static_cast<double>(j + 2);
        EXPECT_NEAR(ifs.estimates[j], n / ((n + 1) * (n + 1)), 1e-12);
    }

    const ConvergenceVerdict geo = check_convergence(CoeffSequence(Geometric{0.5}), Rational(1, 2));
    EXPECT_FALSE(geo.passes);
    EXPECT_NEAR(geo.estimates.back(), 100.0, 1e-9);

    EXPECT_TRUE(check_convergence(CoeffSequence({{-1, 3.0}}), Rational(1, 2)).passes);
}

TEST(Convergence, ZeroFollowedByNonzeroIsIndeterminate)
{
    // explicit c_{-3} = 0 inside a nonzero geometric tail
    const CoeffSequence seq({{-3, 0.0}}, Geometric{0.1});
    EXPECT_THROW(check_convergence(seq, Rational(1, 2)), ZeroDenominatorInRatio);
}
