// Numeric values of results carrying arbitrary constants.
#include <fracpow/fracpow.hpp>

#include <iostream>

int main()
{
    using namespace fracpow;

    const FracResult prim = derivative_def2(parse_expr("x^3"), Rational(-1));
    std::cout << render_text(prim) << " with c_{-1} = 7 at x = 2: "
              << evaluate_result(prim, 2.0, CoeffSequence({{-1, 7.0}})) << "\n";

    const FracResult half = derivative_def1(parse_expr("x"), Rational(1, 2));
    const CoeffSequence tail(InverseFactorialSquare{});
    const ConvergenceVerdict v = check_convergence(tail, half.order);
    std::cout << render_text(half) << "\n"
              << "c_k = 1/(|k|!)^2: " << (v.passes ? "convergent" : "not convergent")
              << ", limit estimate " << v.estimated_limit << "\n";
    for (double x : {0.5, 1.0, 2.0}) std::cout << "  x = " << x << ": " << evaluate_result(half, x, tail) << "\n";

    try {
        evaluate_result(half, 1.0, CoeffSequence(Geometric{0.5}));
    } catch (const NonConvergentAssignment& e) {
        std::cout << "c_k = 2^k: " << e.what() << "\n";
    }
}
