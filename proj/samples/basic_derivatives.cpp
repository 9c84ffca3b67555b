// Integer, negative and fractional orders under both definitions.
#include <fracpow/fracpow.hpp>

#include <iostream>

int main()
{
    using namespace fracpow;

    const PowerExpr f = parse_expr("x^3");
    for (const char* order : {"2", "-1", "1/2", "-5/3"}) {
        const Rational s = parse_order(order);
        std::cout << "d^(" << s << ") x^3\n"
                  << "  definition 1: " << render_text(derivative_def1(f, s)) << "\n"
                  << "  definition 2: " << render_text(derivative_def2(f, s)) << "\n";
    }

    const FracResult r = derivative_def2(parse_expr("x^5"), parse_order("-1/4"));
    std::cout << "\nd^(-1/4) x^5 = " << render_text(r) << "\n"
              << "LaTeX: " << render_latex(r) << "\n"
              << "JSON:  " << render_json(r) << "\n";
}
