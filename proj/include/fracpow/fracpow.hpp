#pragma once

#include "fracpow/coefficient.hpp"
#include "fracpow/convergence.hpp"
#include "fracpow/deriv.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/gamma.hpp"
#include "fracpow/harness.hpp"
#include "fracpow/lanczos.hpp"
#include "fracpow/parser.hpp"
#include "fracpow/power.hpp"
#include "fracpow/rational.hpp"
#include "fracpow/render.hpp"
#include "fracpow/serialize.hpp"

namespace fracpow {

template <class T>
std::string render(const T& value, Format format)
{
    switch (format) {
    case Format::Latex: return render_latex(value);
    case Format::Json: return render_json(value);
    case Format::Text: break;
    }
    return render_text(value);
}

} // namespace fracpow
