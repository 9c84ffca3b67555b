#pragma once

// JSON form of expressions, results and constant assignments.
//
//   {"terms":[{"coeff":"5/24","exp":"4/1"}],
//    "family":{"kind":"finite","specs":[{"k":-1,"exp":"2/3","gammaArg":"1/1"}],"K":40},
//    "order":"-5/3","definition":2}
//
// Coefficients that are not rational are written as sums of monomials,
// "120*gamma(1/4)^-1 + ...". Specs carry "gen" and "scale" when they differ
// from 0 and 1; infinite families list their tails as {"gen","shift"}.

#include "fracpow/coefficient.hpp"
#include "fracpow/convergence.hpp"
#include "fracpow/deriv.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/parser.hpp"
#include "fracpow/power.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace fracpow {

using Json = nlohmann::json;

inline std::string coeff_to_string(const Coeff& c)
{
    if (c.is_rational()) return c.as_rational().str();
    std::string out;
    for (const auto& [m, r] : c.terms()) {
        if (!out.empty()) out += " + ";
        out += r.str();
        for (const auto& [a, e] : m.factors()) {
            out += "*gamma(" + a.str() + ")";
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

inline Coeff coeff_from_string(std::string_view s)
{
    Coeff total;
    std::size_t start = 0;
    for (;;) {
        const std::size_t plus = s.find(" + ", start);
        const std::string_view piece = s.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
        std::size_t star = piece.find('*');
        Coeff term(parse_rational(piece.substr(0, star)));
        while (star != std::string_view::npos) {
            const std::size_t next = piece.find('*', star + 1);
            const std::string_view f = piece.substr(star + 1, next == std::string_view::npos ? std::string_view::npos : next - star - 1);
            const std::size_t close = f.find(')');
            if (!f.starts_with("gamma(") || close == std::string_view::npos)
                throw Error("malformed coefficient factor '" + std::string(f) + "'");
            const Rational arg = parse_rational(f.substr(6, close - 6));
            int power = 1;
            if (close + 1 < f.size()) {
                if (f[close + 1] != '^') throw Error("malformed coefficient factor '" + std::string(f) + "'");
                const Rational p = parse_rational(f.substr(close + 2));
                if (!p.is_integer() || !fits_ll(p.num()) || boost::multiprecision::abs(p.num()) > 1000)
                    throw Error("malformed gamma power in '" + std::string(f) + "'");
                power = static_cast<int>(p.num());
            }
            Coeff g = Coeff::gamma(arg);
            if (power < 0) g = g.inverse();
            for (int i = 0; i < (power < 0 ? -power : power); ++i) term *= g;
            star = next;
        }
        total += term;
        if (plus == std::string_view::npos) break;
        start = plus + 3;
    }
    return total;
}

namespace detail {

inline Rational rational_field(const Json& j, const char* key)
{
    if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
    const Json& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw Error(std::string("field '") + key + "' must be a rational string");
}

inline Json terms_json(const PowerExpr& e)
{
    Json terms = Json::array();
    for (const auto& t : e.terms()) terms.push_back({{"coeff", coeff_to_string(t.coeff)}, {"exp", t.exponent.pq_str()}});
    return terms;
}

inline PowerExpr terms_from_json(const Json& terms)
{
    if (!terms.is_array()) throw Error("'terms' must be an array");
    std::vector<PowerTerm> out;
    for (const auto& t : terms) {
        const Json& c = t.at("coeff");
        Coeff coeff = c.is_string() ? coeff_from_string(c.get<std::string>()) : Coeff(Rational(c.get<long long>()));
        out.push_back({std::move(coeff), rational_field(t, "exp")});
    }
    return canonicalize(std::move(out));
}

} // namespace detail

inline Json to_json(const PowerExpr& e) { return {{"terms", detail::terms_json(e)}}; }

inline Json to_json(const ConstantFamily& f)
{
    Json specs = Json::array();
    for (const auto& s : f.specs()) {
        Json j = {{"k", s.k}, {"exp", s.exponent.pq_str()}, {"gammaArg", s.gamma_arg.pq_str()}};
        if (s.generation != 0) j["gen"] = s.generation;
        if (s.scale != Coeff(1)) j["scale"] = coeff_to_string(s.scale);
        specs.push_back(std::move(j));
    }
    Json j = {{"kind", f.kind() == ConstantFamily::Kind::Finite ? "finite" : "infinite"},
              {"specs", std::move(specs)},
              {"K", f.truncation()}};
    if (!f.tails().empty()) {
        Json tails = Json::array();
        for (const auto& t : f.tails()) tails.push_back({{"gen", t.generation}, {"shift", t.shift.pq_str()}});
        j["tails"] = std::move(tails);
    }
    return j;
}

inline Json to_json(const FracResult& r)
{
    return {{"terms", detail::terms_json(r.principal)},
            {"family", to_json(r.family)},
            {"order", r.order.pq_str()},
            {"definition", static_cast<int>(r.definition)}};
}

inline Json to_json(const CompositionReport& rep)
{
    Json gap = Json::array();
    for (const auto& e : rep.discrepancy.family_gap) gap.push_back(e.pq_str());
    return {{"chained", to_json(rep.chained)},
            {"direct", to_json(rep.direct)},
            {"discrepancy", {{"terms", detail::terms_json(rep.discrepancy.principal_gap)}, {"familyGap", std::move(gap)}}}};
}

inline PowerExpr power_expr_from_json(const Json& j)
{
    try {
        return detail::terms_from_json(j.at("terms"));
    } catch (const Json::exception& e) {
        throw Error(std::string("invalid expression JSON: ") + e.what());
    }
}

inline ConstantFamily family_from_json(const Json& j)
{
    std::vector<ConstantTermSpec> specs;
    for (const auto& s : j.at("specs")) {
        ConstantTermSpec spec;
        spec.k = s.at("k").get<long long>();
        if (spec.k >= 0) throw Error("constant index must be negative");
        spec.exponent = detail::rational_field(s, "exp");
        spec.gamma_arg = detail::rational_field(s, "gammaArg");
        spec.generation = s.value("gen", 0);
        if (s.contains("scale")) spec.scale = coeff_from_string(s.at("scale").get<std::string>());
        specs.push_back(std::move(spec));
    }
    std::vector<TailSpec> tails;
    if (j.contains("tails"))
        for (const auto& t : j.at("tails")) tails.push_back({t.value("gen", 0), detail::rational_field(t, "shift"), -1});
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "finite" && kind != "infinite") throw Error("family kind must be 'finite' or 'infinite'");
    if ((kind == "infinite") != !tails.empty()) throw Error("family kind does not match its tails");
    return ConstantFamily(std::move(specs), std::move(tails), j.value("K", kDefaultTruncation));
}

inline FracResult frac_result_from_json(const Json& j)
{
    try {
        FracResult r;
        r.principal = detail::terms_from_json(j.at("terms"));
        r.family = family_from_json(j.at("family"));
        r.order = detail::rational_field(j, "order");
        const int def = j.at("definition").get<int>();
        if (def != 1 && def != 2) throw Error("definition must be 1 or 2");
        r.definition = static_cast<Definition>(def);
        return r;
    } catch (const Json::exception& e) {
        throw Error(std::string("invalid result JSON: ") + e.what());
    }
}

/// {"-1": 3.5, "-2": 0, "tail": {"kind": "inverse_factorial_square" | "geometric", "ratio": r}}
inline CoeffSequence coeff_sequence_from_json(const Json& j)
{
    try {
        if (!j.is_object()) throw Error("constants must be a JSON object");
        std::map<long long, double> values;
        TailRule tail = NoTail{};
        for (const auto& [key, v] : j.items()) {
            if (key == "tail") {
                const std::string kind = v.at("kind").get<std::string>();
                if (kind == "inverse_factorial_square")
                    tail = InverseFactorialSquare{};
                else if (kind == "geometric")
                    tail = Geometric{v.at("ratio").get<double>()};
                else
                    throw Error("unknown tail kind '" + kind + "'");
                continue;
            }
            std::size_t used = 0;
            long long k = 0;
            try {
                k = std::stoll(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || used == 0) throw Error("constant key '" + key + "' is not an integer index");
            values[k] = v.get<double>();
        }
        return CoeffSequence(std::move(values), std::move(tail));
    } catch (const Json::exception& e) {
        throw Error(std::string("invalid constants JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
}

inline std::string render_json(const PowerExpr& e) { return to_json(e).dump(); }
inline std::string render_json(const FracResult& r) { return to_json(r).dump(); }
inline std::string render_json(const CompositionReport& r) { return to_json(r).dump(); }

} // namespace fracpow
