#pragma once

// fracpow command line: deriv, eval, table, gamma, verify, compose.
//
// Exit codes: 0 success, 1 parse or usage error, 2 mathematically undefined,
// 3 verification failure.

#include "fracpow/fracpow.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fracpow::cli {

enum Exit { kOk = 0, kUsage = 1, kUndefined = 2, kVerifyFailed = 3 };

struct Config {
    std::string expr;
    std::string order;
    int definition = 2;
    std::string format = "text";
    long long truncation = kDefaultTruncation;
    std::string constants = "zero";
    double at = 0.0;
    double from = 0.0;
    double to = 1.0;
    long long steps = 10;
    std::string z;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    int times = 2;
};

namespace detail {

inline const std::set<std::string>& value_options()
{
    static const std::set<std::string> opts = {"--order", "--def", "--format", "--K", "--expr", "--z", "--constants", "--at",
                                               "--from", "--to", "--steps", "--seed", "--trials", "--times"};
    return opts;
}

// Values and positionals that start with '-' ("-5/3", "-x^2") would be read
// as option names; rewrite them into "--name=value" form.
inline std::vector<std::string> normalize_args(const std::vector<std::string>& args)
{
    std::vector<std::string> out;
    std::string sub;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& t = args[i];
        if (value_options().count(t) && i + 1 < args.size()) {
            out.push_back(t + "=" + args[++i]);
            continue;
        }
        const bool dashed = t.size() > 1 && t[0] == '-' && t != "-h" && t != "--help" && t.rfind("--", 0) != 0;
        if (dashed && !sub.empty()) {
            out.push_back((sub == "gamma" ? "--z=" : "--expr=") + t);
            continue;
        }
        if (sub.empty() && !t.empty() && t[0] != '-') sub = t;
        out.push_back(t);
    }
    return out;
}

inline Format parse_format(const std::string& s)
{
    if (s == "latex") return Format::Latex;
    if (s == "json") return Format::Json;
    return Format::Text;
}

inline CoeffSequence parse_constants(const std::string& spec)
{
    if (spec.empty() || spec == "zero") return {};
    if (spec.front() == '{') return coeff_sequence_from_json(Json::parse(spec));
    if (std::ifstream file(spec); file) return coeff_sequence_from_json(Json::parse(file));
    // k=v,k=v
    std::map<long long, double> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("constants entry '" + item + "' is not of the form k=value");
        try {
            std::size_t used_k = 0;
            std::size_t used_v = 0;
            const long long k = std::stoll(item.substr(0, eq), &used_k);
            const double v = std::stod(item.substr(eq + 1), &used_v);
            if (used_k != eq || used_v != item.size() - eq - 1) throw std::invalid_argument(item);
            values[k] = v;
        } catch (const std::logic_error&) {
            throw Error("constants entry '" + item + "' is not of the form k=value");
        }
    }
    try {
        return CoeffSequence(std::move(values));
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
}

inline void report_parse_error(std::ostream& err, const std::string& input, const ParseError& e)
{
    err << "error: " << e.what() << "\n  " << input << "\n  " << std::string(e.position(), ' ') << "^\n";
}

inline Definition definition_of(const Config& c) { return c.definition == 1 ? Definition::First : Definition::Second; }

inline int run_deriv(const Config& c, std::ostream& out)
{
    FracResult r = derivative(parse_expr(c.expr), parse_order(c.order), definition_of(c));
    r.family.set_truncation(c.truncation);
    out << render(r, parse_format(c.format)) << "\n";
    return kOk;
}

inline int run_eval(const Config& c, std::ostream& out)
{
    FracResult r = derivative(parse_expr(c.expr), parse_order(c.order), definition_of(c));
    r.family.set_truncation(c.truncation);
    const CoeffSequence constants = parse_constants(c.constants);
    out << format_double(evaluate_result(r, c.at, constants), 15) << "\n";
    return kOk;
}

inline int run_table(const Config& c, std::ostream& out, std::ostream& err)
{
    if (c.steps < 1) throw CLI::ValidationError("--steps", "must be at least 1");
    const FracResult r = derivative(parse_expr(c.expr), parse_order(c.order), definition_of(c));
    const CoeffSequence zero;
    out << "x\tvalue\n";
    for (long long i = 0; i <= c.steps; ++i) {
        const double x = i == c.steps ? c.to : c.from + (c.to - c.from) * static_cast<double>(i) / static_cast<double>(c.steps);
        double v = 0.0;
        if (x == 0.0) {
            const Evaluation ev = evaluate_checked(r.principal, 0.0);
            if (ev.negative_exponent_at_zero) err << "warning: negative exponent at x = 0 taken as 0\n";
            v = ev.value;
        } else {
            v = evaluate_result(r, x, zero);
        }
        out << format_double(x, 15) << "\t" << format_double(v, 15) << "\n";
    }
    return kOk;
}

inline int run_gamma(const Config& c, std::ostream& out)
{
    const GammaValue v = gamma(parse_rational(c.z));
    out << render_text(v) << "\n";
    return is_pole(v) ? kUndefined : kOk;
}

inline int run_verify(const Config& c, std::ostream& out)
{
    const auto checks = run_suite(c.seed, c.trials);
    if (c.format == "json")
        out << report_json(checks).dump(2) << "\n";
    else
        out << report_text(checks);
    return all_passed(checks) ? kOk : kVerifyFailed;
}

inline int run_compose(const Config& c, std::ostream& out)
{
    if (c.times < 1) throw CLI::ValidationError("--times", "must be at least 1");
    const CompositionReport rep = compose(parse_expr(c.expr), parse_order(c.order), c.times, definition_of(c));
    out << (c.format == "json" ? render_json(rep) : render_text(rep)) << "\n";
    return kOk;
}

} // namespace detail

inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fractional derivatives of power functions", "fracpow"};
    app.require_subcommand(1);
    Config c;

    const auto add_expr = [&](CLI::App* sub) { sub->add_option("expr,--expr", c.expr, "power expression, e.g. \"3x^2 - x^(1/2)\"")->required(); };
    const auto add_order = [&](CLI::App* sub) { sub->add_option("--order", c.order, "order s (integer, p/q or decimal)")->required(); };
    const auto add_def = [&](CLI::App* sub) {
        sub->add_option("--def", c.definition, "definition 1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}))->capture_default_str();
    };
    const auto add_k = [&](CLI::App* sub) {
        sub->add_option("--K", c.truncation, "truncation index for infinite families")->check(CLI::PositiveNumber)->capture_default_str();
    };

    auto* deriv = app.add_subcommand("deriv", "fractional derivative of an expression");
    add_expr(deriv);
    add_order(deriv);
    add_def(deriv);
    add_format(deriv);
    add_k(deriv);

    auto* eval = app.add_subcommand("eval", "evaluate a derivative at a point");
    add_expr(eval);
    add_order(eval);
    add_def(eval);
    add_k(eval);
    eval->add_option("--at", c.at, "point x > 0")->required();
    eval->add_option("--constants", c.constants, "zero, a JSON file, inline JSON, or k=v,k=v")->capture_default_str();

    auto* table = app.add_subcommand("table", "tabulate a derivative with all constants zero");
    add_expr(table);
    add_order(table);
    add_def(table);
    table->add_option("--from", c.from, "first x")->required();
    table->add_option("--to", c.to, "last x")->required();
    table->add_option("--steps", c.steps, "number of intervals")->capture_default_str();

    auto* gamma_cmd = app.add_subcommand("gamma", "gamma function at a rational");
    gamma_cmd->add_option("z,--z", c.z, "argument (integer, p/q or decimal)")->required();

    auto* verify = app.add_subcommand("verify", "run the property checks");
    verify->add_option("--seed", c.seed, "random seed")->capture_default_str();
    verify->add_option("--trials", c.trials, "trials per check")->capture_default_str();
    verify->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    auto* compose_cmd = app.add_subcommand("compose", "n-fold application against the single higher order");
    add_expr(compose_cmd);
    add_order(compose_cmd);
    add_def(compose_cmd);
    compose_cmd->add_option("--times", c.times, "number of applications")->required();
    compose_cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::vector<std::string> args = detail::normalize_args(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    const std::string& input = gamma_cmd->parsed() ? c.z : c.expr;
    try {
        if (deriv->parsed()) return detail::run_deriv(c, out);
        if (eval->parsed()) return detail::run_eval(c, out);
        if (table->parsed()) return detail::run_table(c, out, err);
        if (gamma_cmd->parsed()) return detail::run_gamma(c, out);
        if (verify->parsed()) return detail::run_verify(c, out);
        if (compose_cmd->parsed()) return detail::run_compose(c, out);
    } catch (const ParseError& e) {
        detail::report_parse_error(err, input, e);
        return kUsage;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UndefinedDerivative& e) {
        err << "undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const NonConvergentAssignment& e) {
        err << "undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const ZeroDenominatorInRatio& e) {
        err << "undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const PoleUndefined& e) {
        err << "undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const std::domain_error& e) {
        err << "undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace fracpow::cli
