#pragma once

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "builtins.hpp"
#include "obstruction.hpp"
#include "specfile.hpp"

// Command dispatch. Three subcommands:
//
//   wu <spec> [--oracle]
//   blowup --ambient <spec> --center <spec> (wu | vanish K | betti K |
//                                            sq EXPR I | lclass I)
//   obstruction (--hypersurface N D | --ambient <spec> --u EXPR)
//               [--blowup-point] [--witness]
//
// plus a global --json switch. A <spec> is a builtin token (cp<N>, point,
// linear-cp:K or linear-cp:K:N) or a path to a spec file. Exit codes: 0 on
// success, 1 for domain errors (singular pairings, missing data, failed
// cross-checks), 2 for unreadable input.

namespace wucalc {

struct CommandResult {
    std::string text;
    nlohmann::json data;
    std::vector<std::string> warnings;
    bool json_mode = false;
    int exit_code = 0;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline ManifoldModel load_manifold(const std::string& token) {
    std::smatch m;
    if (std::regex_match(token, m, std::regex("cp([0-9]+)")))
        return cp(std::stoi(m[1].str()));
    if (token == "point") return point_manifold();
    SpecDocument doc = parse_spec(read_file(token));
    if (!std::holds_alternative<ManifoldSpec>(doc))
        fail(ErrorKind::ValidationError,
             "'" + token + "' is a center spec where a manifold was expected");
    return std::get<ManifoldSpec>(doc).model;
}

inline SubmanifoldData load_center(const std::string& token, const ManifoldModel& ambient) {
    if (token == "point") return point_center(ambient);
    std::smatch m;
    if (std::regex_match(token, m, std::regex("linear-cp:([0-9]+)(?::([0-9]+))?"))) {
        int k = std::stoi(m[1].str());
        if (m[2].matched && 2 * std::stoi(m[2].str()) != ambient.dim)
            fail(ErrorKind::ValidationError,
                 "'" + token + "' names an ambient dimension that does not match --ambient");
        return linear_cp_center(k, ambient);
    }
    SpecDocument doc = parse_spec(read_file(token));
    if (!std::holds_alternative<CenterSpec>(doc))
        fail(ErrorKind::ValidationError,
             "'" + token + "' is a manifold spec where a center was expected");
    const CenterSpec& spec = std::get<CenterSpec>(doc);
    return to_submanifold(spec, ambient, load_manifold(spec.manifold_ref));
}

template <class F>
nlohmann::json class_json(const Element<F>& x) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : x.terms())
        out.push_back({mono_str(*x.pres(), t.mono), coef_str(t.coef)});
    return out;
}

template <class F>
nlohmann::json blowup_class_json(const BlowUpElement<F>& x) {
    return {{"base", class_json(x.base)}, {"exceptional", class_json(x.exc)}};
}

/// Evaluate a class expression in the blow-up. The grammar is the ambient
/// ring's with one extra symbol: `y` (degree 2) stands for the exceptional
/// class alpha_jp(1). Returns the value and its homogeneous degree.
inline std::pair<BlowUpElement<GF2>, int> eval_blowup_expr(const BlowUpModel& m,
                                                           const std::string& text) {
    auto c = gf2_ctx(m);
    if (c.mring->find("y") >= 0)
        fail(ErrorKind::ValidationError,
             "ambient ring already names a generator 'y'; the sq grammar reserves it");
    PresentationBuilder<GF2> sb(m.dim);
    for (const auto& g : c.mring->gens()) sb.add_generator(g.name, g.degree);
    sb.add_generator("y", 2);
    for (size_t g = 0; g < c.mring->n_gens(); ++g) {
        const auto& rule = c.mring->rule(g);
        if (!rule) continue;
        std::vector<Term<GF2>> repl;
        for (const auto& t : rule->replacement)
            repl.push_back({extend_mono(t.mono, 0), t.coef});
        sb.add_rule(c.mring->gens()[g].name, rule->exponent, std::move(repl));
    }
    Element<GF2> parsed = parse_expression(sb.build(), text);
    int deg = parsed.is_zero() ? 0 : homogeneous_degree(parsed);

    BlowUpElement<GF2> ycls = alpha_jp(c, unit(c.pring));
    BlowUpElement<GF2> acc = blowup_zero(c);
    for (const auto& t : parsed.terms()) {
        Monomial amb(t.mono.begin(), t.mono.end() - 1);
        BlowUpElement<GF2> v = pi_star(c, monomial_elem(c.mring, amb));
        for (int j = 0; j < t.mono.back(); ++j) v = blowup_mul(c, v, ycls);
        acc = blowup_add(acc, v);
    }
    return {acc, deg};
}

inline CommandResult run_wu(const std::string& token, bool oracle, bool json_mode) {
    ManifoldModel m = load_manifold(token);
    Element<GF2> v = oracle ? wu_class_oracle(m) : wu_class(m);
    CommandResult r;
    r.json_mode = json_mode;
    r.text = to_string(v);
    r.data = {{"command", "wu"},
              {"inputs", {{"spec", token}, {"oracle", oracle}}},
              {"result", {{"class", class_json(v)}}}};
    return r;
}

inline CommandResult run_blowup(const std::string& ambient_tok, const std::string& center_tok,
                                const std::string& action,
                                const std::vector<std::string>& args, bool json_mode) {
    auto need = [&](size_t n) {
        if (args.size() != n)
            fail(ErrorKind::ParseError, "action '" + action + "' takes " + std::to_string(n) +
                                            " argument" + (n == 1 ? "" : "s"));
    };
    auto int_arg = [&](size_t i) {
        try {
            size_t used = 0;
            int v = std::stoi(args[i], &used);
            if (used != args[i].size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "expected an integer, got '" + args[i] + "'");
        }
    };

    ManifoldModel ambient = load_manifold(ambient_tok);
    BlowUpModel model = build_blowup_model(load_center(center_tok, ambient));

    CommandResult r;
    r.json_mode = json_mode;
    nlohmann::json inputs = {
        {"ambient", ambient_tok}, {"center", center_tok}, {"action", action}};
    for (const auto& a : args) inputs["args"].push_back(a);

    if (action == "wu") {
        need(0);
        BlowUpElement<GF2> v = wu_blowup(model);
        r.text = blowup_str(v);
        r.data = {{"command", "blowup"},
                  {"inputs", inputs},
                  {"result", {{"class", blowup_class_json(v)}}}};
    } else if (action == "vanish") {
        need(1);
        bool v = wu_vanishes(model, int_arg(0));
        r.text = v ? "vanishes" : "nonvanishing";
        r.data = {{"command", "blowup"},
                  {"inputs", inputs},
                  {"result", {{"vanishes", v}}}};
    } else if (action == "betti") {
        need(1);
        size_t b = blowup_basis(model, int_arg(0)).size();
        r.text = std::to_string(b);
        r.data = {{"command", "blowup"},
                  {"inputs", inputs},
                  {"result", {{"betti", b}}}};
    } else if (action == "sq") {
        need(2);
        auto [x, deg] = eval_blowup_expr(model, args[0]);
        int i = int_arg(1);
        BlowUpElement<GF2> v = blowup_component(sq_blowup(model, x), deg + i);
        r.text = blowup_str(v);
        r.data = {{"command", "blowup"},
                  {"inputs", inputs},
                  {"result", {{"class", blowup_class_json(v)}}}};
    } else if (action == "lclass") {
        need(1);
        BlowUpElement<Rational> v = l_class_blowup(model, int_arg(0));
        r.text = blowup_str(v);
        r.data = {{"command", "blowup"},
                  {"inputs", inputs},
                  {"result", {{"class", blowup_class_json(v)}}}};
    } else {
        fail(ErrorKind::ParseError,
             "unknown action '" + action + "'; expected wu, vanish, betti, sq, or lclass");
    }
    return r;
}

inline CommandResult run_obstruction(const std::vector<int>& hyper, const std::string& ambient_tok,
                                     const std::string& u_expr, bool blowup_point, bool witness,
                                     bool json_mode) {
    bool have_hyper = !hyper.empty();
    bool have_ambient = !ambient_tok.empty();
    if (have_hyper == have_ambient)
        fail(ErrorKind::ParseError,
             "obstruction needs exactly one of --hypersurface or --ambient/--u");
    if (have_ambient && u_expr.empty())
        fail(ErrorKind::ParseError, "--ambient also needs --u <expr>");

    EmbeddingContext ctx =
        have_hyper ? hypersurface_ctx(hyper[0], hyper[1]) : [&] {
            ManifoldModel m = load_manifold(ambient_tok);
            Element<GF2> u = parse_expression(m.ring, u_expr);
            int n = (m.dim - 2) / 2;
            return make_embedding_context(m, n, u, ambient_tok);
        }();

    CommandResult r;
    r.json_mode = json_mode;
    r.warnings = ctx.warnings;
    nlohmann::json inputs = {{"blowup_point", blowup_point}, {"witness", witness}};
    if (have_hyper) inputs["hypersurface"] = {hyper[0], hyper[1]};
    if (have_ambient) {
        inputs["ambient"] = ambient_tok;
        inputs["u"] = u_expr;
    }

    bool vanishes;
    nlohmann::json witness_json;
    std::string witness_text;
    if (blowup_point) {
        BlowUpModel model = build_blowup_model(point_center(ctx.ambient));
        BlowUpEmbeddingContext bctx = make_blowup_embedding_context(model, ctx.n, ctx.u);
        if (witness) {
            auto w = blowup_obstruction_witness(bctx);
            vanishes = !w.has_value();
            if (w) {
                witness_json = blowup_class_json(*w);
                witness_text = blowup_str(*w);
            }
        } else {
            vanishes = blowup_obstruction_vanishes(bctx);
        }
    } else {
        if (witness) {
            auto w = obstruction_witness(ctx);
            vanishes = !w.has_value();
            if (w) {
                witness_json = class_json(*w);
                witness_text = to_string(*w);
            }
        } else {
            vanishes = obstruction_vanishes(ctx);
        }
    }

    r.text = vanishes ? "vanishes" : "nonvanishing";
    if (!witness_text.empty()) r.text += "; witness " + witness_text;
    r.data = {{"command", "obstruction"},
              {"inputs", inputs},
              {"result", {{"vanishes", vanishes}, {"witness", witness_json}}}};
    return r;
}

} // namespace detail

inline CommandResult run(const std::vector<std::string>& args) {
    CLI::App app{"Wu classes, Steenrod squares, and blow-up cohomology"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit structured output");

    auto* wu_cmd = app.add_subcommand("wu", "total Wu class of a manifold");
    wu_cmd->fallthrough();
    std::string wu_spec;
    bool wu_oracle = false;
    wu_cmd->add_option("spec", wu_spec, "builtin token or spec file")->required();
    wu_cmd->add_flag("--oracle", wu_oracle, "solve the defining equations instead");

    auto* bl_cmd = app.add_subcommand("blowup", "invariants of a blow-up");
    bl_cmd->fallthrough();
    std::string bl_ambient, bl_center, bl_action;
    std::vector<std::string> bl_args;
    bl_cmd->add_option("--ambient", bl_ambient, "ambient manifold")->required();
    bl_cmd->add_option("--center", bl_center, "blow-up center")->required();
    bl_cmd->add_option("action", bl_action, "wu | vanish K | betti K | sq EXPR I | lclass I")
        ->required();
    bl_cmd->add_option("args", bl_args, "action arguments");

    auto* ob_cmd = app.add_subcommand("obstruction", "embedding obstruction for S^{n+1}");
    ob_cmd->fallthrough();
    std::vector<int> ob_hyper;
    std::string ob_ambient, ob_u;
    bool ob_blowup = false, ob_witness = false;
    ob_cmd->add_option("--hypersurface", ob_hyper, "degree-D hypersurface in CP^{n+1}")
        ->expected(2);
    ob_cmd->add_option("--ambient", ob_ambient, "ambient manifold of dimension 2n+2");
    ob_cmd->add_option("--u", ob_u, "first obstruction class u in H^2");
    ob_cmd->add_flag("--blowup-point", ob_blowup, "test after blowing up a point");
    ob_cmd->add_flag("--witness", ob_witness, "report a witness class when nonvanishing");

    std::vector<const char*> argv;
    argv.push_back("wucalc");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        CommandResult r;
        r.json_mode = json_mode;
        r.text = detail::trim(out.str() + err.str());
        r.exit_code = code == 0 ? 0 : 2;
        if (r.exit_code != 0) r.data = {{"error", {{"kind", "usage"}, {"message", r.text}}}};
        return r;
    }

    try {
        CommandResult r;
        if (wu_cmd->parsed()) {
            r = detail::run_wu(wu_spec, wu_oracle, json_mode);
        } else if (bl_cmd->parsed()) {
            r = detail::run_blowup(bl_ambient, bl_center, bl_action, bl_args, json_mode);
        } else {
            r = detail::run_obstruction(ob_hyper, ob_ambient, ob_u, ob_blowup, ob_witness,
                                        json_mode);
        }
        r.data["warnings"] = r.warnings;
        return r;
    } catch (const Error& e) {
        CommandResult r;
        r.json_mode = json_mode;
        r.text = e.what();
        r.data = {{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.message()}}}};
        r.exit_code = e.input_error() ? 2 : 1;
        return r;
    }
}

} // namespace wucalc
