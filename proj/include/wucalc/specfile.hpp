#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blowup.hpp"
#include "manifold.hpp"

// Text format for manifolds and blow-up centers. A document is a sequence of
// lines; '#' starts a comment, blank lines are skipped. The first meaningful
// line is a header, either `manifold` or `center`, and every following line is
// `<field> <value...>`.
//
// Manifold fields:
//   name <identifier>              optional, defaults to "manifold"
//   dim <n>                        required
//   coefficients gf2               required (the only supported value)
//   generator <name> <degree>      one per generator, in order
//   sq <gen> <expr>                optional, defaults to g + g^2
//   relation <gen>^<e> = <expr>    one per ruled generator
//   top <monomial>                 required, the fundamental class pairing
//   sw <expr>                      required, total Stiefel-Whitney class
//   pontryagin <expr>              optional; switches on the rational
//                                  companion, re-reading the relations with
//                                  integer coefficients
//
// Center fields (expressions stay unresolved until an ambient ring is known):
//   name <identifier>              optional, defaults to "center"
//   manifold <token>               required, a builtin name or a file path
//   codim <2r>                     required, even and at least 4
//   pullback <ambient-gen> <expr>  image of an ambient generator in the center
//   normal_chern <expr>            required, mod-2 Chern class of the
//                                  normal bundle, in the center's ring
//   gysin <monomial> <expr>        optional, pushforward of a center basis
//                                  monomial into the ambient ring

namespace wucalc {

struct ManifoldSpec {
    ManifoldModel model;
};

struct CenterSpec {
    std::string name = "center";
    std::string manifold_ref; // builtin token or path, resolved by the caller
    int codim = 0;
    std::vector<std::pair<std::string, std::string>> pullback; // gen -> expr
    std::string normal_chern;
    std::vector<std::pair<std::string, std::string>> gysin; // monomial -> expr
};

using SpecDocument = std::variant<ManifoldSpec, CenterSpec>;

namespace detail {

inline std::string trim(std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

/// First whitespace-delimited word and the trimmed remainder.
inline std::pair<std::string, std::string> split_word(const std::string& s) {
    size_t cut = s.find_first_of(" \t");
    if (cut == std::string::npos) return {s, ""};
    return {s.substr(0, cut), trim(s.substr(cut))};
}

struct SpecLine {
    int no = 0;
    std::string key;
    std::string rest;
};

[[noreturn]] inline void fail_line(int no, ErrorKind kind, const std::string& msg) {
    fail(kind, "line " + std::to_string(no) + ": " + msg);
}

/// Run a parser step, prefixing any error it throws with the line number.
template <class Fn>
auto at_line(int no, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        fail_line(no, e.kind(), e.message());
    }
}

inline int parse_int_field(int no, const std::string& text, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        fail_line(no, ErrorKind::ParseError,
                  std::string(what) + " must be an integer, got '" + text + "'");
    }
}

inline std::string single_token(int no, const std::string& text, const char* what) {
    if (text.empty() || text.find_first_of(" \t") != std::string::npos)
        fail_line(no, ErrorKind::ParseError, std::string(what) + " must be a single token");
    return text;
}

inline std::vector<SpecLine> spec_lines(const std::string& text) {
    std::vector<SpecLine> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string t = trim(raw);
        if (t.empty()) continue;
        auto [key, rest] = split_word(t);
        out.push_back({no, key, rest});
    }
    return out;
}

/// Split "x^4" into name and exponent; a bare name means exponent 1.
inline std::pair<std::string, int> parse_power(int no, const std::string& text) {
    size_t caret = text.find('^');
    if (caret == std::string::npos) return {text, 1};
    std::string name = trim(text.substr(0, caret));
    int e = parse_int_field(no, trim(text.substr(caret + 1)), "relation exponent");
    return {name, e};
}

inline ManifoldSpec parse_manifold_spec(const std::vector<SpecLine>& lines) {
    struct GenLine {
        int no;
        std::string name;
        int degree;
    };
    struct RuleLine {
        int no;
        std::string gen;
        int exponent;
        std::string rhs;
    };
    struct ExprLine {
        int no = 0;
        std::string text;
    };

    std::string name = "manifold";
    int dim = -1;
    bool have_dim = false, have_coeffs = false;
    std::vector<GenLine> gens;
    std::vector<RuleLine> rules;
    std::vector<std::pair<std::string, ExprLine>> sq_lines;
    ExprLine top, sw, pontryagin;

    auto gen_index = [&](const std::string& g) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == g) return static_cast<int>(i);
        return -1;
    };

    for (size_t i = 1; i < lines.size(); ++i) {
        const SpecLine& ln = lines[i];
        if (ln.key == "name") {
            name = single_token(ln.no, ln.rest, "name");
        } else if (ln.key == "dim") {
            if (have_dim) fail_line(ln.no, ErrorKind::ParseError, "duplicate 'dim'");
            dim = parse_int_field(ln.no, ln.rest, "dim");
            have_dim = true;
        } else if (ln.key == "coefficients") {
            if (ln.rest != "gf2")
                fail_line(ln.no, ErrorKind::ValidationError,
                          "only 'coefficients gf2' is supported");
            have_coeffs = true;
        } else if (ln.key == "generator") {
            auto [g, deg_text] = split_word(ln.rest);
            if (g.empty() || deg_text.empty())
                fail_line(ln.no, ErrorKind::ParseError, "expected 'generator <name> <degree>'");
            int deg = parse_int_field(ln.no, deg_text, "generator degree");
            if (gen_index(g) >= 0)
                fail_line(ln.no, ErrorKind::ValidationError, "duplicate generator '" + g + "'");
            gens.push_back({ln.no, g, deg});
        } else if (ln.key == "sq") {
            auto [g, expr] = split_word(ln.rest);
            if (g.empty() || expr.empty())
                fail_line(ln.no, ErrorKind::ParseError, "expected 'sq <generator> <expr>'");
            if (gen_index(g) < 0)
                fail_line(ln.no, ErrorKind::UnknownGenerator,
                          "sq line for unknown generator '" + g + "'");
            for (const auto& [prev, _] : sq_lines)
                if (prev == g)
                    fail_line(ln.no, ErrorKind::ValidationError,
                              "generator '" + g + "' already has an sq line");
            sq_lines.emplace_back(g, ExprLine{ln.no, expr});
        } else if (ln.key == "relation") {
            size_t eq = ln.rest.find('=');
            if (eq == std::string::npos)
                fail_line(ln.no, ErrorKind::ParseError,
                          "expected 'relation <gen>^<e> = <expr>'");
            auto [g, e] = parse_power(ln.no, trim(ln.rest.substr(0, eq)));
            std::string rhs = trim(ln.rest.substr(eq + 1));
            if (rhs.empty())
                fail_line(ln.no, ErrorKind::ParseError, "relation has an empty right side");
            if (gen_index(g) < 0)
                fail_line(ln.no, ErrorKind::UnknownGenerator,
                          "relation on unknown generator '" + g + "'");
            if (e < 1)
                fail_line(ln.no, ErrorKind::ValidationError,
                          "relation exponent must be at least 1");
            for (const auto& r : rules)
                if (r.gen == g)
                    fail_line(ln.no, ErrorKind::ValidationError,
                              "generator '" + g + "' already has a relation");
            rules.push_back({ln.no, g, e, rhs});
        } else if (ln.key == "top") {
            if (top.no) fail_line(ln.no, ErrorKind::ParseError, "duplicate 'top'");
            top = {ln.no, ln.rest};
        } else if (ln.key == "sw") {
            if (sw.no) fail_line(ln.no, ErrorKind::ParseError, "duplicate 'sw'");
            sw = {ln.no, ln.rest};
        } else if (ln.key == "pontryagin") {
            if (pontryagin.no)
                fail_line(ln.no, ErrorKind::ParseError, "duplicate 'pontryagin'");
            pontryagin = {ln.no, ln.rest};
        } else {
            fail_line(ln.no, ErrorKind::ParseError, "unknown manifold field '" + ln.key + "'");
        }
    }

    int header_no = lines[0].no;
    if (!have_dim) fail_line(header_no, ErrorKind::ParseError, "missing 'dim'");
    if (!have_coeffs) fail_line(header_no, ErrorKind::ParseError, "missing 'coefficients'");
    if (!top.no) fail_line(header_no, ErrorKind::ParseError, "missing 'top'");
    if (!sw.no) fail_line(header_no, ErrorKind::ParseError, "missing 'sw'");

    auto build_ring = [&](auto field_tag) {
        using F = decltype(field_tag);
        PresentationBuilder<F> pb(dim);
        for (const auto& g : gens) {
            if (g.degree <= 0)
                fail_line(g.no, ErrorKind::ValidationError,
                          "generator '" + g.name + "' must have positive degree");
            pb.add_generator(g.name, g.degree);
        }
        // Pre-parse each right side against the bare ring so syntax errors
        // point at their own line; the builder re-reads them when it builds.
        auto bare = pb.build();
        for (const auto& r : rules) {
            at_line(r.no, [&] { return parse_expression(bare, r.rhs); });
            pb.add_rule(r.gen, r.exponent, r.rhs);
        }
        try {
            return pb.build();
        } catch (const Error& e) {
            // Homogeneity and ordering problems surface here; the builder's
            // message already names the offending generator.
            for (const auto& r : rules)
                if (e.message().find("'" + r.gen + "'") != std::string::npos)
                    fail_line(r.no, e.kind(), e.message());
            fail_line(header_no, e.kind(), e.message());
        }
    };

    PresPtr<GF2> ring = build_ring(GF2{});

    std::map<std::string, Element<GF2>> sq_images;
    for (const auto& [g, expr] : sq_lines)
        sq_images[g] = at_line(expr.no, [&] { return parse_expression(ring, expr.text); });
    auto sq = [&] {
        try {
            return SqAction(ring, sq_images);
        } catch (const Error& e) {
            // Shape complaints read "Sq(g) must ..."; route them to the line
            // that declared the image.
            for (const auto& [g, expr] : sq_lines)
                if (e.message().find("Sq(" + g + ")") != std::string::npos)
                    fail_line(expr.no, e.kind(), e.message());
            fail_line(header_no, e.kind(), e.message());
        }
    }();

    Monomial top_mono = at_line(top.no, [&] { return parse_monomial(ring, top.text); });
    Element<GF2> sw_elem = at_line(sw.no, [&] { return parse_expression(ring, sw.text); });

    std::optional<RationalCompanion> companion;
    if (pontryagin.no) {
        PresPtr<Rational> qring = build_ring(Rational{});
        Element<Rational> p =
            at_line(pontryagin.no, [&] { return parse_expression(qring, pontryagin.text); });
        companion = RationalCompanion{qring, p, top_mono};
    }

    return ManifoldSpec{make_manifold(ring, dim, top_mono, sw_elem, sq, companion, name)};
}

inline CenterSpec parse_center_spec(const std::vector<SpecLine>& lines) {
    CenterSpec spec;
    bool have_codim = false;

    for (size_t i = 1; i < lines.size(); ++i) {
        const SpecLine& ln = lines[i];
        if (ln.key == "name") {
            spec.name = single_token(ln.no, ln.rest, "name");
        } else if (ln.key == "manifold") {
            if (!spec.manifold_ref.empty())
                fail_line(ln.no, ErrorKind::ParseError, "duplicate 'manifold'");
            spec.manifold_ref = single_token(ln.no, ln.rest, "manifold reference");
        } else if (ln.key == "codim") {
            if (have_codim) fail_line(ln.no, ErrorKind::ParseError, "duplicate 'codim'");
            spec.codim = parse_int_field(ln.no, ln.rest, "codim");
            if (spec.codim < 4 || spec.codim % 2 != 0)
                fail_line(ln.no, ErrorKind::ValidationError,
                          "codim must be an even integer of at least 4");
            have_codim = true;
        } else if (ln.key == "pullback") {
            auto [g, expr] = split_word(ln.rest);
            if (g.empty() || expr.empty())
                fail_line(ln.no, ErrorKind::ParseError,
                          "expected 'pullback <ambient-generator> <expr>'");
            for (const auto& [prev, _] : spec.pullback)
                if (prev == g)
                    fail_line(ln.no, ErrorKind::ValidationError,
                              "duplicate pullback for '" + g + "'");
            spec.pullback.emplace_back(g, expr);
        } else if (ln.key == "normal_chern") {
            if (!spec.normal_chern.empty())
                fail_line(ln.no, ErrorKind::ParseError, "duplicate 'normal_chern'");
            if (ln.rest.empty())
                fail_line(ln.no, ErrorKind::ParseError, "normal_chern needs an expression");
            spec.normal_chern = ln.rest;
        } else if (ln.key == "gysin") {
            auto [mono, expr] = split_word(ln.rest);
            if (mono.empty() || expr.empty())
                fail_line(ln.no, ErrorKind::ParseError, "expected 'gysin <monomial> <expr>'");
            for (const auto& [prev, _] : spec.gysin)
                if (prev == mono)
                    fail_line(ln.no, ErrorKind::ValidationError,
                              "duplicate gysin image for '" + mono + "'");
            spec.gysin.emplace_back(mono, expr);
        } else {
            fail_line(ln.no, ErrorKind::ParseError, "unknown center field '" + ln.key + "'");
        }
    }

    int header_no = lines[0].no;
    if (spec.manifold_ref.empty())
        fail_line(header_no, ErrorKind::ParseError, "missing 'manifold'");
    if (!have_codim) fail_line(header_no, ErrorKind::ParseError, "missing 'codim'");
    if (spec.normal_chern.empty())
        fail_line(header_no, ErrorKind::ParseError, "missing 'normal_chern'");
    return spec;
}

} // namespace detail

inline SpecDocument parse_spec(const std::string& text) {
    auto lines = detail::spec_lines(text);
    if (lines.empty()) fail(ErrorKind::ParseError, "empty document");
    const auto& head = lines[0];
    if (!head.rest.empty() || (head.key != "manifold" && head.key != "center"))
        detail::fail_line(head.no, ErrorKind::ParseError,
                          "expected a 'manifold' or 'center' header line");
    if (head.key == "manifold") return detail::parse_manifold_spec(lines);
    return detail::parse_center_spec(lines);
}

inline std::string print_spec(const ManifoldSpec& spec) {
    const ManifoldModel& m = spec.model;
    std::ostringstream out;
    out << "manifold\n";
    out << "name " << m.name << "\n";
    out << "dim " << m.dim << "\n";
    out << "coefficients gf2\n";
    const auto& gens = m.ring->gens();
    for (const auto& g : gens) out << "generator " << g.name << " " << g.degree << "\n";
    for (size_t g = 0; g < gens.size(); ++g)
        out << "sq " << gens[g].name << " " << to_string(m.sq.image(g)) << "\n";
    for (size_t g = 0; g < gens.size(); ++g) {
        const auto& rule = m.ring->rule(g);
        if (!rule) continue;
        out << "relation " << gens[g].name;
        if (rule->exponent != 1) out << "^" << rule->exponent;
        out << " = " << to_string(Element<GF2>(m.ring, rule->replacement)) << "\n";
    }
    out << "top " << mono_str(*m.ring, m.top) << "\n";
    out << "sw " << to_string(m.sw) << "\n";
    if (m.rational) out << "pontryagin " << to_string(m.rational->pontryagin) << "\n";
    return out.str();
}

inline std::string print_spec(const CenterSpec& spec) {
    std::ostringstream out;
    out << "center\n";
    out << "name " << spec.name << "\n";
    out << "manifold " << spec.manifold_ref << "\n";
    out << "codim " << spec.codim << "\n";
    for (const auto& [g, expr] : spec.pullback) out << "pullback " << g << " " << expr << "\n";
    out << "normal_chern " << spec.normal_chern << "\n";
    for (const auto& [mono, expr] : spec.gysin) out << "gysin " << mono << " " << expr << "\n";
    return out.str();
}

inline std::string print_spec(const SpecDocument& doc) {
    if (std::holds_alternative<ManifoldSpec>(doc))
        return print_spec(std::get<ManifoldSpec>(doc));
    return print_spec(std::get<CenterSpec>(doc));
}

/// Resolve a center spec against its (already loaded) manifolds. The Gysin
/// block is optional, but when present it must cover a full basis; the
/// submanifold constructor checks that and the projection formula.
inline SubmanifoldData to_submanifold(const CenterSpec& spec, const ManifoldModel& ambient,
                                      const ManifoldModel& center) {
    if (ambient.dim - center.dim != spec.codim)
        fail(ErrorKind::ValidationError,
             "center '" + spec.name + "' declares codim " + std::to_string(spec.codim) +
                 " but the manifolds differ by " + std::to_string(ambient.dim - center.dim));
    int r = spec.codim / 2;

    std::map<std::string, std::string> pb(spec.pullback.begin(), spec.pullback.end());
    std::vector<Element<GF2>> images;
    for (const auto& g : ambient.ring->gens()) {
        auto it = pb.find(g.name);
        if (it == pb.end())
            fail(ErrorKind::ValidationError,
                 "center '" + spec.name + "' has no pullback for ambient generator '" +
                     g.name + "'");
        images.push_back(parse_expression(center.ring, it->second));
        pb.erase(it);
    }
    if (!pb.empty())
        fail(ErrorKind::UnknownGenerator,
             "pullback names '" + pb.begin()->first + "', which the ambient ring lacks");
    RingHom<GF2> pullback = make_ring_hom(ambient.ring, center.ring, images);

    Element<GF2> chern = parse_expression(center.ring, spec.normal_chern);

    std::optional<LinearMap<GF2>> gysin;
    if (!spec.gysin.empty()) {
        std::map<Monomial, Element<GF2>> gmap;
        for (const auto& [mono, expr] : spec.gysin)
            gmap[parse_monomial(center.ring, mono)] = parse_expression(ambient.ring, expr);
        gysin = make_linear_map(center.ring, ambient.ring, 2 * r, std::move(gmap));
    }

    std::optional<RationalSubmanifoldData> rational;
    if (ambient.rational && center.rational) {
        std::vector<Element<Rational>> qimages;
        for (const auto& g : ambient.ring->gens())
            for (const auto& [name, expr] : spec.pullback)
                if (name == g.name)
                    qimages.push_back(parse_expression(center.rational->ring, expr));
        RingHom<Rational> qpullback =
            make_ring_hom(ambient.rational->ring, center.rational->ring, qimages);
        Element<Rational> qchern =
            parse_expression(center.rational->ring, spec.normal_chern);
        std::optional<LinearMap<Rational>> qgysin;
        if (!spec.gysin.empty()) {
            std::map<Monomial, Element<Rational>> gmap;
            for (const auto& [mono, expr] : spec.gysin)
                gmap[parse_monomial(center.rational->ring, mono)] =
                    parse_expression(ambient.rational->ring, expr);
            qgysin = make_linear_map(center.rational->ring, ambient.rational->ring, 2 * r,
                                     std::move(gmap));
        }
        rational = RationalSubmanifoldData{qpullback, qchern, qgysin};
    }

    return make_submanifold_data(ambient, center, r, pullback, chern, gysin, rational);
}

} // namespace wucalc
