#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include <wucalc/gring.hpp>

#include "helpers.hpp"

using namespace wucalc;
using testutil::random_element;
using testutil::random_homogeneous;

namespace {

/// H*(CP^n; F) with one extra degree-2 generator t satisfying t^2 = x*t, to
/// exercise rewriting that feeds one generator into another.
template <class F>
PresPtr<F> mixed_ring(int n) {
    PresentationBuilder<F> pb(2 * n);
    pb.add_generator("x", 2);
    pb.add_generator("t", 2);
    pb.add_rule("x", n + 1, std::vector<Term<F>>{});
    pb.add_rule("t", 2, "x*t");
    return pb.build();
}

/// Count degree-k staircase monomials by direct enumeration over exponent
/// boxes, independent of basis_of_degree's recursion.
int count_staircase(const std::vector<int>& degs, const std::vector<int>& caps, int k) {
    std::vector<int> counts(static_cast<size_t>(k) + 1, 0);
    counts[0] = 1;
    for (size_t g = 0; g < degs.size(); ++g) {
        std::vector<int> next(static_cast<size_t>(k) + 1, 0);
        for (int d = 0; d <= k; ++d) {
            if (counts[d] == 0) continue;
            for (int e = 0; caps[g] < 0 || e < caps[g]; ++e) {
                int nd = d + e * degs[g];
                if (nd > k) break;
                next[nd] += counts[d];
            }
        }
        counts = std::move(next);
    }
    return counts[static_cast<size_t>(k)];
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

} // namespace

TEST_CASE("staircase bases match direct counting") {
    auto ring = mixed_ring<GF2>(4);
    for (int k = 0; k <= ring->truncation(); ++k) {
        int expect = count_staircase({2, 2}, {5, 2}, k);
        REQUIRE(static_cast<int>(ring->basis_of_degree(k).size()) == expect);
    }

    PresentationBuilder<GF2> pb(12);
    pb.add_generator("a", 2);
    pb.add_generator("b", 4);
    pb.add_rule("a", 4, std::vector<Term<GF2>>{});
    auto free_b = pb.build();
    for (int k = 0; k <= 12; ++k)
        REQUIRE(static_cast<int>(free_b->basis_of_degree(k).size()) ==
                count_staircase({2, 4}, {4, -1}, k));
}

TEST_CASE("normal forms are canonical under relation noise") {
    auto ring = mixed_ring<GF2>(5);
    std::mt19937 rng(7001);
    std::uniform_int_distribution<int> pick_gen(0, 1);
    std::uniform_int_distribution<int> pick_exp(0, 3);

    for (int trial = 0; trial < 200; ++trial) {
        Element<GF2> clean = random_element(ring, rng);
        std::vector<Term<GF2>> noisy(clean.terms().begin(), clean.terms().end());

        // Add (g^e - replacement) * m for a random monomial m; this is zero
        // in the quotient, so the normal form must not move.
        for (int burst = 0; burst < 3; ++burst) {
            size_t g = static_cast<size_t>(pick_gen(rng));
            const auto& rule = *ring->rule(g);
            Monomial m{pick_exp(rng), pick_exp(rng)};
            Monomial lhs(ring->n_gens(), 0);
            lhs[g] = rule.exponent;
            noisy.push_back({mono_mul(m, lhs), GF2::one()});
            for (const auto& t : rule.replacement)
                noisy.push_back({mono_mul(m, t.mono), t.coef});
        }
        REQUIRE(normal_form(ring, noisy) == clean);
    }
}

TEST_CASE("ring laws hold on random elements") {
    auto ring = mixed_ring<Rational>(4);
    std::mt19937 rng(7002);
    for (int trial = 0; trial < 200; ++trial) {
        Element<Rational> a = random_element(ring, rng);
        Element<Rational> b = random_element(ring, rng);
        Element<Rational> c = random_element(ring, rng);
        REQUIRE(mul(a, b) == mul(b, a));
        REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
        REQUIRE(mul(add(a, b), c) == add(mul(a, c), mul(b, c)));
        REQUIRE(sub(a, a).is_zero());
    }
}

TEST_CASE("powers reduce to repeated multiplication") {
    auto ring = mixed_ring<GF2>(4);
    std::mt19937 rng(7003);
    for (int trial = 0; trial < 50; ++trial) {
        Element<GF2> a = random_element(ring, rng);
        Element<GF2> acc = unit(ring);
        for (int e = 0; e <= 5; ++e) {
            REQUIRE(pow_elem(a, e) == acc);
            acc = mul(acc, a);
        }
    }
    REQUIRE_THROWS_MATCHES(pow_elem(unit(ring), -1), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.kind() == ErrorKind::ValidationError;
                           }));
}

TEST_CASE("series inversion gives exact units") {
    auto gf2 = mixed_ring<GF2>(5);
    auto rat = mixed_ring<Rational>(5);
    std::mt19937 rng(7004);

    for (int trial = 0; trial < 200; ++trial) {
        Element<GF2> u = add(unit(gf2), random_homogeneous(gf2, rng));
        // Guard: the random part may be degree 0, making u = 0 mod 2.
        if (constant_term(u).is_zero()) continue;
        REQUIRE(mul(u, invert_unit(u)) == unit(gf2));

        Element<Rational> q =
            add(scale(unit(rat), Rational(3, 2)), random_homogeneous(rat, rng));
        if (constant_term(q).is_zero()) continue;
        REQUIRE(mul(q, invert_unit(q)) == unit(rat));
    }

    Element<GF2> no_unit = gen_elem(gf2, "x");
    REQUIRE_THROWS_AS(invert_unit(no_unit), Error);
    try {
        invert_unit(no_unit);
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::NotAUnit);
    }
}

TEST_CASE("components partition an element by degree") {
    auto ring = mixed_ring<GF2>(5);
    std::mt19937 rng(7005);
    for (int trial = 0; trial < 100; ++trial) {
        Element<GF2> a = random_element(ring, rng);
        Element<GF2> back = zero_elem(ring);
        for (int k = 0; k <= ring->truncation(); ++k) {
            Element<GF2> part = component(a, k);
            if (!part.is_zero()) REQUIRE(homogeneous_degree(part) == k);
            back = add(back, part);
        }
        REQUIRE(back == a);
        if (!a.is_zero()) {
            REQUIRE(!component(a, min_degree(a)).is_zero());
            REQUIRE(!component(a, max_degree(a)).is_zero());
        }
    }
}

TEST_CASE("printing and parsing are inverse") {
    auto gf2 = mixed_ring<GF2>(5);
    auto rat = mixed_ring<Rational>(5);
    std::mt19937 rng(7006);
    for (int trial = 0; trial < 200; ++trial) {
        Element<GF2> a = random_element(gf2, rng);
        REQUIRE(parse_expression(gf2, to_string(a)) == a);
        Element<Rational> q = random_element(rat, rng);
        REQUIRE(parse_expression(rat, to_string(q)) == q);
    }
    REQUIRE(to_string(zero_elem(gf2)) == "0");
    REQUIRE(parse_expression(gf2, "0").is_zero());
}

TEST_CASE("expression grammar covers coefficients, powers, parentheses") {
    auto ring = mixed_ring<Rational>(4);
    REQUIRE(parse_expression(ring, "(1 + x)^3") ==
            parse_expression(ring, "1 + 3*x + 3*x^2 + x^3"));
    REQUIRE(parse_expression(ring, "-x + 2*x") == gen_elem(ring, "x"));
    REQUIRE(parse_expression(ring, "t*t") == parse_expression(ring, "x*t"));
    REQUIRE(parse_expression(ring, "2^3").terms()[0].coef == Rational(8));

    // '/' binds like '*' and only accepts nonzero constants on the right.
    REQUIRE(parse_expression(ring, "7/2 * x") == parse_expression(ring, "(7 * x) / 2"));
    REQUIRE(parse_expression(ring, "x / 2 / 3") == scale(gen_elem(ring, "x"), Rational(1, 6)));
    REQUIRE(parse_expression(ring, "-x/3") == scale(gen_elem(ring, "x"), Rational(-1, 3)));
    try {
        parse_expression(ring, "x / 0");
        FAIL("expected an Error");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::ParseError);
        REQUIRE(std::string(e.what()).find("division needs a nonzero constant") !=
                std::string::npos);
    }
    REQUIRE_THROWS_AS(parse_expression(ring, "x / t"), Error);
    REQUIRE_THROWS_AS(parse_expression(ring, "x / (1 + t)"), Error);

    REQUIRE_THROWS_AS(parse_expression(ring, "x +"), Error);
    REQUIRE_THROWS_AS(parse_expression(ring, "(x"), Error);
    try {
        parse_expression(ring, "x + zz");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::UnknownGenerator);
        REQUIRE(std::string(e.what()).find("zz") != std::string::npos);
    }
}

TEST_CASE("monomial parsing rejects sums and scalars") {
    auto ring = mixed_ring<GF2>(4);
    REQUIRE(parse_monomial(ring, "x^2*t") == Monomial{2, 1});
    REQUIRE(parse_monomial(ring, "1") == Monomial{0, 0});
    REQUIRE_THROWS_AS(parse_monomial(ring, "x + t"), Error);
    REQUIRE_THROWS_AS(parse_monomial(ring, "0"), Error);
}

TEST_CASE("builder rejects malformed presentations") {
    auto expect_kind = [](auto&& fn, ErrorKind kind) {
        try {
            fn();
            FAIL("expected an Error");
        } catch (const Error& e) {
            REQUIRE(e.kind() == kind);
        }
    };

    expect_kind(
        [] {
            PresentationBuilder<GF2> pb(8);
            pb.add_generator("x", 2);
            pb.add_generator("x", 4);
            pb.build();
        },
        ErrorKind::ValidationError);

    expect_kind(
        [] {
            PresentationBuilder<GF2> pb(8);
            pb.add_generator("x", 2);
            pb.add_rule("w", 2, "0");
            pb.build();
        },
        ErrorKind::UnknownGenerator);

    // Degree mismatch: x^2 has degree 4, x has degree 2.
    expect_kind(
        [] {
            PresentationBuilder<GF2> pb(8);
            pb.add_generator("x", 2);
            pb.add_rule("x", 2, "x");
            pb.build();
        },
        ErrorKind::ValidationError);

    // Not decreasing: t^2 -> t^2 cites itself.
    expect_kind(
        [] {
            PresentationBuilder<GF2> pb(8);
            pb.add_generator("t", 2);
            pb.add_rule("t", 2, "t^2");
            pb.build();
        },
        ErrorKind::ValidationError);

    expect_kind(
        [] {
            PresentationBuilder<GF2> pb(8);
            pb.add_generator("2bad", 2);
            pb.build();
        },
        ErrorKind::ValidationError);

    // Multiplication carries no Koszul signs, so odd degrees are GF(2)-only.
    expect_kind(
        [] {
            PresentationBuilder<Rational> pb(8);
            pb.add_generator("e", 1);
            pb.build();
        },
        ErrorKind::ValidationError);
    {
        PresentationBuilder<GF2> pb(8);
        pb.add_generator("e", 1);
        pb.add_rule("e", 9, std::vector<Term<GF2>>{});
        REQUIRE(pb.build()->n_gens() == 1);
    }
}

TEST_CASE("monomial order is graded with positional tie-break") {
    auto ring = mixed_ring<GF2>(4);
    // Degree wins first.
    REQUIRE(ring->mono_less(Monomial{1, 0}, Monomial{1, 1}));
    // Same degree: the later generator is heavier.
    REQUIRE(ring->mono_less(Monomial{1, 0}, Monomial{0, 1}));
    REQUIRE(!ring->mono_less(Monomial{0, 1}, Monomial{1, 0}));
    REQUIRE(!ring->mono_less(Monomial{1, 1}, Monomial{1, 1}));

    // Rules rewrite downward, so every replacement term is below the LHS.
    for (size_t g = 0; g < ring->n_gens(); ++g) {
        if (!ring->rule(g)) continue;
        Monomial lhs(ring->n_gens(), 0);
        lhs[g] = ring->rule(g)->exponent;
        for (const auto& t : ring->rule(g)->replacement)
            REQUIRE(ring->mono_less(t.mono, lhs));
    }
}

TEST_CASE("truncation kills overflow before rules fire") {
    // In a ring truncated at 4, t*t*t has degree 6: it must vanish outright,
    // not sneak back under the cap through the rewrite t^2 -> x*t.
    PresentationBuilder<GF2> pb(4);
    pb.add_generator("x", 2);
    pb.add_generator("t", 2);
    pb.add_rule("x", 3, std::vector<Term<GF2>>{});
    pb.add_rule("t", 2, "x*t");
    auto ring = pb.build();
    Element<GF2> t = gen_elem(ring, "t");
    REQUIRE(mul(mul(t, t), t).is_zero());
    REQUIRE(mul(t, t) == parse_expression(ring, "x*t"));
}

TEST_CASE("ring maps respect products and validate degrees") {
    auto src = mixed_ring<GF2>(4);
    PresentationBuilder<GF2> pb(8);
    pb.add_generator("u", 2);
    pb.add_rule("u", 5, std::vector<Term<GF2>>{});
    auto dst = pb.build();

    Element<GF2> u = gen_elem(dst, "u");
    RingHom<GF2> h = make_ring_hom(src, dst, {u, u});
    std::mt19937 rng(7007);
    for (int trial = 0; trial < 200; ++trial) {
        Element<GF2> a = random_element(src, rng);
        Element<GF2> b = random_element(src, rng);
        REQUIRE(apply_hom(h, mul(a, b)) == mul(apply_hom(h, a), apply_hom(h, b)));
        REQUIRE(apply_hom(h, add(a, b)) == add(apply_hom(h, a), apply_hom(h, b)));
    }

    REQUIRE_THROWS_AS(make_ring_hom(src, dst, {u, mul(u, u)}), Error);
    // x^5 = 0 upstairs must hold downstairs: u^5 = 0 holds. A map into a ring
    // where the relation fails is rejected.
    PresentationBuilder<GF2> pb2(20);
    pb2.add_generator("u", 2);
    auto free_ring = pb2.build();
    REQUIRE_THROWS_AS(make_ring_hom(src, free_ring,
                                    {gen_elem(free_ring, "u"), gen_elem(free_ring, "u")}),
                      Error);
}

TEST_CASE("linear maps shift degree and demand full coverage") {
    auto src = mixed_ring<GF2>(1); // basis 1, x, t
    PresentationBuilder<GF2> pb(8);
    pb.add_generator("z", 2);
    pb.add_rule("z", 5, std::vector<Term<GF2>>{});
    auto dst = pb.build();
    Element<GF2> z = gen_elem(dst, "z");

    std::map<Monomial, Element<GF2>> images;
    images[Monomial{0, 0}] = mul(z, z);
    images[Monomial{1, 0}] = mul(mul(z, z), z);
    images[Monomial{0, 1}] = zero_elem(dst);
    LinearMap<GF2> lm = make_linear_map(src, dst, 4, images);
    REQUIRE(apply_hom(lm, parse_expression(src, "1 + x + t")) ==
            parse_expression(dst, "z^2 + z^3"));

    images.erase(Monomial{0, 1});
    REQUIRE_THROWS_AS(make_linear_map(src, dst, 4, images), Error);

    images[Monomial{0, 1}] = z; // wrong degree
    REQUIRE_THROWS_AS(make_linear_map(src, dst, 4, images), Error);
}

TEST_CASE("rational arithmetic stays normalized") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-1, -2) == Rational(1, 2));
    REQUIRE(Rational(1, -2) == Rational(-1, 2));
    REQUIRE((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    REQUIRE((Rational(7, 45) * Rational(45, 7)).is_one());
    REQUIRE(Rational(3, 7).inverse() == Rational(7, 3));
    REQUIRE_THROWS_AS(Rational(0).inverse(), Error);
    REQUIRE(Rational(-7, 3).str() == "-7/3");
    REQUIRE(Rational(4).str() == "4");
}
