#include <catch2/catch_amalgamated.hpp>

#include <wucalc/builtins.hpp>
#include <wucalc/charclass.hpp>
#include <wucalc/obstruction.hpp>

using namespace wucalc;

TEST_CASE("hypersurface obstruction depends only on degree parity") {
    for (int n : {3, 5, 7}) {
        for (int d = 1; d <= 6; ++d) {
            EmbeddingContext ctx = hypersurface_ctx(n, d);
            REQUIRE(obstruction_vanishes(ctx) == (d % 2 == 1));
            REQUIRE(obstruction_witness(ctx).has_value() == (d % 2 == 0));
        }
    }
}

TEST_CASE("the degree-2 quintic fourfold witness is the expected class") {
    EmbeddingContext ctx = hypersurface_ctx(5, 2);
    auto w = obstruction_witness(ctx);
    REQUIRE(w.has_value());
    REQUIRE(to_string(*w) == "x^3");
    // The witness genuinely violates the criterion.
    Element<GF2> series = invert_unit(add(unit(ctx.ambient.ring), ctx.u));
    REQUIRE(pair(ctx.ambient, mul(series, sq_total(ctx.ambient.sq, *w))).is_one());
}

TEST_CASE("context constructors validate their numerology") {
    auto expect_kind = [](auto&& fn, ErrorKind kind) {
        try {
            fn();
            FAIL("expected an Error");
        } catch (const Error& e) {
            REQUIRE(e.kind() == kind);
        }
    };

    expect_kind([] { hypersurface_ctx(4, 2); }, ErrorKind::BadParity);
    expect_kind([] { hypersurface_ctx(-1, 2); }, ErrorKind::BadParity);
    expect_kind([] { hypersurface_ctx(5, 0); }, ErrorKind::ValidationError);

    // Ambient dimension must be 2n+2.
    expect_kind(
        [] {
            ManifoldModel m = cp(3);
            make_embedding_context(m, 3, zero_elem(m.ring));
        },
        ErrorKind::ValidationError);

    // u must be homogeneous of degree 2.
    expect_kind(
        [] {
            ManifoldModel m = cp(4);
            make_embedding_context(m, 3, parse_expression(m.ring, "x + x^2"));
        },
        ErrorKind::NonHomogeneous);
    expect_kind(
        [] {
            ManifoldModel m = cp(4);
            make_embedding_context(m, 3, parse_expression(m.ring, "x^2"));
        },
        ErrorKind::ValidationError);
}

TEST_CASE("low framing dimensions get a warning, not a rejection") {
    for (int n : {1, 3, 7}) {
        EmbeddingContext ctx = make_embedding_context(
            cp(n + 1), n, zero_elem(cp(n + 1).ring), "test");
        REQUIRE(ctx.warnings.size() == 1);
        REQUIRE(ctx.warnings[0].find(std::to_string(n)) != std::string::npos);
    }
    REQUIRE(hypersurface_ctx(5, 1).warnings.empty());
}

TEST_CASE("the criterion factors through the disk-bundle Wu class") {
    // Same computation, two routes: the inverted series pairing and the
    // bundle model over the ambient space.
    for (int n : {3, 5}) {
        for (int d = 1; d <= 4; ++d) {
            EmbeddingContext ctx = hypersurface_ctx(n, d);
            BundleData b =
                make_bundle(ctx.ambient, invert_unit(add(unit(ctx.ambient.ring), ctx.u)));
            REQUIRE(obstruction_vanishes(ctx) == disk_bundle_wu_vanishes(b, n + 1));
        }
    }
}

TEST_CASE("point blow-ups preserve the obstruction answer") {
    for (int n : {3, 5}) {
        for (int d = 1; d <= 4; ++d) {
            EmbeddingContext ctx = hypersurface_ctx(n, d);
            BlowUpModel model = point_blowup(ctx.ambient);
            BlowUpEmbeddingContext bctx = make_blowup_embedding_context(model, n, ctx.u);
            REQUIRE(blowup_obstruction_vanishes(bctx) == obstruction_vanishes(ctx));
            REQUIRE(blowup_obstruction_witness(bctx).has_value() ==
                    !obstruction_vanishes(ctx));
        }
    }
}

TEST_CASE("series inversion in the blow-up ring is a true inverse") {
    EmbeddingContext ctx = hypersurface_ctx(5, 2);
    BlowUpModel model = point_blowup(ctx.ambient);
    auto c = gf2_ctx(model);
    BlowUpElement<GF2> ut = u_tilde(make_blowup_embedding_context(model, 5, ctx.u));
    BlowUpElement<GF2> inv = blowup_invert_one_plus(model, ut);
    BlowUpElement<GF2> one = pi_star(c, unit(c.mring));
    REQUIRE(blowup_mul(c, blowup_add(one, ut), inv) == one);

    // 1 + z with z carrying a constant term is rejected.
    REQUIRE_THROWS_AS(blowup_invert_one_plus(model, one), Error);
}

TEST_CASE("the lifted class adds the exceptional generator") {
    EmbeddingContext ctx = hypersurface_ctx(3, 3);
    BlowUpModel model = point_blowup(ctx.ambient);
    auto c = gf2_ctx(model);
    BlowUpEmbeddingContext bctx = make_blowup_embedding_context(model, 3, ctx.u);
    BlowUpElement<GF2> ut = u_tilde(bctx);
    REQUIRE(ut.base == ctx.u);
    REQUIRE(ut.exc == unit(c.pring));
}
