#include "doctest.h"

#include "corr/curve.hpp"

using namespace corr;

namespace {

// The closed-form quadratic-example curve expanded as a formal (t,s)-series:
// X = (1-st) z / (1 + c s z + s^2 z^2), etc., with t = t_1, s = s_1 formal.
struct QuadraticFormal {
    Ctx ctx;
    FactorTablePtr table;
    GS X, Y, Theta;
};

QuadraticFormal quadratic_formal_expansion(const Rat& c, int degree) {
    SeriesContext sc;
    sc.n_t = 1;
    sc.n_s = 1;
    sc.ts_degree = degree;
    sc.hbar_max = 0;
    auto ctx = make_ctx(sc);
    auto table = std::make_shared<FactorTable>();
    RatFun zero(1, table);
    RatFun one = RatFun::constant(1, Rat(1), table);
    auto zmono = [&](int k, const Rat& a) {
        RatFun r(1, table);
        r.num = Laurent::monomial(1, 0, k, a);
        return r;
    };
    GS gone = GS::constant(ctx, zero, one);
    GS t = GS::var_monomial(ctx, zero, ctx->t_var(1), 1, one);
    GS s = GS::var_monomial(ctx, zero, ctx->s_var(1), 1, one);
    GS z = GS::constant(ctx, zero, zmono(1, Rat(1)));
    GS zinv = GS::constant(ctx, zero, zmono(-1, Rat(1)));
    GS st = t * s;
    GS inv_1mst = gs_invert(gone - st);
    GS qx = gone + s * z.scaled(c) + s * s * z * z;   // 1 + c s z + s^2 z^2
    GS qy = gone + t * zinv.scaled(c) + t * t * zinv * zinv;
    QuadraticFormal out{ctx, table, GS(ctx, zero), GS(ctx, zero), GS(ctx, zero)};
    out.X = (gone - st) * z * gs_invert(qx);
    out.Y = (gone - st) * zinv * gs_invert(qy);
    out.Theta = (s * z + st.scaled(c) + t * zinv) * inv_1mst;
    return out;
}

}  // namespace

TEST_CASE("formal curve: phi = 1 gives X=z, Y=1/z, Theta = t/z + s z") {
    WeightData w = WeightData::from_phi_poly({Rat(1)}, 12);
    Curve c = solve_formal_curve(w, 1, 1, 4);
    // X = z exactly
    GS z = GS::constant(c.ctx, c.zero_coeff(), [&] {
        RatFun r(1, c.table);
        r.num = Laurent::monomial(1, 0, 1);
        return r;
    }());
    CHECK(c.X == z);
    // Theta = t_1 z^{-1} + s_1 z
    GS expect(c.ctx, c.zero_coeff());
    {
        ExpVec e(static_cast<size_t>(c.ctx->nvars()), 0);
        e[static_cast<size_t>(c.ctx->t_var(1))] = 1;
        RatFun r(1, c.table);
        r.num = Laurent::monomial(1, 0, -1);
        expect.add_term(e, r);
        ExpVec e2(static_cast<size_t>(c.ctx->nvars()), 0);
        e2[static_cast<size_t>(c.ctx->s_var(1))] = 1;
        RatFun r2(1, c.table);
        r2.num = Laurent::monomial(1, 0, 1);
        expect.add_term(e2, r2);
    }
    CHECK(c.Theta == expect);
}

TEST_CASE("formal curve matches the closed quadratic example after rescaling") {
    Rat cpar(1, 3);
    WeightData w = WeightData::from_phi_poly({Rat(1), cpar, Rat(1)}, 12);
    int D = 4;
    Curve solved = solve_formal_curve(w, 1, 1, D);
    auto closed = quadratic_formal_expansion(cpar, D);

    // lambda = gamma1_closed / gamma1_solved, then X_solved(lambda z) = X_closed(z).
    GS gamma_closed(solved.ctx, solved.zero_coeff());
    for (const auto& [e, coeff] : closed.X.terms) {
        RatFun v(1, closed.table);
        v.num = Laurent::constant(1, coeff.num.coeff_of(0, 1).constant_value());
        if (!v.is_zero()) gamma_closed.add_term(e, v);
    }
    GS lambda = gamma_closed * gs_invert(solved.gamma1);
    Curve rescaled = rescale_curve(solved, lambda);

    // Compare term by term against the closed expansion (shared context shape).
    auto series_equal = [&](const GS& a, const GS& b) {
        GS d = a;
        for (const auto& [e, coeff] : b.terms) {
            RatFun cv(1, solved.table);
            cv.num = coeff.num;
            for (const auto& [k, m] : coeff.den) {
                (void)k;
                (void)m;
                FAIL("closed form should be Laurent");
            }
            d.add_term(e, cv.scaled(Rat(-1)));
        }
        return d.is_zero();
    };
    CHECK(series_equal(rescaled.X, closed.X));
    CHECK(series_equal(rescaled.Y, closed.Y));
    CHECK(series_equal(rescaled.Theta, closed.Theta));
}

TEST_CASE("formal curve: x_unit_leading normalization has [z] X = 1") {
    WeightData w = WeightData::from_phi_poly({Rat(1), Rat(1, 2), Rat(1)}, 12);
    Curve c = solve_formal_curve(w, 1, 1, 3, CurveNormalization::x_unit_leading);
    GS one = GS::constant(c.ctx, c.zero_coeff(), c.one_coeff());
    CHECK(c.gamma1 == one);
}

TEST_CASE("rational curve: quadratic example validates") {
    Curve c = quadratic_example_curve(rat(1, 7), rat(1, 5), rat(1, 3));
    CHECK(c.mode == CurveMode::rational);
    CHECK(residue_t_parameter(c, 1).constant_term().constant_value() == rat(1, 7));
    CHECK(residue_s_parameter(c, 1).constant_term().constant_value() == rat(1, 5));
    // Theta (1-st) - (s z + c s t + t/z) == 0
    RatFun th = c.Theta.constant_term();
    Rat d0 = rat(34, 35);  // 1 - st
    RatFun expect(1, c.table);
    expect.num = Laurent::monomial(1, 0, 1, rat(1, 5)) + Laurent::constant(1, rat(1, 105)) +
                 Laurent::monomial(1, 0, -1, rat(1, 7));
    CHECK(th.scaled(d0) == expect);
}

TEST_CASE("rational curve: trivial accepted, violation rejected") {
    WeightData w1 = WeightData::from_phi_poly({Rat(1), Rat(1, 2)}, 8);
    Curve c = trivial_curve_rational(w1);
    CHECK(c.Theta.is_zero());

    // X=z, Y=1/z, Theta=z with phi=1+theta: X Y phi(Theta) = 1 + z != 1.
    auto table = std::make_shared<FactorTable>();
    RatFun X(1, table), Y(1, table), Th(1, table);
    X.num = Laurent::monomial(1, 0, 1);
    Y.num = Laurent::monomial(1, 0, -1);
    Th.num = Laurent::monomial(1, 0, 1);
    WeightData w = WeightData::from_phi_poly({Rat(1), Rat(1)}, 8);
    CHECK_THROWS_AS(load_rational_curve(X, Y, Th, w, {}, {Rat(0)}), Error);
}

TEST_CASE("rational curve: bicolored (1,1) and maps presets load") {
    Curve b = bicolored11_curve(rat(1, 4), rat(1, 6));
    CHECK(residue_t_parameter(b, 1).constant_term().constant_value() == rat(1, 4));
    Curve m = maps_curve_rational(rat(1, 3));
    CHECK(residue_s_parameter(m, 2).constant_term().constant_value() == rat(1));
    CHECK(residue_s_parameter(m, 1).constant_term().is_zero());
}

TEST_CASE("critical points and deck transformations on the quadratic curve") {
    Rat t(1, 7), s(1, 5);
    Curve c = quadratic_example_curve(t, s, rat(1, 3));
    auto xcrit = critical_points_and_deck(c, true, 8);
    REQUIRE(xcrit.size() == 2);
    std::vector<Rat> locs = {xcrit[0].p, xcrit[1].p};
    std::sort(locs.begin(), locs.end());
    CHECK(locs[0] == -1 / s);
    CHECK(locs[1] == 1 / s);
    auto ycrit = critical_points_and_deck(c, false, 8);
    REQUIRE(ycrit.size() == 2);
    std::vector<Rat> ylocs = {ycrit[0].p, ycrit[1].p};
    std::sort(ylocs.begin(), ylocs.end());
    CHECK(ylocs[0] == -t);
    CHECK(ylocs[1] == t);

    // sigma'(p) = -1 and X(sigma(z)) = X(z) to the stored order.
    for (const auto& cp : xcrit) {
        CHECK(cp.deck.coeff(1) == rat(-1));
        auto xl = local_expand(c.X.constant_term(), 0, LocalPoint::finite(cp.p), 10);
        LSeries<Rat> xr(xl.lead, xl.ord, Rat(0));
        for (int k = xl.lead; k <= xl.ord; ++k) xr.set_coeff(k, xl.coeff(k).constant_value());
        auto composed = ls_compose(xr, cp.deck, Rat(1));
        CHECK(composed.truncated(8) == xr.truncated(8));
    }
}

TEST_CASE("deck on an artificial double cover X = z^2 - 2z") {
    // Global involution sigma(z) = 2 - z around the critical point p = 1.
    auto table = std::make_shared<FactorTable>();
    RatFun X(1, table);
    X.num = Laurent::monomial(1, 0, 2) - Laurent::monomial(1, 0, 1, rat(2));
    auto xl = local_expand(X, 0, LocalPoint::finite(rat(1)), 24);
    LSeries<Rat> F(xl.lead, xl.ord, Rat(0));
    for (int k = xl.lead; k <= xl.ord; ++k) F.set_coeff(k, xl.coeff(k).constant_value());
    LSeries<Rat> v0(0, F.ord, Rat(0));
    v0.set_coeff(0, F.coeff(0));
    auto deck = deck_newton<Rat>(F - v0, Rat(1), 8);
    // sigma(1 + zeta) = 1 - zeta exactly.
    CHECK(deck.coeff(1) == rat(-1));
    for (int k = 2; k <= 8; ++k) CHECK(deck.coeff(k) == rat(0));
}
