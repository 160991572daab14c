#include "doctest.h"

#include "corr/laurent.hpp"
#include "corr/local_series.hpp"
#include "corr/poly.hpp"
#include "corr/quadext.hpp"
#include "corr/rat.hpp"
#include "corr/ratfun.hpp"
#include "corr/series.hpp"
#include "corr/split.hpp"
#include "corr/sseries.hpp"

#include <random>

using namespace corr;

TEST_CASE("rational parsing and powers") {
    CHECK(rat_parse("-4/6") == rat(-2, 3));
    CHECK(rat_str(rat(5, 1)) == "5");
    CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
    Rat root;
    CHECK(rat_is_square(rat(49, 4), &root));
    CHECK(root == rat(7, 2));
    CHECK_FALSE(rat_is_square(rat(2), nullptr));
}

TEST_CASE("poly division, gcd, factorization") {
    Poly p;  // (x-1)^2 (x+2) = x^3 - 3x + 2
    p.c = {rat(2), rat(-3), rat(0), rat(1)};
    auto f = poly_factor(p);
    CHECK(f.lead == rat(1));
    CHECK(f.factors.size() == 2);

    Poly q;  // 2x^2 + 2x/3 + 2/9: lead 2, irreducible quadratic
    q.c = {rat(2, 9), rat(2, 3), rat(2)};
    auto fq = poly_factor(q);
    CHECK(fq.factors.size() == 1);
    CHECK(fq.factors[0].factor.degree() == 2);
    CHECK(fq.lead == rat(2));

    Poly g = poly_gcd(p, p.derivative());
    CHECK(g.degree() == 1);  // (x-1)
}

TEST_CASE("laurent arithmetic and division") {
    Laurent a = Laurent::monomial(2, 0, -1) + Laurent::monomial(2, 1, 2, rat(3));
    Laurent b = a * a;
    CHECK(b.coeff_of(0, -2).constant_value() == rat(1));
    CHECK(b.min_exp(0) == -2);

    // Divide (z0^2 - z1^2) by (z0 - z1).
    Laurent d = Laurent::monomial(2, 0, 2) - Laurent::monomial(2, 1, 2);
    Laurent q(2);
    CHECK(laurent_div_diag(d, 0, 1, &q));
    Laurent expect = Laurent::monomial(2, 0, 1) + Laurent::monomial(2, 1, 1);
    CHECK(q == expect);

    // Divide z^-1 (1 - t z)(something) by the poly (1 - t z) with t = 1/7 fixed rational.
    Poly f;  // z - 3
    f.c = {rat(-3), rat(1)};
    Laurent x = Laurent::monomial(1, 0, -2);  // z^-2
    Laurent prod(1);
    prod += x.mul_monomial(0, 1, rat(1));   // z^-1
    prod -= x.scaled(rat(3));               // -3 z^-2
    Laurent quot(1);
    CHECK(laurent_div_poly(prod, f, 0, &quot));
    CHECK(quot == x);
}

TEST_CASE("ratfun reduce, arithmetic, inverse") {
    auto table = std::make_shared<FactorTable>();
    // f = (z^2 - 1)/(z - 1) reduces to z + 1 after registering (z-1).
    Poly zm1;
    zm1.c = {rat(-1), rat(1)};
    int fid = table->add(zm1);
    RatFun f(2, table);
    f.num = Laurent::monomial(2, 0, 2) - Laurent::constant(2, rat(1));
    f.den[{FactorKey::curve, fid, 0}] = 1;
    f.reduce();
    CHECK(f.den.empty());
    CHECK(f.num == Laurent::monomial(2, 0, 1) + Laurent::constant(2, rat(1)));

    // 1/(z0 - z1) + 1/(z1 - z0) = 0
    RatFun g(2, table), h(2, table);
    g.num = Laurent::constant(2, rat(1));
    g.den[{FactorKey::diag, 1, 0}] = 1;
    h.num = Laurent::constant(2, rat(-1));
    h.den[{FactorKey::diag, 1, 0}] = 1;
    CHECK((g + h).is_zero());

    // inverse of z^2(z-3) picks up a registered factor
    RatFun k(2, table);
    k.num = Laurent::monomial(2, 0, 3) - Laurent::monomial(2, 0, 2, rat(3));
    RatFun ki = k.inverse();
    CHECK((k * ki).constant_value() == rat(1));

    // derivative of 1/(z1 - z0) wrt z0 is +1/(z1-z0)^2
    RatFun dg = g.derivative(0);
    RatFun expect(2, table);
    expect.num = Laurent::constant(2, rat(1));
    expect.den[{FactorKey::diag, 1, 0}] = 2;
    CHECK(dg == expect);
}

TEST_CASE("ratfun substitution") {
    auto table = std::make_shared<FactorTable>();
    RatFun g(3, table);
    g.num = Laurent::constant(3, rat(1));
    g.den[{FactorKey::diag, 1, 0}] = 1;  // 1/(z1 - z0)
    // z1 -> 5: 1/(z1 - z0) becomes 1/(5 - z0) = -1/(z0 - 5)
    RatFun h = g.subst_value(1, rat(5));
    RatFun check = h.inverse();
    CHECK(check.num == Laurent::constant(3, rat(5)) - Laurent::monomial(3, 0, 1));

    // substitute z1 -> z2
    RatFun m = g.subst_var(1, 2);
    CHECK(m.den.count({FactorKey::diag, 2, 0}) == 1);
}

TEST_CASE("graded series ring ops and exp/log") {
    SeriesContext sc;
    sc.n_t = 1;
    sc.n_s = 1;
    sc.ts_degree = 10;
    sc.hbar_max = 0;
    auto ctx = make_ctx(sc);
    GSRat q = GSRat::var_monomial(ctx, Rat(0), ctx->t_var(1), 1, Rat(1));
    GSRat l = gs_log1p(q);
    GSRat e = gs_exp(l, Rat(1));
    // exp(log(1+q)) = 1 + q
    GSRat expect = GSRat::constant(ctx, Rat(0), Rat(1)) + q;
    CHECK(e == expect);
}

TEST_CASE("graded series ring laws on random inputs") {
    SeriesContext sc;
    sc.n_t = 2;
    sc.n_s = 1;
    sc.ts_degree = 4;
    sc.hbar_max = 2;
    auto ctx = make_ctx(sc);
    std::mt19937 rng(12345);
    auto rnd_series = [&]() {
        GSRat a(ctx, Rat(0));
        for (int tries = 0; tries < 6; ++tries) {
            ExpVec e(static_cast<size_t>(ctx->nvars()), 0);
            e[0] = static_cast<int>(rng() % 3);
            e[1] = static_cast<int>(rng() % 2);
            e[2] = static_cast<int>(rng() % 2);
            e[3] = 2 * static_cast<int>(rng() % 2);
            long num = static_cast<long>(rng() % 7) - 3;
            long den = 1 + static_cast<long>(rng() % 4);
            a.add_term(e, rat(num, den));
        }
        return a;
    };
    for (int it = 0; it < 10; ++it) {
        GSRat a = rnd_series(), b = rnd_series(), c = rnd_series();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("sseries values") {
    auto s = s_series(4);
    CHECK(s[0] == rat(1));
    CHECK(s[1] == rat(0));
    CHECK(s[2] == rat(1, 24));
    CHECK(s[3] == rat(0));
    CHECK(s[4] == rat(1, 1920));
    auto si = s_series_inverse(4);
    CHECK(si[2] == rat(-1, 24));
    CHECK(si[4] == rat(7, 5760));
    auto g = s_ratio_polys(1);
    // gamma_1(v) = (v^2 - 1)/24
    CHECK(g[1].coeff(2) == rat(1, 24));
    CHECK(g[1].coeff(0) == rat(-1, 24));
}

TEST_CASE("local expansion basics") {
    auto table = std::make_shared<FactorTable>();
    // f = 1/(1 - z): factor (z - 1) with unit -1
    Poly zm1;
    zm1.c = {rat(-1), rat(1)};
    int fid = table->add(zm1);
    RatFun f(1, table);
    f.num = Laurent::constant(1, rat(-1));
    f.den[{FactorKey::curve, fid, 0}] = 1;
    auto s = local_expand(f, 0, LocalPoint::finite(rat(0)), 3);
    for (int k = 0; k <= 3; ++k) CHECK(s.coeff(k).constant_value() == rat(1));

    // f = z at infinity: local parameter 1/z, simple pole
    RatFun g(1, table);
    g.num = Laurent::monomial(1, 0, 1);
    auto si = local_expand(g, 0, LocalPoint::infinity(), 2);
    CHECK(si.coeff(-1).constant_value() == rat(1));
    CHECK(si.coeff(0).is_zero());
    CHECK(si.coeff(1).is_zero());

    // residue of 1/z at 0 is 1; of z^3 is 0
    RatFun invz(1, table);
    invz.num = Laurent::monomial(1, 0, -1);
    CHECK(local_residue(invz, 0, LocalPoint::finite(rat(0))).constant_value() == rat(1));
    RatFun cub(1, table);
    cub.num = Laurent::monomial(1, 0, 3);
    CHECK(local_residue(cub, 0, LocalPoint::finite(rat(0))).is_zero());
}

TEST_CASE("local series compose and inverse") {
    // f(zeta) = 1/zeta + zeta, g(zeta) = -zeta + zeta^2: f(g) check vs manual
    LSeries<Rat> f(-1, 4, Rat(0));
    f.set_coeff(-1, rat(1));
    f.set_coeff(1, rat(1));
    LSeries<Rat> g(1, 4, Rat(0));
    g.set_coeff(1, rat(-1));
    g.set_coeff(2, rat(1));
    auto h = ls_compose(f, g, Rat(1));
    // 1/g = -1/zeta (1/(1 - zeta)) = -1/zeta - 1 - zeta - ...; g = -zeta + zeta^2
    CHECK(h.coeff(-1) == rat(-1));
    CHECK(h.coeff(0) == rat(-1));
    CHECK(h.coeff(1) == rat(-2));
    CHECK(h.coeff(2) == rat(0));
}

TEST_CASE("split: Laurent example from the trivial case") {
    auto table = std::make_shared<FactorTable>();
    // F = z^2 + 3 + 1/z -> plus = z^2, minus = 1/z, c = 3.
    RatFun F(1, table);
    F.num = Laurent::monomial(1, 0, 2) + Laurent::constant(1, rat(3)) + Laurent::monomial(1, 0, -1);
    auto r = split_poles(F, 0, {Side::boundary});
    CHECK(r.plus.num == Laurent::monomial(1, 0, 2));
    CHECK(r.minus.num == Laurent::monomial(1, 0, -1));
    CHECK(r.constant_part.constant_value() == rat(3));
}

TEST_CASE("split: normalization at an outside pole") {
    auto table = std::make_shared<FactorTable>();
    // F = 1/(z - a) with a = 3 (outside): plus = 1/(z-a) + 1/a, c = -1/a.
    Poly zma;
    zma.c = {rat(-3), rat(1)};
    int fid = table->add(zma);
    RatFun F(1, table);
    F.num = Laurent::constant(1, rat(1));
    F.den[{FactorKey::curve, fid, 0}] = 1;
    auto r = split_poles(F, 0, {Side::boundary});
    CHECK(r.minus.is_zero());
    CHECK(r.constant_part.constant_value() == rat(-1, 3));
    RatFun recon = r.plus + r.minus + r.constant_part;
    CHECK(recon == F);
    // plus(0) = 0
    CHECK(r.plus.subst_value(0, rat(0)).is_zero());
}

TEST_CASE("split: random reconstruction property") {
    auto table = std::make_shared<FactorTable>();
    Poly in;  // z - 1/2 (inside)
    in.c = {rat(-1, 2), rat(1)};
    Poly out;  // z - 5 (outside)
    out.c = {rat(-5), rat(1)};
    int f_in = table->add(in), f_out = table->add(out);
    std::mt19937 rng(777);
    for (int it = 0; it < 8; ++it) {
        RatFun F(2, table);
        for (int t = 0; t < 5; ++t) {
            int e0 = static_cast<int>(rng() % 7) - 3;
            int e1 = static_cast<int>(rng() % 3) - 1;
            ExpVec e = {e0, e1};
            Laurent mono(2);
            mono.add_term(e, rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
            F.num += mono;
        }
        if (F.num.is_zero()) continue;
        F.den[{FactorKey::curve, f_in, 0}] = 1 + static_cast<int>(rng() % 2);
        F.den[{FactorKey::curve, f_out, 0}] = 1;
        F.den[{FactorKey::diag, 1, 0}] = 1 + static_cast<int>(rng() % 2);
        F.reduce();
        auto r = split_poles(F, 0, {Side::boundary, Side::outside});
        CHECK(r.plus + r.minus + r.constant_part == F);
        if (!r.plus.is_zero()) CHECK(r.plus.subst_value(0, rat(0)).is_zero());
        // minus vanishes at infinity: expand and check no nonnegative powers
        auto ls = local_expand(r.minus, 0, LocalPoint::infinity(), 0);
        for (int k = ls.lead; k <= 0; ++k) CHECK(ls.coeff(k).is_zero());
        CHECK((r.constant_part.depends_on(0)) == false);
    }
}

TEST_CASE("quadext arithmetic") {
    QuadExt x(rat(1), rat(2), rat(3));  // 1 + 2 sqrt 3
    QuadExt y = x.inverse();
    CHECK((x * y) == QuadExt(rat(1)));
    CHECK(x.sign() > 0);
    QuadExt z(rat(-4), rat(2), rat(3));  // -4 + 2 sqrt 3 < 0 since 12 < 16
    CHECK(z.sign() < 0);
}
