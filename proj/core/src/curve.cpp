#include "corr/curve.hpp"

#include <algorithm>

namespace corr {

namespace {

GS gs_zero(const Ctx& ctx, const FactorTablePtr& table) { return GS(ctx, RatFun(1, table)); }

GS gs_const(const Ctx& ctx, const FactorTablePtr& table, const Rat& a) {
    return GS::constant(ctx, RatFun(1, table), RatFun::constant(1, a, table));
}

GS gs_zmono(const Ctx& ctx, const FactorTablePtr& table, int k, const Rat& a = Rat(1)) {
    RatFun c(1, table);
    c.num = Laurent::monomial(1, 0, k, a);
    return GS::constant(ctx, RatFun(1, table), c);
}

// Splits a curve-mode GS (Laurent coefficients in z) into the z>0, z==0,
// z<0 parts.
struct ZSplit {
    GS pos, zero, neg;
};
ZSplit split_z(const GS& f) {
    ZSplit r{GS(f.ctx, f.proto), GS(f.ctx, f.proto), GS(f.ctx, f.proto)};
    for (const auto& [e, coeff] : f.terms) {
        require(coeff.den.empty(), "split_z: coefficient must be a Laurent polynomial");
        RatFun p(1, coeff.table), z0(1, coeff.table), n(1, coeff.table);
        for (const auto& [le, la] : coeff.num.terms) {
            Laurent mono(1);
            mono.add_term(le, la);
            if (le[0] > 0)
                p.num += mono;
            else if (le[0] < 0)
                n.num += mono;
            else
                z0.num += mono;
        }
        if (!p.is_zero()) r.pos.add_term(e, p);
        if (!z0.is_zero()) r.zero.add_term(e, z0);
        if (!n.is_zero()) r.neg.add_term(e, n);
    }
    return r;
}

GS gs_zderiv(const GS& f) {
    return f.map_coeffs([](const RatFun& c) { return c.derivative(0); });
}

GS gs_zpow_mul(const GS& f, int k) {
    return f.map_coeffs([&](const RatFun& c) {
        RatFun r = c;
        r.num = r.num.mul_monomial(0, k);
        return r;
    });
}

// Grade-w part (weighted (t,s)-degree exactly w).
GS grade_part(const GS& f, int w) {
    GS r(f.ctx, f.proto);
    for (const auto& [e, c] : f.terms)
        if (f.ctx->ts_weight(e) == w) r.add_term(e, c);
    return r;
}

GS gs_pow(const GS& base, int k, const GS& one) {
    GS r = one;
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
}

void finalize_ops(Curve& c) {
    RatFun one = c.one_coeff();
    GS gone = GS::constant(c.ctx, c.zero_coeff(), one);
    GS dlogX = gs_zderiv(c.X) * gs_invert(c.X);
    GS dlogY = gs_zderiv(c.Y) * gs_invert(c.Y);
    c.xop = gs_invert(dlogX);
    c.yop = gs_invert(dlogY);
    c.dlogY_dlogX = dlogY * c.xop;
    c.dlogX_dlogY = dlogX * c.yop;
    c.xd_theta = c.xop * gs_zderiv(c.Theta);
    c.yd_theta = c.yop * gs_zderiv(c.Theta);
    // gamma1 = [z^1] X, gamma2 = [z^{-1}] Y, per grade.
    c.gamma1 = GS(c.ctx, c.zero_coeff());
    c.gamma2 = GS(c.ctx, c.zero_coeff());
    if (c.mode == CurveMode::formal) {
        for (const auto& [e, coeff] : c.X.terms) {
            RatFun v(1, c.table);
            v.num = Laurent::constant(1, coeff.num.coeff_of(0, 1).constant_value());
            if (!v.is_zero()) c.gamma1.add_term(e, v);
        }
        for (const auto& [e, coeff] : c.Y.terms) {
            RatFun v(1, c.table);
            v.num = Laurent::constant(1, coeff.num.coeff_of(0, -1).constant_value());
            if (!v.is_zero()) c.gamma2.add_term(e, v);
        }
    } else {
        auto x0 = local_expand(c.X.constant_term(), 0, LocalPoint::finite(Rat(0)), 1);
        RatFun g1 = x0.coeff(1);
        auto yi = local_expand(c.Y.constant_term(), 0, LocalPoint::infinity(), 1);
        RatFun g2 = yi.coeff(1);  // Y ~ gamma2 / z: coeff of zeta^1 with zeta = 1/z
        c.gamma1 = GS::constant(c.ctx, c.zero_coeff(), g1);
        c.gamma2 = GS::constant(c.ctx, c.zero_coeff(), g2);
    }
    (void)gone;
}

}  // namespace

GS gs_formal_residue(const GS& f, int var) {
    GS r(f.ctx, f.proto);
    for (const auto& [e, coeff] : f.terms) {
        for (const auto& [k, m] : coeff.den) {
            (void)m;
            bool involves = (k.kind == FactorKey::curve && k.b == var) ||
                            (k.kind == FactorKey::diag && (k.a == var || k.b == var));
            require(!involves, "gs_formal_residue: coefficient has denominator in the residue variable");
        }
        RatFun v = coeff;
        v.num = coeff.num.coeff_of(var, -1);
        if (!v.is_zero()) r.add_term(e, v);
    }
    return r;
}

GS instantiate(const GS& f, int var, int nz, const Ctx& work, const FactorTablePtr& table) {
    require(f.ctx->n_t == work->n_t && f.ctx->n_s == work->n_s,
            "instantiate: incompatible parameter alphabets");
    GS r(work, RatFun(nz, table));
    std::vector<int> perm = {var};
    for (const auto& [e, coeff] : f.terms) {
        ExpVec e2(static_cast<size_t>(work->nvars()), 0);
        for (int k = 1; k <= work->n_t; ++k)
            e2[static_cast<size_t>(work->t_var(k))] = e.at(static_cast<size_t>(f.ctx->t_var(k)));
        for (int k = 1; k <= work->n_s; ++k)
            e2[static_cast<size_t>(work->s_var(k))] = e.at(static_cast<size_t>(f.ctx->s_var(k)));
        e2[static_cast<size_t>(work->hbar_var())] = e.at(static_cast<size_t>(f.ctx->hbar_var()));
        r.add_term(e2, coeff.rename(perm, nz));
    }
    return r;
}

Curve solve_formal_curve(const WeightData& weight, int n_t, int n_s, int ts_degree,
                         CurveNormalization norm) {
    require(ts_degree >= 0, "solve_formal_curve: negative degree");
    SeriesContext sc;
    sc.n_t = n_t;
    sc.n_s = n_s;
    sc.ts_degree = ts_degree;
    sc.hbar_max = 0;
    Ctx ctx = make_ctx(sc);
    auto table = std::make_shared<FactorTable>();

    Curve c;
    c.mode = CurveMode::formal;
    c.ctx = ctx;
    c.table = table;
    c.weight = weight;

    RatFun one = RatFun::constant(1, Rat(1), table);
    GS gone = GS::constant(ctx, RatFun(1, table), one);
    GS theta = gs_zero(ctx, table);

    auto build_xy = [&](const GS& th, GS* X, GS* Y, GS* dlogX, GS* dlogY) {
        // log phi(Theta) split into A (z >= 0 side) and B.
        GS logphi = eval_theta_series(weight.psi_series(ts_degree).c, th, one);
        ZSplit sp = split_z(logphi);
        GS A = sp.pos, B = sp.neg;
        if (norm == CurveNormalization::constant_to_A)
            A += sp.zero;
        else
            B += sp.zero;
        *X = gs_zpow_mul(gs_exp(-A, one), 1);
        *Y = gs_zpow_mul(gs_exp(-B, one), -1);
        // dlog X = 1/z - A', dlog Y = -1/z - B'.
        *dlogX = gs_zmono(ctx, table, -1) - gs_zderiv(A);
        *dlogY = gs_zmono(ctx, table, -1).scaled(Rat(-1)) - gs_zderiv(B);
    };

    for (int w = 1; w <= ts_degree; ++w) {
        GS X, Y, dlogX, dlogY;
        build_xy(theta, &X, &Y, &dlogX, &dlogY);
        GS update(ctx, RatFun(1, table));
        // t_k equations give alpha_{-k}, s_k give alpha_{+k}, t_0 gives
        // alpha_0; beyond the declared alphabet the targets are zero.
        for (int k = 1; k <= w; ++k) {
            GS resid = gs_formal_residue(theta * gs_pow(X, k - 1, gone) * gs_zderiv(X), 0);
            if (k <= n_t) resid -= GS::var_monomial(ctx, RatFun(1, table), ctx->t_var(k), 1, one);
            GS defect = grade_part(resid, w);
            update -= gs_zpow_mul(defect, -k);
        }
        for (int k = 1; k <= w; ++k) {
            GS resid = gs_formal_residue(theta * gs_pow(Y, k - 1, gone) * gs_zderiv(Y), 0).scaled(Rat(-1));
            if (k <= n_s) resid -= GS::var_monomial(ctx, RatFun(1, table), ctx->s_var(k), 1, one);
            GS defect = grade_part(resid, w);
            update -= gs_zpow_mul(defect, k);
        }
        {
            GS resid = gs_formal_residue(theta * dlogX, 0);
            GS defect = grade_part(resid, w);
            update -= defect;
        }
        theta += update;
    }

    // Final consistency: all residue conditions hold exactly, and s_0 = 0.
    GS X, Y, dlogX, dlogY;
    build_xy(theta, &X, &Y, &dlogX, &dlogY);
    for (int k = 1; k <= ts_degree; ++k) {
        GS resid = gs_formal_residue(theta * gs_pow(X, k - 1, gone) * gs_zderiv(X), 0);
        if (k <= n_t) resid -= GS::var_monomial(ctx, RatFun(1, table), ctx->t_var(k), 1, one);
        require(resid.is_zero(), "solve_formal_curve: t_k residue condition failed");
    }
    for (int k = 1; k <= ts_degree; ++k) {
        GS resid = gs_formal_residue(theta * gs_pow(Y, k - 1, gone) * gs_zderiv(Y), 0).scaled(Rat(-1));
        if (k <= n_s) resid -= GS::var_monomial(ctx, RatFun(1, table), ctx->s_var(k), 1, one);
        require(resid.is_zero(), "solve_formal_curve: s_k residue condition failed");
    }
    require(gs_formal_residue(theta * dlogX, 0).is_zero(), "solve_formal_curve: t_0 != 0");
    require(gs_formal_residue(theta * dlogY, 0).is_zero(), "solve_formal_curve: s_0 != 0");

    c.X = X;
    c.Y = Y;
    c.Theta = theta;
    finalize_ops(c);
    return c;
}

namespace {

void check_rational_chart(const Curve& c, const RatFun& X, bool x_side) {
    // X must form a coordinate on its disk: simple zero at the chart
    // origin, all other numerator roots strictly on the far side, all
    // denominator roots strictly on the far side.
    auto nf = factor_numerator(X.num, c.table);
    if (x_side) {
        require(nf.monomial.at(0) == 1, "curve: X must have a simple zero at z = 0 and none elsewhere");
    } else {
        // Y ~ gamma/z at infinity: numerator degree = denominator degree - 1.
        int num_deg = X.num.max_exp(0);
        int den_deg = X.den_expanded().max_exp(0);
        require(den_deg - num_deg == 1, "curve: Y must have a simple zero at z = infinity");
    }
    for (const auto& [key, m] : nf.factors) {
        (void)m;
        if (key.kind != FactorKey::curve) continue;
        Side s = c.table->info(key.a).side;
        require(s == (x_side ? Side::outside : Side::inside),
                x_side ? "curve: X has a zero inside or on the unit circle"
                       : "curve: Y has a zero outside or on the unit circle");
    }
    for (const auto& [key, m] : X.den) {
        (void)m;
        if (key.kind != FactorKey::curve) continue;
        Side s = c.table->info(key.a).side;
        if (x_side)
            require(s == Side::outside || s == Side::boundary,
                    "curve: X has a pole strictly inside the unit disk");
        else
            require(s == Side::inside || s == Side::boundary,
                    "curve: Y has a pole strictly outside the unit disk");
    }
}

}  // namespace

Curve load_rational_curve(const RatFun& X, const RatFun& Y, const RatFun& Theta,
                          const WeightData& weight, const std::vector<Rat>& t_vals,
                          const std::vector<Rat>& s_vals) {
    require(X.nvars == 1 && Y.nvars == 1 && Theta.nvars == 1,
            "load_rational_curve: expected single-variable data");
    require(X.table == Y.table && Y.table == Theta.table,
            "load_rational_curve: data must share one factor table");
    require(weight.has_rp, "load_rational_curve: weight needs the (R,P) presentation");
    require(weight.p_poly.is_zero(),
            "load_rational_curve: only P = 0 weights are supported in rational mode");

    SeriesContext sc;  // trivial grading
    sc.ts_degree = 0;
    sc.hbar_max = 0;
    Ctx ctx = make_ctx(sc);

    Curve c;
    c.mode = CurveMode::rational;
    c.ctx = ctx;
    c.table = X.table;
    c.weight = weight;
    c.t_vals = t_vals;
    c.s_vals = s_vals;

    // Theta is a Laurent polynomial.
    require(Theta.den.empty(), "load_rational_curve: Theta must be a Laurent polynomial");

    // Identity X Y phi(Theta) = 1 with phi = Rnum/Rden.
    auto subst_poly = [&](const Poly& p) {
        RatFun acc(1, c.table);
        for (int i = p.degree(); i >= 0; --i) {
            acc = acc * Theta;
            acc += RatFun::constant(1, p.coeff(i), c.table);
        }
        return acc;
    };
    RatFun rnum_theta = subst_poly(weight.r_num);
    RatFun rden_theta = subst_poly(weight.r_den);
    RatFun lhs = X * Y * rnum_theta - rden_theta;
    require(lhs.is_zero(), "load_rational_curve: X Y phi(Theta) != 1");

    // Expansion conditions at the chart origins, including t_0 = s_0 = 0.
    int d = static_cast<int>(t_vals.size());
    int e = static_cast<int>(s_vals.size());
    require(-Theta.num.min_exp(0) <= d, "load_rational_curve: Theta pole at 0 exceeds declared d");
    require(Theta.num.max_exp(0) <= e, "load_rational_curve: Theta pole at infinity exceeds declared e");
    RatFun xinv = X.inverse();
    RatFun diff0 = Theta;
    RatFun xpow = RatFun::constant(1, Rat(1), c.table);
    for (int k = 1; k <= d; ++k) {
        xpow = xpow * xinv;
        diff0 -= xpow.scaled(t_vals[static_cast<size_t>(k - 1)]);
    }
    auto ls0 = local_expand(diff0, 0, LocalPoint::finite(Rat(0)), 0);
    for (int k = ls0.lead; k <= 0; ++k)
        require(ls0.coeff(k).is_zero(),
                "load_rational_curve: Theta - sum t_k X^{-k} != O(z) at z=0 (t_0 or profile mismatch)");
    RatFun yinv = Y.inverse();
    RatFun diffi = Theta;
    RatFun ypow = RatFun::constant(1, Rat(1), c.table);
    for (int k = 1; k <= e; ++k) {
        ypow = ypow * yinv;
        diffi -= ypow.scaled(s_vals[static_cast<size_t>(k - 1)]);
    }
    auto lsi = local_expand(diffi, 0, LocalPoint::infinity(), 0);
    for (int k = lsi.lead; k <= 0; ++k)
        require(lsi.coeff(k).is_zero(),
                "load_rational_curve: Theta - sum s_k Y^{-k} != O(1/z) at infinity");

    // Chart structure.
    check_rational_chart(c, X, true);
    check_rational_chart(c, Y, false);

    // Parameter recovery by residues.
    RatFun xp = X.derivative(0), yp = Y.derivative(0);
    RatFun acc = Theta * xp;
    for (int k = 1; k <= d; ++k) {
        RatFun rk = local_residue(acc, 0, LocalPoint::finite(Rat(0)));
        require(rk == RatFun::constant(1, t_vals[static_cast<size_t>(k - 1)], c.table),
                "load_rational_curve: recovered t_k mismatch");
        acc = acc * X;
    }
    acc = Theta * yp;
    for (int k = 1; k <= e; ++k) {
        RatFun rk = local_residue(acc, 0, LocalPoint::infinity());
        require(rk == RatFun::constant(1, s_vals[static_cast<size_t>(k - 1)], c.table),
                "load_rational_curve: recovered s_k mismatch");
        acc = acc * Y;
    }

    RatFun zero(1, c.table);
    c.X = GS::constant(ctx, zero, X);
    c.Y = GS::constant(ctx, zero, Y);
    c.Theta = GS::constant(ctx, zero, Theta);
    c.r_num_theta_inv = rnum_theta.inverse();
    c.r_den_theta_inv = rden_theta.inverse();
    finalize_ops(c);
    return c;
}

Curve trivial_curve_rational(const WeightData& weight) {
    auto table = std::make_shared<FactorTable>();
    RatFun X(1, table), Y(1, table), Theta(1, table);
    X.num = Laurent::monomial(1, 0, 1);
    Y.num = Laurent::monomial(1, 0, -1);
    return load_rational_curve(X, Y, Theta, weight, {}, {});
}

Curve quadratic_example_curve(const Rat& t, const Rat& s, const Rat& c) {
    require(s * t != 1, "quadratic_example_curve: st = 1 is degenerate");
    WeightData w = WeightData::from_phi_poly({Rat(1), c, Rat(1)}, 24);
    auto table = std::make_shared<FactorTable>();
    Rat d0 = 1 - s * t;
    // 1/X = (z^{-1} + c s + s^2 z)/(1 - s t), so X = (1-st) z / (1 + c s z + s^2 z^2).
    RatFun X(1, table), Y(1, table), Theta(1, table);
    Theta.num = Laurent::monomial(1, 0, 1, s / d0) + Laurent::constant(1, c * s * t / d0) +
                Laurent::monomial(1, 0, -1, t / d0);
    X.num = Laurent::monomial(1, 0, 1, d0);
    if (sgn(s) != 0) {
        Poly qx;  // s^2 z^2 + c s z + 1, monic: z^2 + (c/s) z + 1/s^2
        qx.c = {1 / (s * s), c / s, Rat(1)};
        int fx = table->add(qx);
        X.den[{FactorKey::curve, fx, 0}] = 1;
        X.num = X.num.scaled(1 / (s * s));
    }
    Y.num = Laurent::monomial(1, 0, 1, d0);
    if (sgn(t) != 0) {
        Poly qy;  // z^2 + c t z + t^2
        qy.c = {t * t, c * t, Rat(1)};
        int fy = table->add(qy);
        Y.den[{FactorKey::curve, fy, 0}] = 1;
    }
    std::vector<Rat> ts = sgn(t) != 0 ? std::vector<Rat>{t} : std::vector<Rat>{};
    std::vector<Rat> ss = sgn(s) != 0 ? std::vector<Rat>{s} : std::vector<Rat>{};
    if (sgn(t) == 0 || sgn(s) == 0) {
        // Degenerate limits keep Theta's Laurent profile consistent.
        ts = {t};
        ss = {s};
        if (sgn(t) == 0 && sgn(s) == 0) {
            ts.clear();
            ss.clear();
        }
    }
    return load_rational_curve(X, Y, Theta, w, ts, ss);
}

Curve bicolored11_curve(const Rat& t, const Rat& s) {
    WeightData w = WeightData::from_phi_poly({Rat(1), Rat(1)}, 24);
    auto table = std::make_shared<FactorTable>();
    RatFun X(1, table), Y(1, table), Theta(1, table);
    // X = z/(1+sz), Y = 1/(z+t), Theta = st + sz + t/z.
    Theta.num = Laurent::constant(1, s * t) + Laurent::monomial(1, 0, 1, s) +
                Laurent::monomial(1, 0, -1, t);
    X.num = Laurent::monomial(1, 0, 1);
    if (sgn(s) != 0) {
        Poly p;  // z + 1/s
        p.c = {1 / s, Rat(1)};
        int f = table->add(p);
        X.den[{FactorKey::curve, f, 0}] = 1;
        X.num = X.num.scaled(1 / s);
    }
    Y.num = Laurent::constant(1, Rat(1));
    if (sgn(t) != 0) {
        Poly p;  // z + t
        p.c = {t, Rat(1)};
        int f = table->add(p);
        Y.den[{FactorKey::curve, f, 0}] = 1;
    } else {
        Y.num = Laurent::monomial(1, 0, -1);
    }
    std::vector<Rat> ts, ss;
    if (sgn(t) != 0 || sgn(s) != 0) {
        ts = {t};
        ss = {s};
    }
    return load_rational_curve(X, Y, Theta, w, ts, ss);
}

Curve maps_curve_rational(const Rat& t1) {
    WeightData w = WeightData::from_phi_poly({Rat(1), Rat(1)}, 24);
    auto table = std::make_shared<FactorTable>();
    RatFun X(1, table), Y(1, table), Theta(1, table);
    // X = z/(z^2 + t1 z + 1), Y = 1/(z + t1),
    // Theta = z^2 + 2 t1 z + t1^2 + t1/z.
    Theta.num = Laurent::monomial(1, 0, 2) + Laurent::monomial(1, 0, 1, 2 * t1) +
                Laurent::constant(1, t1 * t1) + Laurent::monomial(1, 0, -1, t1);
    X.num = Laurent::monomial(1, 0, 1);
    Poly q;  // z^2 + t1 z + 1 (roots on the unit circle)
    q.c = {Rat(1), t1, Rat(1)};
    int f = table->add(q);
    X.den[{FactorKey::curve, f, 0}] = 1;
    Y.num = Laurent::constant(1, Rat(1));
    if (sgn(t1) != 0) {
        Poly p;
        p.c = {t1, Rat(1)};
        int fy = table->add(p);
        Y.den[{FactorKey::curve, fy, 0}] = 1;
    } else {
        Y.num = Laurent::monomial(1, 0, -1);
    }
    return load_rational_curve(X, Y, Theta, w, {t1}, {Rat(0), Rat(1)});
}

template <class K>
LSeries<K> deck_newton(const LSeries<K>& F, const K& one, int order) {
    // F has valuation 2; solve F(s(zeta)) = F(zeta) with s = -zeta + ...
    LSeries<K> Fn = F;
    Fn.normalize();
    require(Fn.lead == 2, "deck_newton: critical point is not simple");
    int wp = Fn.ord - 2;  // working precision for the deck series
    require(wp >= order + 4, "deck_newton: input series too short");
    LSeries<K> s(1, wp, F.proto);
    s.set_coeff(1, lsops::scale(one, Rat(-1)));
    LSeries<K> Fp = Fn.derivative();
    bool converged = false;
    for (int it = 0; it < 48 && !converged; ++it) {
        LSeries<K> r = ls_compose(Fn, s, one) - Fn;
        r.normalize();
        if (r.valuation() >= order + 4) {
            require(r.ord >= order + 3, "deck_newton: precision exhausted");
            converged = true;
            break;
        }
        LSeries<K> corr = r * ls_compose(Fp, s, one).inverse();
        s = s - corr;
        require(s.ord >= order + 2, "deck_newton: precision exhausted");
    }
    require(converged, "deck_newton: no convergence");
    // sigma is an involution; verify to the requested order.
    LSeries<K> ss = ls_compose(s, s, one);
    LSeries<K> id(1, order, F.proto);
    id.set_coeff(1, one);
    require(ss.truncated(order) == id, "deck_newton: sigma is not an involution");
    return s.truncated(order);
}

template LSeries<Rat> deck_newton<Rat>(const LSeries<Rat>&, const Rat&, int);
template LSeries<QuadExt> deck_newton<QuadExt>(const LSeries<QuadExt>&, const QuadExt&, int);

namespace {

LSeries<Rat> strip_spectators(const LSeries<RatFun>& s) {
    LSeries<Rat> r(s.lead, s.ord, Rat(0));
    for (int k = s.lead; k <= s.ord; ++k) {
        RatFun c = s.coeff(k);
        require(c.den.empty() && c.num.is_constant(), "strip_spectators: non-constant coefficient");
        r.set_coeff(k, c.num.constant_value());
    }
    return r;
}

}  // namespace

std::vector<CriticalPoint> critical_points_and_deck(const Curve& curve, bool x_side, int order) {
    require(curve.mode == CurveMode::rational,
            "critical_points_and_deck: rational mode only");
    const GS& fn = x_side ? curve.X : curve.Y;
    RatFun f = fn.constant_term();
    RatFun dlog = f.derivative(0) * f.inverse();
    auto nf = factor_numerator(dlog.num, curve.table);
    require(nf.monomial.at(0) <= 0, "critical_points_and_deck: dlog form vanishes at the origin");
    std::vector<CriticalPoint> out;
    for (const auto& [key, mult] : nf.factors) {
        require(key.kind == FactorKey::curve, "critical_points_and_deck: unexpected factor");
        require(mult == 1, "critical_points_and_deck: non-simple critical point");
        const FactorInfo& fi = curve.table->info(key.a);
        if (fi.f.degree() == 1) {
            CriticalPoint cp;
            cp.x_side = x_side;
            cp.rational = true;
            cp.p = *fi.root;
            auto xl = strip_spectators(local_expand(f, 0, LocalPoint::finite(cp.p), 2 * order + 16));
            LSeries<Rat> F = xl;
            // subtract the value at the point
            LSeries<Rat> v0(0, xl.ord, Rat(0));
            v0.set_coeff(0, xl.coeff(0));
            F = F - v0;
            cp.deck = deck_newton<Rat>(F, Rat(1), order);
            out.push_back(std::move(cp));
        } else {
            // Conjugate pair of surd points.
            Rat beta = fi.f.coeff(1), gamma = fi.f.coeff(0);
            Rat disc = beta * beta - 4 * gamma;
            for (int eps : {1, -1}) {
                CriticalPoint cp;
                cp.x_side = x_side;
                cp.rational = false;
                cp.p_quad = QuadExt(-beta / 2, Rat(eps, 2), disc);
                auto xl = local_expand_quad(f, 0, LocalPoint::finite_quad(cp.p_quad), 2 * order + 16);
                LSeries<QuadExt> v0(0, xl.ord, QuadExt());
                v0.set_coeff(0, xl.coeff(0));
                LSeries<QuadExt> F = xl - v0;
                cp.deck_quad = deck_newton<QuadExt>(F, QuadExt(Rat(1)), order);
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

Curve rescale_curve(const Curve& c, const GS& lambda) {
    require(c.mode == CurveMode::formal, "rescale_curve: formal mode only");
    GS lam_inv = gs_invert(lambda);
    auto apply = [&](const GS& f) {
        GS r(f.ctx, f.proto);
        for (const auto& [e, coeff] : f.terms) {
            // Split the Laurent coefficient by z-exponent and scale by lambda^k.
            for (const auto& [le, la] : coeff.num.terms) {
                int k = le[0];
                Laurent mono(1);
                mono.add_term(le, la);
                RatFun piece(1, coeff.table);
                piece.num = mono;
                GS term(f.ctx, f.proto);
                term.add_term(e, piece);
                GS lampow = GS::constant(f.ctx, f.proto, RatFun::constant(1, Rat(1), coeff.table));
                for (int i = 0; i < std::abs(k); ++i) lampow = lampow * (k > 0 ? lambda : lam_inv);
                r += term * lampow;
            }
            require(coeff.den.empty(), "rescale_curve: formal coefficients must be Laurent");
        }
        return r;
    };
    Curve out = c;
    out.X = apply(c.X);
    out.Y = apply(c.Y);
    out.Theta = apply(c.Theta);
    finalize_ops(out);
    return out;
}

GS residue_t_parameter(const Curve& c, int k) {
    GS one = GS::constant(c.ctx, c.zero_coeff(), c.one_coeff());
    GS acc = c.Theta * gs_zderiv(c.X);
    for (int i = 0; i < k - 1; ++i) acc = acc * c.X;
    if (c.mode == CurveMode::formal) return gs_formal_residue(acc, 0);
    RatFun r = local_residue(acc.constant_term(), 0, LocalPoint::finite(Rat(0)));
    return GS::constant(c.ctx, c.zero_coeff(), r);
}

GS residue_s_parameter(const Curve& c, int k) {
    GS acc = c.Theta * gs_zderiv(c.Y);
    for (int i = 0; i < k - 1; ++i) acc = acc * c.Y;
    if (c.mode == CurveMode::formal) return gs_formal_residue(acc, 0).scaled(Rat(-1));
    RatFun r = local_residue(acc.constant_term(), 0, LocalPoint::infinity());
    return GS::constant(c.ctx, c.zero_coeff(), r);
}

}  // namespace corr
