#include "corr/lcalculus.hpp"

#include "corr/sseries.hpp"

namespace corr {

namespace {

template <class Elem>
void lmap_add(const ThetaOps<Elem>& ops, LMap<Elem>& m, const std::array<int, 3>& idx,
              const Elem& v) {
    if (ops.is_zero(v)) return;
    auto it = m.find(idx);
    if (it == m.end())
        m.emplace(idx, v);
    else {
        it->second = ops.add(it->second, v);
        if (ops.is_zero(it->second)) m.erase(it);
    }
}

template <class Elem>
LMap<Elem> lmap_mul(const ThetaOps<Elem>& ops, const LMap<Elem>& a, const LMap<Elem>& b, int jmax,
                    int kmax, int wmax) {
    LMap<Elem> r;
    for (const auto& [ia, va] : a)
        for (const auto& [ib, vb] : b) {
            std::array<int, 3> idx = {ia[0] + ib[0], ia[1] + ib[1], ia[2] + ib[2]};
            if (idx[0] > jmax || idx[1] > kmax || idx[2] > wmax) continue;
            lmap_add(ops, r, idx, ops.mul(va, vb));
        }
    return r;
}

}  // namespace

template <class Elem>
std::vector<LMap<Elem>> l_tables(const ThetaOps<Elem>& ops, int rmax, int jmax, int kmax,
                                 int wmax) {
    // Exponent: E = sum_{(k',i): k'+i >= 1} v gamma_{k'}(v) hbar^{2(k'+i)} psi_i^{(2k')}
    // plus w*theta when wmax > 0.
    auto gammas = s_ratio_polys(kmax);
    LMap<Elem> expo;
    for (int kp = 0; kp <= kmax; ++kp) {
        for (int i = (kp == 0 ? 1 : 0); kp + i <= kmax; ++i) {
            // psi_i^{(2 k')}
            Elem base = (i == 0) ? ops.dtheta(ops.psi_prime) : ops.psi_i(i);
            int dcount = (i == 0) ? 2 * kp - 2 : 2 * kp;  // psi^{(2k')} from psi''
            for (int dd = 0; dd < dcount; ++dd) base = ops.dtheta(base);
            if (ops.is_zero(base)) continue;
            const Poly& g = gammas[static_cast<size_t>(kp)];
            for (int a = 0; a <= g.degree(); ++a) {
                if (is_zero(g.coeff(a))) continue;
                if (a + 1 > jmax) continue;
                lmap_add(ops, expo, {a + 1, kp + i, 0}, ops.scale(base, g.coeff(a)));
            }
        }
    }
    if (wmax > 0) lmap_add(ops, expo, {0, 0, 1}, ops.theta);

    // exp(expo): nilpotent since every term has k >= 1 or b >= 1.
    LMap<Elem> g0;
    lmap_add(ops, g0, {0, 0, 0}, ops.one);
    LMap<Elem> pw = g0;
    for (int it = 1; it <= 2 * (kmax + wmax) + 2; ++it) {
        pw = lmap_mul(ops, pw, expo, jmax, kmax, wmax);
        if (pw.empty()) break;
        for (const auto& [idx, v] : pw)
            lmap_add(ops, g0, idx, ops.scale(v, 1 / factorial(static_cast<unsigned long>(it))));
    }

    std::vector<LMap<Elem>> out;
    out.push_back(g0);
    for (int r = 1; r <= rmax; ++r) {
        const LMap<Elem>& prev = out.back();
        LMap<Elem> next;
        for (const auto& [idx, v] : prev) {
            lmap_add(ops, next, idx, ops.dtheta(v));
            std::array<int, 3> up = {idx[0] + 1, idx[1], idx[2]};
            if (up[0] <= jmax) lmap_add(ops, next, up, ops.mul(ops.psi_prime, v));
        }
        out.push_back(std::move(next));
    }
    return out;
}

template std::vector<LMap<ThetaSeries>> l_tables<ThetaSeries>(const ThetaOps<ThetaSeries>&, int,
                                                              int, int, int);
template std::vector<LMap<ThetaRat>> l_tables<ThetaRat>(const ThetaOps<ThetaRat>&, int, int, int,
                                                        int);

ThetaOps<ThetaSeries> theta_series_ops(const WeightData& w, int order, int gmax) {
    ThetaOps<ThetaSeries> ops;
    ops.add = [](const ThetaSeries& a, const ThetaSeries& b) { return a.add(b); };
    ops.mul = [](const ThetaSeries& a, const ThetaSeries& b) { return a.mul(b); };
    ops.scale = [](const ThetaSeries& a, const Rat& k) { return a.scaled(k); };
    ops.dtheta = [](const ThetaSeries& a) { return a.dtheta(); };
    ops.is_zero = [](const ThetaSeries& a) { return a.is_zero(); };
    ops.zero = ThetaSeries::zero(order);
    ops.one = ThetaSeries::constant(Rat(1), order);
    ops.theta = ThetaSeries::theta(order);
    ops.psi_prime = w.psi_prime_series(order);
    ops.psi_i = [&w, order, gmax](int i) {
        if (i > gmax) return ThetaSeries::zero(order);
        return w.psi_i_series(i, order);
    };
    return ops;
}

ThetaOps<ThetaRat> theta_rat_ops(const WeightData& w) {
    ThetaOps<ThetaRat> ops;
    const WeightData* wp = &w;
    ops.add = [wp](const ThetaRat& a, const ThetaRat& b) { return wp->tr_add(a, b); };
    ops.mul = [wp](const ThetaRat& a, const ThetaRat& b) { return wp->tr_mul(a, b); };
    ops.scale = [wp](const ThetaRat& a, const Rat& k) { return wp->tr_scaled(a, k); };
    ops.dtheta = [wp](const ThetaRat& a) { return wp->tr_dtheta(a); };
    ops.is_zero = [](const ThetaRat& a) { return a.is_zero(); };
    ops.zero = ThetaRat();
    ops.one = ThetaRat(Poly(Rat(1)));
    ops.theta = ThetaRat(Poly::x());
    ops.psi_prime = w.psi_prime_rat();
    ops.psi_i = [wp](int i) { return wp->psi_i_rat(i); };
    return ops;
}

namespace {

// Substitute a ThetaSeries at Theta(z_var) in the working context.
GS subst_theta_series(const ThetaSeries& e, const Curve& curve, const Ctx& work, int var, int nz) {
    GS theta = instantiate(curve.Theta, var, nz, work, curve.table);
    RatFun one = RatFun::constant(nz, Rat(1), curve.table);
    return eval_theta_series(e.c, theta, one);
}

GS subst_theta_rat(const ThetaRat& e, const Curve& curve, const Ctx& work, int var, int nz) {
    GS theta = instantiate(curve.Theta, var, nz, work, curve.table);
    RatFun one = RatFun::constant(nz, Rat(1), curve.table);
    // num(Theta) * (1/Rnum(Theta))^a * (1/Rden(Theta))^b, num evaluated by
    // Horner (Theta is not nilpotent in rational mode).
    GS acc(work, RatFun(nz, curve.table));
    for (int i = e.num.degree(); i >= 0; --i) {
        acc = acc * theta;
        if (!is_zero(e.num.coeff(i)))
            acc += GS::constant(work, RatFun(nz, curve.table),
                                RatFun::constant(nz, e.num.coeff(i), curve.table));
    }
    if (e.a > 0) {
        std::vector<int> perm = {var};
        RatFun inv = curve.r_num_theta_inv.rename(perm, nz);
        GS ginv = GS::constant(work, RatFun(nz, curve.table), inv);
        for (int i = 0; i < e.a; ++i) acc = acc * ginv;
    }
    if (e.b > 0) {
        std::vector<int> perm = {var};
        RatFun inv = curve.r_den_theta_inv.rename(perm, nz);
        GS ginv = GS::constant(work, RatFun(nz, curve.table), inv);
        for (int i = 0; i < e.b; ++i) acc = acc * ginv;
    }
    return acc;
}

}  // namespace

LOperator build_l_operator(const Curve& curve, const Ctx& work, int var, int nz, int rmax,
                           int jmax, bool with_w) {
    int kmax = work->hbar_max / 2;
    int wmax = with_w ? work->w_max : 0;
    require(!with_w || work->w_max >= 0, "build_l_operator: working context lacks w");
    LOperator out;
    out.rmax = rmax;
    out.jmax = jmax;
    auto emit = [&](int r, int j, int k, int b, const GS& val) {
        if (val.is_zero()) return;
        GS shifted = val.mul_var(work->hbar_var(), 2 * k);
        if (b > 0) shifted = shifted.mul_var(work->w_var(), b);
        auto key = std::make_pair(r, j);
        auto it = out.lrj.find(key);
        if (it == out.lrj.end())
            out.lrj.emplace(key, shifted);
        else
            it->second += shifted;
    };
    if (curve.mode == CurveMode::formal) {
        int theta_order = work->ts_degree + 2 * rmax + work->hbar_max + 2;
        auto ops = theta_series_ops(curve.weight, theta_order, kmax);
        auto tabs = l_tables<ThetaSeries>(ops, rmax, jmax, kmax, wmax);
        for (int r = 0; r <= rmax; ++r)
            for (const auto& [idx, e] : tabs[static_cast<size_t>(r)])
                emit(r, idx[0], idx[1], idx[2], subst_theta_series(e, curve, work, var, nz));
    } else {
        auto ops = theta_rat_ops(curve.weight);
        auto tabs = l_tables<ThetaRat>(ops, rmax, jmax, kmax, wmax);
        for (int r = 0; r <= rmax; ++r)
            for (const auto& [idx, e] : tabs[static_cast<size_t>(r)])
                emit(r, idx[0], idx[1], idx[2], subst_theta_rat(e, curve, work, var, nz));
    }
    return out;
}

GS delta_integral_term(const Curve& curve, const Ctx& work, int var, int nz) {
    // int (1/S(hbar d) psihat - psi) dtheta
    //   = sum_{(k,i): k+i>=1} sinv_k hbar^{2(k+i)} * antiderivative(psi_i^{(2k)})
    int kmax = work->hbar_max / 2;
    auto sinv = s_series_inverse(2 * kmax);
    GS total(work, RatFun(nz, curve.table));
    for (int k = 0; k <= kmax; ++k) {
        Rat coeff = sinv[static_cast<size_t>(2 * k)];
        if (is_zero(coeff)) continue;
        for (int i = (k == 0 ? 1 : 0); k + i <= kmax; ++i) {
            GS val(work, RatFun(nz, curve.table));
            if (curve.mode == CurveMode::formal) {
                int theta_order = work->ts_degree + 2 * kmax + 2;
                ThetaSeries base = (i == 0) ? curve.weight.psi_series(theta_order)
                                            : curve.weight.psi_i_series(i, theta_order);
                // antiderivative of the 2k-th derivative: for k >= 1 take
                // 2k-1 derivatives; for k = 0 (i >= 1) integrate once.
                if (k >= 1) {
                    for (int dd = 0; dd < 2 * k - 1; ++dd) base = base.dtheta();
                } else {
                    base = base.integrate();
                }
                if (base.is_zero()) continue;
                val = subst_theta_series(base, curve, work, var, nz);
            } else {
                const WeightData& w = curve.weight;
                ThetaRat base;
                if (i == 0) {
                    base = w.psi_prime_rat();
                    for (int dd = 0; dd < 2 * k - 2; ++dd) base = w.tr_dtheta(base);
                } else if (k >= 1) {
                    base = w.psi_i_rat(i);
                    for (int dd = 0; dd < 2 * k - 1; ++dd) base = w.tr_dtheta(base);
                } else {
                    // k = 0, i >= 1: int psi_i = beta_i P^{(2i-1)}
                    require(w.has_rp, "delta term: rational mode needs (R,P)");
                    Rat beta = 1 / (rat_pow(Rat(4), i) * factorial(static_cast<unsigned long>(2 * i + 1)));
                    Poly d = w.p_poly;
                    for (int dd = 0; dd < 2 * i - 1; ++dd) d = d.derivative();
                    base = ThetaRat(d.scaled(beta));
                }
                if (base.is_zero()) continue;
                val = subst_theta_rat(base, curve, work, var, nz);
            }
            total += val.scaled(coeff).mul_var(work->hbar_var(), 2 * (k + i));
        }
    }
    return total;
}

}  // namespace corr
