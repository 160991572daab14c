#include "corr/seeds.hpp"

namespace corr {

namespace {

RatFun diag_inverse(int hi, int lo, int nz, const FactorTablePtr& table) {
    // 1/(z_hi - z_lo) as stored; caller adjusts sign for (z_lo - z_hi).
    RatFun r(nz, table);
    r.num = Laurent::constant(nz, Rat(1));
    r.den[{FactorKey::diag, std::max(hi, lo), std::min(hi, lo)}] = 1;
    if (hi < lo) r.num = -r.num;
    return r;
}

RatFun zmono(int nz, int var, int k, const FactorTablePtr& table) {
    RatFun r(nz, table);
    r.num = Laurent::monomial(nz, var, k);
    return r;
}

}  // namespace

GS pair_seed_same_block(const Curve& c, bool y_side, int bar, int ext, int nz, const Ctx& work) {
    GS rop = instantiate(y_side ? c.yop : c.xop, bar, nz, work, c.table);
    GS inv = GS::constant(work, RatFun(nz, c.table), diag_inverse(bar, ext, nz, c.table));
    if (y_side) return rop * inv;
    GS m = GS::constant(work, RatFun(nz, c.table),
                        zmono(nz, ext, 1, c.table) * zmono(nz, bar, -1, c.table));
    return rop * inv * m;
}

GS pair_seed_cross_block(const Curve& c, bool y_side, int bar, int ext, int nz, const Ctx& work) {
    GS rop = instantiate(y_side ? c.yop : c.xop, bar, nz, work, c.table);
    GS inv = GS::constant(work, RatFun(nz, c.table), diag_inverse(bar, ext, nz, c.table));
    if (y_side) {
        GS m = GS::constant(work, RatFun(nz, c.table),
                            zmono(nz, ext, 1, c.table) * zmono(nz, bar, -1, c.table));
        return (rop * inv * m).scaled(Rat(-1));
    }
    return (rop * inv).scaled(Rat(-1));
}

const GS& DiagKernel::at(int p, int q) const {
    auto it = k.find({p, q});
    require(it != k.end(), "DiagKernel: order not built");
    return it->second;
}

DiagKernel build_diag_kernel(const Curve& c, bool x_side, int max_total) {
    const GS& F = x_side ? c.X : c.Y;
    int eorder = max_total + 2;
    // Derivatives F^{(j)} of the chart function.
    std::vector<GS> der;
    der.push_back(F);
    for (int j = 1; j <= eorder + 2; ++j)
        der.push_back(der.back().map_coeffs([](const RatFun& v) { return v.derivative(0); }));

    GS one = GS::constant(c.ctx, c.zero_coeff(), c.one_coeff());
    auto eps_mul = [&](const std::vector<GS>& a, const std::vector<GS>& b) {
        std::vector<GS> r(static_cast<size_t>(eorder) + 1, GS(c.ctx, c.zero_coeff()));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; i + j < r.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    // G = sum_{j>=1} F^{(j)} eps^{j-1}/j!  (so F(z) - F(z+eps) = -eps G).
    std::vector<GS> G(static_cast<size_t>(eorder) + 1, GS(c.ctx, c.zero_coeff()));
    for (int j = 1; j <= eorder + 1; ++j)
        G[static_cast<size_t>(j - 1)] = der[static_cast<size_t>(j)].scaled(
            1 / factorial(static_cast<unsigned long>(j)));
    // P = F'(z) * F'(z+eps).
    std::vector<GS> Fp_shift(static_cast<size_t>(eorder) + 1, GS(c.ctx, c.zero_coeff()));
    for (int j = 0; j <= eorder; ++j)
        Fp_shift[static_cast<size_t>(j)] = der[static_cast<size_t>(j + 1)].scaled(
            1 / factorial(static_cast<unsigned long>(j)));
    std::vector<GS> P(static_cast<size_t>(eorder) + 1, GS(c.ctx, c.zero_coeff()));
    for (size_t j = 0; j < P.size(); ++j) P[j] = der[1] * Fp_shift[j];
    // Q^{-1} where Q = G^2, via series inversion over graded coefficients.
    std::vector<GS> Q = eps_mul(G, G);
    std::vector<GS> Qi(static_cast<size_t>(eorder) + 1, GS(c.ctx, c.zero_coeff()));
    GS q0inv = gs_invert(Q[0]);
    Qi[0] = q0inv;
    for (int n = 1; n <= eorder; ++n) {
        GS acc(c.ctx, c.zero_coeff());
        for (int k = 1; k <= n; ++k) acc += Q[static_cast<size_t>(k)] * Qi[static_cast<size_t>(n - k)];
        Qi[static_cast<size_t>(n)] = (-acc) * q0inv;
    }
    // bracket = 1 - P Q^{-1}; d1 d2 H (z, z+eps) = bracket / eps^2.
    std::vector<GS> bracket = eps_mul(P, Qi);
    for (auto& x : bracket) x = -x;
    bracket[0] += one;
    require(bracket[0].is_zero(), "diag kernel: eps^0 term must cancel");
    require(bracket[1].is_zero(), "diag kernel: eps^1 term must cancel");

    DiagKernel out;
    // K(1, 1+q) = q! * [eps^q] (bracket/eps^2).
    for (int q = 0; q + 2 <= max_total + 1; ++q)
        out.k[{1, 1 + q}] = bracket[static_cast<size_t>(q + 2)].scaled(
            factorial(static_cast<unsigned long>(q)));
    // K(p+1, q) = d/dz K(p, q) - K(p, q+1).
    for (int p = 1; p + 1 <= max_total - 1; ++p)
        for (int q = 1; p + 1 + q <= max_total; ++q) {
            GS d = out.at(p, q).map_coeffs([](const RatFun& v) { return v.derivative(0); });
            out.k[{p + 1, q}] = d - out.at(p, q + 1);
        }
    // Symmetry spot check.
    if (max_total >= 4) require(out.at(1, 2) == out.at(2, 1), "diag kernel: symmetry failure");
    return out;
}

namespace {

// (f(z1) - f(z2))/(z1 - z2) for a graded one-variable Laurent object f,
// embedded at slots (v1, v2) of an nz-variable context.
GS laurent_difference_quotient(const GS& f, int v1, int v2, int nz, const Ctx& work,
                               const FactorTablePtr& table) {
    GS r(work, RatFun(nz, table));
    for (const auto& [e, coeff] : f.terms) {
        require(coeff.den.empty(), "difference quotient needs Laurent coefficients");
        ExpVec e2(static_cast<size_t>(work->nvars()), 0);
        for (int k = 1; k <= work->n_t; ++k)
            e2[static_cast<size_t>(work->t_var(k))] = e.at(static_cast<size_t>(f.ctx->t_var(k)));
        for (int k = 1; k <= work->n_s; ++k)
            e2[static_cast<size_t>(work->s_var(k))] = e.at(static_cast<size_t>(f.ctx->s_var(k)));
        e2[static_cast<size_t>(work->hbar_var())] = e.at(static_cast<size_t>(f.ctx->hbar_var()));
        RatFun q(nz, table);
        for (const auto& [le, la] : coeff.num.terms) {
            int k = le[0];
            // (z1^k - z2^k)/(z1 - z2), valid for Laurent exponents.
            Laurent dq(nz);
            if (k > 0) {
                for (int i = 0; i < k; ++i) {
                    ExpVec ee(static_cast<size_t>(nz), 0);
                    ee[static_cast<size_t>(v1)] = i;
                    ee[static_cast<size_t>(v2)] = k - 1 - i;
                    dq.add_term(ee, la);
                }
            } else if (k < 0) {
                // z1^k - z2^k = -(z1 z2)^k (z1^{-k} - z2^{-k})
                for (int i = 0; i < -k; ++i) {
                    ExpVec ee(static_cast<size_t>(nz), 0);
                    ee[static_cast<size_t>(v1)] = i + k;
                    ee[static_cast<size_t>(v2)] = -1 - i;
                    dq.add_term(ee, -la);
                }
            }
            q.num += dq;
        }
        if (!q.is_zero()) r.add_term(e2, q);
    }
    return r;
}

}  // namespace

GS seed_h20_series(const Curve& c, const Ctx& work, int nz, int v1, int v2) {
    // H20 = log[(z1^{-1} - z2^{-1}) gamma1^{-1} / (X1^{-1} - X2^{-1})]
    //     = -log( gamma1 * [(X1^{-1} - X2^{-1})/(z1 - z2)] / [(z1^{-1} - z2^{-1})/(z1 - z2)] )
    require(c.mode == CurveMode::formal, "seed_h20_series: formal mode only");
    GS xinv = gs_invert(c.X);
    GS dq = laurent_difference_quotient(xinv, v1, v2, nz, work, c.table);
    // (z1^{-1} - z2^{-1})/(z1 - z2) = -(z1 z2)^{-1}
    RatFun zz(nz, c.table);
    zz.num = Laurent::monomial(nz, v1, -1).mul_monomial(v2, -1, Rat(-1));
    GS denom = GS::constant(work, RatFun(nz, c.table), zz);
    GS gam = instantiate(c.gamma1, v1, nz, work, c.table);  // z-independent
    GS ratio = dq * gs_invert(denom) * gam;
    // ratio = 1 + nilpotent; H20 = -log(ratio)
    GS one = GS::constant(work, RatFun(nz, c.table), RatFun::constant(nz, Rat(1), c.table));
    return gs_log1p(ratio - one).scaled(Rat(-1));
}

GS seed_h02_series(const Curve& c, const Ctx& work, int nz, int v1, int v2) {
    // H02 = log[(z1 - z2) gamma2^{-1} / (Y1^{-1} - Y2^{-1})]
    require(c.mode == CurveMode::formal, "seed_h02_series: formal mode only");
    GS yinv = gs_invert(c.Y);
    GS dq = laurent_difference_quotient(yinv, v1, v2, nz, work, c.table);
    GS gam = instantiate(c.gamma2, v1, nz, work, c.table);
    GS one = GS::constant(work, RatFun(nz, c.table), RatFun::constant(nz, Rat(1), c.table));
    GS ratio = dq * gam;
    return gs_log1p(ratio - one).scaled(Rat(-1));
}

GS seed_h11_series(const Curve& c, const Ctx& work, int nz, int v1, int v2, int zwindow) {
    // -log(1 - z1/z2) = sum_{k>=1} (z1/z2)^k / k, truncated at k <= zwindow.
    GS r(work, RatFun(nz, c.table));
    ExpVec e(static_cast<size_t>(work->nvars()), 0);
    for (int k = 1; k <= zwindow; ++k) {
        RatFun m(nz, c.table);
        m.num = Laurent::monomial(nz, v1, k, Rat(1, k)).mul_monomial(v2, -k);
        r.add_term(e, m);
    }
    return r;
}

std::vector<std::vector<GS>> op_power_coeffs(const GS& rop_at_var, int var, int emax) {
    std::vector<std::vector<GS>> c(static_cast<size_t>(emax) + 1);
    GS zero(rop_at_var.ctx, rop_at_var.proto);
    c[0] = {GS(rop_at_var.ctx, rop_at_var.proto)};
    // c_{0,0} = 1
    RatFun one = rop_at_var.proto;
    one.num = Laurent::constant(one.nvars, Rat(1));
    c[0][0] = GS::constant(rop_at_var.ctx, rop_at_var.proto, one);
    for (int e = 1; e <= emax; ++e) {
        c[static_cast<size_t>(e)].assign(static_cast<size_t>(e) + 1, zero);
        for (int j = 0; j <= e - 1; ++j) {
            const GS& prev = c[static_cast<size_t>(e - 1)][static_cast<size_t>(j)];
            if (prev.is_zero()) continue;
            // (rop d)(prev d^j) = rop prev' d^j + rop prev d^{j+1}
            c[static_cast<size_t>(e)][static_cast<size_t>(j)] +=
                rop_at_var * prev.map_coeffs([&](const RatFun& v) { return v.derivative(var); });
            c[static_cast<size_t>(e)][static_cast<size_t>(j + 1)] += rop_at_var * prev;
        }
    }
    return c;
}

}  // namespace corr
