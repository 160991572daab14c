#include "corr/recursion.hpp"

namespace corr {

namespace {

// Convert a finished body from the working context down to the curve
// context (hbar and u exponents must be zero), dropping the bar slots.
GS demote_body(const GS& f, const Curve& curve, const WorkLayout& lay, int out_nvars) {
    GS r(curve.ctx, RatFun(out_nvars, curve.table));
    std::vector<int> perm(static_cast<size_t>(lay.nz), -1);
    for (int i = 0; i < out_nvars; ++i) perm[static_cast<size_t>(i)] = i;
    for (const auto& [e, coeff] : f.terms) {
        ExpVec e2(static_cast<size_t>(curve.ctx->nvars()), 0);
        for (int k = 1; k <= curve.ctx->n_t; ++k)
            e2[static_cast<size_t>(curve.ctx->t_var(k))] = e.at(static_cast<size_t>(lay.work->t_var(k)));
        for (int k = 1; k <= curve.ctx->n_s; ++k)
            e2[static_cast<size_t>(curve.ctx->s_var(k))] = e.at(static_cast<size_t>(lay.work->s_var(k)));
        require(e.at(static_cast<size_t>(lay.work->hbar_var())) == 0,
                "demote_body: leftover hbar exponent");
        if (lay.work->u_max >= 0)
            require(e.at(static_cast<size_t>(lay.work->u_var())) == 0,
                    "demote_body: leftover u exponent");
        r.add_term(e2, coeff.rename(perm, out_nvars));
    }
    return r;
}

}  // namespace

StepResult recursion_step(const Curve& curve, const CorrelatorTable& table, int g, int m, int n,
                          bool x_route) {
    // The mirrored route swaps the roles of the X and Y blocks wholesale:
    // assemble with W^X, (Y/dY)(dX/X) and Y-operators, then split with the
    // opposite chart orientation.
    WorkLayout lay = make_layout(curve, g, m, n);
    const Ctx& work = lay.work;
    const int active = lay.active;
    RatFun zero(lay.nz, curve.table);
    GS gzero(work, zero);

    GS A = build_w_polynomial(curve, table, lay, /*y_side=*/x_route);

    // u-degree guard: e^{-u Theta} W has u-degree <= m+n+1+2g per hbar grade.
    for (int r = m + n + 2 + 2 * g; r <= work->u_max - 1; ++r)
        require(w_u_coefficient(A, work, r).is_zero(),
                "recursion_step: u-degree bound violated in the W assembly");

    int u_bound = m + n + 1 + 2 * g;
    int jmax = u_bound + 3 * g + 1;
    LOperator L = build_l_operator(curve, work, active, lay.nz, u_bound, jmax, false);

    const GS& ratio = x_route ? curve.dlogY_dlogX : curve.dlogX_dlogY;
    GS ratio_a = instantiate(ratio, active, lay.nz, work, curve.table);
    const GS& rop = x_route ? curve.xop : curve.yop;
    GS rop_a = instantiate(rop, active, lay.nz, work, curve.table);
    GS rd_theta_a = instantiate(x_route ? curve.xd_theta : curve.yd_theta, active, lay.nz, work,
                                curve.table);

    auto apply_rd = [&](const GS& f) {
        return rop_a * f.map_coeffs([&](const RatFun& v) { return v.derivative(active); });
    };

    // Precompute [u^r] e^{-u Theta} W.
    std::vector<GS> Wu;
    for (int r = 0; r <= u_bound; ++r) Wu.push_back(w_u_coefficient(A, work, r));

    GS rhs(work, zero);
    for (int j = 1; j <= jmax; ++j) {
        GS inner(work, zero);
        for (int r = 0; r <= u_bound; ++r) {
            const GS* l = L.find(r, j);
            if (!l || l->is_zero() || Wu[static_cast<size_t>(r)].is_zero()) continue;
            inner += *l * Wu[static_cast<size_t>(r)];
        }
        if (!inner.is_zero()) inner = ratio_a * inner;
        if (m + n == 0) {
            const GS* l0 = L.find(0, j + 1);
            if (l0 && !l0->is_zero()) inner -= *l0 * rd_theta_a;
        }
        if (inner.is_zero()) continue;
        for (int it = 0; it < j - 1; ++it) inner = apply_rd(inner);
        rhs += inner;
    }
    rhs = -rhs;
    if (m + n == 0) rhs += delta_integral_term(curve, work, active, lay.nz);

    // Take the hbar^{2g} part.
    GS rhs_g = rhs.coeff_of(work->hbar_var(), 2 * g);

    // Split poles of the active variable; the plus part (outside poles,
    // vanishing at z = 0) is the new X-point function in both routes.
    GS plus(work, zero), minus(work, zero);
    for (const auto& [e, coeff] : rhs_g.terms) {
        SplitResult sp = split_poles(coeff, active, lay.var_side);
        if (!sp.plus.is_zero()) plus.add_term(e, sp.plus);
        if (!sp.minus.is_zero()) minus.add_term(e, sp.minus);
    }

    StepResult out;
    out.rhs = rhs_g;
    out.h_plus = demote_body(plus, curve, lay, m + n + 1);
    out.h_minus = demote_body(minus, curve, lay, m + n + 1);
    return out;
}

CorrelatorTable compute_table(const Curve& curve, const ComputeOptions& opt) {
    CorrelatorTable table;
    table.base = curve.ctx;
    table.factor_table = curve.table;
    int max_level = 2 * opt.g_max - 2 + opt.size_max;
    for (int level = 1; level <= max_level; ++level) {
        for (int g = 0; g <= opt.g_max; ++g) {
            int size = level + 2 - 2 * g;  // m+n of the produced keys
            // Lower-genus keys feed higher-genus assemblies through the
            // multi-edge black vertices: a k-bar vertex costs hbar^{2(k-1)},
            // so genus g' contents are needed up to size_max + (g_max - g')
            // points.
            int size_cap = opt.size_max + (opt.g_max - g);
            if (size < 1 || size > size_cap) continue;
            int in_size = size - 1;
            for (int m = 0; m <= in_size; ++m) {
                int n = in_size - m;
                StepResult res = recursion_step(curve, table, g, m, n, true);
                if (opt.cross_check_forms) {
                    StepResult res_y = recursion_step(curve, table, g, m, n, false);
                    require(res.h_plus == res_y.h_plus && res.h_minus == res_y.h_minus,
                            "compute_table: X-form and Y-form disagree");
                }
                CKey kp{g, m + 1, n}, km{g, m, n + 1};
                if (!table.has(kp)) {
                    verify_body_invariants(curve, kp, res.h_plus);
                    table.put(kp, res.h_plus);
                } else if (opt.check_redundant) {
                    require(table.at(kp) == res.h_plus,
                            "compute_table: inconsistent recomputation of a key");
                }
                if (!table.has(km)) {
                    verify_body_invariants(curve, km, res.h_minus);
                    table.put(km, res.h_minus);
                } else if (opt.check_redundant) {
                    require(table.at(km) == res.h_minus,
                            "compute_table: inconsistent recomputation of a key");
                }
            }
        }
    }
    return table;
}

void verify_body_invariants(const Curve& curve, const CKey& key, const GS& body) {
    (void)curve;
    const int m = key.m, n = key.n;
    // Genus parity: bodies are stored at fixed genus; hbar exponent 0.
    for (const auto& [e, coeff] : body.terms) {
        require(e.at(static_cast<size_t>(body.ctx->hbar_var())) == 0,
                "body invariant: hbar exponent in stored body");
        // Cross-diagonal pole structure.
        for (const auto& [k, mm] : coeff.den) {
            (void)mm;
            if (k.kind != FactorKey::diag) continue;
            bool a_is_x = k.a < m, b_is_x = k.b < m;
            require(a_is_x != b_is_x, "body invariant: same-block diagonal pole");
        }
    }
    // Block symmetry: adjacent transposition within each block.
    auto transposed = [&](int va, int vb) {
        std::vector<int> perm(static_cast<size_t>(m + n));
        for (int i = 0; i < m + n; ++i) perm[static_cast<size_t>(i)] = i;
        perm[static_cast<size_t>(va)] = vb;
        perm[static_cast<size_t>(vb)] = va;
        return body.map_coeffs([&](const RatFun& v) { return v.rename(perm, m + n); });
    };
    if (m >= 2) require(transposed(0, 1) == body, "body invariant: X-block symmetry");
    if (n >= 2) require(transposed(m, m + 1) == body, "body invariant: Y-block symmetry");
}

}  // namespace corr
