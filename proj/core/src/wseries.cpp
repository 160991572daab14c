#include "corr/wseries.hpp"

#include <algorithm>

namespace corr {

const GS& CorrelatorTable::at(const CKey& k) const {
    auto it = entries.find(k);
    require(it != entries.end(), "CorrelatorTable: missing entry");
    return it->second;
}

void CorrelatorTable::put(const CKey& k, GS body) {
    require(!entries.count(k), "CorrelatorTable: duplicate entry");
    entries.emplace(k, std::move(body));
}

WorkLayout make_layout(const Curve& curve, int g, int m, int n, int w_max) {
    WorkLayout lay;
    SeriesContext sc;
    sc.n_t = curve.ctx->n_t;
    sc.n_s = curve.ctx->n_s;
    sc.ts_degree = curve.ctx->ts_degree;
    sc.hbar_max = 2 * g;
    sc.u_max = m + n + 3 + 2 * g;
    sc.w_max = w_max;
    lay.work = make_ctx(sc);
    lay.g = g;
    lay.m = m;
    lay.n = n;
    lay.nbars = g + 1;
    lay.nz = m + n + 1 + lay.nbars;
    lay.active = m;
    for (int i = 0; i < m; ++i) lay.xslots.push_back(i);
    for (int j = 0; j < n; ++j) lay.yslots.push_back(m + 1 + j);
    lay.bar_base = m + n + 1;
    lay.var_side.assign(static_cast<size_t>(lay.nz), Side::boundary);
    for (int i : lay.xslots) lay.var_side[static_cast<size_t>(i)] = Side::inside;
    for (int j : lay.yslots) lay.var_side[static_cast<size_t>(j)] = Side::outside;
    return lay;
}

GS instantiate_body(const GS& body, const std::vector<int>& perm, int nz, const Ctx& work,
                    const FactorTablePtr& table) {
    GS r(work, RatFun(nz, table));
    for (const auto& [e, coeff] : body.terms) {
        ExpVec e2(static_cast<size_t>(work->nvars()), 0);
        for (int k = 1; k <= work->n_t; ++k)
            e2[static_cast<size_t>(work->t_var(k))] = e.at(static_cast<size_t>(body.ctx->t_var(k)));
        for (int k = 1; k <= work->n_s; ++k)
            e2[static_cast<size_t>(work->s_var(k))] = e.at(static_cast<size_t>(body.ctx->s_var(k)));
        e2[static_cast<size_t>(work->hbar_var())] = e.at(static_cast<size_t>(body.ctx->hbar_var()));
        r.add_term(e2, coeff.rename(perm, nz));
    }
    return r;
}

namespace {

// All partitions of {0..n-1} into unordered nonempty blocks.
void set_partitions_rec(int n, int i, std::vector<std::vector<int>>& cur,
                        std::vector<std::vector<std::vector<int>>>& out) {
    if (i == n) {
        out.push_back(cur);
        return;
    }
    for (size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(i);
        set_partitions_rec(n, i + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({i});
    set_partitions_rec(n, i + 1, cur, out);
    cur.pop_back();
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    set_partitions_rec(n, 0, cur, out);
    return out;
}

struct WBuilder {
    const Curve& curve;
    const CorrelatorTable& table;
    const WorkLayout& lay;
    bool y_side;

    GS one, zero;
    GS rop_active;                        // yop (y_side) or xop at the active slot
    std::vector<std::vector<GS>> opc;     // c_{e,j} at the active slot
    DiagKernel kernel;                    // same-side two-point diagonal kernel
    std::vector<Rat> beta;                // S(u) coefficients

    int amax;  // S-correction index bound: 2a <= hbar_max

    WBuilder(const Curve& c, const CorrelatorTable& t, const WorkLayout& l, bool ys)
        : curve(c),
          table(t),
          lay(l),
          y_side(ys),
          one(GS::constant(l.work, RatFun(l.nz, c.table), RatFun::constant(l.nz, Rat(1), c.table))),
          zero(l.work, RatFun(l.nz, c.table)),
          rop_active(instantiate(ys ? c.yop : c.xop, l.active, l.nz, l.work, c.table)),
          kernel(build_diag_kernel(c, !ys, 2 + 2 * l.work->hbar_max)),
          beta(s_series(l.work->hbar_max + 1)),
          amax(l.work->hbar_max / 2) {
        opc = op_power_coeffs(rop_active, lay.active, 1 + 2 * amax);
    }

    // sum_a u^{2a} hbar^{2a} beta_{2a} sum_j c_{e(a),j}(active) subst(d^j content),
    // e(a) = 2a + first, first = 1 for raw content, 0 for derivative-level
    // seed content. Content lives at the bar slot.
    GS apply_bar_ops(const GS& content, int bar, int first) {
        GS out = zero;
        std::vector<GS> deriv;  // d^j content
        deriv.push_back(content);
        int jcap = first + 2 * amax;
        for (int j = 1; j <= jcap; ++j)
            deriv.push_back(deriv.back().map_coeffs(
                [&](const RatFun& v) { return v.derivative(bar); }));
        std::vector<GS> restricted;
        for (int j = 0; j <= jcap; ++j)
            restricted.push_back(deriv[static_cast<size_t>(j)].map_coeffs(
                [&](const RatFun& v) { return v.subst_var(bar, lay.active); }));
        for (int a = 0; a <= amax; ++a) {
            int e = first + 2 * a;
            Rat b = beta[static_cast<size_t>(2 * a)];
            for (int j = (e == 0 ? 0 : 1); j <= e; ++j) {
                const GS& cj = opc[static_cast<size_t>(e)][static_cast<size_t>(j)];
                if (cj.is_zero()) continue;
                GS term = cj * restricted[static_cast<size_t>(j)];
                if (term.is_zero()) continue;
                term = term.scaled(b);
                if (a > 0)
                    term = term.mul_var(lay.work->u_var(), 2 * a)
                               .mul_var(lay.work->hbar_var(), 2 * a);
                out += term;
            }
        }
        return out;
    }

    // The k = 2 seed part: both bars on the genus-0 same-side two-point
    // function, via the diagonal kernel.
    GS kernel_term() {
        GS out = zero;
        for (int a1 = 0; a1 <= amax; ++a1)
            for (int a2 = a1; a2 <= amax; ++a2) {
                if (2 * (a1 + a2) > lay.work->hbar_max) continue;
                Rat b = beta[static_cast<size_t>(2 * a1)] * beta[static_cast<size_t>(2 * a2)];
                if (a1 != a2) b *= 2;  // unordered pair of slots
                GS acc = zero;
                for (int j1 = 1; j1 <= 1 + 2 * a1; ++j1) {
                    const GS& c1 = opc[static_cast<size_t>(1 + 2 * a1)][static_cast<size_t>(j1)];
                    if (c1.is_zero()) continue;
                    for (int j2 = 1; j2 <= 1 + 2 * a2; ++j2) {
                        const GS& c2 = opc[static_cast<size_t>(1 + 2 * a2)][static_cast<size_t>(j2)];
                        if (c2.is_zero()) continue;
                        GS kk = instantiate(kernel.at(j1, j2), lay.active, lay.nz, lay.work,
                                            curve.table);
                        acc += c1 * c2 * kk;
                    }
                }
                if (acc.is_zero()) continue;
                acc = acc.scaled(b);
                int apow = 2 * (a1 + a2);
                if (apow > 0)
                    acc = acc.mul_var(lay.work->u_var(), apow).mul_var(lay.work->hbar_var(), apow);
                out += acc;
            }
        return out;
    }

    // T-block for dashed sets I (x-spectator slots), J (y-spectator slots).
    GS t_block(const std::vector<int>& I, const std::vector<int>& J) {
        GS total = zero;
        int mI = static_cast<int>(I.size());
        int nJ = static_cast<int>(J.size());
        for (int k = 1; k <= lay.nbars; ++k) {
            if (2 * (k - 1) > lay.work->hbar_max) break;
            // Stored contents: sum over g' of hbar^{2g'} instantiated bodies.
            CKey base_key = y_side ? CKey{0, mI, k + nJ} : CKey{0, k + mI, nJ};
            GS content = zero;
            bool theta_seed = false, pair_same = false, pair_cross = false, kernel2 = false;
            int ext = -1;
            for (int gp = 0; 2 * gp + 2 * (k - 1) <= lay.work->hbar_max; ++gp) {
                CKey key{gp, base_key.m, base_key.n};
                if (gp == 0 && !is_stable(key)) {
                    // Seed cases.
                    if (k == 1 && mI == 0 && nJ == 0) theta_seed = true;
                    else if (k == 1 && mI == 0 && nJ == 1 && y_side) { pair_same = true; ext = J[0]; }
                    else if (k == 1 && mI == 1 && nJ == 0 && !y_side) { pair_same = true; ext = I[0]; }
                    else if (k == 1 && mI == 1 && nJ == 0 && y_side) { pair_cross = true; ext = I[0]; }
                    else if (k == 1 && mI == 0 && nJ == 1 && !y_side) { pair_cross = true; ext = J[0]; }
                    else if (k == 2 && mI == 0 && nJ == 0) kernel2 = true;
                    else fail("t_block: unhandled unstable content");
                    continue;
                }
                if (!table.has(key)) {
                    bool is_current_unknown = (k == 1 && gp == lay.g && mI == lay.m && nJ == lay.n);
                    if (!is_current_unknown)
                        fail("t_block: missing table dependency (" + std::to_string(key.g) + "," +
                             std::to_string(key.m) + "," + std::to_string(key.n) + ") in step (" +
                             std::to_string(lay.g) + "," + std::to_string(lay.m) + "," +
                             std::to_string(lay.n) + ") k=" + std::to_string(k) + " mI=" + std::to_string(mI) + " nJ=" + std::to_string(nJ) + " yside=" + std::to_string(y_side));
                    continue;  // cannot contribute at hbar^{2g} for j >= 1
                }
                // Variable assignment: bars first within the bar-side block.
                std::vector<int> perm(static_cast<size_t>(key.m + key.n));
                if (y_side) {
                    for (int i = 0; i < key.m; ++i) perm[static_cast<size_t>(i)] = I[static_cast<size_t>(i)];
                    for (int b = 0; b < k; ++b) perm[static_cast<size_t>(key.m + b)] = lay.bar_base + b;
                    for (int j = 0; j < nJ; ++j)
                        perm[static_cast<size_t>(key.m + k + j)] = J[static_cast<size_t>(j)];
                } else {
                    for (int b = 0; b < k; ++b) perm[static_cast<size_t>(b)] = lay.bar_base + b;
                    for (int i = 0; i < mI; ++i) perm[static_cast<size_t>(k + i)] = I[static_cast<size_t>(i)];
                    for (int j = 0; j < nJ; ++j)
                        perm[static_cast<size_t>(key.m + j)] = J[static_cast<size_t>(j)];
                }
                GS body = instantiate_body(table.at(key), perm, lay.nz, lay.work, curve.table);
                content += body.mul_var(lay.work->hbar_var(), 2 * gp);
            }
            GS processed = zero;
            if (!content.is_zero()) {
                // Raw stored content: apply S(u hbar R d) R d per bar, sequentially.
                GS cur = content;
                for (int b = 0; b < k; ++b) cur = apply_bar_ops(cur, lay.bar_base + b, 1);
                processed += cur;
            }
            if (theta_seed) {
                GS th = instantiate(curve.Theta, lay.bar_base, lay.nz, lay.work, curve.table);
                processed += apply_bar_ops(th, lay.bar_base, 0);
            }
            if (pair_same) {
                GS p = pair_seed_same_block(curve, y_side, lay.bar_base, ext, lay.nz, lay.work);
                processed += apply_bar_ops(p, lay.bar_base, 0);
            }
            if (pair_cross) {
                GS p = pair_seed_cross_block(curve, y_side, lay.bar_base, ext, lay.nz, lay.work);
                processed += apply_bar_ops(p, lay.bar_base, 0);
            }
            if (kernel2) processed += kernel_term();
            if (processed.is_zero()) continue;
            // Prefactor hbar^{2(k-1)} u^k / k!.
            GS term = processed.scaled(1 / factorial(static_cast<unsigned long>(k)))
                          .mul_var(lay.work->u_var(), k);
            if (k > 1) term = term.mul_var(lay.work->hbar_var(), 2 * (k - 1));
            total += term;
        }
        return total;
    }
};

}  // namespace

GS build_w_polynomial(const Curve& curve, const CorrelatorTable& table, const WorkLayout& lay,
                      bool y_side) {
    WBuilder wb(curve, table, lay, y_side);
    // V = T_{0,1}-type block minus u Theta(active).
    GS t01 = wb.t_block({}, {});
    GS theta_a = instantiate(curve.Theta, lay.active, lay.nz, lay.work, curve.table);
    GS V = t01 - theta_a.mul_var(lay.work->u_var(), 1);
    GS expV = gs_exp(V, RatFun::constant(lay.nz, Rat(1), curve.table));

    // Sum over set partitions of the spectators into nonempty blocks.
    std::vector<int> spec;
    spec.insert(spec.end(), lay.xslots.begin(), lay.xslots.end());
    spec.insert(spec.end(), lay.yslots.begin(), lay.yslots.end());
    GS sum = wb.one;
    if (!spec.empty()) {
        sum = wb.zero;
        auto parts = set_partitions(static_cast<int>(spec.size()));
        std::map<std::pair<std::vector<int>, std::vector<int>>, GS> cache;
        for (const auto& part : parts) {
            GS prod = wb.one;
            for (const auto& block : part) {
                std::vector<int> I, J;
                for (int idx : block) {
                    int slot = spec[static_cast<size_t>(idx)];
                    if (slot < lay.m)
                        I.push_back(slot);
                    else
                        J.push_back(slot);
                }
                auto ck = std::make_pair(I, J);
                auto it = cache.find(ck);
                if (it == cache.end()) it = cache.emplace(ck, wb.t_block(I, J)).first;
                prod = prod * it->second;
                if (prod.is_zero()) break;
            }
            sum += prod;
        }
    }
    return expV * sum;
}

GS w_u_coefficient(const GS& A, const Ctx& work, int r) {
    auto sinv = s_series_inverse(work->hbar_max);
    GS out(A.ctx, A.proto);
    for (int k = 0; 2 * k <= work->hbar_max; ++k) {
        if (is_zero(sinv[static_cast<size_t>(2 * k)])) continue;
        int need = r + 1 - 2 * k;
        if (need < 0) continue;
        GS part = A.coeff_of(work->u_var(), need);
        if (part.is_zero()) continue;
        out += part.scaled(sinv[static_cast<size_t>(2 * k)]).mul_var(work->hbar_var(), 2 * k);
    }
    return out;
}

}  // namespace corr
