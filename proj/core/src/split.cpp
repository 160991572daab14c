#include "corr/split.hpp"

#include "corr/local_series.hpp"

namespace corr {

namespace {

struct PolarPiece {
    RatFun part;
    Side side;
};

}  // namespace

SplitResult split_poles(const RatFun& F0, int active, const std::vector<Side>& var_side) {
    RatFun F = F0;
    F.reduce();
    const int nv = F.nvars;
    const auto& table = F.table;
    RatFun zero(nv, table);

    std::vector<std::pair<FactorKey, int>> active_factors;
    for (const auto& [k, m] : F.den) {
        bool involves = (k.kind == FactorKey::curve && k.b == active) ||
                        (k.kind == FactorKey::diag && (k.a == active || k.b == active));
        if (involves) active_factors.emplace_back(k, m);
    }

    std::vector<PolarPiece> polars;
    for (const auto& [key, m] : active_factors) {
        Side side;
        bool diag_flip = false;
        int partner = -1;
        LocalPoint pt;
        if (key.kind == FactorKey::curve) {
            const FactorInfo& fi = table->info(key.a);
            if (fi.f.degree() != 1)
                fail("split_poles: quadratic pole survived in the function being split");
            require(fi.side == Side::inside || fi.side == Side::outside,
                    "split_poles: pole on the unit circle, classification ambiguous");
            side = fi.side;
            pt = LocalPoint::finite(*fi.root);
        } else {
            partner = (key.a == active) ? key.b : key.a;
            diag_flip = (key.b == active);  // stored factor is (z_partner - z_active)
            side = var_side.at(static_cast<size_t>(partner));
            require(side == Side::inside || side == Side::outside,
                    "split_poles: diagonal variable lacks a side classification");
            pt = LocalPoint::at_variable(partner);
        }
        // Principal part from the local expansion of F at the pole:
        // F = sum_{j=1..m} c_j (z - a)^{-j} + regular.
        auto ls = local_expand(F, active, pt, -1);
        require(ls.lead >= -m, "split_poles: pole order exceeds denominator multiplicity");
        RatFun polar(nv, table);
        for (int j = 1; j <= m; ++j) {
            RatFun c_j = ls.coeff(-j);
            if (c_j.is_zero()) continue;
            RatFun piece = c_j;
            piece.den[key] += j;
            if (diag_flip && (j % 2 == 1)) piece.num = -piece.num;
            polar += piece;
        }
        polars.push_back({polar, side});
    }

    RatFun remainder = F;
    for (const auto& p : polars) remainder -= p.part;
    remainder.reduce();
    for (const auto& [k, mm] : remainder.den) {
        bool involves = (k.kind == FactorKey::curve && k.b == active) ||
                        (k.kind == FactorKey::diag && (k.a == active || k.b == active));
        if (involves)
            fail("split_poles: polar extraction left an active-variable pole (kind=" +
                 std::to_string(k.kind) + " a=" + std::to_string(k.a) + " b=" +
                 std::to_string(k.b) + " mult=" + std::to_string(mm) + ")");
    }

    SplitResult out{zero, zero, zero};
    for (const auto& p : polars) {
        if (p.side == Side::outside)
            out.plus += p.part;
        else
            out.minus += p.part;
    }
    // Laurent remainder in the active variable.
    RatFun pos(nv, table), neg(nv, table), cst(nv, table);
    pos.den = neg.den = cst.den = remainder.den;
    for (const auto& [e, c] : remainder.num.terms) {
        int k = e.at(static_cast<size_t>(active));
        Laurent mono(nv);
        mono.add_term(e, c);
        if (k > 0)
            pos.num += mono;
        else if (k < 0)
            neg.num += mono;
        else
            cst.num += mono;
    }
    pos.reduce();
    neg.reduce();
    cst.reduce();
    out.plus += pos;
    out.minus += neg;
    out.constant_part = cst;

    // Normalize plus(0) = 0; minus(inf) = 0 holds by construction.
    if (!out.plus.is_zero()) {
        RatFun at0 = out.plus.subst_value(active, Rat(0));
        if (!at0.is_zero()) {
            out.plus -= at0;
            out.constant_part += at0;
        }
    }
    return out;
}

}  // namespace corr
