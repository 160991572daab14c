#include "corr/series.hpp"

namespace corr {

int SeriesContext::t_var(int k) const {
    require(k >= 1 && k <= n_t, "SeriesContext::t_var: index out of range");
    return k - 1;
}

int SeriesContext::s_var(int k) const {
    require(k >= 1 && k <= n_s, "SeriesContext::s_var: index out of range");
    return n_t + k - 1;
}

int SeriesContext::u_var() const {
    require(u_max >= 0, "SeriesContext: u variable not declared");
    return n_t + n_s + 1;
}

int SeriesContext::w_var() const {
    require(w_max >= 0, "SeriesContext: w variable not declared");
    return n_t + n_s + 1 + (u_max >= 0 ? 1 : 0);
}

int SeriesContext::ts_weight(const ExpVec& e) const {
    int w = 0;
    for (int k = 1; k <= n_t; ++k) w += k * e.at(static_cast<size_t>(k - 1));
    for (int k = 1; k <= n_s; ++k) w += k * e.at(static_cast<size_t>(n_t + k - 1));
    return w;
}

bool SeriesContext::within(const ExpVec& e) const {
    require(static_cast<int>(e.size()) == nvars(), "SeriesContext::within: bad index size");
    for (int x : e)
        if (x < 0) return false;
    if (ts_weight(e) > ts_degree) return false;
    if (e[static_cast<size_t>(hbar_var())] > hbar_max) return false;
    if (u_max >= 0 && e[static_cast<size_t>(u_var())] > u_max) return false;
    if (w_max >= 0 && e[static_cast<size_t>(w_var())] > w_max) return false;
    return true;
}

GS gs_invert(const GS& a) {
    ExpVec zero(static_cast<size_t>(a.ctx->nvars()), 0);
    auto it = a.terms.find(zero);
    require(it != a.terms.end(), "gs_invert: no grade-zero part");
    RatFun inv0 = it->second.inverse();
    GS n = a;
    n.terms.erase(zero);
    // 1/(u0 + n) = inv0 * sum_k (-n inv0)^k
    GS m(a.ctx, a.proto);
    for (const auto& [e, v] : n.terms) m.add_term(e, (-v) * inv0);
    GS r = GS::constant(a.ctx, a.proto, inv0);
    GS pw = r;
    int cap = a.ctx->ts_degree + a.ctx->hbar_max + std::max(a.ctx->u_max, 0) +
              std::max(a.ctx->w_max, 0) + 1;
    GS term = GS::constant(a.ctx, a.proto, inv0);
    for (int k = 1; k <= cap; ++k) {
        term = term * m;
        if (term.is_zero()) break;
        r += term;
    }
    require((term * m).is_zero(), "gs_invert: non-nilpotent remainder");
    (void)pw;
    return r;
}

GS eval_theta_series(const std::vector<Rat>& c, const GS& theta, const RatFun& one) {
    require(!theta.has_constant_grade(), "eval_theta_series: argument has a grade-zero term");
    GS r(theta.ctx, theta.proto);
    GS pw = GS::constant(theta.ctx, theta.proto, one);
    for (size_t m = 0; m < c.size(); ++m) {
        if (m > 0) {
            pw = pw * theta;
            if (pw.is_zero()) break;
        }
        if (!is_zero(c[m])) r += pw.scaled(c[m]);
    }
    return r;
}

}  // namespace corr
