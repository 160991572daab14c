#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "corr/ratfun.hpp"

namespace corr {

// Formal-variable layout for graded series: t_1..t_d, s_1..s_e, hbar, and
// optionally u and w. t_k and s_k carry weight k; the total (t,s)-weight of
// every kept term is bounded by ts_degree.
struct SeriesContext {
    int n_t = 0;
    int n_s = 0;
    int ts_degree = 0;
    int hbar_max = 0;
    int u_max = -1;  // -1 = variable absent
    int w_max = -1;

    int nvars() const { return n_t + n_s + 1 + (u_max >= 0 ? 1 : 0) + (w_max >= 0 ? 1 : 0); }
    int t_var(int k) const;  // k = 1..n_t
    int s_var(int k) const;  // k = 1..n_s
    int hbar_var() const { return n_t + n_s; }
    int u_var() const;
    int w_var() const;

    int ts_weight(const ExpVec& e) const;
    bool within(const ExpVec& e) const;

    friend bool operator==(const SeriesContext&, const SeriesContext&) = default;
};

using Ctx = std::shared_ptr<const SeriesContext>;

inline Ctx make_ctx(SeriesContext c) { return std::make_shared<const SeriesContext>(c); }

namespace detail {
inline bool coeff_is_zero(const Rat& a) { return sgn(a) == 0; }
inline bool coeff_is_zero(const RatFun& a) { return a.is_zero(); }
inline Rat coeff_scaled(const Rat& a, const Rat& k) { return a * k; }
inline RatFun coeff_scaled(const RatFun& a, const Rat& k) { return a.scaled(k); }
}  // namespace detail

// Truncated graded series: exact coefficients C indexed by exponent vectors
// over the context's variables. All ring operations truncate to the bounds.
template <class C>
struct GSeries {
    Ctx ctx;
    C proto;  // zero coefficient of the right shape
    std::map<ExpVec, C> terms;

    GSeries() = default;
    GSeries(Ctx c, C zero) : ctx(std::move(c)), proto(std::move(zero)) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(const ExpVec& e, const C& val) {
        if (detail::coeff_is_zero(val)) return;
        if (!ctx->within(e)) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, val);
        } else {
            it->second += val;
            if (detail::coeff_is_zero(it->second)) terms.erase(it);
        }
    }

    static GSeries constant(const Ctx& c, const C& zero, const C& val) {
        GSeries g(c, zero);
        g.add_term(ExpVec(static_cast<size_t>(c->nvars()), 0), val);
        return g;
    }

    static GSeries var_monomial(const Ctx& c, const C& zero, int var, int exp, const C& val) {
        GSeries g(c, zero);
        ExpVec e(static_cast<size_t>(c->nvars()), 0);
        e.at(static_cast<size_t>(var)) = exp;
        g.add_term(e, val);
        return g;
    }

    GSeries& operator+=(const GSeries& o) {
        require(*ctx == *o.ctx, "GSeries: context mismatch");
        for (const auto& [e, v] : o.terms) add_term(e, v);
        return *this;
    }
    GSeries& operator-=(const GSeries& o) {
        require(*ctx == *o.ctx, "GSeries: context mismatch");
        for (const auto& [e, v] : o.terms) add_term(e, detail::coeff_scaled(v, Rat(-1)));
        return *this;
    }
    friend GSeries operator+(GSeries a, const GSeries& b) { return a += b; }
    friend GSeries operator-(GSeries a, const GSeries& b) { return a -= b; }

    friend GSeries operator*(const GSeries& a, const GSeries& b) {
        require(*a.ctx == *b.ctx, "GSeries: context mismatch");
        GSeries r(a.ctx, a.proto);
        for (const auto& [ea, va] : a.terms) {
            for (const auto& [eb, vb] : b.terms) {
                ExpVec e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                if (!a.ctx->within(e)) continue;
                r.add_term(e, va * vb);
            }
        }
        return r;
    }

    GSeries operator-() const { return scaled(Rat(-1)); }

    GSeries scaled(const Rat& k) const {
        GSeries r(ctx, proto);
        if (corr::is_zero(k)) return r;
        for (const auto& [e, v] : terms) r.terms.emplace(e, detail::coeff_scaled(v, k));
        return r;
    }

    GSeries scaled_coeff(const C& k) const {
        GSeries r(ctx, proto);
        for (const auto& [e, v] : terms) r.add_term(e, v * k);
        return r;
    }

    GSeries mul_var(int var, int exp) const {
        GSeries r(ctx, proto);
        for (const auto& [e, v] : terms) {
            ExpVec e2 = e;
            e2.at(static_cast<size_t>(var)) += exp;
            require(e2[static_cast<size_t>(var)] >= 0, "GSeries::mul_var: negative exponent");
            r.add_term(e2, v);
        }
        return r;
    }

    // Coefficient of var^k, the variable slot zeroed out.
    GSeries coeff_of(int var, int k) const {
        GSeries r(ctx, proto);
        for (const auto& [e, v] : terms) {
            if (e.at(static_cast<size_t>(var)) != k) continue;
            ExpVec e2 = e;
            e2[static_cast<size_t>(var)] = 0;
            r.add_term(e2, v);
        }
        return r;
    }

    int max_exp(int var) const {
        int m = -1;
        for (const auto& [e, v] : terms) {
            (void)v;
            m = std::max(m, e.at(static_cast<size_t>(var)));
        }
        return m;
    }

    C coeff_at(const ExpVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? proto : it->second;
    }

    C constant_term() const { return coeff_at(ExpVec(static_cast<size_t>(ctx->nvars()), 0)); }

    bool has_constant_grade() const {
        return terms.find(ExpVec(static_cast<size_t>(ctx->nvars()), 0)) != terms.end();
    }

    // Applies f to every coefficient (e.g. a z-derivative).
    GSeries map_coeffs(const std::function<C(const C&)>& f) const {
        GSeries r(ctx, proto);
        for (const auto& [e, v] : terms) {
            C w = f(v);
            if (!detail::coeff_is_zero(w)) r.add_term(e, w);
        }
        return r;
    }

    friend bool operator==(const GSeries& a, const GSeries& b) {
        if (!(*a.ctx == *b.ctx)) return false;
        return (a - b).is_zero();
    }
};

using GS = GSeries<RatFun>;
using GSRat = GSeries<Rat>;

// exp of a series with no grade-zero part; terminates by nilpotency.
template <class C>
GSeries<C> gs_exp(const GSeries<C>& a, const C& one) {
    require(!a.has_constant_grade(), "gs_exp: argument has a grade-zero term");
    GSeries<C> r = GSeries<C>::constant(a.ctx, a.proto, one);
    GSeries<C> pw = r;
    int cap = a.ctx->ts_degree + a.ctx->hbar_max + std::max(a.ctx->u_max, 0) +
              std::max(a.ctx->w_max, 0) + 1;
    for (int k = 1; k <= cap; ++k) {
        pw = pw * a;
        if (pw.is_zero()) break;
        r += pw.scaled(1 / factorial(static_cast<unsigned long>(k)));
    }
    require((pw * a).is_zero(), "gs_exp: argument not nilpotent within truncation");
    return r;
}

// log(1 + a) for a with no grade-zero part.
template <class C>
GSeries<C> gs_log1p(const GSeries<C>& a) {
    require(!a.has_constant_grade(), "gs_log1p: argument has a grade-zero term");
    GSeries<C> r(a.ctx, a.proto);
    GSeries<C> pw = a;
    int cap = a.ctx->ts_degree + a.ctx->hbar_max + std::max(a.ctx->u_max, 0) +
              std::max(a.ctx->w_max, 0) + 1;
    for (int k = 1; k <= cap; ++k) {
        if (pw.is_zero()) break;
        r += pw.scaled(Rat(k % 2 == 1 ? 1 : -1, k));
        pw = pw * a;
    }
    require(pw.is_zero(), "gs_log1p: argument not nilpotent within truncation");
    return r;
}

// Multiplicative inverse of u = u0 + n where u0 is the grade-zero part
// (invertible coefficient) and n is nilpotent: 1/u = 1/u0 * sum (-n/u0)^k.
GS gs_invert(const GS& a);

// Evaluate a power series in theta (rational coefficients) at a nilpotent
// series argument.
GS eval_theta_series(const std::vector<Rat>& c, const GS& theta, const RatFun& one);

}  // namespace corr
