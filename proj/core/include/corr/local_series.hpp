#pragma once

#include <vector>

#include "corr/quadext.hpp"
#include "corr/ratfun.hpp"

namespace corr {

namespace lsops {
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const QuadExt& x) { return x.is_zero(); }
inline bool is_zero(const RatFun& x) { return x.is_zero(); }
inline Rat inv(const Rat& x) { return 1 / x; }
inline QuadExt inv(const QuadExt& x) { return x.inverse(); }
inline RatFun inv(const RatFun& x) { return x.inverse(); }
inline Rat scale(const Rat& x, const Rat& k) { return x * k; }
inline QuadExt scale(const QuadExt& x, const Rat& k) { return x * QuadExt(k); }
inline RatFun scale(const RatFun& x, const Rat& k) { return x.scaled(k); }
}  // namespace lsops

// Truncated local Laurent series sum_{k>=lead} c[k-lead] * zeta^k, with
// coefficients known exactly for exponents <= ord. The local parameter is
// zeta = z - p at a finite point or 1/z at infinity; this class does not
// know the point, only the coefficient stream.
template <class K>
struct LSeries {
    int lead = 0;
    int ord = -1;  // exponents <= ord are known; ord < lead means zero-so-far
    std::vector<K> c;
    K proto{};  // zero of the right shape

    LSeries() = default;
    LSeries(int lead_, int ord_, K zero) : lead(lead_), ord(ord_), proto(std::move(zero)) {
        if (ord >= lead) c.assign(static_cast<size_t>(ord - lead + 1), proto);
    }

    static LSeries zero_to(int ord_, K zero) {
        LSeries s(ord_ + 1, ord_, std::move(zero));
        s.c.clear();
        return s;
    }

    K coeff(int k) const {
        if (k < lead || k > ord) return proto;
        return c[static_cast<size_t>(k - lead)];
    }
    void set_coeff(int k, K v) {
        require(k >= lead && k <= ord, "LSeries::set_coeff: exponent out of window");
        c[static_cast<size_t>(k - lead)] = std::move(v);
    }

    bool is_zero_known() const {
        for (const auto& x : c)
            if (!lsops::is_zero(x)) return false;
        return true;
    }

    // Lowest exponent with a nonzero known coefficient; ord+1 if none.
    int valuation() const {
        for (size_t i = 0; i < c.size(); ++i)
            if (!lsops::is_zero(c[i])) return lead + static_cast<int>(i);
        return ord + 1;
    }

    void normalize() {
        while (!c.empty() && lsops::is_zero(c.front())) {
            c.erase(c.begin());
            ++lead;
        }
    }

    LSeries truncated(int new_ord) const;
    LSeries shifted(int k) const;  // multiply by zeta^k

    friend LSeries operator+(const LSeries& a, const LSeries& b) {
        int ord = std::min(a.ord, b.ord);
        int lead = std::min(a.lead, b.lead);
        LSeries r(std::min(lead, ord + 1), ord, a.proto);
        for (int k = r.lead; k <= ord; ++k) {
            K v = a.coeff(k);
            v += b.coeff(k);
            r.set_coeff(k, std::move(v));
        }
        r.normalize();
        return r;
    }
    friend LSeries operator-(const LSeries& a, const LSeries& b) { return a + (-b); }
    LSeries operator-() const {
        LSeries r = *this;
        for (auto& x : r.c) x = lsops::scale(x, Rat(-1));
        return r;
    }

    friend LSeries operator*(const LSeries& a, const LSeries& b) {
        LSeries an = a, bn = b;
        an.normalize();
        bn.normalize();
        int ord = std::min(an.ord + bn.lead, bn.ord + an.lead);
        LSeries r(an.lead + bn.lead, ord, a.proto);
        for (int i = an.lead; i <= an.ord; ++i) {
            if (lsops::is_zero(an.coeff(i))) continue;
            for (int j = bn.lead; j <= bn.ord && i + j <= ord; ++j) {
                if (lsops::is_zero(bn.coeff(j))) continue;
                K v = r.coeff(i + j);
                v += an.coeff(i) * bn.coeff(j);
                r.set_coeff(i + j, std::move(v));
            }
        }
        return r;
    }

    LSeries scaled(const Rat& k) const {
        LSeries r = *this;
        for (auto& x : r.c) x = lsops::scale(x, k);
        return r;
    }
    LSeries scaled_coeff(const K& k) const {
        LSeries r = *this;
        for (auto& x : r.c) x = x * k;
        return r;
    }

    // Multiplicative inverse; valuation must be exact (nonzero leading
    // coefficient after normalize).
    LSeries inverse() const;

    // d/dzeta.
    LSeries derivative() const;

    friend bool operator==(const LSeries& a, const LSeries& b) {
        int ord = std::min(a.ord, b.ord);
        for (int k = std::min(a.lead, b.lead); k <= ord; ++k) {
            K v = a.coeff(k);
            v -= b.coeff(k);
            if (!lsops::is_zero(v)) return false;
        }
        return true;
    }
};

template <class K>
LSeries<K> LSeries<K>::truncated(int new_ord) const {
    LSeries r = *this;
    if (new_ord < r.ord) {
        r.ord = new_ord;
        if (new_ord < r.lead)
            r.c.clear();
        else
            r.c.resize(static_cast<size_t>(new_ord - r.lead + 1), proto);
    }
    return r;
}

template <class K>
LSeries<K> LSeries<K>::shifted(int k) const {
    LSeries r = *this;
    r.lead += k;
    r.ord += k;
    return r;
}

template <class K>
LSeries<K> LSeries<K>::inverse() const {
    LSeries f = *this;
    f.normalize();
    require(!f.c.empty(), "LSeries::inverse: zero series");
    require(!lsops::is_zero(f.c.front()), "LSeries::inverse: undetermined valuation");
    int n = f.ord - f.lead;  // number of known higher coefficients
    K inv0 = lsops::inv(f.c.front());
    LSeries r(-f.lead, -f.lead + n, proto);
    r.set_coeff(-f.lead, inv0);
    for (int k = 1; k <= n; ++k) {
        // c_k of inverse: -(inv0) * sum_{j=1..k} f_{lead+j} * r_{-lead+k-j}
        K acc = proto;
        for (int j = 1; j <= k; ++j) acc += f.coeff(f.lead + j) * r.coeff(-f.lead + k - j);
        r.set_coeff(-f.lead + k, lsops::scale(acc * inv0, Rat(-1)));
    }
    return r;
}

template <class K>
LSeries<K> LSeries<K>::derivative() const {
    LSeries r(lead - 1, ord - 1, proto);
    for (int k = lead; k <= ord; ++k) {
        if (k == 0) continue;
        r.set_coeff(k - 1, lsops::scale(coeff(k), Rat(k)));
    }
    r.normalize();
    return r;
}

// Composition helper: needs an explicit multiplicative unit of K.
template <class K>
LSeries<K> ls_compose(const LSeries<K>& f, const LSeries<K>& g, const K& one) {
    LSeries<K> gn = g;
    gn.normalize();
    require(gn.c.empty() || gn.lead >= 1, "ls_compose: inner valuation must be >= 1");
    int gl = gn.c.empty() ? 1 : gn.lead;
    int ord_cap = std::min(gn.ord, (f.ord + 1) * gl - 1);
    LSeries<K> r = LSeries<K>::zero_to(std::min(ord_cap, gn.ord), f.proto);
    // g^k for k = 0..f.ord
    LSeries<K> pw(0, r.ord, f.proto);
    pw.set_coeff(0, one);
    if (f.lead < 0) {
        LSeries<K> gi = gn.inverse().truncated(r.ord);
        LSeries<K> pwn = pw;
        for (int k = -1; k >= f.lead; --k) {
            pwn = (pwn * gi).truncated(r.ord);
            if (!lsops::is_zero(f.coeff(k))) r = r + pwn.scaled_coeff(f.coeff(k));
        }
    }
    for (int k = 0; k <= f.ord; ++k) {
        if (k > 0) pw = (pw * gn).truncated(r.ord);
        if (!lsops::is_zero(f.coeff(k))) r = r + pw.scaled_coeff(f.coeff(k));
        if (k > 0 && pw.valuation() > r.ord) break;
    }
    return r;
}

// --- Expansions of RatFun objects -----------------------------------------

struct LocalPoint {
    bool at_infinity = false;
    QuadExt p;        // finite point (rational or quadratic surd)
    int at_var = -1;  // >= 0: expand at z = z_{at_var} (a spectator variable)

    static LocalPoint finite(const Rat& x) { return {false, QuadExt(x), -1}; }
    static LocalPoint finite_quad(const QuadExt& x) { return {false, x, -1}; }
    static LocalPoint infinity() { return {true, QuadExt(), -1}; }
    static LocalPoint at_variable(int v) { return {false, QuadExt(), v}; }
};

// Expand f in the variable `var` at the given point, keeping the other
// variables inside the RatFun coefficients. The point must be rational.
LSeries<RatFun> local_expand(const RatFun& f, int var, const LocalPoint& pt, int order);

// Expand a single-variable f at a (possibly surd) point with scalar
// QuadExt coefficients.
LSeries<QuadExt> local_expand_quad(const RatFun& f, int var, const LocalPoint& pt, int order);

// Residue at a finite point / infinity of f dz (single active variable):
// coefficient of (z-p)^{-1}, resp. -(coefficient of z^{-1} at infinity).
RatFun local_residue(const RatFun& f, int var, const LocalPoint& pt, int slack = 4);

}  // namespace corr
