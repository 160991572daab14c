#include "corr/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace corr {

Laurent Laurent::constant(int nv, const Rat& a) {
    Laurent l(nv);
    if (!corr::is_zero(a)) l.terms.emplace(ExpVec(static_cast<size_t>(nv), 0), a);
    return l;
}

Laurent Laurent::monomial(int nv, int var, int exp, const Rat& a) {
    Laurent l(nv);
    if (corr::is_zero(a)) return l;
    ExpVec e(static_cast<size_t>(nv), 0);
    e.at(static_cast<size_t>(var)) = exp;
    l.terms.emplace(std::move(e), a);
    return l;
}

bool Laurent::is_constant() const {
    if (terms.empty()) return true;
    if (terms.size() > 1) return false;
    const auto& e = terms.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat Laurent::constant_value() const {
    if (terms.empty()) return Rat(0);
    require(is_constant(), "Laurent::constant_value: not a constant");
    return terms.begin()->second;
}

void Laurent::add_term(const ExpVec& e, const Rat& a) {
    if (corr::is_zero(a)) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, a);
    } else {
        it->second += a;
        if (corr::is_zero(it->second)) terms.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& o) {
    require(nvars == o.nvars, "Laurent: variable count mismatch");
    for (const auto& [e, a] : o.terms) add_term(e, a);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    require(nvars == o.nvars, "Laurent: variable count mismatch");
    for (const auto& [e, a] : o.terms) add_term(e, -a);
    return *this;
}

namespace {

// Exponents packed into one 64-bit key: variable i in byte (7 - i), biased
// by 128, so that packed order equals the lexicographic ExpVec order and
// packed sums add per variable without carries for |exponent sums| < 128.
constexpr std::uint64_t kBias = 0x8080808080808080ULL;

bool pack_exps(const ExpVec& e, std::uint64_t* out) {
    if (e.size() > 8) return false;
    std::uint64_t k = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        // Keep sums of two packed keys inside a byte.
        if (e[i] > 60 || e[i] < -60) return false;
        k |= static_cast<std::uint64_t>(e[i] + 128) << (8 * (7 - i));
    }
    for (size_t i = e.size(); i < 8; ++i) k |= 0x80ULL << (8 * (7 - i));
    return (*out = k, true);
}

ExpVec unpack_exps(std::uint64_t k, int nvars) {
    ExpVec e(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i)
        e[static_cast<size_t>(i)] = static_cast<int>((k >> (8 * (7 - i))) & 0xff) - 128;
    return e;
}

}  // namespace

Laurent operator*(const Laurent& a, const Laurent& b) {
    require(a.nvars == b.nvars, "Laurent: variable count mismatch");
    Laurent r(a.nvars);
    if (a.terms.empty() || b.terms.empty()) return r;

    // Fast path: packed exponent keys, sort-merge accumulation, in-order
    // hinted rebuild of the result map.
    bool packable = a.nvars <= 8;
    std::vector<std::pair<std::uint64_t, const Rat*>> pa, pb;
    if (packable) {
        pa.reserve(a.terms.size());
        for (const auto& [e, c] : a.terms) {
            std::uint64_t k;
            if (!pack_exps(e, &k)) {
                packable = false;
                break;
            }
            pa.emplace_back(k, &c);
        }
    }
    if (packable) {
        pb.reserve(b.terms.size());
        for (const auto& [e, c] : b.terms) {
            std::uint64_t k;
            if (!pack_exps(e, &k)) {
                packable = false;
                break;
            }
            pb.emplace_back(k, &c);
        }
    }
    if (packable) {
        std::vector<std::pair<std::uint64_t, Rat>> prod;
        prod.reserve(pa.size() * pb.size());
        for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : pb) prod.emplace_back(ka + kb - kBias, (*ca) * (*cb));
        std::sort(prod.begin(), prod.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        auto hint = r.terms.end();
        size_t i = 0;
        while (i < prod.size()) {
            std::uint64_t k = prod[i].first;
            Rat acc = std::move(prod[i].second);
            size_t j = i + 1;
            while (j < prod.size() && prod[j].first == k) {
                acc += prod[j].second;
                ++j;
            }
            if (sgn(acc) != 0)
                hint = r.terms.emplace_hint(hint, unpack_exps(k, a.nvars), std::move(acc));
            i = j;
        }
        return r;
    }

    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            ExpVec e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r(nvars);
    for (const auto& [e, a] : terms) r.terms.emplace(e, -a);
    return r;
}

Laurent Laurent::scaled(const Rat& k) const {
    Laurent r(nvars);
    if (corr::is_zero(k)) return r;
    for (const auto& [e, a] : terms) r.terms.emplace(e, a * k);
    return r;
}

Laurent Laurent::mul_monomial(int var, int exp, const Rat& k) const {
    Laurent r(nvars);
    if (corr::is_zero(k)) return r;
    for (const auto& [e, a] : terms) {
        ExpVec e2 = e;
        e2.at(static_cast<size_t>(var)) += exp;
        r.terms.emplace(std::move(e2), a * k);
    }
    return r;
}

Laurent Laurent::derivative(int var) const {
    Laurent r(nvars);
    for (const auto& [e, a] : terms) {
        int k = e.at(static_cast<size_t>(var));
        if (k == 0) continue;
        ExpVec e2 = e;
        e2[static_cast<size_t>(var)] = k - 1;
        r.add_term(e2, a * Rat(k));
    }
    return r;
}

int Laurent::min_exp(int var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, a] : terms) {
        (void)a;
        int k = e.at(static_cast<size_t>(var));
        if (first || k < m) m = k;
        first = false;
    }
    return m;
}

int Laurent::max_exp(int var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, a] : terms) {
        (void)a;
        int k = e.at(static_cast<size_t>(var));
        if (first || k > m) m = k;
        first = false;
    }
    return m;
}

bool Laurent::depends_on(int var) const {
    for (const auto& [e, a] : terms) {
        (void)a;
        if (e.at(static_cast<size_t>(var)) != 0) return true;
    }
    return false;
}

Laurent Laurent::subst_value(int var, const Rat& value) const {
    Laurent r(nvars);
    for (const auto& [e, a] : terms) {
        int k = e.at(static_cast<size_t>(var));
        if (k < 0) require(sgn(value) != 0, "Laurent::subst_value: zero at negative exponent");
        ExpVec e2 = e;
        e2[static_cast<size_t>(var)] = 0;
        r.add_term(e2, a * rat_pow(value, k));
    }
    return r;
}

Laurent Laurent::subst_var(int var, int other) const {
    require(var != other, "Laurent::subst_var: identical variables");
    Laurent r(nvars);
    for (const auto& [e, a] : terms) {
        ExpVec e2 = e;
        e2.at(static_cast<size_t>(other)) += e2.at(static_cast<size_t>(var));
        e2[static_cast<size_t>(var)] = 0;
        r.add_term(e2, a);
    }
    return r;
}

Laurent Laurent::rename(const std::vector<int>& perm, int nv_new) const {
    require(static_cast<int>(perm.size()) == nvars, "Laurent::rename: bad permutation size");
    Laurent r(nv_new);
    for (const auto& [e, a] : terms) {
        ExpVec e2(static_cast<size_t>(nv_new), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            int tgt = perm[i];
            require(tgt >= 0 && tgt < nv_new, "Laurent::rename: exponent on dropped variable");
            e2[static_cast<size_t>(tgt)] += e[i];
        }
        r.add_term(e2, a);
    }
    return r;
}

Laurent Laurent::coeff_of(int var, int k) const {
    Laurent r(nvars);
    for (const auto& [e, a] : terms) {
        if (e.at(static_cast<size_t>(var)) != k) continue;
        ExpVec e2 = e;
        e2[static_cast<size_t>(var)] = 0;
        r.add_term(e2, a);
    }
    return r;
}

namespace {

// Fast rejection: evaluate the spectator variables at fixed small primes
// and test univariate divisibility of the shadow polynomial. A nonzero
// shadow remainder proves indivisibility; a zero one is checked exactly.
bool shadow_divisible(const Laurent& a, const Poly& f, int var) {
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    std::map<int, Rat> shadow;
    for (const auto& [e, c] : a.terms) {
        Rat v = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) == var || e[i] == 0) continue;
            v *= rat_pow(Rat(primes[i % 12]), e[i]);
        }
        auto it = shadow.find(e[static_cast<size_t>(var)]);
        if (it == shadow.end())
            shadow.emplace(e[static_cast<size_t>(var)], v);
        else
            it->second += v;
    }
    int lo = shadow.empty() ? 0 : shadow.begin()->first;
    Poly sp;
    for (const auto& [k, v] : shadow) {
        if (is_zero(v)) continue;
        int idx = k - lo;
        if (idx >= static_cast<int>(sp.c.size())) sp.c.resize(static_cast<size_t>(idx) + 1, Rat(0));
        sp.c[static_cast<size_t>(idx)] = v;
    }
    sp.trim();
    if (sp.is_zero()) return true;
    return poly_divmod(sp, f).rem.is_zero();
}

}  // namespace

bool laurent_div_poly(const Laurent& a, const Poly& f, int var, Laurent* quot) {
    require(!f.is_zero(), "laurent_div_poly: zero divisor");
    if (a.is_zero()) {
        *quot = Laurent(a.nvars);
        return true;
    }
    if (f.degree() >= 1 && !shadow_divisible(a, f, var)) return false;
    // Shift so that exponents in `var` are nonnegative, then do long
    // division from the top degree; the divisor's leading coefficient is a
    // nonzero rational, so no division in the coefficient ring is needed
    // beyond rationals.
    int shift = std::min(a.min_exp(var), 0);
    Laurent work = a.mul_monomial(var, -shift);
    int ftrail = 0;
    while (ftrail <= f.degree() && corr::is_zero(f.coeff(ftrail))) ++ftrail;
    // Divisor may itself be divisible by z^ftrail (e.g. registered factors
    // never are, but be safe): fold that into the shift.
    Poly fred;
    fred.c.assign(f.c.begin() + ftrail, f.c.end());
    int top = work.max_exp(var);
    int fd = fred.degree();
    Laurent q(a.nvars);
    while (!work.is_zero()) {
        top = work.max_exp(var);
        if (top < fd) return false;
        Laurent lead = work.coeff_of(var, top);
        Laurent qterm = lead.mul_monomial(var, top - fd, 1 / fred.lead());
        q += qterm;
        // work -= qterm * fred
        for (int i = 0; i <= fd; ++i) {
            if (corr::is_zero(fred.coeff(i))) continue;
            work -= qterm.mul_monomial(var, i, fred.coeff(i));
        }
    }
    *quot = q.mul_monomial(var, shift - ftrail);
    return true;
}

bool laurent_div_diag(const Laurent& x, int va, int vb, Laurent* quot) {
    if (x.is_zero()) {
        *quot = Laurent(x.nvars);
        return true;
    }
    // Divisibility by (z_a - z_b) iff substituting z_a := z_b gives zero.
    if (!x.subst_var(va, vb).is_zero()) return false;
    // Synthetic division in z_a: write x = sum_k c_k(zs) z_a^k (k >= 0
    // after shifting), divide by (z_a - z_b) where the "root" is the
    // variable z_b.
    int shift = std::min(x.min_exp(va), 0);
    Laurent work = x.mul_monomial(va, -shift);
    int top = work.max_exp(va);
    Laurent q(x.nvars);
    Laurent carry(x.nvars);
    for (int k = top; k >= 1; --k) {
        Laurent ck = work.coeff_of(va, k);
        Laurent qk = ck + carry;
        q += qk.mul_monomial(va, k - 1);
        carry = qk.mul_monomial(vb, 1);
    }
    *quot = q.mul_monomial(va, shift);
    return true;
}

Rat laurent_eval(const Laurent& a, const std::vector<Rat>& pt) {
    require(static_cast<int>(pt.size()) == a.nvars, "laurent_eval: bad point size");
    Rat total(0);
    for (const auto& [e, c] : a.terms) {
        Rat v = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) v *= rat_pow(pt[i], e[i]);
        total += v;
    }
    return total;
}

std::string laurent_str(const Laurent& a, const std::vector<std::string>& names) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << (i < names.size() ? names[i] : "z" + std::to_string(i));
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace corr
