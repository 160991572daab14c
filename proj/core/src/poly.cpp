#include "corr/poly.hpp"

#include <algorithm>

namespace corr {

Poly Poly::monomial(const Rat& a, int deg) {
    Poly p;
    if (corr::is_zero(a)) return p;
    require(deg >= 0, "Poly::monomial: negative degree");
    p.c.assign(static_cast<size_t>(deg) + 1, Rat(0));
    p.c.back() = a;
    return p;
}

void Poly::trim() {
    while (!c.empty() && corr::is_zero(c.back())) c.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (corr::is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

Poly Poly::scaled(const Rat& k) const {
    if (corr::is_zero(k)) return Poly();
    Poly r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

Poly Poly::derivative() const {
    Poly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Rat(static_cast<long>(i));
    r.trim();
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Poly Poly::compose(const Poly& inner) const {
    Poly v;
    for (size_t i = c.size(); i-- > 0;) {
        v = v * inner;
        v += Poly(c[i]);
    }
    return v;
}

PolyDiv poly_divmod(const Poly& a, const Poly& b) {
    require(!b.is_zero(), "poly_divmod: division by zero polynomial");
    PolyDiv d;
    d.rem = a;
    if (a.degree() < b.degree()) return d;
    d.quot.c.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
    while (!d.rem.is_zero() && d.rem.degree() >= b.degree()) {
        int k = d.rem.degree() - b.degree();
        Rat q = d.rem.lead() / b.lead();
        d.quot.c[static_cast<size_t>(k)] += q;
        for (int i = 0; i <= b.degree(); ++i)
            d.rem.c[static_cast<size_t>(i + k)] -= q * b.c[static_cast<size_t>(i)];
        d.rem.trim();
    }
    d.quot.trim();
    return d;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && !is_one(a.lead())) a = a.scaled(1 / a.lead());
    return a;
}

namespace {

std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> ds;
    Int a = abs(n);
    if (a == 0) return ds;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            ds.push_back(d);
            Int e = a / d;
            if (e != d) ds.push_back(e);
        }
    }
    return ds;
}

}  // namespace

std::vector<std::pair<Rat, int>> poly_rational_roots(Poly& p) {
    std::vector<std::pair<Rat, int>> roots;
    if (p.is_zero()) return roots;
    // Factor out x^k.
    size_t zlead = 0;
    while (zlead < p.c.size() && corr::is_zero(p.c[zlead])) ++zlead;
    if (zlead > 0) {
        roots.emplace_back(Rat(0), static_cast<int>(zlead));
        p.c.erase(p.c.begin(), p.c.begin() + static_cast<long>(zlead));
    }
    if (p.degree() < 1) return roots;

    // Scale to a primitive integer polynomial for the rational root theorem.
    Int den_lcm = 1;
    for (const auto& q : p.c) {
        Int d = q.get_den();
        den_lcm = lcm(den_lcm, d);
    }
    std::vector<Int> ic;
    ic.reserve(p.c.size());
    for (const auto& q : p.c) {
        Rat scaled = q * Rat(den_lcm);
        ic.push_back(scaled.get_num());
    }
    auto p_for_candidates = ic;

    std::vector<Int> nums = divisors_of(p_for_candidates.front());
    std::vector<Int> dens = divisors_of(p_for_candidates.back());
    std::vector<Rat> candidates;
    for (const auto& nn : nums)
        for (const auto& dd : dens)
            for (int s : {1, -1}) {
                Rat cand(s > 0 ? nn : -nn, dd);
                cand.canonicalize();
                candidates.push_back(cand);
            }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& cand : candidates) {
        int mult = 0;
        while (p.degree() >= 1 && corr::is_zero(p.eval(cand))) {
            Poly lin;
            lin.c = {-cand, Rat(1)};
            p = poly_divmod(p, lin).quot;
            ++mult;
        }
        if (mult > 0) roots.emplace_back(cand, mult);
        if (p.degree() < 1) break;
    }
    return roots;
}

PolyFactorization poly_factor(const Poly& p) {
    require(!p.is_zero(), "poly_factor: zero polynomial");
    PolyFactorization f;
    Poly work = p;
    f.lead = work.lead();
    work = work.scaled(1 / f.lead);

    auto roots = poly_rational_roots(work);
    for (auto& [r, m] : roots) {
        Poly lin;
        lin.c = {-r, Rat(1)};
        f.factors.push_back({lin, m});
    }
    if (work.degree() == 0) return f;
    if (work.degree() == 1 || work.degree() == 2) {
        f.factors.push_back({work, 1});
        return f;
    }
    // Try splitting a repeated irreducible quadratic: work = q^k.
    if (work.degree() % 2 == 0) {
        Poly g = poly_gcd(work, work.derivative());
        if (!g.is_zero() && g.degree() > 0) {
            // squarefree part
            Poly sf = poly_divmod(work, g).quot;
            if (sf.degree() == 2) {
                Poly acc = work;
                int mult = 0;
                while (acc.degree() > 0) {
                    auto d = poly_divmod(acc, sf);
                    require(d.rem.is_zero(), "poly_factor: unsupported irreducible factor of degree >= 3");
                    acc = d.quot;
                    ++mult;
                }
                f.factors.push_back({sf.scaled(1 / sf.lead()), mult});
                return f;
            }
        }
    }
    fail("poly_factor: unsupported irreducible factor of degree >= 3 (no rational roots)");
}

}  // namespace corr
