#pragma once

#include <vector>

#include "corr/rat.hpp"

namespace corr {

// Dense univariate polynomial over Rat, coefficient of x^i at c[i].
// Normalized: no trailing zero coefficients (zero polynomial has empty c).
struct Poly {
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(Rat a) {
        if (!corr::is_zero(a)) c.push_back(std::move(a));
    }
    static Poly monomial(const Rat& a, int deg);
    static Poly x() { return monomial(Rat(1), 1); }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Rat& lead() const { return c.back(); }
    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : Rat(0);
    }
    void trim();

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    Poly scaled(const Rat& k) const;
    Poly derivative() const;
    Rat eval(const Rat& x) const;
    Poly compose(const Poly& inner) const;
};

// Quotient and remainder of a by b (b nonzero), exact rational arithmetic.
struct PolyDiv {
    Poly quot, rem;
};
PolyDiv poly_divmod(const Poly& a, const Poly& b);

Poly poly_gcd(Poly a, Poly b);  // monic gcd

// One irreducible-over-Q factor of a squarefree-ish factorization attempt.
// The library only ever needs linear and quadratic factors; anything of
// degree >= 3 without rational roots is reported as unsupported.
struct PolyFactor {
    Poly factor;  // monic irreducible
    int multiplicity;
};

// Factors p as lead * prod(factor_i^mult_i). Extracts all rational roots;
// a remaining quadratic is kept as an irreducible factor. Throws Error if
// an irrational remainder of degree >= 3 survives.
struct PolyFactorization {
    Rat lead;
    std::vector<PolyFactor> factors;
};
PolyFactorization poly_factor(const Poly& p);

// All rational roots with multiplicity, leaving the rootless cofactor.
std::vector<std::pair<Rat, int>> poly_rational_roots(Poly& p);

}  // namespace corr
