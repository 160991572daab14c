#pragma once

#include <map>
#include <vector>

#include "corr/poly.hpp"
#include "corr/rat.hpp"

namespace corr {

// Exponent vector over a fixed slate of variables z_0..z_{n-1};
// entries may be negative (Laurent).
using ExpVec = std::vector<int>;

// Multivariate Laurent polynomial with exact rational coefficients.
// Terms are kept in a map for canonical ordering; no zero coefficients
// are stored.
struct Laurent {
    int nvars = 0;
    std::map<ExpVec, Rat> terms;

    Laurent() = default;
    explicit Laurent(int nv) : nvars(nv) {}

    static Laurent constant(int nv, const Rat& a);
    static Laurent monomial(int nv, int var, int exp, const Rat& a = Rat(1));

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()

    void add_term(const ExpVec& e, const Rat& a);

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent operator-() const;
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }

    Laurent scaled(const Rat& k) const;
    Laurent mul_monomial(int var, int exp, const Rat& k = Rat(1)) const;
    Laurent derivative(int var) const;

    int min_exp(int var) const;  // 0 for zero polynomial
    int max_exp(int var) const;
    bool depends_on(int var) const;

    // Substitute z_var := value (a rational constant). Negative exponents
    // require value != 0.
    Laurent subst_value(int var, const Rat& value) const;

    // Substitute z_var := z_other (merging two variables).
    Laurent subst_var(int var, int other) const;

    // Apply a permutation/relabeling: new exponent of perm[v] is old of v.
    // perm.size() == nvars; target variable count nv_new.
    Laurent rename(const std::vector<int>& perm, int nv_new) const;

    // Coefficient of z_var^k as a Laurent in the remaining variables
    // (the slot for var stays but is unused / exponent 0).
    Laurent coeff_of(int var, int k) const;
};

// Exact division of `a` by the univariate polynomial f(z_var); f must have
// a nonzero constant term or the Laurent shift handles powers of z.
// Returns true on success (remainder zero) and sets *quot.
bool laurent_div_poly(const Laurent& a, const Poly& f, int var, Laurent* quot);

// Exact division by (z_a - z_b), a != b. True on success.
bool laurent_div_diag(const Laurent& x, int va, int vb, Laurent* quot);

// Evaluate all variables at rational points (negative exponents need
// nonzero points).
Rat laurent_eval(const Laurent& a, const std::vector<Rat>& pt);

std::string laurent_str(const Laurent& a, const std::vector<std::string>& names);

}  // namespace corr
