#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "corr/laurent.hpp"
#include "corr/poly.hpp"

namespace corr {

// Which side of the unit circle the roots of a denominator factor lie on.
// "inside" pairs with the X-chart at z=0, "outside" with the Y-chart at
// z=infinity.
enum class Side { inside, outside, boundary, mixed };

// A registered irreducible denominator factor f(zeta): monic, degree 1 or 2,
// nonzero constant term (powers of z live in the Laurent numerator).
struct FactorInfo {
    Poly f;
    Side side = Side::boundary;
    std::optional<Rat> root;  // degree-1 factors only
};

struct FactorTable {
    std::vector<FactorInfo> infos;

    // Registers a monic irreducible factor, deduplicating; returns its id.
    int add(const Poly& monic);
    const FactorInfo& info(int id) const { return infos.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(infos.size()); }

  private:
    std::mutex mu_;
};

using FactorTablePtr = std::shared_ptr<FactorTable>;

// Denominator factor instance: a registered univariate factor evaluated at
// one variable, or a difference of two variables (z_hi - z_lo, hi > lo).
struct FactorKey {
    enum Kind { curve = 0, diag = 1 };
    int kind;
    int a;  // curve: factor id;   diag: hi variable
    int b;  // curve: variable id; diag: lo variable

    friend auto operator<=>(const FactorKey&, const FactorKey&) = default;
};

// Rational function with a Laurent-polynomial numerator and a denominator
// kept as a multiset of registered factors. Addition, multiplication and
// differentiation stay in the class; inversion factors the numerator and
// throws if it meets an irreducible piece it cannot place.
struct RatFun {
    int nvars = 0;
    Laurent num;
    std::map<FactorKey, int> den;
    FactorTablePtr table;

    RatFun() = default;
    RatFun(int nv, FactorTablePtr t) : nvars(nv), num(nv), table(std::move(t)) {}
    RatFun(Laurent n, FactorTablePtr t) : nvars(n.nvars), num(std::move(n)), table(std::move(t)) {}

    static RatFun constant(int nv, const Rat& a, const FactorTablePtr& t);

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return den.empty() && num.is_constant(); }
    Rat constant_value() const;

    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    RatFun operator-() const;

    RatFun scaled(const Rat& k) const;
    RatFun derivative(int var) const;
    RatFun inverse() const;
    friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

    // Exact equality (reduces the difference).
    friend bool operator==(const RatFun& a, const RatFun& b) { return (a - b).is_zero(); }

    // Cancels denominator factors against the numerator where possible.
    void reduce();

    // Substitute z_var := z_other; denominator factors follow. Throws if a
    // diagonal factor (var, other) would vanish.
    RatFun subst_var(int var, int other) const;

    // Substitute z_var := rational value; factor evaluations must be
    // nonzero except diagonals, which turn into registered linear factors
    // in the partner variable.
    RatFun subst_value(int var, const Rat& value) const;

    RatFun rename(const std::vector<int>& perm, int nv_new) const;

    bool depends_on(int var) const;

    // The denominator expanded as a Laurent polynomial.
    Laurent den_expanded() const;
};

// Laurent polynomial of a registered factor instance.
Laurent factor_laurent(const FactorKey& k, const FactorTable& table, int nvars);

// Classifies a monic irreducible polynomial's roots against the unit circle.
Side classify_roots(const Poly& monic);

// Factors an arbitrary univariate-in-var Laurent into
// unit * z_var^k * prod(registered factors); throws on unsupported content.
struct NumFactorization {
    Rat unit;
    std::map<FactorKey, int> factors;
    ExpVec monomial;  // per-variable exponents
};
NumFactorization factor_numerator(const Laurent& num, const FactorTablePtr& table);

}  // namespace corr
