#pragma once

#include "corr/lcalculus.hpp"
#include "corr/seeds.hpp"

namespace corr {

struct CKey {
    int g = 0, m = 0, n = 0;
    friend auto operator<=>(const CKey&, const CKey&) = default;
};

inline int stability_level(const CKey& k) { return 2 * k.g - 2 + k.m + k.n; }
inline bool is_stable(const CKey& k) { return stability_level(k) > 0; }

// Computed correlators H^{(g)}_{m,n}. Bodies live in the curve's context
// (trivial hbar grade) over m+n variable slots: X-block 0..m-1,
// Y-block m..m+n-1.
struct CorrelatorTable {
    Ctx base;
    FactorTablePtr factor_table;
    std::map<CKey, GS> entries;

    bool has(const CKey& k) const { return entries.count(k) != 0; }
    const GS& at(const CKey& k) const;
    void put(const CKey& k, GS body);
};

// Variable-slot layout of one recursion step.
struct WorkLayout {
    Ctx work;
    int g = 0, m = 0, n = 0;
    int nz = 0;
    int active = 0;
    std::vector<int> xslots, yslots;
    int bar_base = 0;
    int nbars = 0;
    std::vector<Side> var_side;
};

WorkLayout make_layout(const Curve& curve, int g, int m, int n, int w_max = -1);

// Embeds a stored body into the working context; perm[i] = target slot of
// body variable i.
GS instantiate_body(const GS& body, const std::vector<int>& perm, int nz, const Ctx& work,
                    const FactorTablePtr& table);

// A(u) := u S(u hbar) e^{-u Theta} W, a u-polynomial. y_side = true builds
// W^Y_{m,n+1} (bars on the Y side), else the X-mirror W^X_{m+1,n}. The
// single black-vertex term referencing the unknown key of the current step
// is skipped; it cannot contribute at hbar^{2g} in the reduced recursion.
GS build_w_polynomial(const Curve& curve, const CorrelatorTable& table, const WorkLayout& lay,
                      bool y_side);

// [u^r] e^{-u Theta} W recovered from A.
GS w_u_coefficient(const GS& A, const Ctx& work, int r);

}  // namespace corr
