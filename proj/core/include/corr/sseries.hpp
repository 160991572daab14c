#pragma once

#include <vector>

#include "corr/poly.hpp"

namespace corr {

// Coefficients of S(u) = (e^{u/2} - e^{-u/2})/u = sum_j u^{2j}/(4^j (2j+1)!),
// returned as the dense coefficient list of u^0..u^order (odd entries zero).
std::vector<Rat> s_series(int order);

// Coefficients of 1/S(u) up to u^order.
std::vector<Rat> s_series_inverse(int order);

// gamma_k(v) = [x^{2k}] S(vx)/S(x), a polynomial in v of degree 2k, for
// k = 0..kmax. gamma_0 = 1, gamma_1 = (v^2-1)/24.
std::vector<Poly> s_ratio_polys(int kmax);

// Truncated reciprocal of a power series (c[0] != 0).
std::vector<Rat> series_reciprocal(const std::vector<Rat>& c, int order);

}  // namespace corr
