#include "corr/sseries.hpp"

namespace corr {

std::vector<Rat> s_series(int order) {
    require(order >= 0, "s_series: negative order");
    std::vector<Rat> c(static_cast<size_t>(order) + 1, Rat(0));
    for (int j = 0; 2 * j <= order; ++j) {
        Rat denom = rat_pow(Rat(4), j) * factorial(static_cast<unsigned long>(2 * j + 1));
        c[static_cast<size_t>(2 * j)] = 1 / denom;
    }
    return c;
}

std::vector<Rat> series_reciprocal(const std::vector<Rat>& c, int order) {
    require(!c.empty() && !is_zero(c[0]), "series_reciprocal: zero constant term");
    std::vector<Rat> r(static_cast<size_t>(order) + 1, Rat(0));
    r[0] = 1 / c[0];
    for (int n = 1; n <= order; ++n) {
        Rat acc(0);
        for (int k = 1; k <= n; ++k) {
            Rat ck = (k < static_cast<int>(c.size())) ? c[static_cast<size_t>(k)] : Rat(0);
            if (!is_zero(ck)) acc += ck * r[static_cast<size_t>(n - k)];
        }
        r[static_cast<size_t>(n)] = -acc * r[0];
    }
    return r;
}

std::vector<Rat> s_series_inverse(int order) {
    return series_reciprocal(s_series(order), order);
}

std::vector<Poly> s_ratio_polys(int kmax) {
    // S(vx)/S(x) = (sum_j v^{2j} x^{2j} / (4^j (2j+1)!)) * (1/S)(x)
    std::vector<Rat> sinv = s_series_inverse(2 * kmax);
    std::vector<Poly> out(static_cast<size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
        Poly gk;  // polynomial in v
        for (int j = 0; j <= k; ++j) {
            // v^{2j} x^{2j} coefficient times [x^{2(k-j)}] of 1/S
            Rat aj = 1 / (rat_pow(Rat(4), j) * factorial(static_cast<unsigned long>(2 * j + 1)));
            Rat b = sinv[static_cast<size_t>(2 * (k - j))];
            Rat coeff = aj * b;
            if (!is_zero(coeff)) gk += Poly::monomial(coeff, 2 * j);
        }
        out[static_cast<size_t>(k)] = gk;
    }
    return out;
}

}  // namespace corr
