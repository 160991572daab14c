#include "corr/weight.hpp"

#include <algorithm>

namespace corr {

bool ThetaSeries::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return sgn(x) == 0; });
}

ThetaSeries ThetaSeries::add(const ThetaSeries& o) const {
    int ord = std::min(order, o.order);
    ThetaSeries r = zero(ord);
    for (int i = 0; i <= ord; ++i)
        r.c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] + o.c[static_cast<size_t>(i)];
    return r;
}

ThetaSeries ThetaSeries::mul(const ThetaSeries& o) const {
    int ord = std::min(order, o.order);
    ThetaSeries r = zero(ord);
    for (int i = 0; i <= order && i <= ord; ++i) {
        if (sgn(c[static_cast<size_t>(i)]) == 0) continue;
        for (int j = 0; i + j <= ord && j <= o.order; ++j)
            r.c[static_cast<size_t>(i + j)] += c[static_cast<size_t>(i)] * o.c[static_cast<size_t>(j)];
    }
    return r;
}

ThetaSeries ThetaSeries::scaled(const Rat& k) const {
    ThetaSeries r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

ThetaSeries ThetaSeries::dtheta() const {
    require(order >= 1, "ThetaSeries::dtheta: order exhausted");
    ThetaSeries r = zero(order - 1);
    for (int i = 1; i <= order; ++i)
        r.c[static_cast<size_t>(i - 1)] = c[static_cast<size_t>(i)] * Rat(i);
    return r;
}

ThetaSeries ThetaSeries::integrate() const {
    ThetaSeries r = zero(order + 1);
    for (int i = 0; i <= order; ++i)
        r.c[static_cast<size_t>(i + 1)] = c[static_cast<size_t>(i)] / Rat(i + 1);
    return r;
}

std::vector<Rat> series_log(const std::vector<Rat>& c, int order) {
    require(!c.empty() && c[0] == 1, "series_log: constant term must be 1");
    // log(f) via L' = f'/f: l_n = a_n - (1/n) sum_{k=1}^{n-1} k l_k a_{n-k}
    std::vector<Rat> l(static_cast<size_t>(order) + 1, Rat(0));
    auto a = [&](int i) { return i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : Rat(0); };
    for (int n = 1; n <= order; ++n) {
        Rat acc = a(n);
        for (int k = 1; k < n; ++k) acc -= Rat(k) * l[static_cast<size_t>(k)] * a(n - k) / Rat(n);
        l[static_cast<size_t>(n)] = acc;
    }
    return l;
}

std::vector<Rat> series_exp(const std::vector<Rat>& c, int order) {
    require(c.empty() || sgn(c[0]) == 0, "series_exp: constant term must be 0");
    // e_n = (1/n) sum_{k=1}^{n} k a_k e_{n-k}
    std::vector<Rat> e(static_cast<size_t>(order) + 1, Rat(0));
    e[0] = 1;
    auto a = [&](int i) { return i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : Rat(0); };
    for (int n = 1; n <= order; ++n) {
        Rat acc(0);
        for (int k = 1; k <= n; ++k) acc += Rat(k) * a(k) * e[static_cast<size_t>(n - k)];
        e[static_cast<size_t>(n)] = acc / Rat(n);
    }
    return e;
}

WeightData WeightData::from_phi_poly(const std::vector<Rat>& phi_coeffs, int theta_order) {
    require(!phi_coeffs.empty() && phi_coeffs[0] == 1, "weight: phi(0) must equal 1");
    WeightData w;
    w.max_theta_order = theta_order;
    w.phi = phi_coeffs;
    w.phi.resize(static_cast<size_t>(theta_order) + 1, Rat(0));
    w.psi = series_log(w.phi, theta_order);
    // A polynomial phi is R with P = 0.
    Poly rn;
    rn.c = phi_coeffs;
    rn.trim();
    w.has_rp = true;
    w.r_num = rn;
    w.r_den = Poly(Rat(1));
    w.p_poly = Poly();
    w.generality = w.rp_general_position();
    return w;
}

WeightData WeightData::from_rp(const Poly& Rn, const Poly& Rd, const Poly& P, bool generality,
                               int theta_order) {
    require(!Rn.is_zero() && !Rd.is_zero(), "weight: R must be nonzero");
    require(Rn.coeff(0) / Rd.coeff(0) == 1, "weight: R(0) e^{P(0)} must equal 1 with P(0)=0");
    require(is_zero(P.coeff(0)), "weight: P(0) must be 0");
    WeightData w;
    w.max_theta_order = theta_order;
    w.has_rp = true;
    w.r_num = Rn;
    w.r_den = Rd;
    w.p_poly = P;
    w.generality = generality;
    // phi = (Rn/Rd) e^P as a series.
    std::vector<Rat> rn = Rn.c, rd = Rd.c;
    rn.resize(static_cast<size_t>(theta_order) + 1, Rat(0));
    rd.resize(static_cast<size_t>(theta_order) + 1, Rat(0));
    Rat d0 = rd[0];
    for (auto& x : rn) x /= d0;
    for (auto& x : rd) x /= d0;
    auto rdinv = series_reciprocal(rd, theta_order);
    std::vector<Rat> r(static_cast<size_t>(theta_order) + 1, Rat(0));
    for (int i = 0; i <= theta_order; ++i)
        for (int j = 0; i + j <= theta_order; ++j)
            r[static_cast<size_t>(i + j)] += rn[static_cast<size_t>(i)] * rdinv[static_cast<size_t>(j)];
    std::vector<Rat> p = P.c;
    auto ep = series_exp(p, theta_order);
    std::vector<Rat> phi(static_cast<size_t>(theta_order) + 1, Rat(0));
    for (int i = 0; i <= theta_order; ++i)
        for (int j = 0; i + j <= theta_order; ++j)
            phi[static_cast<size_t>(i + j)] += r[static_cast<size_t>(i)] * ep[static_cast<size_t>(j)];
    w.phi = phi;
    w.psi = series_log(phi, theta_order);
    if (generality) require(w.rp_general_position(), "weight: generality flag set but R or P has repeated roots");
    return w;
}

ThetaSeries WeightData::psi_series(int order) const {
    require(order <= max_theta_order, "weight: theta order exceeded");
    std::vector<Rat> c(psi.begin(), psi.begin() + std::min<size_t>(psi.size(), static_cast<size_t>(order) + 1));
    return ThetaSeries(std::move(c), order);
}

ThetaSeries WeightData::psi_prime_series(int order) const {
    return psi_series(std::min(order + 1, max_theta_order)).dtheta();
}

ThetaSeries WeightData::psi_i_series(int i, int order) const {
    require(i >= 1, "psi_i_series: i must be >= 1");
    if (!psi_deformation.empty()) {
        if (static_cast<size_t>(i - 1) < psi_deformation.size()) {
            std::vector<Rat> c = psi_deformation[static_cast<size_t>(i - 1)];
            c.resize(static_cast<size_t>(order) + 1, Rat(0));
            return ThetaSeries(std::move(c), order);
        }
        return ThetaSeries::zero(order);
    }
    if (has_rp && !p_poly.is_zero()) {
        // psi_i = beta_i P^(2i), beta_i = [x^{2i}] S(x).
        Rat beta = 1 / (rat_pow(Rat(4), i) * factorial(static_cast<unsigned long>(2 * i + 1)));
        Poly d = p_poly;
        for (int k = 0; k < 2 * i; ++k) d = d.derivative();
        std::vector<Rat> c = d.scaled(beta).c;
        c.resize(static_cast<size_t>(order) + 1, Rat(0));
        return ThetaSeries(std::move(c), order);
    }
    return ThetaSeries::zero(order);
}

std::vector<Rat> WeightData::phi_series(int order) const {
    require(order <= max_theta_order, "weight: theta order exceeded");
    std::vector<Rat> c(phi.begin(), phi.begin() + static_cast<size_t>(order) + 1);
    return c;
}

ThetaRat WeightData::psi_prime_rat() const {
    require(has_rp, "psi_prime_rat: weight lacks the (R,P) presentation");
    // psi' = (Rn' Rd - Rn Rd')/(Rn Rd) + P'
    ThetaRat r;
    r.num = r_num.derivative() * r_den - r_num * r_den.derivative();
    r.a = 1;
    r.b = 1;
    // + P' on the common denominator
    r.num += p_poly.derivative() * r_num * r_den;
    return r;
}

ThetaRat WeightData::psi_i_rat(int i) const {
    require(has_rp, "psi_i_rat: weight lacks the (R,P) presentation");
    require(i >= 1, "psi_i_rat: i must be >= 1");
    Rat beta = 1 / (rat_pow(Rat(4), i) * factorial(static_cast<unsigned long>(2 * i + 1)));
    Poly d = p_poly;
    for (int k = 0; k < 2 * i; ++k) d = d.derivative();
    return ThetaRat(d.scaled(beta));
}

ThetaRat WeightData::tr_add(const ThetaRat& x, const ThetaRat& y) const {
    ThetaRat r;
    int a = std::max(x.a, y.a), b = std::max(x.b, y.b);
    Poly xn = x.num, yn = y.num;
    for (int i = x.a; i < a; ++i) xn = xn * r_num;
    for (int i = x.b; i < b; ++i) xn = xn * r_den;
    for (int i = y.a; i < a; ++i) yn = yn * r_num;
    for (int i = y.b; i < b; ++i) yn = yn * r_den;
    r.num = xn + yn;
    r.a = a;
    r.b = b;
    if (r.num.is_zero()) r.a = r.b = 0;
    return r;
}

ThetaRat WeightData::tr_mul(const ThetaRat& x, const ThetaRat& y) const {
    ThetaRat r;
    r.num = x.num * y.num;
    r.a = x.a + y.a;
    r.b = x.b + y.b;
    if (r.num.is_zero()) r.a = r.b = 0;
    return r;
}

ThetaRat WeightData::tr_scaled(const ThetaRat& x, const Rat& k) const {
    ThetaRat r = x;
    r.num = r.num.scaled(k);
    if (r.num.is_zero()) r.a = r.b = 0;
    return r;
}

ThetaRat WeightData::tr_dtheta(const ThetaRat& x) const {
    // d(num / (A^a B^b)) = (num' A B - num (a A' B + b A B')) / (A^{a+1} B^{b+1})
    ThetaRat r;
    r.num = x.num.derivative() * r_num * r_den;
    if (x.a > 0) r.num -= x.num * r_num.derivative().scaled(Rat(x.a)) * r_den;
    if (x.b > 0) r.num -= x.num * r_den.derivative().scaled(Rat(x.b)) * r_num;
    r.a = x.a + 1;
    r.b = x.b + 1;
    if (r.num.is_zero()) r.a = r.b = 0;
    return r;
}

bool WeightData::rp_general_position() const {
    if (!has_rp) return false;
    auto simple = [](const Poly& p) {
        if (p.degree() <= 0) return true;
        Poly g = poly_gcd(p, p.derivative());
        return g.degree() == 0;
    };
    return simple(r_num) && simple(r_den) && simple(p_poly);
}

}  // namespace corr
