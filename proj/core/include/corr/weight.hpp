#pragma once

#include <optional>
#include <vector>

#include "corr/poly.hpp"
#include "corr/sseries.hpp"

namespace corr {

// Truncated power series in theta over Rat; coefficients valid through
// theta^order. The formal-mode theta-function ring.
struct ThetaSeries {
    std::vector<Rat> c;
    int order = -1;

    ThetaSeries() = default;
    ThetaSeries(std::vector<Rat> cc, int ord) : c(std::move(cc)), order(ord) {
        c.resize(static_cast<size_t>(order) + 1, Rat(0));
    }
    static ThetaSeries zero(int ord) { return ThetaSeries({}, ord); }
    static ThetaSeries constant(const Rat& a, int ord) { return ThetaSeries({a}, ord); }
    static ThetaSeries theta(int ord) { return ThetaSeries({Rat(0), Rat(1)}, ord); }

    bool is_zero() const;
    ThetaSeries add(const ThetaSeries& o) const;
    ThetaSeries mul(const ThetaSeries& o) const;
    ThetaSeries scaled(const Rat& k) const;
    ThetaSeries dtheta() const;
    ThetaSeries integrate() const;  // antiderivative, constant 0
};

// Rational-mode theta functions: num(theta) / (Rnum^a * Rden^b), where
// phi = (Rnum/Rden) e^P is the projection-family weight. Closed under
// ring operations and d/dtheta.
struct ThetaRat {
    Poly num;
    int a = 0, b = 0;

    ThetaRat() = default;
    explicit ThetaRat(Poly n) : num(std::move(n)) {}

    bool is_zero() const { return num.is_zero(); }
};

// Weight data phi(theta) = e^{psi(theta)}, with the hbar-deformation
// psi-hat = psi + sum_i psi_i hbar^{2i}. When the (R, P) presentation is
// given, psi-hat = log R + S(hbar d/dtheta) P, so psi_i = beta_i P^(2i).
struct WeightData {
    std::vector<Rat> phi;  // series coefficients, phi[0] = 1
    std::vector<Rat> psi;  // log phi series

    bool has_rp = false;
    Poly r_num, r_den;  // R = r_num / r_den, rational in theta
    Poly p_poly;        // P polynomial
    bool generality = false;

    // Explicit psi_i series for i >= 1 (formal-mode override); when absent
    // and (R,P) is present they are derived from P.
    std::vector<std::vector<Rat>> psi_deformation;

    int max_theta_order = 0;

    // --- constructors ---
    static WeightData from_phi_poly(const std::vector<Rat>& phi_coeffs, int theta_order);
    static WeightData from_rp(const Poly& Rn, const Poly& Rd, const Poly& P, bool generality,
                              int theta_order);

    // --- formal-mode ring data ---
    ThetaSeries psi_series(int order) const;        // psi
    ThetaSeries psi_prime_series(int order) const;  // psi'
    // psi_i as a series (i >= 1); zero when undeformed.
    ThetaSeries psi_i_series(int i, int order) const;
    std::vector<Rat> phi_series(int order) const;

    // --- rational-mode ring data ---
    ThetaRat psi_prime_rat() const;     // (Rn' Rd - Rn Rd')/(Rn Rd) + P'
    ThetaRat psi_i_rat(int i) const;    // beta_i P^(2i), i >= 1
    ThetaRat theta_rat() const { return ThetaRat(Poly::x()); }

    ThetaRat tr_add(const ThetaRat& x, const ThetaRat& y) const;
    ThetaRat tr_mul(const ThetaRat& x, const ThetaRat& y) const;
    ThetaRat tr_scaled(const ThetaRat& x, const Rat& k) const;
    ThetaRat tr_dtheta(const ThetaRat& x) const;

    bool rp_general_position() const;  // zeros/poles of R and zeros of P simple
};

// log of a power series with constant term 1, to the given order.
std::vector<Rat> series_log(const std::vector<Rat>& c, int order);
// exp of a power series with constant term 0.
std::vector<Rat> series_exp(const std::vector<Rat>& c, int order);

}  // namespace corr
