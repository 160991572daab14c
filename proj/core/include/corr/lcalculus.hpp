#pragma once

#include <array>
#include <map>

#include "corr/curve.hpp"
#include "corr/seeds.hpp"

namespace corr {

// The operator family L_r(v, theta) defined by
//   L_r = (d_theta + v psi'(theta))^r exp(E),
//   E   = v ( S(v hbar d)/S(hbar d) psihat - psi )(theta),
// and its w-extension with exp(E + w theta). The coefficient of any fixed
// power of hbar^2 is polynomial in v. The tables are computed generically
// over a theta-function ring and substituted at theta = Theta(z).

template <class Elem>
struct ThetaOps {
    std::function<Elem(const Elem&, const Elem&)> add, mul;
    std::function<Elem(const Elem&, const Rat&)> scale;
    std::function<Elem(const Elem&)> dtheta;
    std::function<bool(const Elem&)> is_zero;
    Elem zero, one, theta;
    Elem psi_prime;
    std::function<Elem(int)> psi_i;  // deformation coefficients, i >= 1
};

// Index (j, k, b): v^j hbar^{2k} w^b.
template <class Elem>
using LMap = std::map<std::array<int, 3>, Elem>;

// result[r], r = 0..rmax; terms with j > jmax, k > kmax, b > wmax dropped
// (pass wmax = 0 for the plain family).
template <class Elem>
std::vector<LMap<Elem>> l_tables(const ThetaOps<Elem>& ops, int rmax, int jmax, int kmax,
                                 int wmax);

// Substituted tables on a curve: L(r, j) as a graded series at the given
// variable slot (hbar carried in the series; w carried when the working
// context declares it).
struct LOperator {
    std::map<std::pair<int, int>, GS> lrj;
    int rmax = 0, jmax = 0;

    const GS* find(int r, int j) const {
        auto it = lrj.find({r, j});
        return it == lrj.end() ? nullptr : &it->second;
    }
};
LOperator build_l_operator(const Curve& curve, const Ctx& work, int var, int nz, int rmax,
                           int jmax, bool with_w);

// [hbar^{2g}] of int (1/S(hbar d) psihat - psi) dtheta at theta = Theta,
// summed over genera as an hbar-graded series at the given slot.
GS delta_integral_term(const Curve& curve, const Ctx& work, int var, int nz);

// Theta-ring adapters.
ThetaOps<ThetaSeries> theta_series_ops(const WeightData& w, int order, int gmax);
ThetaOps<ThetaRat> theta_rat_ops(const WeightData& w);

}  // namespace corr
