#pragma once

#include <optional>
#include <string>

#include "corr/local_series.hpp"
#include "corr/series.hpp"
#include "corr/weight.hpp"

namespace corr {

enum class CurveMode { formal, rational };

// Where the z-rescaling freedom is spent when solving the formal curve:
// the constant term of log phi(Theta) goes entirely to the A-part (X side)
// or to the B-part, which makes [z^1] X = 1 exactly.
enum class CurveNormalization { constant_to_A, x_unit_leading };

struct CriticalPoint {
    bool x_side = true;
    bool rational = true;
    Rat p;           // rational location
    QuadExt p_quad;  // surd location when !rational
    // Deck series sigma - p in the local parameter zeta = z - p:
    // sigma(p + zeta) = p + deck(zeta), deck = -zeta + O(zeta^2).
    LSeries<Rat> deck;
    LSeries<QuadExt> deck_quad;
};

// The spectral curve (X, Y, Theta) with its derived operator data, shared
// by the formal and rational modes. All function-valued members are graded
// series in one z-variable (slot 0); in rational mode the grading is
// trivial and each object has a single term.
struct Curve {
    CurveMode mode = CurveMode::formal;
    Ctx ctx;  // t/s grading, hbar_max = 0, no u/w
    FactorTablePtr table;
    WeightData weight;

    GS X, Y, Theta;
    GS xop;          // X/X': X d/dX = xop * d/dz
    GS yop;          // Y/Y'
    GS dlogY_dlogX;  // (X/dX)(dY/Y)
    GS dlogX_dlogY;
    GS xd_theta;     // X dTheta/dX
    GS yd_theta;
    GS gamma1;  // [z^1] X
    GS gamma2;  // [z^-1] Y

    // Rational mode only.
    std::vector<Rat> t_vals, s_vals;
    RatFun r_num_theta_inv, r_den_theta_inv;  // 1/Rnum(Theta), 1/Rden(Theta)

    int n_t() const { return ctx->n_t; }
    int n_s() const { return ctx->n_s; }

    RatFun zero_coeff() const { return RatFun(1, table); }
    RatFun one_coeff() const { return RatFun::constant(1, Rat(1), table); }
};

// Solves the formal curve grade by grade in the weighted (t,s)-degree:
// Theta's coefficients from the residue conditions t_k = Res Theta X^{k-1} dX,
// s_k = -Res Theta Y^{k-1} dY, t_0 = 0, with X = z e^{-A}, Y = z^{-1} e^{-B}
// and A + B = log phi(Theta).
Curve solve_formal_curve(const WeightData& weight, int n_t, int n_s, int ts_degree,
                         CurveNormalization norm = CurveNormalization::constant_to_A);

// Validates and packages user-supplied rational curve data.
Curve load_rational_curve(const RatFun& X, const RatFun& Y, const RatFun& Theta,
                          const WeightData& weight, const std::vector<Rat>& t_vals,
                          const std::vector<Rat>& s_vals);

// Presets.
Curve trivial_curve_rational(const WeightData& weight);
Curve quadratic_example_curve(const Rat& t, const Rat& s, const Rat& c);
Curve bicolored11_curve(const Rat& t, const Rat& s);
Curve maps_curve_rational(const Rat& t1);

// Zeros of dX/X (x_side) or dY/Y with deck transformations to the given
// local order.
std::vector<CriticalPoint> critical_points_and_deck(const Curve& curve, bool x_side, int order);

// Newton iteration for the deck series of F = X - X(p) (valuation 2 at the
// simple critical point); returns sigma-offset with lead -zeta.
template <class K>
LSeries<K> deck_newton(const LSeries<K>& F, const K& one, int order);

// --- helpers shared by the engine -----------------------------------------

// Per-grade coefficient of z^{-1} (coefficients must be pure Laurent in var).
GS gs_formal_residue(const GS& f, int var);

// Embeds a single-z curve object into a working context with nz variable
// slots, placing the curve variable at `var`.
GS instantiate(const GS& f, int var, int nz, const Ctx& work, const FactorTablePtr& table);

// Rescale z -> lambda z (lambda a z-independent graded unit).
Curve rescale_curve(const Curve& c, const GS& lambda);

// Exact t_k / s_k read off a curve by residues (works in both modes).
GS residue_t_parameter(const Curve& c, int k);
GS residue_s_parameter(const Curve& c, int k);

}  // namespace corr
