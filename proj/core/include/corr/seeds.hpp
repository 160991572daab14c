#pragma once

#include "corr/curve.hpp"

namespace corr {

// Unstable-correlator data at the derivative level, plus the diagonal
// kernels used when a recursion term restricts two marked points of the
// genus-0 two-point seed to the same spectral-curve point.

// The combined corrected black-vertex inputs (one derivative pre-applied):
//   same-block, Y side : [Y d/dY H_{0,2} + Y_ext/(Y_bar - Y_ext)] = yop(bar)/(bar - ext)
//   same-block, X side : [X d/dX H_{2,0} + X_ext/(X_bar - X_ext)] = xop(bar) ext/(bar (bar - ext))
//   cross-block, Y side: Y d/dY H_{1,1}(X_ext; Y_bar) = -yop(bar) ext/(bar (bar - ext))
//   cross-block, X side: X d/dX H_{1,1}(X_bar; Y_ext) = -xop(bar)/(bar - ext)
GS pair_seed_same_block(const Curve& c, bool y_side, int bar, int ext, int nz, const Ctx& work);
GS pair_seed_cross_block(const Curve& c, bool y_side, int bar, int ext, int nz, const Ctx& work);

// Theta-level seed: X dH^{(0)}_{1,0}/dX + sum_k t_k X^{-k} = Theta = the
// Y-mirror; instantiating Theta at the bar slot covers both.

// Diagonal mixed derivatives of the two-point seeds:
//   x_side: K(p,q) = (d_1^p d_2^q H^{(0)}_{2,0})(z,z)
//   y_side: K(p,q) = (d_1^p d_2^q H^{(0)}_{0,2})(z,z)
// for p,q >= 1, p+q <= max_total; entries are one-variable curve objects.
struct DiagKernel {
    std::map<std::pair<int, int>, GS> k;
    const GS& at(int p, int q) const;
};
DiagKernel build_diag_kernel(const Curve& c, bool x_side, int max_total);

// Formal-mode series for the unstable correlators themselves (used by the
// oracle comparison): H^{(0)}_{2,0}, H^{(0)}_{0,2} as two-variable graded
// series, and H^{(0)}_{1,1} expanded to the given z-window.
GS seed_h20_series(const Curve& c, const Ctx& work, int nz, int v1, int v2);
GS seed_h02_series(const Curve& c, const Ctx& work, int nz, int v1, int v2);
GS seed_h11_series(const Curve& c, const Ctx& work, int nz, int v1, int v2, int zwindow);

// Coefficient functions of (rop d/dz)^e = sum_{j=1..e} c_{e,j}(z) d^j/dz^j
// in the variable `var`; rop must already live in the working context at
// that variable. result[e][j], e = 0..emax (c_{0,0} = 1).
std::vector<std::vector<GS>> op_power_coeffs(const GS& rop_at_var, int var, int emax);

}  // namespace corr
