#pragma once

#include "corr/ratfun.hpp"

namespace corr {

// F = plus + minus + constant_part, exactly, as functions of the active
// variable. `plus` keeps the poles outside the unit disk (curve poles with
// |a| > 1 and diagonals at outside-classified variables) plus the
// polynomial growth at infinity, normalized to vanish at z = 0. `minus`
// keeps the inside poles and the pole at z = 0 and vanishes at infinity.
struct SplitResult {
    RatFun plus, minus, constant_part;
};

// var_side[v] classifies diagonal poles at spectator variables (inside =
// X-chart variable, outside = Y-chart variable). Throws on boundary or
// mixed classifications and on surviving quadratic denominator factors in
// the active variable.
SplitResult split_poles(const RatFun& F, int active, const std::vector<Side>& var_side);

}  // namespace corr
