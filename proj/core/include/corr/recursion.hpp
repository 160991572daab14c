#pragma once

#include "corr/split.hpp"
#include "corr/wseries.hpp"

namespace corr {

// One application of the main relation at (g, m, n): assembles the shared
// right-hand side in the active variable z_{m+1}, splits its poles, and
// returns the two correlators it determines.
struct StepResult {
    GS h_plus;   // H^{(g)}_{m+1,n}, body over m+n+1 slots (active = slot m)
    GS h_minus;  // H^{(g)}_{m,n+1}
    GS rhs;      // the assembled right-hand side (work context)
};

// x_route = true assembles with W^Y and X-operators (splitting in the
// X-chart variable); false uses the mirrored Y-form. Both determine the
// same pair of correlators.
StepResult recursion_step(const Curve& curve, const CorrelatorTable& table, int g, int m, int n,
                          bool x_route = true);

struct ComputeOptions {
    int g_max = 0;
    int size_max = 2;
    bool cross_check_forms = false;  // re-derive every step from the mirrored form
    bool check_redundant = false;    // verify keys reachable from two steps agree
};

CorrelatorTable compute_table(const Curve& curve, const ComputeOptions& opt);

// Structural checks applied to every stored body (throw on violation):
// block symmetry, chart vanishing, cross-diagonal-only poles.
void verify_body_invariants(const Curve& curve, const CKey& key, const GS& body);

}  // namespace corr
