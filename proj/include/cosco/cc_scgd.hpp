#pragma once
// Compositional-constrained stochastic compositional gradient descent:
// two-level constraints tracked by z, dual ascent on the linearized
// constraint estimator H.

#include <cstdint>

#include "cosco/ec_scgd.hpp"

namespace cosco {

// H = g1_value + g1_grad^T (g2_value - z); g1_grad maps d_z to m.
Vec build_H(const Vec& g1_value, const Mat& g1_grad, const Vec& z, const Vec& g2_value);

// g2_subgrad (d_x x d_z) times g1_grad (d_z x m).
Mat composite_cons_grad_est(const Mat& g2_subgrad, const Mat& g1_grad);

RunRecord run_cc_scgd(CompositionalOracle& oracle, const FeasibleSet& set,
                      const StepSchedule& schedule, const Vec& x0, const Vec& lambda0,
                      std::uint64_t seed, const RunOptions& opts = {});

}  // namespace cosco
