#pragma once
// Expected value constrained stochastic compositional gradient descent:
// single-level expectation constraints, primal-dual updates, averaged output.

#include <cstdint>
#include <optional>

#include "cosco/core.hpp"
#include "cosco/oracle.hpp"
#include "cosco/projection.hpp"

namespace cosco {

// y_{t+1} = (sample + tau*y) / (1 + tau).
Vec update_inner_tracker(const Vec& y, const Vec& sample, double tau);

// Chain-rule product: f2_subgrad (d_x x d_y) times f1_grad (d_y).
Vec composite_grad_est(const Mat& f2_subgrad, const Vec& f1_grad);

// Proj_X[ x - (obj_grad + cons_subgrad * lambda) / eta ].
Vec primal_step(const Vec& x, const Vec& obj_grad_est, const Mat& cons_subgrad_est,
                const Vec& lambda, double eta, const FeasibleSet& set);

// lambda_{t+1} = [lambda + g_sample / alpha]_+.
Vec dual_step(const Vec& lambda, const Vec& g_sample, double alpha);

struct RunOptions {
    std::optional<double> f_star;       // enables obj_gap reporting
    bool record_metric_trace = false;   // checkpoints at powers of two
    bool record_dual_trace = false;     // (t, ||lambda_t||) every iteration
};

RunRecord run_ec_scgd(SingleLevelOracle& oracle, const FeasibleSet& set,
                      const StepSchedule& schedule, const Vec& x0, const Vec& lambda0,
                      std::uint64_t seed, const RunOptions& opts = {});

}  // namespace cosco
