#pragma once
// Metric computation: feasibility residual, Monte Carlo objective
// estimation, log-log rate fitting, dual-trace statistics.

#include <cstdint>
#include <utility>
#include <vector>

#include "cosco/linalg.hpp"
#include "cosco/oracle.hpp"

namespace cosco {

struct MetricEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 1;
    bool exact = false;
};

// ||max(cons_value, 0)||_2.
double feasibility_residual(const Vec& cons_value);

// Plug-in two-level Monte Carlo estimate of F(x): mean of M inner f2
// samples, then f1 averaged over M outer samples at that mean. The reported
// std_error combines the outer-sample variance with a delta-method term for
// the inner mean (via the sampled f1 gradients). Biased for nonlinear f1;
// exact evaluators are preferred whenever available.
MetricEstimate estimate_objective_mc(SingleLevelOracle& oracle, const Vec& x, std::size_t m);

// OLS slope of log(value) against log(N); needs >= 3 points with positive
// values and distinct N.
double fit_loglog_slope(const std::vector<std::pair<std::size_t, double>>& points);

struct DualTraceStats {
    double max = 0.0;
    double final = 0.0;
    double tail_growth_ratio = 0.0;  // max over last quarter / max over first quarter
    bool ratio_finite = true;        // false when first-quarter max is 0 but tail is not
};

DualTraceStats dual_trace_stats(const std::vector<std::pair<std::size_t, double>>& trace);

}  // namespace cosco
