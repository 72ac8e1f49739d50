#pragma once
// Shared domain types for both solvers and the harness: problem dimensions,
// step-size schedules, solver state, documented assumption constants, and
// the per-run result record.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosco/linalg.hpp"

namespace cosco {

struct ProblemDims {
    std::size_t d_x = 0;  // decision dimension
    std::size_t d_y = 0;  // range of the inner objective level
    std::size_t d_z = 0;  // range of the inner constraint level; 0 for single-level
    std::size_t m = 0;    // number of constraints

    void validate(bool single_level) const {
        if (d_x < 1 || d_y < 1 || m < 1)
            throw std::invalid_argument("ProblemDims: d_x, d_y, m must be >= 1");
        if (single_level && d_z != 0)
            throw std::invalid_argument("ProblemDims: d_z must be 0 for single-level problems");
        if (!single_level && d_z < 1)
            throw std::invalid_argument("ProblemDims: d_z must be >= 1 for compositional problems");
    }
};

// Step-size sequences tau_t, rho_t (inner trackers), eta_t (primal), alpha_t (dual).
struct StepSchedule {
    std::size_t horizon = 0;
    std::function<double(std::size_t)> tau;
    std::function<double(std::size_t)> rho;    // unused by the single-level solver
    std::function<double(std::size_t)> eta;
    std::function<double(std::size_t)> alpha;

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("StepSchedule: horizon must be >= 1");
        if (!tau || !eta || !alpha) throw std::invalid_argument("StepSchedule: missing sequence");
        for (std::size_t t = 0; t < horizon; ++t) {
            if (!(eta(t) > 0.0)) throw std::invalid_argument("StepSchedule: eta_t must be > 0");
            if (!(alpha(t) > 0.0)) throw std::invalid_argument("StepSchedule: alpha_t must be > 0");
            if (tau(t) < 0.0) throw std::invalid_argument("StepSchedule: tau_t must be >= 0");
            if (rho && rho(t) < 0.0) throw std::invalid_argument("StepSchedule: rho_t must be >= 0");
        }
    }
};

// tau_t = t/2, alpha = 2*sqrt(N), eta = 15*sqrt(N)/2.
StepSchedule default_schedule_ec(std::size_t n);

// tau_t = rho_t = t/2, alpha = 2*sqrt(N), eta = 5*sqrt(N)/2.
StepSchedule default_schedule_cc(std::size_t n);

struct SolverState {
    std::size_t t = 0;
    Vec x;                    // primal iterate, inside the feasible set
    Vec y;                    // inner objective tracker
    std::optional<Vec> z;     // inner constraint tracker (compositional only)
    Vec lambda;               // dual vector, componentwise >= 0
    Vec x_sum;                // running sum of emitted iterates x_1..x_t
};

// Accumulate x_new into the running average sum.
void update_average(SolverState& state, const Vec& x_new);

// Optional documented assumption constants for a built-in problem. Purely
// informational; no constant gates execution.
struct ProblemConstants {
    std::optional<double> C_f1, C_f2, sigma_f1, sigma_f2, L_f1;
    std::optional<double> C_g, sigma_g;
    std::optional<double> C_g1, C_g2, sigma_g1, sigma_g2, L_g1, sigma_H;
    std::optional<double> D_X;
};

struct MetricPoint {
    std::size_t t = 0;
    std::optional<double> gap;
    std::optional<double> resid;
};

struct RunRecord {
    std::string algorithm;  // "ec" or "cc"
    std::string problem;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    Vec x_bar;
    std::optional<double> obj_gap;     // F(x_bar) - F(x*), when ground truth known
    std::optional<double> feas_resid;  // ||g(x_bar)_+||_2, when exact constraint known
    double dual_norm_max = 0.0;
    double dual_norm_final = 0.0;
    double wall_ms = 0.0;
    std::vector<MetricPoint> metric_trace;
    std::vector<std::pair<std::size_t, double>> dual_norm_trace;  // (t, ||lambda_t||)
};

}  // namespace cosco
