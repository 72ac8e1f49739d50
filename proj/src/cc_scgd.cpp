#include "cosco/cc_scgd.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cosco/diagnostics.hpp"

namespace cosco {

Vec build_H(const Vec& g1_value, const Mat& g1_grad, const Vec& z, const Vec& g2_value) {
    check_dim(g1_grad.rows, z.size(), "build_H");
    check_dim(g2_value.size(), z.size(), "build_H");
    check_dim(g1_grad.cols, g1_value.size(), "build_H");
    Vec diff(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) diff[i] = g2_value[i] - z[i];
    const Vec corr = matvec_t(g1_grad, diff);
    Vec out(g1_value.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = g1_value[j] + corr[j];
    return out;
}

Mat composite_cons_grad_est(const Mat& g2_subgrad, const Mat& g1_grad) {
    return matmul(g2_subgrad, g1_grad);
}

namespace {

bool is_checkpoint(std::size_t t, std::size_t n) {
    return t == n || (t & (t - 1)) == 0;
}

void record_metrics(const CompositionalOracle& oracle, const Vec& x_bar,
                    const std::optional<double>& f_star, std::optional<double>& gap,
                    std::optional<double>& resid) {
    if (f_star) {
        if (auto f = oracle.exact_objective(x_bar)) gap = *f - *f_star;
    }
    if (auto g = oracle.exact_constraint(x_bar)) resid = feasibility_residual(*g);
}

}  // namespace

RunRecord run_cc_scgd(CompositionalOracle& oracle, const FeasibleSet& set,
                      const StepSchedule& schedule, const Vec& x0, const Vec& lambda0,
                      std::uint64_t seed, const RunOptions& opts) {
    schedule.validate();
    if (!schedule.rho) throw std::invalid_argument("run_cc_scgd: schedule needs rho_t");
    const ProblemDims dims = oracle.dims();
    dims.validate(false);
    check_dim(x0.size(), dims.d_x, "run_cc_scgd x0");
    check_dim(lambda0.size(), dims.m, "run_cc_scgd lambda0");
    if (!set.contains(x0, 1e-9))
        throw std::invalid_argument("run_cc_scgd: x0 is not in the feasible set");
    for (double l : lambda0)
        if (l < 0.0) throw std::invalid_argument("run_cc_scgd: lambda0 must be >= 0");

    oracle.reseed(seed);
    const auto t_start = std::chrono::steady_clock::now();
    const std::size_t n = schedule.horizon;

    SolverState state;
    state.x = x0;
    state.y = Vec(dims.d_y, 0.0);
    state.z = Vec(dims.d_z, 0.0);
    state.lambda = lambda0;
    state.x_sum = Vec(dims.d_x, 0.0);

    RunRecord rec;
    rec.algorithm = "cc";
    rec.n = n;
    rec.seed = seed;

    double dual_max = norm2(state.lambda);
    for (std::size_t t = 0; t < n; ++t) {
        const VecSample f2_sub = oracle.sample_f2(state.x);    // xi^0: subgradient
        const VecSample f2_val = oracle.sample_f2(state.x);    // xi^1: value
        const VecSample g2_val = oracle.sample_g2(state.x);    // zeta2^1: value for z
        const VecSample g2_sub = oracle.sample_g2(state.x);    // zeta2^0: subgradient
        state.y = update_inner_tracker(state.y, f2_val.value, schedule.tau(t));
        *state.z = update_inner_tracker(*state.z, g2_val.value, schedule.rho(t));
        const ScalarSample f1 = oracle.sample_f1(state.y);
        const VecSample g1_primal = oracle.sample_g1(*state.z);  // zeta1^0: gradient
        const Vec x_prev = state.x;
        state.x = primal_step(x_prev, composite_grad_est(f2_sub.subgrad, f1.grad),
                              composite_cons_grad_est(g2_sub.subgrad, g1_primal.subgrad),
                              state.lambda, schedule.eta(t), set);
        const VecSample g1_dual = oracle.sample_g1(*state.z);    // zeta1^1: value+gradient
        const VecSample g2_h = oracle.sample_g2(x_prev);         // zeta2^2: value, at x_t
        const Vec h = build_H(g1_dual.value, g1_dual.subgrad, *state.z, g2_h.value);
        state.lambda = dual_step(state.lambda, h, schedule.alpha(t));
        state.t = t + 1;
        update_average(state, state.x);

        const double dn = norm2(state.lambda);
        dual_max = std::max(dual_max, dn);
        if (opts.record_dual_trace) rec.dual_norm_trace.emplace_back(state.t, dn);
        if (opts.record_metric_trace && is_checkpoint(state.t, n)) {
            Vec x_bar(dims.d_x);
            for (std::size_t i = 0; i < dims.d_x; ++i)
                x_bar[i] = state.x_sum[i] / static_cast<double>(state.t);
            MetricPoint mp{state.t, std::nullopt, std::nullopt};
            record_metrics(oracle, x_bar, opts.f_star, mp.gap, mp.resid);
            rec.metric_trace.push_back(mp);
        }
    }

    rec.x_bar = Vec(dims.d_x);
    for (std::size_t i = 0; i < dims.d_x; ++i)
        rec.x_bar[i] = state.x_sum[i] / static_cast<double>(n);
    record_metrics(oracle, rec.x_bar, opts.f_star, rec.obj_gap, rec.feas_resid);
    rec.dual_norm_max = dual_max;
    rec.dual_norm_final = norm2(state.lambda);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

}  // namespace cosco
