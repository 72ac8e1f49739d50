#include "cosco/ec_scgd.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cosco/diagnostics.hpp"

namespace cosco {

Vec update_inner_tracker(const Vec& y, const Vec& sample, double tau) {
    check_dim(sample.size(), y.size(), "update_inner_tracker");
    if (tau < 0.0) throw std::invalid_argument("update_inner_tracker: tau must be >= 0");
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = (sample[i] + tau * y[i]) / (1.0 + tau);
    return out;
}

Vec composite_grad_est(const Mat& f2_subgrad, const Vec& f1_grad) {
    return matvec(f2_subgrad, f1_grad);
}

Vec primal_step(const Vec& x, const Vec& obj_grad_est, const Mat& cons_subgrad_est,
                const Vec& lambda, double eta, const FeasibleSet& set) {
    if (!(eta > 0.0)) throw std::invalid_argument("primal_step: eta must be > 0");
    const Vec cons = matvec(cons_subgrad_est, lambda);
    check_dim(obj_grad_est.size(), x.size(), "primal_step");
    Vec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = x[i] - (obj_grad_est[i] + cons[i]) / eta;
    return set.project(v);
}

Vec dual_step(const Vec& lambda, const Vec& g_sample, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("dual_step: alpha must be > 0");
    check_dim(g_sample.size(), lambda.size(), "dual_step");
    Vec v(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) v[i] = lambda[i] + g_sample[i] / alpha;
    return clip_nonneg(v);
}

namespace detail {

bool is_checkpoint(std::size_t t, std::size_t n) {
    return t == n || (t & (t - 1)) == 0;  // powers of two plus the horizon
}

void record_metrics(const SingleLevelOracle& oracle, const Vec& x_bar,
                    const std::optional<double>& f_star, std::optional<double>& gap,
                    std::optional<double>& resid) {
    if (f_star) {
        if (auto f = oracle.exact_objective(x_bar)) gap = *f - *f_star;
    }
    if (auto g = oracle.exact_constraint(x_bar)) resid = feasibility_residual(*g);
}

}  // namespace detail

RunRecord run_ec_scgd(SingleLevelOracle& oracle, const FeasibleSet& set,
                      const StepSchedule& schedule, const Vec& x0, const Vec& lambda0,
                      std::uint64_t seed, const RunOptions& opts) {
    schedule.validate();
    const ProblemDims dims = oracle.dims();
    check_dim(x0.size(), dims.d_x, "run_ec_scgd x0");
    check_dim(lambda0.size(), dims.m, "run_ec_scgd lambda0");
    if (!set.contains(x0, 1e-9))
        throw std::invalid_argument("run_ec_scgd: x0 is not in the feasible set");
    for (double l : lambda0)
        if (l < 0.0) throw std::invalid_argument("run_ec_scgd: lambda0 must be >= 0");

    oracle.reseed(seed);
    const auto t_start = std::chrono::steady_clock::now();
    const std::size_t n = schedule.horizon;

    SolverState state;
    state.x = x0;
    state.y = Vec(dims.d_y, 0.0);
    state.lambda = lambda0;
    state.x_sum = Vec(dims.d_x, 0.0);

    RunRecord rec;
    rec.algorithm = "ec";
    rec.n = n;
    rec.seed = seed;

    double dual_max = norm2(state.lambda);
    for (std::size_t t = 0; t < n; ++t) {
        const VecSample f2_sub = oracle.sample_f2(state.x);   // xi^0: subgradient
        const VecSample f2_val = oracle.sample_f2(state.x);   // xi^1: value
        state.y = update_inner_tracker(state.y, f2_val.value, schedule.tau(t));
        const ScalarSample f1 = oracle.sample_f1(state.y);
        const VecSample g_sub = oracle.sample_g(state.x);     // zeta^0: subgradient
        const Vec x_prev = state.x;
        state.x = primal_step(x_prev, composite_grad_est(f2_sub.subgrad, f1.grad),
                              g_sub.subgrad, state.lambda, schedule.eta(t), set);
        const VecSample g_val = oracle.sample_g(x_prev);      // zeta^1: value, at x_t
        state.lambda = dual_step(state.lambda, g_val.value, schedule.alpha(t));
        state.t = t + 1;
        update_average(state, state.x);

        const double dn = norm2(state.lambda);
        dual_max = std::max(dual_max, dn);
        if (opts.record_dual_trace) rec.dual_norm_trace.emplace_back(state.t, dn);
        if (opts.record_metric_trace && detail::is_checkpoint(state.t, n)) {
            Vec x_bar(dims.d_x);
            for (std::size_t i = 0; i < dims.d_x; ++i)
                x_bar[i] = state.x_sum[i] / static_cast<double>(state.t);
            MetricPoint mp{state.t, std::nullopt, std::nullopt};
            detail::record_metrics(oracle, x_bar, opts.f_star, mp.gap, mp.resid);
            rec.metric_trace.push_back(mp);
        }
    }

    rec.x_bar = Vec(dims.d_x);
    for (std::size_t i = 0; i < dims.d_x; ++i)
        rec.x_bar[i] = state.x_sum[i] / static_cast<double>(n);
    detail::record_metrics(oracle, rec.x_bar, opts.f_star, rec.obj_gap, rec.feas_resid);
    rec.dual_norm_max = dual_max;
    rec.dual_norm_final = norm2(state.lambda);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

}  // namespace cosco
