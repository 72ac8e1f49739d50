#include "cosco/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace cosco {

double feasibility_residual(const Vec& cons_value) {
    double s = 0.0;
    for (double c : cons_value) {
        const double p = std::max(c, 0.0);
        s += p * p;
    }
    return std::sqrt(s);
}

MetricEstimate estimate_objective_mc(SingleLevelOracle& oracle, const Vec& x, std::size_t m) {
    if (m < 2) throw std::invalid_argument("estimate_objective_mc: M must be >= 2");
    const ProblemDims dims = oracle.dims();
    const double md = static_cast<double>(m);
    Vec y_bar(dims.d_y, 0.0);
    Vec y_sq(dims.d_y, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const VecSample s = oracle.sample_f2(x);
        for (std::size_t j = 0; j < dims.d_y; ++j) {
            y_bar[j] += s.value[j];
            y_sq[j] += s.value[j] * s.value[j];
        }
    }
    for (double& v : y_bar) v /= md;

    double sum = 0.0, sumsq = 0.0;
    Vec grad_mean(dims.d_y, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const ScalarSample s = oracle.sample_f1(y_bar);
        sum += s.value;
        sumsq += s.value * s.value;
        for (std::size_t j = 0; j < dims.d_y; ++j) grad_mean[j] += s.grad[j];
    }
    MetricEstimate est;
    est.samples = m;
    est.value = sum / md;
    const double outer_var =
        std::max(0.0, (sumsq - sum * sum / md) / static_cast<double>(m - 1));
    // Delta-method propagation of the inner-mean uncertainty through the
    // sampled outer gradients, so the reported band covers both MC stages.
    double inner_term = 0.0;
    for (std::size_t j = 0; j < dims.d_y; ++j) {
        const double g = grad_mean[j] / md;
        const double vj =
            std::max(0.0, (y_sq[j] - md * y_bar[j] * y_bar[j]) / static_cast<double>(m - 1));
        inner_term += g * g * vj;
    }
    est.std_error = std::sqrt((outer_var + inner_term) / md);
    est.exact = false;
    return est;
}

double fit_loglog_slope(const std::vector<std::pair<std::size_t, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_loglog_slope: need >= 3 points");
    std::set<std::size_t> ns;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, v] : points) {
        if (n < 1) throw std::invalid_argument("fit_loglog_slope: N must be >= 1");
        if (!(v > 0.0)) throw std::invalid_argument("fit_loglog_slope: values must be positive");
        ns.insert(n);
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    if (ns.size() < 2) throw std::invalid_argument("fit_loglog_slope: N values must be distinct");
    const double k = static_cast<double>(points.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

DualTraceStats dual_trace_stats(const std::vector<std::pair<std::size_t, double>>& trace) {
    if (trace.empty()) throw std::invalid_argument("dual_trace_stats: empty trace");
    DualTraceStats st;
    st.final = trace.back().second;
    const std::size_t n = trace.size();
    const std::size_t quarter = std::max<std::size_t>(1, n / 4);
    double first_max = 0.0, last_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        st.max = std::max(st.max, trace[i].second);
        if (i < quarter) first_max = std::max(first_max, trace[i].second);
        if (i >= n - quarter) last_max = std::max(last_max, trace[i].second);
    }
    if (first_max == 0.0) {
        st.tail_growth_ratio = (last_max == 0.0) ? 1.0
                                                 : std::numeric_limits<double>::infinity();
        st.ratio_finite = (last_max == 0.0);
    } else {
        st.tail_growth_ratio = last_max / first_max;
    }
    return st;
}

}  // namespace cosco
