#include "cosco/core.hpp"

#include <cmath>

namespace cosco {

StepSchedule default_schedule_ec(std::size_t n) {
    if (n < 1) throw std::invalid_argument("default_schedule_ec: N must be >= 1");
    const double root_n = std::sqrt(static_cast<double>(n));
    StepSchedule s;
    s.horizon = n;
    s.tau = [](std::size_t t) { return static_cast<double>(t) / 2.0; };
    s.rho = nullptr;
    s.eta = [root_n](std::size_t) { return 15.0 * root_n / 2.0; };
    s.alpha = [root_n](std::size_t) { return 2.0 * root_n; };
    return s;
}

StepSchedule default_schedule_cc(std::size_t n) {
    if (n < 1) throw std::invalid_argument("default_schedule_cc: N must be >= 1");
    const double root_n = std::sqrt(static_cast<double>(n));
    StepSchedule s;
    s.horizon = n;
    s.tau = [](std::size_t t) { return static_cast<double>(t) / 2.0; };
    s.rho = s.tau;
    s.eta = [root_n](std::size_t) { return 5.0 * root_n / 2.0; };
    s.alpha = [root_n](std::size_t) { return 2.0 * root_n; };
    return s;
}

void update_average(SolverState& state, const Vec& x_new) {
    check_dim(x_new.size(), state.x_sum.size(), "update_average");
    for (std::size_t i = 0; i < x_new.size(); ++i) state.x_sum[i] += x_new[i];
}

}  // namespace cosco
