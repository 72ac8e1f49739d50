#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "cosco/diagnostics.hpp"
#include "cosco/problems.hpp"

using namespace cosco;

TEST_CASE("feasibility residual") {
    CHECK(feasibility_residual({-1.0, -5.0}) == doctest::Approx(0.0));
    CHECK(feasibility_residual({3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(feasibility_residual({3.0, -4.0}) == doctest::Approx(3.0));
    CHECK(feasibility_residual({}) == doctest::Approx(0.0));

    // monotone: raising any component never decreases the residual
    RngStream rng(2);
    for (int i = 0; i < 500; ++i) {
        Vec v(4);
        for (double& x : v) x = -2.0 + 4.0 * rng.next_double();
        const double base = feasibility_residual(v);
        Vec w = v;
        w[rng.next_below(4)] += 3.0 * rng.next_double();
        CHECK(feasibility_residual(w) >= base - 1e-15);
    }
}

TEST_CASE("log-log slope fitting") {
    // exact power law c/sqrt(N)
    std::vector<std::pair<std::size_t, double>> pts;
    for (std::size_t n : {100, 1000, 10000})
        pts.emplace_back(n, 7.0 / std::sqrt(static_cast<double>(n)));
    CHECK(fit_loglog_slope(pts) == doctest::Approx(-0.5).epsilon(1e-10));

    // constant values -> slope 0
    std::vector<std::pair<std::size_t, double>> flat{{10, 2.0}, {100, 2.0}, {1000, 2.0}};
    CHECK(fit_loglog_slope(flat) == doctest::Approx(0.0));

    // scale invariance
    std::vector<std::pair<std::size_t, double>> scaled = pts;
    for (auto& [n, v] : scaled) v *= 137.5;
    CHECK(std::abs(fit_loglog_slope(scaled) - fit_loglog_slope(pts)) < 1e-10);

    CHECK_THROWS_AS(fit_loglog_slope({{10, 1.0}, {100, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog_slope({{10, 1.0}, {10, 0.5}, {10, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog_slope({{10, 1.0}, {100, -0.5}, {1000, 0.1}}),
                    std::invalid_argument);
}

TEST_CASE("dual trace statistics") {
    std::vector<std::pair<std::size_t, double>> constant;
    for (std::size_t t = 1; t <= 100; ++t) constant.emplace_back(t, 1.5);
    DualTraceStats st = dual_trace_stats(constant);
    CHECK(st.max == doctest::Approx(1.5));
    CHECK(st.final == doctest::Approx(1.5));
    CHECK(st.tail_growth_ratio == doctest::Approx(1.0));
    CHECK(st.ratio_finite);

    std::vector<std::pair<std::size_t, double>> zeros;
    for (std::size_t t = 1; t <= 100; ++t) zeros.emplace_back(t, 0.0);
    st = dual_trace_stats(zeros);
    CHECK(st.tail_growth_ratio == doctest::Approx(1.0));
    CHECK(st.ratio_finite);

    // zero head, nonzero tail -> flagged infinite
    std::vector<std::pair<std::size_t, double>> late = zeros;
    late.back().second = 2.0;
    st = dual_trace_stats(late);
    CHECK(!st.ratio_finite);
    CHECK(std::isinf(st.tail_growth_ratio));

    // growing trace
    std::vector<std::pair<std::size_t, double>> grow;
    for (std::size_t t = 1; t <= 100; ++t) grow.emplace_back(t, static_cast<double>(t));
    st = dual_trace_stats(grow);
    CHECK(st.max == doctest::Approx(100.0));
    CHECK(st.tail_growth_ratio == doctest::Approx(100.0 / 25.0));

    CHECK_THROWS_AS(dual_trace_stats({}), std::invalid_argument);
}

TEST_CASE("monte carlo objective estimate converges on P1") {
    // exact F(0) = 1; plug-in bias is O(1/M), well under the 4 SE band
    int hits = 0;
    for (int rep = 0; rep < 100; ++rep) {
        auto p = make_kkt_problem_ec(static_cast<std::uint64_t>(rep));
        p.oracle->reseed(static_cast<std::uint64_t>(rep) * 13 + 1);
        const MetricEstimate e = estimate_objective_mc(*p.oracle, {0.0}, 10000);
        CHECK(!e.exact);
        CHECK(e.samples == 10000);
        if (std::abs(e.value - 1.0) <= 4.0 * e.std_error) ++hits;
    }
    CHECK(hits >= 95);

    auto p = make_kkt_problem_ec(0);
    CHECK_THROWS_AS(estimate_objective_mc(*p.oracle, {0.0}, 1), std::invalid_argument);
}
