#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "cosco/problems.hpp"
#include "cosco/rng.hpp"

using namespace cosco;

namespace {

// MC mean of a scalar stream with its standard error.
template <typename F>
std::pair<double, double> mc_mean(F&& draw, std::size_t m) {
    double s = 0, ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = draw();
        s += v;
        ss += v * v;
    }
    const double mean = s / static_cast<double>(m);
    const double var = std::max(0.0, (ss - s * mean) / static_cast<double>(m - 1));
    return {mean, std::sqrt(var / static_cast<double>(m))};
}

void check_within_4se(double mc, double se, double exact) {
    // se can be 0 for noiseless quantities
    CHECK(std::abs(mc - exact) <= 4.0 * se + 1e-12);
}

}  // namespace

TEST_CASE("scenario table parses CSV, validates, and draws to frequency") {
    const ScenarioTable t = ScenarioTable::parse_csv(
        "prob,a,b\n"
        "0.5,1.0,2.0\n"
        "# a comment line\n"
        "0.3,-1.0,0.0\n"
        "0.2,0.5,0.5\n");
    CHECK(t.size() == 3);
    CHECK(t.dim() == 2);
    CHECK(t.prob(1) == doctest::Approx(0.3));
    const Vec m = t.mean();
    CHECK(m[0] == doctest::Approx(0.5 * 1.0 + 0.3 * -1.0 + 0.2 * 0.5));
    CHECK(m[1] == doctest::Approx(0.5 * 2.0 + 0.2 * 0.5));

    RngStream rng(4);
    const int n = 100000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) ++counts[t.draw(rng)];
    CHECK(std::abs(counts[0] / double(n) - 0.5) < 0.01);
    CHECK(std::abs(counts[1] / double(n) - 0.3) < 0.01);

    CHECK_THROWS_AS(ScenarioTable::parse_csv("prob,a\n0.5,1\n0.4,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioTable::parse_csv("prob,a\n-0.5,1\n1.5,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioTable::parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioTable::parse_csv("prob,a\n0.5,1\n0.5,bad\n"), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioTable({0.5, 0.5}, {{1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("bundled table matches the default") {
    const ScenarioTable t = default_portfolio_table();
    REQUIRE(t.size() == 4);
    REQUIRE(t.dim() == 3);
    const Vec m = t.mean();
    CHECK(m[0] == doctest::Approx(0.2));
    CHECK(m[1] == doctest::Approx(0.125));
    CHECK(m[2] == doctest::Approx(0.15));
}

TEST_CASE("kkt-ec oracle: construction, determinism, unbiasedness") {
    auto p = make_kkt_problem_ec(12);
    auto& o = *p.oracle;

    // sampled values at x=0 are +-1, subgrad is 1
    o.reseed(5);
    for (int i = 0; i < 20; ++i) {
        const VecSample s = o.sample_f2({0.0});
        CHECK((s.value[0] == 1.0 || s.value[0] == -1.0));
        CHECK(s.subgrad(0, 0) == 1.0);
    }
    for (int i = 0; i < 20; ++i) {
        const VecSample s = o.sample_g({0.0});
        CHECK((s.value[0] == 1.0 || s.value[0] == -1.0));
        CHECK(s.subgrad(0, 0) == 1.0);
    }
    CHECK(o.sample_f1({1.0}).grad[0] == 0.0);

    // reseed replays the identical sequence
    o.reseed(77);
    Vec seq1, seq2;
    for (int i = 0; i < 50; ++i) seq1.push_back(o.sample_f2({0.3}).value[0]);
    o.reseed(77);
    for (int i = 0; i < 50; ++i) seq2.push_back(o.sample_f2({0.3}).value[0]);
    CHECK(seq1 == seq2);

    // clone with the same seed is equivalent
    auto c = o.clone(123);
    o.reseed(123);
    for (int i = 0; i < 20; ++i)
        CHECK(o.sample_g({1.0}).value[0] == c->sample_g({1.0}).value[0]);

    // MC mean of f2 at x=0 -> 0 within 4 SE; of g at x=0.4 -> 0.4
    o.reseed(9);
    auto [m1, se1] = mc_mean([&] { return o.sample_f2({0.0}).value[0]; }, 100000);
    check_within_4se(m1, se1, 0.0);
    auto [m2, se2] = mc_mean([&] { return o.sample_g({0.4}).value[0]; }, 100000);
    check_within_4se(m2, se2, 0.4);
    auto [m3, se3] = mc_mean([&] { return o.sample_f1({0.5}).value; }, 100000);
    check_within_4se(m3, se3, 0.25);

    // successive draws are uncorrelated (lag-1)
    o.reseed(31);
    double prev = o.sample_f2({0.0}).value[0], acc = 0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double cur = o.sample_f2({0.0}).value[0];
        acc += prev * cur;
        prev = cur;
    }
    CHECK(std::abs(acc / m) < 4.0 / std::sqrt(double(m)));

    // exact evaluators and ground truth
    CHECK(*o.exact_objective({3.0}) == doctest::Approx(4.0));
    CHECK((*o.exact_constraint({-2.0}))[0] == doctest::Approx(-2.0));
    CHECK((*p.x_star)[0] == 0.0);
    CHECK(*p.f_star == 1.0);
    CHECK((*p.lambda_star)[0] == 2.0);

    // deterministic variant zeroes the noise
    auto d = make_kkt_problem_ec(0, true);
    CHECK(d.oracle->sample_f2({0.7}).value[0] == 0.7);
    CHECK(d.oracle->sample_g({0.7}).value[0] == 0.7);
}

TEST_CASE("kkt-cc oracle levels") {
    auto p = make_kkt_problem_cc(3);
    auto& o = *p.oracle;
    CHECK(o.dims().d_z == 1);

    // g2 at x=1: value in {0,2}, subgrad 1
    o.reseed(1);
    for (int i = 0; i < 20; ++i) {
        const VecSample s = o.sample_g2({1.0});
        CHECK((s.value[0] == 0.0 || s.value[0] == 2.0));
        CHECK(s.subgrad(0, 0) == 1.0);
    }
    auto [m1, se1] = mc_mean([&] { return o.sample_g2({1.0}).value[0]; }, 100000);
    check_within_4se(m1, se1, 1.0);

    // g1 is noiseless: z=1 -> (0, grad 2); z=0 -> (-1, grad 0)
    const VecSample a = o.sample_g1({1.0});
    CHECK(a.value[0] == doctest::Approx(0.0));
    CHECK(a.subgrad(0, 0) == doctest::Approx(2.0));
    const VecSample b = o.sample_g1({0.0});
    CHECK(b.value[0] == doctest::Approx(-1.0));
    CHECK(b.subgrad(0, 0) == doctest::Approx(0.0));

    CHECK(*o.exact_objective({0.0}) == doctest::Approx(4.0));
    CHECK((*o.exact_constraint({2.0}))[0] == doctest::Approx(3.0));
    CHECK((*o.exact_g1({2.0}))[0] == doctest::Approx(3.0));
    CHECK((*o.exact_g1_grad({2.0}))(0, 0) == doctest::Approx(4.0));
    CHECK((*o.exact_g2({0.3}))[0] == doctest::Approx(0.3));
    CHECK((*p.x_star)[0] == 1.0);
    CHECK((*p.lambda_star)[0] == 1.0);
}

TEST_CASE("cvar oracle against finite-sum evaluators") {
    const ScenarioTable t = default_portfolio_table();
    auto p = make_cvar_problem(t, 0.9, 0.0, 7);
    auto& o = *p.oracle;
    REQUIRE(o.dims().d_x == 4);
    REQUIRE(p.set.dim() == 4);
    CHECK(p.set.contains(p.set.center()));

    const Vec xu{0.2, 0.5, 0.3, -0.1};

    // exact objective is -E[w'x]
    const double eo = *o.exact_objective(xu);
    CHECK(eo == doctest::Approx(-(0.2 * 0.2 + 0.125 * 0.5 + 0.15 * 0.3)));

    // exact constraint: u + E[(loss-u)_+]/(1-alpha) - gamma, by hand
    double tail = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        double loss = 0;
        for (int i = 0; i < 3; ++i) loss -= t.scenario(s)[i] * xu[i];
        tail += 0.25 * std::max(loss - xu[3], 0.0);
    }
    CHECK((*o.exact_constraint(xu))[0] == doctest::Approx(xu[3] + tail / 0.1));

    // sampled f2 and g are unbiased for their finite-sum means
    o.reseed(2);
    auto [mf, sef] = mc_mean([&] { return o.sample_f2(xu).value[0]; }, 100000);
    check_within_4se(mf, sef, eo);
    auto [mg, seg] = mc_mean([&] { return o.sample_g(xu).value[0]; }, 100000);
    check_within_4se(mg, seg, (*o.exact_constraint(xu))[0]);

    // subgradient entries of g are unbiased too (u component)
    o.reseed(8);
    double ex_su = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        double loss = 0;
        for (int i = 0; i < 3; ++i) loss -= t.scenario(s)[i] * xu[i];
        ex_su += 0.25 * (loss - xu[3] > 0.0 ? 1.0 - 10.0 : 1.0);
    }
    auto [msu, sesu] = mc_mean([&] { return o.sample_g(xu).subgrad(3, 0); }, 100000);
    check_within_4se(msu, sesu, ex_su);

    CHECK_THROWS_AS(make_cvar_problem(t, 1.0, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_cvar_problem(t, 0.0, 0.0, 0), std::invalid_argument);
}

TEST_CASE("softplus smoothing properties") {
    const double mu = 1e-3;
    CHECK(softplus(0.0, mu) == doctest::Approx(mu * std::log(2.0)));
    RngStream rng(5);
    for (int i = 0; i < 200; ++i) {
        const double u = -2.0 + 4.0 * rng.next_double();
        const double s = softplus(u, mu);
        const double gap = s - std::max(u, 0.0);
        CHECK(gap >= 0.0);
        CHECK(gap <= mu * std::log(2.0) + 1e-15);
        const double g = softplus_grad(u, mu);  // saturates to exactly 0/1 for |u| >> mu
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        // finite-difference agreement
        const double h = 1e-7;
        const double fd = (softplus(u + h, mu) - softplus(u - h, mu)) / (2 * h);
        CHECK(std::abs(fd - g) < 1e-4);
    }
}

TEST_CASE("mean-deviation oracle consistency") {
    const ScenarioTable t = default_portfolio_table();
    auto p = make_mean_deviation_problem(t, {0.0, 0.0}, 1e-3, 3);
    auto& o = *p.oracle;
    REQUIRE(o.dims().d_x == 3);
    REQUIRE(o.dims().m == 2);
    REQUIRE(o.dims().d_z == 5);

    const Vec x{0.5, 0.2, 0.3};
    const Vec z = *o.exact_g2(x);
    // z = (-E[l_1], -E[l_2], x) with l_j = w'x / (j+1)... scale 1/(j+1): j=0 -> 1, j=1 -> 1/2
    const double er = dot(t.mean(), x);
    CHECK(z[0] == doctest::Approx(-er));
    CHECK(z[1] == doctest::Approx(-er / 2.0));
    CHECK(z[2] == doctest::Approx(0.5));

    // exact_g1 at that z equals -E[l] + E[softplus(l - E[l])] by hand for j=0
    double hand = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        double l = 0;
        for (int i = 0; i < 3; ++i) l += t.scenario(s)[i] * x[i];
        hand += 0.25 * softplus(l - er, 1e-3);
    }
    CHECK((*o.exact_g1(z))[0] == doctest::Approx(-er + hand));

    // sampled g1 is unbiased for exact_g1, entrywise
    o.reseed(4);
    auto [m0, se0] = mc_mean([&] { return o.sample_g1(z).value[0]; }, 100000);
    check_within_4se(m0, se0, (*o.exact_g1(z))[0]);
    auto [m1, se1] = mc_mean([&] { return o.sample_g1(z).value[1]; }, 100000);
    check_within_4se(m1, se1, (*o.exact_g1(z))[1]);

    // sampled g1 gradient is unbiased for exact_g1_grad (spot-check entries)
    const Mat eg = *o.exact_g1_grad(z);
    auto [gm, gse] = mc_mean([&] { return o.sample_g1(z).subgrad(3, 0); }, 100000);
    check_within_4se(gm, gse, eg(3, 0));

    // sampled g2 value is unbiased for exact_g2
    auto [zm, zse] = mc_mean([&] { return o.sample_g2(x).value[0]; }, 100000);
    check_within_4se(zm, zse, z[0]);

    CHECK_THROWS_AS(make_mean_deviation_problem(t, {}, 1e-3, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_mean_deviation_problem(t, {0.0}, 0.0, 0), std::invalid_argument);
}

TEST_CASE("moment oracle: p=2 equals the scenario variance") {
    const ScenarioTable t = default_portfolio_table();
    auto p = make_moment_portfolio_problem(t, 2, {0.01}, 5);
    auto& o = *p.oracle;
    const Vec x{0.3, 0.3, 0.4};

    // direct variance of w'x over the table
    const double mean = dot(t.mean(), x);
    double var = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        double r = 0;
        for (int i = 0; i < 3; ++i) r += t.scenario(s)[i] * x[i];
        var += 0.25 * (r - mean) * (r - mean);
    }
    CHECK((*o.exact_constraint(x))[0] == doctest::Approx(var - 0.01));

    // multi-order variant: p/2 bounds -> orders 2,4
    auto p4 = make_moment_portfolio_problem(t, 4, {0.01, 0.002}, 5);
    CHECK(p4.oracle->dims().m == 2);
    const Vec c = *p4.oracle->exact_constraint(x);
    CHECK(c[0] == doctest::Approx(var - 0.01));
    double m4 = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        double r = 0;
        for (int i = 0; i < 3; ++i) r += t.scenario(s)[i] * x[i];
        m4 += 0.25 * std::pow(std::abs(r - mean), 4);
    }
    CHECK(c[1] == doctest::Approx(m4 - 0.002));

    // sampled g1 unbiased at a perturbed z
    auto& o4 = *p4.oracle;
    Vec z = *o4.exact_g2(x);
    z[0] += 0.05;
    o4.reseed(6);
    double s = 0, ss = 0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double v = o4.sample_g1(z).value[1];
        s += v;
        ss += v * v;
    }
    const double mc = s / m;
    const double se = std::sqrt(std::max(0.0, (ss - s * mc) / (m - 1.0)) / m);
    CHECK(std::abs(mc - (*o4.exact_g1(z))[1]) <= 4 * se + 1e-12);

    CHECK_THROWS_AS(make_moment_portfolio_problem(t, 3, {0.01}, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_moment_portfolio_problem(t, 4, {0.01, 0.1, 0.1}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_moment_portfolio_problem(t, 4, {-0.1}, 0), std::invalid_argument);
}

TEST_CASE("counting decorators track query totals") {
    auto p = make_kkt_problem_ec(1);
    CountingSingleOracle c(*p.oracle);
    c.sample_f2({0.0});
    c.sample_f2({0.0});
    c.sample_f1({0.0});
    c.sample_g({0.0});
    CHECK(c.counts.f2 == 2);
    CHECK(c.counts.f1 == 1);
    CHECK(c.counts.g == 1);

    auto q = make_kkt_problem_cc(1);
    CountingCompositionalOracle cc(*q.oracle);
    cc.sample_g2({0.0});
    cc.sample_g1({0.0});
    cc.sample_g1({0.0});
    CHECK(cc.counts.g2 == 1);
    CHECK(cc.counts.g1 == 2);
}
