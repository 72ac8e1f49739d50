#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "cosco/projection.hpp"
#include "cosco/rng.hpp"

using namespace cosco;

namespace {

Vec random_vec(RngStream& rng, std::size_t d, double lo, double hi) {
    Vec v(d);
    for (double& x : v) x = lo + (hi - lo) * rng.next_double();
    return v;
}

// A random member point, used by the optimality property.
Vec random_member(const FeasibleSet& set, RngStream& rng) {
    return set.project(random_vec(rng, set.dim(), -3.0, 3.0));
}

void check_projection_properties(const FeasibleSet& set, RngStream& rng, int cases) {
    for (int i = 0; i < cases; ++i) {
        const Vec v = random_vec(rng, set.dim(), -5.0, 5.0);
        const Vec p = set.project(v);

        CHECK(set.contains(p, 1e-9));

        const Vec pp = set.project(p);
        for (std::size_t j = 0; j < p.size(); ++j) CHECK(pp[j] == doctest::Approx(p[j]).epsilon(1e-12));

        const Vec u = random_vec(rng, set.dim(), -5.0, 5.0);
        const Vec pu = set.project(u);
        double duv = 0, dpq = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            duv += (u[j] - v[j]) * (u[j] - v[j]);
            dpq += (pu[j] - p[j]) * (pu[j] - p[j]);
        }
        CHECK(std::sqrt(dpq) <= std::sqrt(duv) + 1e-12);

        const Vec q = random_member(set, rng);
        double dvp = 0, dvq = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            dvp += (v[j] - p[j]) * (v[j] - p[j]);
            dvq += (v[j] - q[j]) * (v[j] - q[j]);
        }
        CHECK(std::sqrt(dvp) <= std::sqrt(dvq) + 1e-9);
    }
}

}  // namespace

TEST_CASE("projection fixed examples") {
    const auto box = FeasibleSet::box({-1, -1}, {1, 1});
    const Vec in = box.project({0.5, -0.3});
    CHECK(in[0] == doctest::Approx(0.5));
    CHECK(in[1] == doctest::Approx(-0.3));
    const Vec clipped = box.project({2.0, -7.0});
    CHECK(clipped[0] == doctest::Approx(1.0));
    CHECK(clipped[1] == doctest::Approx(-1.0));

    const auto ball = FeasibleSet::ball({0, 0}, 1.0);
    const Vec b = ball.project({3.0, 4.0});
    CHECK(b[0] == doctest::Approx(0.6));
    CHECK(b[1] == doctest::Approx(0.8));

    const Vec s = project_simplex({2.0, 0.0}, 1.0);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(0.0));
}

TEST_CASE("clip_nonneg") {
    const Vec v = clip_nonneg({-1.0, 2.0, 0.0, -0.5});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 2.0);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);
}

TEST_CASE("projection properties on 1000 random cases per variant") {
    RngStream rng(321);
    check_projection_properties(FeasibleSet::box({-1, 0, -2}, {1.5, 2, 0.5}), rng, 1000);
    check_projection_properties(FeasibleSet::ball({0.5, -0.5}, 1.5), rng, 1000);
    check_projection_properties(FeasibleSet::simplex(4, 1.0), rng, 1000);
    check_projection_properties(FeasibleSet::nonneg_box({2.0, 1.0}), rng, 1000);
    check_projection_properties(
        FeasibleSet::product({FeasibleSet::simplex(3, 1.0), FeasibleSet::box({-2}, {2})}), rng,
        1000);
}

TEST_CASE("simplex projection matches a dense grid search") {
    RngStream rng(99);
    for (int c = 0; c < 50; ++c) {
        const Vec v = random_vec(rng, 2, -2.0, 2.0);
        const Vec p = project_simplex(v, 1.0);

        double best = 1e300, best_x = 0.0;
        for (int i = 0; i <= 10000; ++i) {
            const double x = i * 1e-4;
            const double d =
                (v[0] - x) * (v[0] - x) + (v[1] - (1.0 - x)) * (v[1] - (1.0 - x));
            if (d < best) {
                best = d;
                best_x = x;
            }
        }
        CHECK(std::abs(p[0] - best_x) <= 2e-4);
        CHECK(std::abs(p[1] - (1.0 - best_x)) <= 2e-4);
    }
}

TEST_CASE("simplex projection handles uniform ties with full support") {
    const Vec p = project_simplex({0.4, 0.4, 0.4}, 1.0);
    for (double x : p) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("diameter and center") {
    const auto box = FeasibleSet::box({-10}, {10});
    CHECK(box.diameter() == doctest::Approx(20.0));
    CHECK(box.center()[0] == doctest::Approx(0.0));

    const auto ball = FeasibleSet::ball({1, 1}, 2.0);
    CHECK(ball.diameter() == doctest::Approx(4.0));
    CHECK(ball.center()[0] == doctest::Approx(1.0));

    const auto sx = FeasibleSet::simplex(3, 2.0);
    CHECK(sx.diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
    const Vec c = sx.center();
    CHECK(c[0] == doctest::Approx(2.0 / 3.0));
    CHECK(sx.contains(c));
}

TEST_CASE("invalid set parameters are rejected") {
    CHECK_THROWS_AS(FeasibleSet::box({1.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::ball({0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::simplex(2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::box({0.0}, {1.0}).project(Vec{0.0, 1.0}),
                    std::invalid_argument);
}
