#pragma once
// Exact Euclidean projections onto the closed-form convex compact sets used
// as feasible regions, plus the nonnegative clip used by the dual update.

#include <memory>
#include <vector>

#include "cosco/linalg.hpp"

namespace cosco {

class FeasibleSet {
public:
    enum class Kind { Box, Ball, Simplex, NonnegBox, Product };

    static FeasibleSet box(Vec lower, Vec upper);
    static FeasibleSet ball(Vec center, double radius);
    static FeasibleSet simplex(std::size_t dim, double scale);
    static FeasibleSet nonneg_box(Vec upper);
    // Cartesian product; projection and membership act blockwise.
    static FeasibleSet product(std::vector<FeasibleSet> blocks);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    // Upper bound on sup distance between any two member points.
    double diameter() const;

    // argmin over the set of ||u - v||_2.
    Vec project(const Vec& v) const;

    // Membership check with absolute slack on the defining inequalities.
    bool contains(const Vec& v, double tol = 1e-12) const;

    // A canonical interior-ish member point (box midpoint, ball center,
    // uniform simplex weights).
    Vec center() const;

private:
    FeasibleSet() = default;

    Kind kind_ = Kind::Box;
    std::size_t dim_ = 0;
    Vec lower_, upper_;   // Box / NonnegBox
    Vec center_;          // Ball
    double radius_ = 0.0; // Ball
    double scale_ = 0.0;  // Simplex
    std::vector<FeasibleSet> blocks_;  // Product
};

// Componentwise max(v, 0); the [.]_+ of the dual ascent step.
Vec clip_nonneg(const Vec& v);

// Projection of v onto the scaled probability simplex {x >= 0, sum x = s}
// by sort-and-threshold; ties resolved with the largest valid support.
Vec project_simplex(const Vec& v, double scale);

}  // namespace cosco
