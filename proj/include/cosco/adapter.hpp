#pragma once
// Lifts a single-level oracle into the compositional contract by taking
// g2 = g and g1 = identity, so G = g. With a deterministic affine g the two
// solvers then follow identical trajectories under a shared schedule.

#include <memory>

#include "cosco/oracle.hpp"

namespace cosco {

class SingleLevelAsCompositional final : public CompositionalOracle {
public:
    explicit SingleLevelAsCompositional(std::unique_ptr<SingleLevelOracle> inner)
        : inner_(std::move(inner)) {}

    ProblemDims dims() const override {
        ProblemDims d = inner_->dims();
        d.d_z = d.m;
        return d;
    }
    void reseed(std::uint64_t seed) override { inner_->reseed(seed); }
    std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<SingleLevelAsCompositional>(inner_->clone(seed));
    }

    VecSample sample_f2(const Vec& x) override { return inner_->sample_f2(x); }
    ScalarSample sample_f1(const Vec& y) override { return inner_->sample_f1(y); }
    VecSample sample_g2(const Vec& x) override { return inner_->sample_g(x); }
    VecSample sample_g1(const Vec& z) override {
        const std::size_t m = inner_->dims().m;
        check_dim(z.size(), m, "SingleLevelAsCompositional::sample_g1");
        Mat eye(m, m);
        for (std::size_t i = 0; i < m; ++i) eye(i, i) = 1.0;
        return {z, std::move(eye)};
    }

    std::optional<double> exact_objective(const Vec& x) const override {
        return inner_->exact_objective(x);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        return inner_->exact_constraint(x);
    }
    std::optional<Vec> exact_g1(const Vec& z) const override { return z; }
    std::optional<Mat> exact_g1_grad(const Vec& z) const override {
        const std::size_t m = z.size();
        Mat eye(m, m);
        for (std::size_t i = 0; i < m; ++i) eye(i, i) = 1.0;
        return eye;
    }
    std::optional<Vec> exact_g2(const Vec& x) const override {
        return inner_->exact_constraint(x);
    }

private:
    std::unique_ptr<SingleLevelOracle> inner_;
};

}  // namespace cosco
