#pragma once
// Sampling-oracle contracts for the single-level and compositional problem
// classes, plus the finite-scenario table backing every built-in problem.
//
// Contract: each sample_* call draws one fresh sample from the oracle's
// stream and returns the value and (sub)gradient evaluated under that draw.
// Successive calls are independent; reseeding replays the same sequence.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosco/core.hpp"
#include "cosco/linalg.hpp"
#include "cosco/rng.hpp"

namespace cosco {

// Sampled vector-valued level: value in R^k, subgradient in R^{d_in x k}.
struct VecSample {
    Vec value;
    Mat subgrad;
};

// Sampled scalar outer level: value in R, gradient in R^{d}.
struct ScalarSample {
    double value = 0.0;
    Vec grad;
};

class SingleLevelOracle {
public:
    virtual ~SingleLevelOracle() = default;

    virtual ProblemDims dims() const = 0;
    virtual void reseed(std::uint64_t seed) = 0;
    virtual std::unique_ptr<SingleLevelOracle> clone(std::uint64_t seed) const = 0;

    virtual VecSample sample_f2(const Vec& x) = 0;     // value d_y, subgrad d_x x d_y
    virtual ScalarSample sample_f1(const Vec& y) = 0;  // grad d_y
    virtual VecSample sample_g(const Vec& x) = 0;      // value m, subgrad d_x x m

    // Closed-form evaluation, available for every built-in (finite sums).
    virtual std::optional<double> exact_objective(const Vec&) const { return std::nullopt; }
    virtual std::optional<Vec> exact_constraint(const Vec&) const { return std::nullopt; }

    virtual ProblemConstants constants() const { return {}; }
};

class CompositionalOracle {
public:
    virtual ~CompositionalOracle() = default;

    virtual ProblemDims dims() const = 0;
    virtual void reseed(std::uint64_t seed) = 0;
    virtual std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const = 0;

    virtual VecSample sample_f2(const Vec& x) = 0;     // value d_y, subgrad d_x x d_y
    virtual ScalarSample sample_f1(const Vec& y) = 0;  // grad d_y
    virtual VecSample sample_g2(const Vec& x) = 0;     // value d_z, subgrad d_x x d_z
    virtual VecSample sample_g1(const Vec& z) = 0;     // value m, grad d_z x m

    virtual std::optional<double> exact_objective(const Vec&) const { return std::nullopt; }
    // G(x) = g1(E[g2(x)]) evaluated by finite sums.
    virtual std::optional<Vec> exact_constraint(const Vec&) const { return std::nullopt; }
    // Exact expectations of the two constraint levels, used by the
    // H-estimator checks.
    virtual std::optional<Vec> exact_g1(const Vec&) const { return std::nullopt; }
    virtual std::optional<Mat> exact_g1_grad(const Vec&) const { return std::nullopt; }
    virtual std::optional<Vec> exact_g2(const Vec&) const { return std::nullopt; }

    virtual ProblemConstants constants() const { return {}; }
};

// Discrete distribution over scenario vectors; expectations over it are
// exact finite sums.
class ScenarioTable {
public:
    ScenarioTable() = default;
    ScenarioTable(std::vector<double> probs, std::vector<Vec> scenarios);

    // CSV with a header row; first column probability, rest components.
    // Probabilities must sum to 1 within 1e-9 (then renormalized).
    static ScenarioTable load_csv(const std::string& path);
    static ScenarioTable parse_csv(const std::string& text);

    std::size_t size() const { return probs_.size(); }
    std::size_t dim() const { return scenarios_.empty() ? 0 : scenarios_[0].size(); }
    double prob(std::size_t i) const { return probs_[i]; }
    const Vec& scenario(std::size_t i) const { return scenarios_[i]; }

    std::size_t draw(RngStream& rng) const;

    // E[w] over the table.
    Vec mean() const;

private:
    std::vector<double> probs_;
    std::vector<double> cum_;
    std::vector<Vec> scenarios_;
};

// Oracle call counters, attachable to either contract for query accounting.
struct QueryCounts {
    std::size_t f2 = 0, f1 = 0, g = 0, g1 = 0, g2 = 0;
};

class CountingSingleOracle final : public SingleLevelOracle {
public:
    explicit CountingSingleOracle(SingleLevelOracle& inner) : inner_(inner) {}

    ProblemDims dims() const override { return inner_.dims(); }
    void reseed(std::uint64_t seed) override { inner_.reseed(seed); }
    std::unique_ptr<SingleLevelOracle> clone(std::uint64_t seed) const override {
        return inner_.clone(seed);
    }
    VecSample sample_f2(const Vec& x) override { ++counts.f2; return inner_.sample_f2(x); }
    ScalarSample sample_f1(const Vec& y) override { ++counts.f1; return inner_.sample_f1(y); }
    VecSample sample_g(const Vec& x) override { ++counts.g; return inner_.sample_g(x); }
    std::optional<double> exact_objective(const Vec& x) const override {
        return inner_.exact_objective(x);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        return inner_.exact_constraint(x);
    }
    ProblemConstants constants() const override { return inner_.constants(); }

    QueryCounts counts;

private:
    SingleLevelOracle& inner_;
};

class CountingCompositionalOracle final : public CompositionalOracle {
public:
    explicit CountingCompositionalOracle(CompositionalOracle& inner) : inner_(inner) {}

    ProblemDims dims() const override { return inner_.dims(); }
    void reseed(std::uint64_t seed) override { inner_.reseed(seed); }
    std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const override {
        return inner_.clone(seed);
    }
    VecSample sample_f2(const Vec& x) override { ++counts.f2; return inner_.sample_f2(x); }
    ScalarSample sample_f1(const Vec& y) override { ++counts.f1; return inner_.sample_f1(y); }
    VecSample sample_g2(const Vec& x) override { ++counts.g2; return inner_.sample_g2(x); }
    VecSample sample_g1(const Vec& z) override { ++counts.g1; return inner_.sample_g1(z); }
    std::optional<double> exact_objective(const Vec& x) const override {
        return inner_.exact_objective(x);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        return inner_.exact_constraint(x);
    }
    std::optional<Vec> exact_g1(const Vec& z) const override { return inner_.exact_g1(z); }
    std::optional<Mat> exact_g1_grad(const Vec& z) const override {
        return inner_.exact_g1_grad(z);
    }
    std::optional<Vec> exact_g2(const Vec& x) const override { return inner_.exact_g2(x); }
    ProblemConstants constants() const override { return inner_.constants(); }

    QueryCounts counts;

private:
    CompositionalOracle& inner_;
};

}  // namespace cosco
