#include "cosco/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace cosco {

double softplus(double u, double mu) {
    const double s = u / mu;
    if (s > 0.0) return u + mu * std::log1p(std::exp(-s));
    return mu * std::log1p(std::exp(s));
}

double softplus_grad(double u, double mu) {
    const double s = u / mu;
    if (s > 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

namespace {

// ---------------------------------------------------------------------------
// P1: single-level KKT verification instance.
// f2(x,xi) = x + xi, f1(y,xi1) = (y-1)^2 + xi1 (gradient noiseless),
// g(x,zeta) = x + zeta, with xi, xi1, zeta ~ Rademacher.
class KktEcOracle final : public SingleLevelOracle {
public:
    KktEcOracle(std::uint64_t seed, bool deterministic)
        : rng_(seed), seed_(seed), det_(deterministic) {}

    ProblemDims dims() const override { return {1, 1, 0, 1}; }
    void reseed(std::uint64_t seed) override { rng_ = RngStream(seed); seed_ = seed; }
    std::unique_ptr<SingleLevelOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<KktEcOracle>(seed, det_);
    }

    VecSample sample_f2(const Vec& x) override {
        check_dim(x.size(), 1, "KktEcOracle::sample_f2");
        const double xi = det_ ? 0.0 : rng_.rademacher();
        return {{x[0] + xi}, Mat(1, 1, 1.0)};
    }
    ScalarSample sample_f1(const Vec& y) override {
        check_dim(y.size(), 1, "KktEcOracle::sample_f1");
        const double xi = det_ ? 0.0 : rng_.rademacher();
        const double d = y[0] - 1.0;
        return {d * d + xi, {2.0 * d}};
    }
    VecSample sample_g(const Vec& x) override {
        check_dim(x.size(), 1, "KktEcOracle::sample_g");
        const double zeta = det_ ? 0.0 : rng_.rademacher();
        return {{x[0] + zeta}, Mat(1, 1, 1.0)};
    }

    std::optional<double> exact_objective(const Vec& x) const override {
        return (x[0] - 1.0) * (x[0] - 1.0);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override { return Vec{x[0]}; }

    ProblemConstants constants() const override {
        ProblemConstants c;
        c.C_f2 = 1.0;
        c.sigma_f2 = 1.0;
        c.sigma_f1 = 1.0;
        c.L_f1 = 2.0;
        c.C_g = 1.0;
        c.sigma_g = 1.0;
        return c;
    }

private:
    RngStream rng_;
    std::uint64_t seed_;
    bool det_;
};

// ---------------------------------------------------------------------------
// P2: compositional KKT verification instance.
// Objective as P1 shifted to F(x) = (x-2)^2; g2(x,zeta) = x + zeta (affine),
// g1(z) = z^2 - 1 noiseless smooth, so G(x) = x^2 - 1.
class KktCcOracle final : public CompositionalOracle {
public:
    KktCcOracle(std::uint64_t seed, bool deterministic)
        : rng_(seed), det_(deterministic) {}

    ProblemDims dims() const override { return {1, 1, 1, 1}; }
    void reseed(std::uint64_t seed) override { rng_ = RngStream(seed); }
    std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<KktCcOracle>(seed, det_);
    }

    VecSample sample_f2(const Vec& x) override {
        check_dim(x.size(), 1, "KktCcOracle::sample_f2");
        const double xi = det_ ? 0.0 : rng_.rademacher();
        return {{x[0] + xi}, Mat(1, 1, 1.0)};
    }
    ScalarSample sample_f1(const Vec& y) override {
        check_dim(y.size(), 1, "KktCcOracle::sample_f1");
        const double xi = det_ ? 0.0 : rng_.rademacher();
        const double d = y[0] - 2.0;
        return {d * d + xi, {2.0 * d}};
    }
    VecSample sample_g2(const Vec& x) override {
        check_dim(x.size(), 1, "KktCcOracle::sample_g2");
        const double zeta = det_ ? 0.0 : rng_.rademacher();
        return {{x[0] + zeta}, Mat(1, 1, 1.0)};
    }
    VecSample sample_g1(const Vec& z) override {
        check_dim(z.size(), 1, "KktCcOracle::sample_g1");
        return {{z[0] * z[0] - 1.0}, Mat(1, 1, 2.0 * z[0])};
    }

    std::optional<double> exact_objective(const Vec& x) const override {
        return (x[0] - 2.0) * (x[0] - 2.0);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        return Vec{x[0] * x[0] - 1.0};
    }
    std::optional<Vec> exact_g1(const Vec& z) const override {
        return Vec{z[0] * z[0] - 1.0};
    }
    std::optional<Mat> exact_g1_grad(const Vec& z) const override {
        return Mat(1, 1, 2.0 * z[0]);
    }
    std::optional<Vec> exact_g2(const Vec& x) const override { return Vec{x[0]}; }

private:
    RngStream rng_;
    bool det_;
};

// ---------------------------------------------------------------------------
// CVaR-constrained portfolio over the extended variable (x, u).
// Objective (to minimize): -E[w'x]; constraint
// u + (loss(x,w) - u)_+ / (1-alpha) - gamma with loss = -w'x.
class CvarOracle final : public SingleLevelOracle {
public:
    CvarOracle(ScenarioTable table, double alpha, double gamma, std::uint64_t seed)
        : table_(std::move(table)), alpha_(alpha), gamma_(gamma), rng_(seed) {
        d_ = table_.dim();
    }

    ProblemDims dims() const override { return {d_ + 1, 1, 0, 1}; }
    void reseed(std::uint64_t seed) override { rng_ = RngStream(seed); }
    std::unique_ptr<SingleLevelOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<CvarOracle>(table_, alpha_, gamma_, seed);
    }

    VecSample sample_f2(const Vec& xu) override {
        check_dim(xu.size(), d_ + 1, "CvarOracle::sample_f2");
        const Vec& w = table_.scenario(table_.draw(rng_));
        double ret = 0.0;
        Mat sub(d_ + 1, 1);
        for (std::size_t i = 0; i < d_; ++i) {
            ret += w[i] * xu[i];
            sub(i, 0) = -w[i];
        }
        return {{-ret}, std::move(sub)};
    }
    ScalarSample sample_f1(const Vec& y) override {
        check_dim(y.size(), 1, "CvarOracle::sample_f1");
        return {y[0], {1.0}};  // identity outer level, noiseless
    }
    VecSample sample_g(const Vec& xu) override {
        check_dim(xu.size(), d_ + 1, "CvarOracle::sample_g");
        const Vec& w = table_.scenario(table_.draw(rng_));
        const double u = xu[d_];
        double loss = 0.0;
        for (std::size_t i = 0; i < d_; ++i) loss -= w[i] * xu[i];
        const double excess = loss - u;
        const double inv = 1.0 / (1.0 - alpha_);
        Mat sub(d_ + 1, 1);
        if (excess > 0.0) {  // subgradient of (.)_+ at 0 taken as 0
            for (std::size_t i = 0; i < d_; ++i) sub(i, 0) = -w[i] * inv;
            sub(d_, 0) = 1.0 - inv;
        } else {
            sub(d_, 0) = 1.0;
        }
        return {{u + std::max(excess, 0.0) * inv - gamma_}, std::move(sub)};
    }

    std::optional<double> exact_objective(const Vec& xu) const override {
        double ret = 0.0;
        for (std::size_t s = 0; s < table_.size(); ++s)
            for (std::size_t i = 0; i < d_; ++i)
                ret += table_.prob(s) * table_.scenario(s)[i] * xu[i];
        return -ret;
    }
    std::optional<Vec> exact_constraint(const Vec& xu) const override {
        const double u = xu[d_];
        double tail = 0.0;
        for (std::size_t s = 0; s < table_.size(); ++s) {
            double loss = 0.0;
            for (std::size_t i = 0; i < d_; ++i) loss -= table_.scenario(s)[i] * xu[i];
            tail += table_.prob(s) * std::max(loss - u, 0.0);
        }
        return Vec{u + tail / (1.0 - alpha_) - gamma_};
    }

    double alpha() const { return alpha_; }

private:
    ScenarioTable table_;
    double alpha_, gamma_;
    std::size_t d_ = 0;
    RngStream rng_;
};

// ---------------------------------------------------------------------------
// Mean-deviation portfolio. Inner level g2(x,w) = (-l_1,...,-l_K, x) with
// linear utilities l_j(x,w) = c_j * w'x; outer level
// g1_j((z,xt),w) = z_j + s_mu(l_j(xt,w) + z_j) + gamma_j.
class MeanDevOracle final : public CompositionalOracle {
public:
    MeanDevOracle(ScenarioTable table, Vec gammas, double mu, std::uint64_t seed)
        : table_(std::move(table)), gammas_(std::move(gammas)), mu_(mu), rng_(seed) {
        d_ = table_.dim();
        k_ = gammas_.size();
        scales_.resize(k_);
        for (std::size_t j = 0; j < k_; ++j) scales_[j] = 1.0 / static_cast<double>(j + 1);
    }

    ProblemDims dims() const override { return {d_, 1, k_ + d_, k_}; }
    void reseed(std::uint64_t seed) override { rng_ = RngStream(seed); }
    std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<MeanDevOracle>(table_, gammas_, mu_, seed);
    }

    VecSample sample_f2(const Vec& x) override {
        check_dim(x.size(), d_, "MeanDevOracle::sample_f2");
        const Vec& w = table_.scenario(table_.draw(rng_));
        Mat sub(d_, 1);
        double ret = 0.0;
        for (std::size_t i = 0; i < d_; ++i) {
            ret += w[i] * x[i];
            sub(i, 0) = -w[i];
        }
        return {{-ret}, std::move(sub)};
    }
    ScalarSample sample_f1(const Vec& y) override {
        check_dim(y.size(), 1, "MeanDevOracle::sample_f1");
        return {y[0], {1.0}};
    }
    VecSample sample_g2(const Vec& x) override {
        check_dim(x.size(), d_, "MeanDevOracle::sample_g2");
        const Vec& w = table_.scenario(table_.draw(rng_));
        double ret = 0.0;
        for (std::size_t i = 0; i < d_; ++i) ret += w[i] * x[i];
        Vec value(k_ + d_, 0.0);
        Mat sub(d_, k_ + d_);
        for (std::size_t j = 0; j < k_; ++j) {
            value[j] = -scales_[j] * ret;
            for (std::size_t i = 0; i < d_; ++i) sub(i, j) = -scales_[j] * w[i];
        }
        for (std::size_t i = 0; i < d_; ++i) {
            value[k_ + i] = x[i];
            sub(i, k_ + i) = 1.0;
        }
        return {std::move(value), std::move(sub)};
    }
    VecSample sample_g1(const Vec& z) override {
        check_dim(z.size(), k_ + d_, "MeanDevOracle::sample_g1");
        const Vec& w = table_.scenario(table_.draw(rng_));
        return eval_g1(z, w);
    }

    std::optional<double> exact_objective(const Vec& x) const override {
        return -dot(table_.mean(), x);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        Vec z = *exact_g2(x);
        return exact_g1(z);
    }
    std::optional<Vec> exact_g1(const Vec& z) const override {
        Vec out(k_, 0.0);
        for (std::size_t s = 0; s < table_.size(); ++s) {
            const VecSample v = eval_g1(z, table_.scenario(s));
            for (std::size_t j = 0; j < k_; ++j) out[j] += table_.prob(s) * v.value[j];
        }
        return out;
    }
    std::optional<Mat> exact_g1_grad(const Vec& z) const override {
        Mat out(k_ + d_, k_);
        for (std::size_t s = 0; s < table_.size(); ++s) {
            const VecSample v = eval_g1(z, table_.scenario(s));
            for (std::size_t i = 0; i < out.rows; ++i)
                for (std::size_t j = 0; j < k_; ++j)
                    out(i, j) += table_.prob(s) * v.subgrad(i, j);
        }
        return out;
    }
    std::optional<Vec> exact_g2(const Vec& x) const override {
        const double ret = dot(table_.mean(), x);
        Vec z(k_ + d_, 0.0);
        for (std::size_t j = 0; j < k_; ++j) z[j] = -scales_[j] * ret;
        for (std::size_t i = 0; i < d_; ++i) z[k_ + i] = x[i];
        return z;
    }

private:
    VecSample eval_g1(const Vec& z, const Vec& w) const {
        Vec value(k_, 0.0);
        Mat grad(k_ + d_, k_);
        double ret = 0.0;
        for (std::size_t i = 0; i < d_; ++i) ret += w[i] * z[k_ + i];
        for (std::size_t j = 0; j < k_; ++j) {
            const double lj = scales_[j] * ret;
            const double arg = lj + z[j];
            const double sig = softplus_grad(arg, mu_);
            value[j] = z[j] + softplus(arg, mu_) + gammas_[j];
            grad(j, j) = 1.0 + sig;
            for (std::size_t i = 0; i < d_; ++i) grad(k_ + i, j) = sig * scales_[j] * w[i];
        }
        return {std::move(value), std::move(grad)};
    }

    ScenarioTable table_;
    Vec gammas_;
    Vec scales_;
    double mu_;
    std::size_t d_ = 0, k_ = 0;
    RngStream rng_;
};

// ---------------------------------------------------------------------------
// High-moment portfolio. Inner level g2(x,w) = (w'x, x); outer level
// g1_k((z0,xt),w) = |w'xt - z0|^{p_k} - c_k.
class MomentOracle final : public CompositionalOracle {
public:
    MomentOracle(ScenarioTable table, std::vector<int> orders, Vec bounds, std::uint64_t seed)
        : table_(std::move(table)), orders_(std::move(orders)), bounds_(std::move(bounds)),
          rng_(seed) {
        d_ = table_.dim();
        m_ = orders_.size();
    }

    ProblemDims dims() const override { return {d_, 1, 1 + d_, m_}; }
    void reseed(std::uint64_t seed) override { rng_ = RngStream(seed); }
    std::unique_ptr<CompositionalOracle> clone(std::uint64_t seed) const override {
        return std::make_unique<MomentOracle>(table_, orders_, bounds_, seed);
    }

    VecSample sample_f2(const Vec& x) override {
        check_dim(x.size(), d_, "MomentOracle::sample_f2");
        const Vec& w = table_.scenario(table_.draw(rng_));
        Mat sub(d_, 1);
        double ret = 0.0;
        for (std::size_t i = 0; i < d_; ++i) {
            ret += w[i] * x[i];
            sub(i, 0) = -w[i];
        }
        return {{-ret}, std::move(sub)};
    }
    ScalarSample sample_f1(const Vec& y) override {
        check_dim(y.size(), 1, "MomentOracle::sample_f1");
        return {y[0], {1.0}};
    }
    VecSample sample_g2(const Vec& x) override {
        check_dim(x.size(), d_, "MomentOracle::sample_g2");
        const Vec& w = table_.scenario(table_.draw(rng_));
        Vec value(1 + d_, 0.0);
        Mat sub(d_, 1 + d_);
        for (std::size_t i = 0; i < d_; ++i) {
            value[0] += w[i] * x[i];
            sub(i, 0) = w[i];
            value[1 + i] = x[i];
            sub(i, 1 + i) = 1.0;
        }
        return {std::move(value), std::move(sub)};
    }
    VecSample sample_g1(const Vec& z) override {
        check_dim(z.size(), 1 + d_, "MomentOracle::sample_g1");
        const Vec& w = table_.scenario(table_.draw(rng_));
        return eval_g1(z, w);
    }

    std::optional<double> exact_objective(const Vec& x) const override {
        return -dot(table_.mean(), x);
    }
    std::optional<Vec> exact_constraint(const Vec& x) const override {
        return exact_g1(*exact_g2(x));
    }
    std::optional<Vec> exact_g1(const Vec& z) const override {
        Vec out(m_, 0.0);
        for (std::size_t s = 0; s < table_.size(); ++s) {
            const VecSample v = eval_g1(z, table_.scenario(s));
            for (std::size_t k = 0; k < m_; ++k) out[k] += table_.prob(s) * v.value[k];
        }
        return out;
    }
    std::optional<Mat> exact_g1_grad(const Vec& z) const override {
        Mat out(1 + d_, m_);
        for (std::size_t s = 0; s < table_.size(); ++s) {
            const VecSample v = eval_g1(z, table_.scenario(s));
            for (std::size_t i = 0; i < out.rows; ++i)
                for (std::size_t k = 0; k < m_; ++k)
                    out(i, k) += table_.prob(s) * v.subgrad(i, k);
        }
        return out;
    }
    std::optional<Vec> exact_g2(const Vec& x) const override {
        Vec z(1 + d_, 0.0);
        z[0] = dot(table_.mean(), x);
        for (std::size_t i = 0; i < d_; ++i) z[1 + i] = x[i];
        return z;
    }

private:
    VecSample eval_g1(const Vec& z, const Vec& w) const {
        Vec value(m_, 0.0);
        Mat grad(1 + d_, m_);
        double ret = 0.0;
        for (std::size_t i = 0; i < d_; ++i) ret += w[i] * z[1 + i];
        const double u = ret - z[0];
        for (std::size_t k = 0; k < m_; ++k) {
            const int p = orders_[k];
            value[k] = std::pow(std::abs(u), p) - bounds_[k];
            const double q = (u == 0.0) ? 0.0
                                        : p * std::pow(std::abs(u), p - 1) * (u > 0.0 ? 1.0 : -1.0);
            grad(0, k) = -q;
            for (std::size_t i = 0; i < d_; ++i) grad(1 + i, k) = q * w[i];
        }
        return {std::move(value), std::move(grad)};
    }

    ScenarioTable table_;
    std::vector<int> orders_;
    Vec bounds_;
    std::size_t d_ = 0, m_ = 0;
    RngStream rng_;
};

}  // namespace

EcProblem make_kkt_problem_ec(std::uint64_t seed, bool deterministic) {
    EcProblem p{
        "kkt-ec",
        std::make_unique<KktEcOracle>(seed, deterministic),
        FeasibleSet::box({-10.0}, {10.0}),
        Vec{0.0},
        1.0,
        Vec{2.0},
    };
    return p;
}

CcProblem make_kkt_problem_cc(std::uint64_t seed, bool deterministic) {
    CcProblem p{
        "kkt-cc",
        std::make_unique<KktCcOracle>(seed, deterministic),
        FeasibleSet::box({-10.0}, {10.0}),
        Vec{1.0},
        1.0,
        Vec{1.0},
    };
    return p;
}

EcProblem make_cvar_problem(const ScenarioTable& table, double alpha, double gamma,
                            std::uint64_t seed) {
    if (table.size() == 0) throw std::invalid_argument("make_cvar_problem: empty table");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("make_cvar_problem: alpha must be in (0,1)");
    // u ranges over [min scenario loss - 1, max scenario loss + 1]; over the
    // simplex each loss -w'x lies between the per-asset extremes.
    double lo = 0.0, hi = 0.0;
    for (std::size_t s = 0; s < table.size(); ++s)
        for (double w : table.scenario(s)) {
            lo = std::min(lo, -w);
            hi = std::max(hi, -w);
        }
    auto set = FeasibleSet::product({FeasibleSet::simplex(table.dim(), 1.0),
                                     FeasibleSet::box({lo - 1.0}, {hi + 1.0})});
    return EcProblem{"cvar",
                     std::make_unique<CvarOracle>(table, alpha, gamma, seed),
                     std::move(set),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt};
}

CcProblem make_mean_deviation_problem(const ScenarioTable& table, const Vec& gammas,
                                      double mu, std::uint64_t seed) {
    if (table.size() == 0) throw std::invalid_argument("make_mean_deviation_problem: empty table");
    if (gammas.empty()) throw std::invalid_argument("make_mean_deviation_problem: no gammas");
    if (!(mu > 0.0)) throw std::invalid_argument("make_mean_deviation_problem: mu must be > 0");
    return CcProblem{"mean-dev",
                     std::make_unique<MeanDevOracle>(table, gammas, mu, seed),
                     FeasibleSet::simplex(table.dim(), 1.0),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt};
}

CcProblem make_moment_portfolio_problem(const ScenarioTable& table, int p, const Vec& c_p,
                                        std::uint64_t seed) {
    if (table.size() == 0) throw std::invalid_argument("make_moment_portfolio_problem: empty table");
    if (p < 2 || p % 2 != 0)
        throw std::invalid_argument("make_moment_portfolio_problem: p must be even and >= 2");
    std::vector<int> orders;
    if (c_p.size() == 1) {
        orders = {p};
    } else if (c_p.size() == static_cast<std::size_t>(p / 2)) {
        for (int q = 2; q <= p; q += 2) orders.push_back(q);
    } else {
        throw std::invalid_argument(
            "make_moment_portfolio_problem: c_p must have 1 entry (order p) or p/2 entries "
            "(orders 2,4,...,p)");
    }
    for (double c : c_p)
        if (!(c > 0.0))
            throw std::invalid_argument("make_moment_portfolio_problem: bounds must be > 0");
    return CcProblem{"moment",
                     std::make_unique<MomentOracle>(table, std::move(orders), c_p, seed),
                     FeasibleSet::simplex(table.dim(), 1.0),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt};
}

ScenarioTable default_portfolio_table() {
    return ScenarioTable({0.25, 0.25, 0.25, 0.25},
                         {{0.5, 0.2, -0.1}, {-0.3, 0.4, 0.2}, {0.2, -0.2, 0.5}, {0.4, 0.1, 0.0}});
}

}  // namespace cosco
