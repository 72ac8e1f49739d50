#pragma once
// Built-in finite-scenario problem constructors: the two analytic-KKT
// verification instances, the CVaR-constrained portfolio, the risk-averse
// mean-deviation portfolio, and the high-moment portfolio.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "cosco/oracle.hpp"
#include "cosco/projection.hpp"

namespace cosco {

struct EcProblem {
    std::string tag;
    std::unique_ptr<SingleLevelOracle> oracle;
    FeasibleSet set;
    std::optional<Vec> x_star;
    std::optional<double> f_star;
    std::optional<Vec> lambda_star;
};

struct CcProblem {
    std::string tag;
    std::unique_ptr<CompositionalOracle> oracle;
    FeasibleSet set;
    std::optional<Vec> x_star;
    std::optional<double> f_star;
    std::optional<Vec> lambda_star;
};

// P1: X=[-10,10], F(x)=(x-1)^2 with Rademacher noise on the inner level and
// the constraint, g(x)=x. Ground truth x*=0, F*=1, lambda*=2.
EcProblem make_kkt_problem_ec(std::uint64_t seed, bool deterministic = false);

// P2: X=[-10,10], F(x)=(x-2)^2, inner constraint g2(x)=x with Rademacher
// noise, outer g1(z)=z^2-1 noiseless. G(x)=x^2-1; x*=1, F*=1, lambda*=1.
CcProblem make_kkt_problem_cc(std::uint64_t seed, bool deterministic = false);

// CVaR-constrained portfolio over (x, u): maximize E[w'x] subject to
// u + E[(-w'x - u)_+]/(1-alpha) <= gamma, x on the unit simplex and u in a
// box wide enough to contain the value-at-risk.
EcProblem make_cvar_problem(const ScenarioTable& table, double alpha, double gamma,
                            std::uint64_t seed);

// Mean-deviation portfolio: maximize E[w'x] subject to
// E[l_j] - E[(l_j - E[l_j])_+] >= gamma_j for linear utilities l_j, with the
// (.)_+ in the outer level replaced by the softplus s_mu.
CcProblem make_mean_deviation_problem(const ScenarioTable& table, const Vec& gammas,
                                      double mu, std::uint64_t seed);

// High-moment portfolio: maximize E[w'x] on the unit simplex subject to the
// central-moment bounds M_p(x) <= c. With a single bound the constraint has
// order p; with p/2 bounds the orders are 2, 4, ..., p.
CcProblem make_moment_portfolio_problem(const ScenarioTable& table, int p, const Vec& c_p,
                                        std::uint64_t seed);

// Softplus smoothing of (.)_+: s_mu(u) = mu*log(1+exp(u/mu)), with
// 0 <= s_mu(u) - (u)_+ <= mu*log(2).
double softplus(double u, double mu);
double softplus_grad(double u, double mu);

// Default 4-scenario / 3-asset return table bundled with the harness.
ScenarioTable default_portfolio_table();

}  // namespace cosco
