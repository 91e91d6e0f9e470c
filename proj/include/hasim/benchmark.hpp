#pragma once

// Numerical second-best contract for the CARA-normal linear-sharing model:
// the premium maximizing the principal's expected utility subject to the
// agent's participation and best-response behavior. Supplies the effort
// normalizer a* and the outcome scale x* used by the scenario grid.

#include "hasim/model.hpp"

namespace hasim {

struct Benchmark {
    bool feasible = false;
    double premium_star = 0.0;
    double effort_star = 0.0;
    double outcome_star = 0.0;  // a* rho + mu
    double principal_eu = 0.0;
    double agent_eu = 0.0;
};

// Exact expectation of the agent's utility over theta ~ N(mu, sigma):
// (1 - exp(-eta p (a rho + mu) + eta^2 p^2 sigma^2 / 2)) / eta - gamma a^2.
// The exponential's normal moment makes quadrature unnecessary.
double expected_agent_utility(double premium, double effort,
                              const AgentParams& agent, const EnvironmentParams& env);

// argmax over a >= 0 of expected_agent_utility; golden-section on a bracket
// grown until the objective is decreasing (the objective is strictly
// concave in effort). Tolerance 1e-8 in effort.
double agent_best_response(double premium, const AgentParams& agent,
                           const EnvironmentParams& env);

// Outer search over the premium: 1000-point coarse scan guards against the
// multimodality that appears at high sigma (a participation-binding branch
// far from the interior one), then golden refinement. Infeasibility (no
// premium satisfies participation) is reported explicitly.
Benchmark solve_second_best(const AgentParams& agent, const EnvironmentParams& env);

// Exhaustive 2-D grid maximization of the same program; test oracle only.
// Pure grid argmax (no derivative, bracket, or golden machinery shared with
// the solver). After the full coarse pass, the winning cell is re-gridded
// `refinements` times at 10x resolution — a plain grid cannot otherwise
// resolve the principal's utility to the comparison tolerance, since a
// best-response offset of one effort step shifts it by (1-p)*rho*step.
// refinements = 0 is the literal single-grid search.
Benchmark brute_force_oracle(const AgentParams& agent, const EnvironmentParams& env,
                             double p_step, double a_step, double a_max = 10.0,
                             int refinements = 4);

}  // namespace hasim
