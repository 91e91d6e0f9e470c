#pragma once

// Economic primitives shared by every other component: parameter blocks,
// production, compensation, and the two parties' utility functions.

#include <cmath>
#include <stdexcept>

namespace hasim {

struct AgentParams {
    double eta = 0.5;                  // Arrow-Pratt absolute risk aversion (> 0)
    double rho = 50.0;                 // productivity: output units per effort unit (> 0)
    double reservation_utility = 0.0;  // outside option the contract must weakly beat
    double disutility = 0.1;           // coefficient of the quadratic effort cost (fixed, not swept)
};

struct PrincipalParams {
    double delta = 0.5;  // exploration propensity in [0,1]
};

struct EnvironmentParams {
    double mean = 0.0;   // mean of the exogenous shock theta
    double sigma = 0.0;  // standard deviation of theta (>= 0)
};

struct Contract {
    double premium = 0.0;  // agent's share of the outcome, in [0,1]
};

// exp() guarded against overflow; 700 is safely below the IEEE double limit.
inline double clamped_exp(double x) {
    return std::exp(x < 700.0 ? (x > -700.0 ? x : -700.0) : 700.0);
}

// x = a*rho + theta
inline double outcome(double effort, double rho, double theta) {
    return effort * rho + theta;
}

// s(x) = x * p; negative outcomes are shared too (no floor on x).
inline double compensation(double x, double premium) {
    if (premium < 0.0 || premium > 1.0)
        throw std::domain_error("compensation: premium must lie in [0,1]");
    return x * premium;
}

inline double principal_utility(double x, double s) {
    return x - s;
}

// CARA utility of compensation minus quadratic effort cost.
inline double agent_utility(double s, double effort, const AgentParams& agent) {
    return (1.0 - clamped_exp(-agent.eta * s)) / agent.eta -
           agent.disutility * effort * effort;
}

// Agent utility at a point expectation of the environment: the deterministic
// utility of sharing x~ = a*rho + expected_theta at premium p. Both parties
// evaluate candidate contracts through this function with their own
// expectation plugged in.
inline double point_agent_utility(double premium, double effort,
                                  double expected_theta, const AgentParams& agent) {
    double x_tilde = effort * agent.rho + expected_theta;
    return agent_utility(premium * x_tilde, effort, agent);
}

}  // namespace hasim
