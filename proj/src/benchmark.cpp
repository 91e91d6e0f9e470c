#include "hasim/benchmark.hpp"

#include <cmath>
#include <limits>

#include "hasim/golden.hpp"

namespace hasim {

double expected_agent_utility(double premium, double effort,
                              const AgentParams& agent, const EnvironmentParams& env) {
    double exponent = -agent.eta * premium * (effort * agent.rho + env.mean) +
                      0.5 * agent.eta * agent.eta * premium * premium * env.sigma * env.sigma;
    return (1.0 - clamped_exp(exponent)) / agent.eta -
           agent.disutility * effort * effort;
}

double agent_best_response(double premium, const AgentParams& agent,
                           const EnvironmentParams& env) {
    if (premium <= 0.0) return 0.0;
    auto f = [&](double a) { return expected_agent_utility(premium, a, agent, env); };
    // The objective is strictly concave in effort, so once it decreases over
    // a probe step the maximizer is bracketed.
    double hi = 1.0;
    constexpr double kHardCap = 1.0e6;
    while (hi < kHardCap && f(hi) > f(hi * (1.0 - 1e-9))) hi *= 2.0;
    return golden_max(f, 0.0, hi, 1e-8).arg;
}

namespace {

struct PremiumEval {
    bool feasible = false;
    double effort = 0.0;
    double principal = -std::numeric_limits<double>::infinity();
};

PremiumEval evaluate_premium(double p, const AgentParams& agent,
                             const EnvironmentParams& env) {
    PremiumEval e;
    e.effort = agent_best_response(p, agent, env);
    if (expected_agent_utility(p, e.effort, agent, env) <
        agent.reservation_utility - 1e-12)
        return e;
    e.feasible = true;
    e.principal = (1.0 - p) * (e.effort * agent.rho + env.mean);
    return e;
}

}  // namespace

Benchmark solve_second_best(const AgentParams& agent, const EnvironmentParams& env) {
    auto objective = [&](double p) { return evaluate_premium(p, agent, env).principal; };
    ScalarMax best = scan_then_golden_max(objective, 0.0, 1.0, 1000, 1e-7);

    Benchmark b;
    PremiumEval e = evaluate_premium(best.arg, agent, env);
    if (!e.feasible) return b;  // no premium satisfies participation
    b.feasible = true;
    b.premium_star = best.arg;
    b.effort_star = e.effort;
    b.outcome_star = e.effort * agent.rho + env.mean;
    b.principal_eu = e.principal;
    b.agent_eu = expected_agent_utility(b.premium_star, b.effort_star, agent, env);
    return b;
}

Benchmark brute_force_oracle(const AgentParams& agent, const EnvironmentParams& env,
                             double p_step, double a_step, double a_max,
                             int refinements) {
    // Grid best response with zooming: re-grid the winning cell at 10x
    // resolution. Valid because the agent's objective is concave in effort,
    // so the continuous maximizer lies within one step of the grid argmax.
    auto grid_br = [&](double p) {
        double lo = 0.0, hi = a_max, step = a_step;
        double best_a = 0.0, best_u = -std::numeric_limits<double>::infinity();
        for (int level = 0;; ++level) {
            int n = static_cast<int>(std::ceil((hi - lo) / step));
            best_u = -std::numeric_limits<double>::infinity();
            for (int j = 0; j <= n; ++j) {
                double a = std::min(lo + j * step, hi);
                double u = expected_agent_utility(p, a, agent, env);
                if (u > best_u) {
                    best_u = u;
                    best_a = a;
                }
            }
            if (level == refinements) break;
            lo = std::max(0.0, best_a - step);
            hi = std::min(a_max, best_a + step);
            step /= 10.0;
        }
        return std::pair<double, double>{best_a, best_u};
    };

    Benchmark b;
    double p_lo = 0.0, p_hi = 1.0, step = p_step;
    for (int level = 0;; ++level) {
        double best_principal = -std::numeric_limits<double>::infinity();
        double best_p = 0.0;
        bool found = false;
        int n = static_cast<int>(std::ceil((p_hi - p_lo) / step));
        for (int i = 0; i <= n; ++i) {
            double p = std::min(p_lo + i * step, p_hi);
            auto [br_a, br_u] = grid_br(p);
            if (br_u < agent.reservation_utility - 1e-12) continue;
            double principal = (1.0 - p) * (br_a * agent.rho + env.mean);
            if (!found || principal > best_principal) {
                found = true;
                best_principal = principal;
                best_p = p;
            }
        }
        if (!found) return b;  // nothing feasible at this resolution
        if (level == refinements) {
            auto [br_a, br_u] = grid_br(best_p);
            b.feasible = true;
            b.premium_star = best_p;
            b.effort_star = br_a;
            b.outcome_star = br_a * agent.rho + env.mean;
            b.principal_eu = best_principal;
            b.agent_eu = br_u;
            return b;
        }
        p_lo = std::max(0.0, best_p - step);
        p_hi = std::min(1.0, best_p + step);
        step /= 10.0;
    }
}

}  // namespace hasim
