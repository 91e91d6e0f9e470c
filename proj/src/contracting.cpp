#include "hasim/contracting.hpp"

#include <algorithm>
#include <cmath>

#include "hasim/golden.hpp"

namespace hasim {

namespace {

// Marginal gain minus marginal cost of effort at a point expectation;
// positive below the best response, negative above it.
double effort_foc(double premium, double a, double expected_theta,
                  const AgentParams& agent) {
    double x_tilde = a * agent.rho + expected_theta;
    return premium * agent.rho * clamped_exp(-agent.eta * premium * x_tilde) -
           2.0 * agent.disutility * a;
}

}  // namespace

double point_best_response(double premium, double expected_theta,
                           const AgentParams& agent) {
    if (premium <= 0.0) return 0.0;
    double hi = 1.0;
    while (effort_foc(premium, hi, expected_theta, agent) > 0.0 && hi < 1.0e9)
        hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (effort_foc(premium, mid, expected_theta, agent) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> participation_lower_bound(double premium, double expected_theta,
                                                double upper, const AgentParams& agent) {
    auto u = [&](double a) { return point_agent_utility(premium, a, expected_theta, agent); };
    double ubar = agent.reservation_utility;
    double peak = std::clamp(point_best_response(premium, expected_theta, agent), 0.0, upper);
    if (u(peak) < ubar - 1e-12) return std::nullopt;
    if (u(0.0) >= ubar) return 0.0;
    // Utility rises from below ubar at 0 to >= ubar at the peak; bisect for
    // the crossing.
    double lo = 0.0, hi = peak;
    while (hi - lo > 1e-8) {
        double mid = 0.5 * (lo + hi);
        if (u(mid) >= ubar)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::optional<double> optimal_premium(double desired_effort, double expected_theta,
                                      const AgentParams& agent) {
    if (desired_effort <= 1e-15 && agent.reservation_utility <= 0.0) return 0.0;

    double x_tilde = desired_effort * agent.rho + expected_theta;
    if (x_tilde <= 0.0) return std::nullopt;  // no share of a non-positive expectation pays

    // Incentive compatibility: smallest premium whose best response reaches
    // desired_effort, i.e. the FOC root on the rising branch of the
    // best-response curve. The FOC in p at fixed a peaks at p_hat = 1/(eta
    // x~); beyond it no premium helps.
    double p_hat = std::min(1.0, 1.0 / (agent.eta * x_tilde));
    auto g = [&](double p) { return effort_foc(p, desired_effort, expected_theta, agent); };
    double g_peak = g(p_hat);
    double p_ic;
    if (g_peak < -1e-9) return std::nullopt;  // beyond the inducible ceiling
    if (g_peak <= 0.0) {
        p_ic = p_hat;  // exactly at the ceiling: the peak premium implements it
    } else {
        double lo = 0.0, hi = p_hat;
        while (hi - lo > 1e-10) {
            double mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        p_ic = hi;
    }

    // Participation at the desired effort itself: closed-form premium from
    // (1 - e^(-eta p x~))/eta - gamma a^2 = ubar.
    double needed = 1.0 - agent.eta * (agent.reservation_utility +
                                       agent.disutility * desired_effort * desired_effort);
    if (needed <= 0.0) return std::nullopt;  // CARA bound: no compensation suffices
    double p_pc = -std::log(needed) / (agent.eta * x_tilde);
    if (p_pc < 0.0) p_pc = 0.0;

    double p = std::max(p_ic, p_pc);
    // A participation premium past the best-response peak no longer induces
    // desired_effort (the agent's response falls off beyond p_hat).
    if (p > 1.0 || g(p) < -1e-9) return std::nullopt;
    return p;
}

bool accept_contract(const Offer& offer, double agent_expected_theta,
                     const AgentParams& agent, const ActionSpace& space) {
    double a = agent_effort(offer.contract, agent_expected_theta, space, agent);
    return point_agent_utility(offer.contract.premium, a, agent_expected_theta, agent) >=
           agent.reservation_utility - 1e-12;
}

double agent_effort(const Contract& contract, double agent_expected_theta,
                    const ActionSpace& space, const AgentParams& agent) {
    auto u = [&](double a) {
        return point_agent_utility(contract.premium, a, agent_expected_theta, agent);
    };
    if (space.upper - space.lower < 1e-12) return space.lower;
    return golden_max(u, space.lower, space.upper, 1e-8).arg;
}

}  // namespace hasim
