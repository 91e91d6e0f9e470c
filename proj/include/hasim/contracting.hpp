#pragma once

// Contract formation: the minimal premium implementing a desired effort,
// the agent's acceptance decision, and the agent's effort choice.

#include <optional>

#include "hasim/model.hpp"
#include "hasim/search.hpp"

namespace hasim {

struct Offer {
    Contract contract;
    double desired_effort = 0.0;
    double principal_expected_theta = 0.0;
};

// The effort maximizing point_agent_utility at this premium and
// expectation: root of the stationarity condition
//   p * rho * exp(-eta p (a rho + E)) = 2 gamma a
// (the objective is strictly concave in effort). Bisection, tolerance 1e-10.
double point_best_response(double premium, double expected_theta,
                           const AgentParams& agent);

// Smallest effort in [0, upper] with point_agent_utility >= the reservation
// utility; nullopt when participation fails on the whole range.
std::optional<double> participation_lower_bound(double premium, double expected_theta,
                                                double upper, const AgentParams& agent);

// Smallest premium in [0,1] making desired_effort both incentive-compatible
// (best response >= desired) and participation-satisfying under the
// principal's point expectation. Principal utility falls in the premium, so
// the minimal feasible premium is the optimum. nullopt when the effort is
// not implementable by any premium in [0,1].
std::optional<double> optimal_premium(double desired_effort, double expected_theta,
                                      const AgentParams& agent);

// tau=3: accept iff the best utility available inside the action space under
// the agent's own expectation weakly beats the outside option.
bool accept_contract(const Offer& offer, double agent_expected_theta,
                     const AgentParams& agent, const ActionSpace& space);

// tau=4: the agent's chosen effort — argmax of point utility over the space
// under his own expectation. Golden-section, tolerance 1e-8; boundary optima
// permitted.
double agent_effort(const Contract& contract, double agent_expected_theta,
                    const ActionSpace& space, const AgentParams& agent);

}  // namespace hasim
