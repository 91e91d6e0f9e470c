#pragma once

// The principal's search apparatus: endogenous action-space boundaries,
// exploration threshold and strategy choice, exploitation window, candidate
// sampling, and effort selection.

#include <cstddef>
#include <deque>
#include <optional>
#include <utility>

#include "hasim/model.hpp"
#include "hasim/rng.hpp"

namespace hasim {

struct ActionSpace {
    double lower = 0.0;  // participation bound
    double upper = 0.0;  // incentive-compatibility bound
};

enum class Strategy { kExploit, kExplore };

// Direction of the exploration threshold. Read literally, the threshold
// quantile at delta makes higher delta explore *less*; calibrated mode flips
// it to Quantile(1-delta) so the long-run exploration frequency equals
// delta, matching the parameter's stated meaning. Literal mode is kept for
// sensitivity runs.
enum class ThresholdMode { kCalibrated, kLiteral };

// What to do when the estimate window has no dispersion (e.g. a depth-1
// memory): treat the signal as "no evidence of change" and exploit, or fall
// back to a Bernoulli(delta) coin.
enum class DegeneratePolicy { kExploit, kBernoulli };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct SearchSpace {
    Strategy kind = Strategy::kExploit;
    Interval intervals[2];
    int count = 0;

    void add(Interval iv) {
        if (iv.length() > 1e-15 || count == 0) intervals[count++] = iv;
    }
    double total_length() const {
        double s = 0.0;
        for (int i = 0; i < count; ++i) s += intervals[i].length();
        return s;
    }
};

// Quantile of a normal fitted to the estimates (sample mean / sample sd).
// Returns nullopt when the fit is degenerate (fewer than two values or zero
// dispersion); the caller applies its degenerate policy. Throws
// std::domain_error for delta in {0, 1}.
std::optional<double> exploration_threshold(const std::deque<double>& estimates,
                                            double delta);

// tau=0 strategy choice. Forced exploration when the status quo is not
// feasible; Bernoulli(delta) while fewer than two observations exist in the
// entire history (no dispersion basis yet); otherwise threshold comparison
// of the newest estimate, with degenerate windows resolved per policy.
Strategy choose_strategy(const std::deque<double>& estimates, double delta,
                         bool status_quo_feasible, RunRng& rng,
                         ThresholdMode mode = ThresholdMode::kCalibrated,
                         DegeneratePolicy degenerate = DegeneratePolicy::kExploit,
                         std::size_t observations_ever = static_cast<std::size_t>(-1));

// Boundaries the agent's constraints impose given the previous premium and
// an expectation of the environment: upper = the agent's best response
// (he would never exceed his own optimum), lower = smallest effort meeting
// participation. nullopt when participation fails everywhere.
std::optional<ActionSpace> action_space(double premium_prev, double expected_theta,
                                        const AgentParams& agent);

// Largest effort any premium in [0,1] can make incentive-compatible at this
// expectation: where the agent's best response peaks over the premium.
double inducible_ceiling(double expected_theta, const AgentParams& agent);

// The ceiling above, paired with the participation bound at the
// corresponding premium: the widest set of contractible efforts. nullopt
// when even the most generous premium cannot secure participation.
std::optional<ActionSpace> inducible_space(double expected_theta,
                                           const AgentParams& agent);

// Interval of width (upper-lower)/q centered on the status quo (projected
// into the space if it sits outside), shifted to stay inside the space
// (width is preserved except at exact corners).
Interval exploitation_window(const ActionSpace& space, int q, double status_quo);

// The complement of the exploitation window within the action space (up to
// two intervals). When no window applies, the whole space.
SearchSpace exploration_space(const ActionSpace& space,
                              const std::optional<Interval>& window);

SearchSpace exploitation_space(const Interval& window);

// Two independent uniform draws over the union of intervals, probability
// proportional to interval length.
std::pair<double, double> sample_candidates(const SearchSpace& space, RunRng& rng);

// Highest-effort selection (first-order stochastic dominance of anticipated
// utility for a risk-neutral principal): max of the candidates and, when
// feasible and competing, the status quo.
double select_effort(double c1, double c2, double status_quo,
                     bool status_quo_feasible, bool status_quo_competes = true);

}  // namespace hasim
