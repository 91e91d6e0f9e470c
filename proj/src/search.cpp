#include "hasim/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hasim/contracting.hpp"
#include "hasim/normal.hpp"

namespace hasim {

std::optional<double> exploration_threshold(const std::deque<double>& estimates,
                                            double delta) {
    if (estimates.empty())
        throw std::domain_error("exploration_threshold: need at least one estimate");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::domain_error("exploration_threshold: delta must lie in (0,1)");
    if (estimates.size() < 2) return std::nullopt;

    double n = static_cast<double>(estimates.size());
    double mean = 0.0;
    for (double v : estimates) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : estimates) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    if (sd <= 0.0) return std::nullopt;
    return normal_quantile(delta, mean, sd);
}

Strategy choose_strategy(const std::deque<double>& estimates, double delta,
                         bool status_quo_feasible, RunRng& rng,
                         ThresholdMode mode, DegeneratePolicy degenerate,
                         std::size_t observations_ever) {
    if (!status_quo_feasible) return Strategy::kExplore;
    if (delta <= 0.0) return Strategy::kExploit;
    if (delta >= 1.0) return Strategy::kExplore;

    // With fewer than two observations ever made there is no dispersion to
    // calibrate a threshold against; the propensity acts directly.
    if (observations_ever < 2 || estimates.empty())
        return rng.bernoulli(delta) ? Strategy::kExplore : Strategy::kExploit;

    double quantile = (mode == ThresholdMode::kCalibrated) ? 1.0 - delta : delta;
    std::optional<double> kappa = exploration_threshold(estimates, quantile);
    if (!kappa) {
        if (degenerate == DegeneratePolicy::kBernoulli)
            return rng.bernoulli(delta) ? Strategy::kExplore : Strategy::kExploit;
        return Strategy::kExploit;  // a dispersion-free window signals no change
    }
    return estimates.back() > *kappa ? Strategy::kExplore : Strategy::kExploit;
}

std::optional<ActionSpace> action_space(double premium_prev, double expected_theta,
                                        const AgentParams& agent) {
    double upper = point_best_response(premium_prev, expected_theta, agent);
    std::optional<double> lower =
        participation_lower_bound(premium_prev, expected_theta, upper, agent);
    if (!lower) return std::nullopt;
    return ActionSpace{*lower, upper};
}

double inducible_ceiling(double expected_theta, const AgentParams& agent) {
    // The ceiling solves the joint stationarity of the agent's effort FOC
    // and its premium envelope: maximizing the best response over the
    // premium pins p x~ = 1/eta, which reduces to
    //   2 gamma a (a rho + E) = rho / (e eta),
    // a single increasing equation in effort past x~ = 0.
    double target = agent.rho / (std::exp(1.0) * agent.eta);
    auto h = [&](double a) {
        return 2.0 * agent.disutility * a * (a * agent.rho + expected_theta) - target;
    };
    double lo = std::max(0.0, -expected_theta / agent.rho);
    double hi = lo + 1.0;
    while (h(hi) < 0.0 && hi < 1.0e9) hi = lo + (hi - lo) * 2.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<ActionSpace> inducible_space(double expected_theta,
                                           const AgentParams& agent) {
    double ceiling = inducible_ceiling(expected_theta, agent);
    double x_tilde = ceiling * agent.rho + expected_theta;
    double p_hat = std::min(1.0, 1.0 / (agent.eta * x_tilde));
    std::optional<double> lower =
        participation_lower_bound(p_hat, expected_theta, ceiling, agent);
    if (!lower) return std::nullopt;
    return ActionSpace{*lower, ceiling};
}

Interval exploitation_window(const ActionSpace& space, int q, double status_quo) {
    // The status quo may sit below the current space when participation at
    // the incumbent premium is laxer than at the space's ceiling premium;
    // anchor on its projection into the space.
    double anchor = std::clamp(status_quo, space.lower, space.upper);
    double width = (space.upper - space.lower) / q;
    double lo = anchor - 0.5 * width;
    double hi = anchor + 0.5 * width;
    if (lo < space.lower) {  // shift up, width preserved
        hi += space.lower - lo;
        lo = space.lower;
    }
    if (hi > space.upper) {  // shift down; truncate only at the corner
        lo -= hi - space.upper;
        hi = space.upper;
        lo = std::max(lo, space.lower);
    }
    return {lo, hi};
}

SearchSpace exploration_space(const ActionSpace& space,
                              const std::optional<Interval>& window) {
    SearchSpace s;
    s.kind = Strategy::kExplore;
    if (window) {
        s.add({space.lower, std::max(space.lower, window->lo)});
        s.add({std::min(space.upper, window->hi), space.upper});
        if (s.total_length() > 1e-15) {
            // drop any zero-length placeholder kept by add()
            if (s.count == 2 && s.intervals[0].length() <= 1e-15) {
                s.intervals[0] = s.intervals[1];
                s.count = 1;
            }
            return s;
        }
        s.count = 0;  // window covers everything; fall back to the whole space
    }
    s.add({space.lower, space.upper});
    return s;
}

SearchSpace exploitation_space(const Interval& window) {
    SearchSpace s;
    s.kind = Strategy::kExploit;
    s.add(window);
    return s;
}

std::pair<double, double> sample_candidates(const SearchSpace& space, RunRng& rng) {
    double total = space.total_length();
    auto draw = [&]() {
        if (total <= 0.0) return space.intervals[0].lo;  // zero-width space
        double u = rng.uniform(0.0, total);
        for (int i = 0; i < space.count; ++i) {
            double len = space.intervals[i].length();
            if (u <= len || i == space.count - 1)
                return std::min(space.intervals[i].lo + u, space.intervals[i].hi);
            u -= len;
        }
        return space.intervals[space.count - 1].hi;
    };
    double c1 = draw();
    double c2 = draw();
    return {c1, c2};
}

double select_effort(double c1, double c2, double status_quo,
                     bool status_quo_feasible, bool status_quo_competes) {
    double best = std::max(c1, c2);
    if (status_quo_feasible && status_quo_competes)
        best = std::max(best, status_quo);
    return best;
}

}  // namespace hasim
