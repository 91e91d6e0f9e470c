#include "hasim/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hasim/contracting.hpp"

namespace hasim {

void finalize_scenario(ScenarioConfig& scenario) {
    if (scenario.finalized) return;
    EnvironmentParams env{scenario.environment_mean, 0.0};
    scenario.reference = solve_second_best(scenario.agent, env);
    if (!scenario.reference.feasible)
        throw std::runtime_error(
            "scenario benchmark infeasible: no premium satisfies participation");
    scenario.finalized = true;
}

double resolved_sigma(const ScenarioConfig& scenario) {
    if (!scenario.finalized)
        throw std::logic_error("scenario not finalized; call finalize_scenario first");
    return scenario.sigma_multiplier * scenario.reference.outcome_star;
}

namespace {

constexpr double kTol = 1e-12;

// Tail of a period that ends without an accepted contract. When the parties
// still observe the market, output realizes with zero effort (x = theta) and
// both memories file it; otherwise the period leaves no trace in either
// memory. Exploration is forced next period either way.
PeriodRecord finish_without_contract(WorldState& state, const ScenarioConfig& scenario,
                                     double sigma, PeriodRecord rec) {
    if (scenario.toggles.idle_observes_output) {
        double theta = state.rng.gauss(scenario.environment_mean, sigma);
        rec.theta = theta;
        rec.outcome = theta;
        rec.theta_estimate = theta;
        state.principal_memory.record(theta);
        state.agent_memory.record(theta);
    }
    state.force_explore = true;
    state.t = rec.t;
    state.trace.push_back(rec);
    return rec;
}

// Contracting and realization shared by the bootstrap period and step():
// price the selected effort, let the agent respond, realize the world,
// update both memories and the incumbent arrangement.
PeriodRecord contract_and_realize(WorldState& state, const ScenarioConfig& scenario,
                                  double sigma, int t, Strategy strategy,
                                  double desired, double expected_theta_p,
                                  double expected_theta_a) {
    const AgentParams& agent = scenario.agent;
    PeriodRecord rec;
    rec.t = t;
    rec.strategy = strategy;
    rec.desired_effort = desired;

    std::optional<double> premium = optimal_premium(desired, expected_theta_p, agent);
    if (!premium) {
        // Unimplementable: fall back to the largest effort any premium can
        // induce at this expectation, then give up on the period.
        desired = std::min(desired, inducible_ceiling(expected_theta_p, agent));
        rec.desired_effort = desired;
        premium = optimal_premium(desired, expected_theta_p, agent);
    }
    if (!premium) {
        rec.desired_effort = 0.0;
        state.previous_premium = 1.0;  // widest bootstrap for the next attempt
        return finish_without_contract(state, scenario, sigma, rec);
    }
    rec.contracted = true;
    rec.premium = *premium;

    // The agent's utility in effort is single-peaked at his best response,
    // so the maximum over his action space sits at its upper bound and the
    // acceptance test reduces to a point check there.
    double response = point_best_response(*premium, expected_theta_a, agent);
    double at = scenario.toggles.accept_on_offer_only ? desired : response;
    bool accepted =
        point_agent_utility(*premium, at, expected_theta_a, agent) >=
        agent.reservation_utility - kTol;
    if (!accepted) {
        // Status quo and premium survive a rejection; only search resets.
        return finish_without_contract(state, scenario, sigma, rec);
    }
    rec.accepted = true;
    rec.effort = response;
    rec.theta = state.rng.gauss(scenario.environment_mean, sigma);
    rec.outcome = response * agent.rho + rec.theta;
    rec.theta_estimate = estimate_theta(rec.outcome, desired, agent.rho);

    state.principal_memory.record(rec.theta_estimate);
    state.agent_memory.record(rec.theta);
    state.status_quo = desired;
    state.previous_premium = *premium;
    state.force_explore = false;
    state.t = t;
    state.trace.push_back(rec);
    return rec;
}

}  // namespace

WorldState init_run(const ScenarioConfig& scenario, std::uint64_t seed) {
    double sigma = resolved_sigma(scenario);
    WorldState state;
    state.principal_memory = RollingMemory(scenario.memory_depth);
    state.agent_memory = RollingMemory(scenario.memory_depth);
    state.rng = RunRng(seed);
    state.trace.reserve(static_cast<std::size_t>(scenario.periods));

    // Flat priors; the widest implementable set is the action space at the
    // full-share premium. The first candidate is a single uniform draw.
    double e0 = state.principal_memory.expectation();
    std::optional<ActionSpace> space = action_space(1.0, e0, scenario.agent);
    if (!space) {
        PeriodRecord rec;
        rec.t = 1;
        state.previous_premium = 1.0;
        finish_without_contract(state, scenario, sigma, rec);
        return state;
    }
    double desired = state.rng.uniform(space->lower, space->upper);
    contract_and_realize(state, scenario, sigma, 1, Strategy::kExplore, desired, e0,
                         state.agent_memory.expectation());
    return state;
}

PeriodRecord step(WorldState& state, const ScenarioConfig& scenario) {
    const AgentParams& agent = scenario.agent;
    double sigma = resolved_sigma(scenario);
    int t = state.t + 1;
    double expected_p = state.principal_memory.expectation();
    double expected_a = state.agent_memory.expectation();

    std::optional<ActionSpace> space =
        scenario.toggles.universe == SearchUniverse::kInducible
            ? inducible_space(expected_p, agent)
            : action_space(state.previous_premium, expected_p, agent);
    if (!space) {
        // Nothing is contractible at this expectation; idle and re-open the
        // widest set next period.
        PeriodRecord rec;
        rec.t = t;
        state.previous_premium = 1.0;
        return finish_without_contract(state, scenario, sigma, rec);
    }

    // Status-quo viability at today's expectation: under the universe's
    // ceiling, and the incumbent premium still secures participation at the
    // status quo effort.
    bool viable = state.status_quo <= space->upper + kTol;
    if (viable) {
        double br_prev = point_best_response(state.previous_premium, expected_p, agent);
        std::optional<double> floor_prev = participation_lower_bound(
            state.previous_premium, expected_p,
            std::max(br_prev, state.status_quo), agent);
        if (!floor_prev || state.status_quo < *floor_prev - kTol) viable = false;
    }

    Strategy strategy = choose_strategy(
        state.principal_memory.values(), scenario.exploration_propensity,
        viable && !state.force_explore, state.rng, scenario.toggles.threshold_mode,
        scenario.toggles.degenerate, state.principal_memory.total_recorded());
    state.force_explore = false;

    std::optional<Interval> window;
    if (viable)
        window = exploitation_window(*space, scenario.window_divisor, state.status_quo);
    SearchSpace pool = strategy == Strategy::kExplore
                           ? exploration_space(*space, window)
                           : exploitation_space(*window);
    auto [c1, c2] = sample_candidates(pool, state.rng);
    double desired = select_effort(c1, c2, state.status_quo, viable,
                                   scenario.toggles.status_quo_competes);

    return contract_and_realize(state, scenario, sigma, t, strategy, desired,
                                expected_p, expected_a);
}

RunTrace run_single(const ScenarioConfig& scenario, std::uint64_t seed) {
    WorldState state = init_run(scenario, seed);
    while (state.t < scenario.periods) step(state, scenario);
    return RunTrace{std::move(state.trace)};
}

ScenarioRuns run_scenario(const ScenarioConfig& scenario, int workers) {
    if (!scenario.finalized)
        throw std::logic_error("scenario not finalized; call finalize_scenario first");
    int runs = scenario.replications;
    std::vector<RunTrace> traces(static_cast<std::size_t>(runs));
    auto work = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r)
            traces[static_cast<std::size_t>(r)] = run_single(
                scenario, derive_seed(scenario.master_seed, scenario.id,
                                      static_cast<std::uint64_t>(r)));
    };
    workers = std::clamp(workers, 1, std::max(runs, 1));
    if (workers <= 1) {
        work(0, runs);
    } else {
        std::vector<std::thread> pool;
        int chunk = (runs + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int lo = w * chunk;
            int hi = std::min(runs, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }
    return ScenarioRuns{std::move(traces)};
}

std::string scenario_label(std::size_t memory_depth, double sigma_multiplier,
                           double exploration_propensity, int window_divisor) {
    std::ostringstream os;
    os << "m";
    if (memory_depth == 0)
        os << "inf";
    else
        os << memory_depth;
    os << "-c" << sigma_multiplier << "-d" << exploration_propensity << "-q"
       << window_divisor;
    return os.str();
}

std::vector<ScenarioConfig> scenario_grid(const ScenarioConfig& base,
                                          const GridAxes& axes) {
    ScenarioConfig proto = base;
    finalize_scenario(proto);  // one benchmark shared by the whole grid
    std::vector<ScenarioConfig> grid;
    grid.reserve(axes.memory_depths.size() * axes.sigma_multipliers.size() *
                 axes.exploration_propensities.size() * axes.window_divisors.size());
    for (std::size_t m : axes.memory_depths)
        for (double c : axes.sigma_multipliers)
            for (double d : axes.exploration_propensities)
                for (int q : axes.window_divisors) {
                    ScenarioConfig sc = proto;
                    sc.memory_depth = m;
                    sc.sigma_multiplier = c;
                    sc.exploration_propensity = d;
                    sc.window_divisor = q;
                    sc.id = scenario_label(m, c, d, q);
                    grid.push_back(std::move(sc));
                }
    return grid;
}

}  // namespace hasim
