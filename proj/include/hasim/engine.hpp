#pragma once

// Period loop for one hidden-action relationship and the replication /
// scenario drivers around it. Each period: the principal picks a search
// strategy and two candidate efforts, selects the best, prices it with the
// minimal implementing premium, the agent accepts or rejects against his
// own expectation, effort and the environment realize, and both parties
// file what they observed into their rolling memories.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hasim/benchmark.hpp"
#include "hasim/memory.hpp"
#include "hasim/model.hpp"
#include "hasim/rng.hpp"
#include "hasim/search.hpp"

namespace hasim {

// Where the per-period search bounds come from: the inducible set at the
// principal's current environment expectation (default), or the literal
// action space anchored on the previous premium.
enum class SearchUniverse { kInducible, kPreviousPremium };

// Which benchmark effort normalizes reported series: the deterministic
// benchmark (default, one common yardstick across the noise grid) or the
// benchmark re-solved at each scenario's sigma.
enum class Normalizer { kSigmaZero, kPerSigma };

struct ScenarioToggles {
    ThresholdMode threshold_mode = ThresholdMode::kCalibrated;
    DegeneratePolicy degenerate = DegeneratePolicy::kExploit;
    bool status_quo_competes = true;
    // Acceptance tests the offered effort itself instead of the agent's
    // best response within his action space.
    bool accept_on_offer_only = false;
    // In periods without a contract (rejection, or no implementable offer)
    // the parties still watch the market: output theta realizes with zero
    // effort and both memories record it. Disabling freezes both memories
    // through such periods.
    bool idle_observes_output = true;
    SearchUniverse universe = SearchUniverse::kInducible;
    Normalizer normalizer = Normalizer::kSigmaZero;
};

struct ScenarioConfig {
    std::string id;
    std::size_t memory_depth = 1;  // 0 = unbounded
    int window_divisor = 10;       // q
    double exploration_propensity = 0.5;  // delta
    double sigma_multiplier = 0.05;       // sigma = multiplier * benchmark outcome
    int periods = 20;
    int replications = 700;
    AgentParams agent;
    PrincipalParams principal;
    double environment_mean = 0.0;
    ScenarioToggles toggles;
    std::uint64_t master_seed = 7;

    // Filled by finalize_scenario(); sigma and normalization derive from it.
    Benchmark reference;
    bool finalized = false;
};

// Solves the deterministic benchmark for the scenario's agent and caches it
// on the config (idempotent). Must run before any run_* call.
void finalize_scenario(ScenarioConfig& scenario);

double resolved_sigma(const ScenarioConfig& scenario);

struct PeriodRecord {
    int t = 0;
    Strategy strategy = Strategy::kExplore;
    double desired_effort = 0.0;   // contracted effort (0 when no contract)
    double premium = 0.0;
    bool contracted = false;       // an implementable offer existed
    bool accepted = false;
    double effort = 0.0;
    double theta = 0.0;
    double outcome = 0.0;          // effort * rho + theta
    double theta_estimate = 0.0;   // what the principal filed (0 if nothing)
};

struct RunTrace {
    std::vector<PeriodRecord> periods;
};

struct WorldState {
    int t = 0;  // last completed period
    double status_quo = 0.0;
    double previous_premium = 0.0;
    bool force_explore = false;
    RollingMemory principal_memory;
    RollingMemory agent_memory;
    RunRng rng{0};
    std::vector<PeriodRecord> trace;
};

// First period: the candidate effort is drawn uniformly from the action
// space at premium 1 (the widest implementable set) and a flat expectation;
// contracting and learning then run as in any later period.
WorldState init_run(const ScenarioConfig& scenario, std::uint64_t seed);

// One period t >= 2. Appends to state.trace and returns the record.
PeriodRecord step(WorldState& state, const ScenarioConfig& scenario);

RunTrace run_single(const ScenarioConfig& scenario, std::uint64_t seed);

struct ScenarioRuns {
    std::vector<RunTrace> traces;  // run-index order regardless of workers
};

// R replications, seeds derived from (master_seed, scenario id, run index);
// runs split across `workers` threads, results folded in index order.
ScenarioRuns run_scenario(const ScenarioConfig& scenario, int workers = 1);

struct GridAxes {
    std::vector<std::size_t> memory_depths = {1, 3, 0};
    std::vector<double> sigma_multipliers = {0.05, 0.25, 0.45, 0.65};
    std::vector<double> exploration_propensities = {0.25, 0.5, 0.75};
    std::vector<int> window_divisors = {3, 5, 10};
};

// Cartesian product of the axes over a base config, in axis-major order
// (memory, sigma, delta, q), with stable descriptive ids. All returned
// configs are finalized.
std::vector<ScenarioConfig> scenario_grid(const ScenarioConfig& base,
                                          const GridAxes& axes = GridAxes{});

std::string scenario_label(std::size_t memory_depth, double sigma_multiplier,
                           double exploration_propensity, int window_divisor);

}  // namespace hasim
