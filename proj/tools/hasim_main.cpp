// Command-line front end: `run` sweeps scenarios and writes the CSV outputs
// plus a metadata file, `benchmark` prints the deterministic contract
// solution, `grid-info` lists the scenario grid.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hasim/benchmark.hpp"
#include "hasim/config.hpp"
#include "hasim/engine.hpp"
#include "hasim/metrics.hpp"
#include "hasim/version.hpp"

namespace {

using nlohmann::json;

std::string memory_text(std::size_t depth) {
    return depth == 0 ? std::string("inf") : std::to_string(depth);
}

json settings_to_json(const hasim::Settings& s) {
    json j;
    j["model"] = {{"eta", s.base.agent.eta},
                  {"rho", s.base.agent.rho},
                  {"reservation_utility", s.base.agent.reservation_utility},
                  {"disutility", s.base.agent.disutility},
                  {"environment_mean", s.base.environment_mean}};
    json memory = json::array();
    for (std::size_t m : s.axes.memory_depths) memory.push_back(memory_text(m));
    j["grid"] = {{"memory", memory},
                 {"sigma_mult", s.axes.sigma_multipliers},
                 {"delta", s.axes.exploration_propensities},
                 {"q", s.axes.window_divisors}};
    j["run"] = {{"periods", s.base.periods},
                {"replications", s.base.replications},
                {"master_seed", s.base.master_seed},
                {"workers", s.run.workers},
                {"alpha", s.run.alpha},
                {"output_dir", s.run.output_dir},
                {"scenarios", s.run.scenario_ids}};
    const hasim::ScenarioToggles& t = s.base.toggles;
    j["modes"] = {
        {"threshold_mode",
         t.threshold_mode == hasim::ThresholdMode::kCalibrated ? "calibrated"
                                                               : "literal"},
        {"degenerate", t.degenerate == hasim::DegeneratePolicy::kExploit
                           ? "exploit"
                           : "bernoulli"},
        {"status_quo_competes", t.status_quo_competes},
        {"accept_on_offer_only", t.accept_on_offer_only},
        {"idle_observes_output", t.idle_observes_output},
        {"universe", t.universe == hasim::SearchUniverse::kInducible
                         ? "inducible"
                         : "previous_premium"},
        {"normalizer",
         t.normalizer == hasim::Normalizer::kSigmaZero ? "sigma_zero" : "per_sigma"},
        {"manhattan_literal", s.run.manhattan_literal}};
    return j;
}

// CLI option bundle for the `run` and `grid-info` subcommands; only options
// the user actually supplied (or set through the environment) override the
// config file.
struct RunFlags {
    std::string config_path;
    std::string output_dir;
    int workers = 0;
    std::uint64_t seed = 0;
    int replications = 0;
    int periods = 0;
    std::vector<std::string> scenario_ids;
    std::string memory_list, sigma_list, delta_list, q_list;
    std::vector<std::string> sets;  // generic section.key=value overrides
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_outputs) {
    cmd->add_option("--config", f.config_path, "Config file (INI sections)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--memory", f.memory_list,
                    "Memory-depth axis, e.g. 1,3,inf");
    cmd->add_option("--sigma-mult", f.sigma_list,
                    "Turbulence axis (multiples of the benchmark outcome)");
    cmd->add_option("--delta", f.delta_list, "Exploration-propensity axis");
    cmd->add_option("--q", f.q_list, "Window-divisor axis");
    cmd->add_option("--set", f.sets,
                    "Generic override section.key=value (repeatable)");
    if (with_outputs) {
        cmd->add_option("--scenario", f.scenario_ids,
                        "Restrict to these scenario ids (repeatable)");
        cmd->add_option("--seed", f.seed, "Master seed");
        cmd->add_option("--workers", f.workers, "Worker threads")
            ->envname("HASIM_WORKERS");
        cmd->add_option("--output-dir", f.output_dir, "Output directory")
            ->envname("HASIM_OUTPUT_DIR");
        cmd->add_option("--replications", f.replications, "Runs per scenario");
        cmd->add_option("--periods", f.periods, "Periods per run");
    }
}

// count() for an option the subcommand may not define at all.
bool supplied(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

hasim::Settings resolve_settings(const CLI::App* cmd, const RunFlags& f) {
    hasim::Settings s = f.config_path.empty()
                            ? hasim::default_settings()
                            : hasim::parse_config_file(f.config_path);
    if (supplied(cmd, "--memory"))
        hasim::apply_setting(s, "grid", "memory", f.memory_list);
    if (supplied(cmd, "--sigma-mult"))
        hasim::apply_setting(s, "grid", "sigma_mult", f.sigma_list);
    if (supplied(cmd, "--delta")) hasim::apply_setting(s, "grid", "delta", f.delta_list);
    if (supplied(cmd, "--q")) hasim::apply_setting(s, "grid", "q", f.q_list);
    for (const std::string& kv : f.sets) {
        std::size_t dot = kv.find('.');
        std::size_t eq = kv.find('=');
        if (dot == std::string::npos || eq == std::string::npos || dot > eq)
            throw hasim::ConfigError("--set expects section.key=value, got '" + kv +
                                     "'");
        hasim::apply_setting(s, kv.substr(0, dot), kv.substr(dot + 1, eq - dot - 1),
                             kv.substr(eq + 1));
    }
    if (supplied(cmd, "--scenario")) s.run.scenario_ids = f.scenario_ids;
    if (supplied(cmd, "--seed")) s.base.master_seed = f.seed;
    if (supplied(cmd, "--workers")) {
        if (f.workers < 1) throw hasim::ConfigError("invariant violated: workers must be >= 1");
        s.run.workers = f.workers;
    }
    if (supplied(cmd, "--output-dir")) s.run.output_dir = f.output_dir;
    if (supplied(cmd, "--replications")) {
        if (f.replications < 1)
            throw hasim::ConfigError("invariant violated: replications must be >= 1");
        s.base.replications = f.replications;
    }
    if (supplied(cmd, "--periods")) {
        if (f.periods < 1)
            throw hasim::ConfigError("invariant violated: periods must be >= 1");
        s.base.periods = f.periods;
    }
    return s;
}

std::vector<hasim::ScenarioConfig> select_scenarios(const hasim::Settings& s) {
    std::vector<hasim::ScenarioConfig> grid = hasim::scenario_grid(s.base, s.axes);
    if (s.run.scenario_ids.empty()) return grid;
    std::vector<hasim::ScenarioConfig> picked;
    for (const std::string& id : s.run.scenario_ids) {
        auto it = std::find_if(grid.begin(), grid.end(),
                               [&](const auto& sc) { return sc.id == id; });
        if (it == grid.end())
            throw hasim::ConfigError("unknown scenario id '" + id +
                                     "' (see `hasim grid-info`)");
        picked.push_back(*it);
    }
    return picked;
}

int cmd_run(const CLI::App* cmd, const RunFlags& flags) {
    hasim::Settings settings = resolve_settings(cmd, flags);
    std::vector<hasim::ScenarioConfig> scenarios = select_scenarios(settings);

    std::filesystem::create_directories(settings.run.output_dir);
    std::filesystem::path dir(settings.run.output_dir);

    std::vector<hasim::ScenarioResult> results;
    results.reserve(scenarios.size());
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const hasim::ScenarioConfig& sc = scenarios[i];
        hasim::ScenarioRuns runs = hasim::run_scenario(sc, settings.run.workers);
        results.push_back(hasim::summarize_scenario(sc, runs, settings.run.alpha,
                                                    settings.run.manhattan_literal));
        std::fprintf(stderr, "[%zu/%zu] %s d=%.3f\n", i + 1, scenarios.size(),
                     sc.id.c_str(), results.back().manhattan);
    }

    std::string ts_path = (dir / "timeseries.csv").string();
    std::string contour_path = (dir / "contour.csv").string();
    hasim::emit_timeseries_csv(results, ts_path);
    hasim::emit_contour_csv(results, contour_path);

    json meta;
    meta["version"] = hasim::kVersion;
    meta["master_seed"] = settings.base.master_seed;
    meta["scenario_count"] = scenarios.size();
    meta["outputs"] = {ts_path, contour_path};
    meta["resolved_config"] = settings_to_json(settings);
    std::string meta_path = (dir / "run_metadata.json").string();
    std::ofstream meta_out(meta_path, std::ios::binary);
    if (!meta_out) throw std::runtime_error("cannot open output file: " + meta_path);
    meta_out << meta.dump(2) << '\n';

    std::cout << "wrote " << ts_path << ", " << contour_path << ", " << meta_path
              << " (" << scenarios.size() << " scenarios)\n";
    return 0;
}

int cmd_grid_info(const CLI::App* cmd, const RunFlags& flags) {
    hasim::Settings settings = resolve_settings(cmd, flags);
    std::vector<hasim::ScenarioConfig> scenarios = select_scenarios(settings);
    for (const hasim::ScenarioConfig& sc : scenarios)
        std::cout << sc.id << " m=" << memory_text(sc.memory_depth)
                  << " sigma_mult=" << sc.sigma_multiplier
                  << " delta=" << sc.exploration_propensity
                  << " q=" << sc.window_divisor << '\n';
    return 0;
}

struct BenchmarkFlags {
    double eta = hasim::AgentParams{}.eta;
    double rho = hasim::AgentParams{}.rho;
    double reservation = hasim::AgentParams{}.reservation_utility;
    double disutility = hasim::AgentParams{}.disutility;
    double mean = 0.0;
    double sigma = 0.0;
};

int cmd_benchmark(const BenchmarkFlags& f) {
    hasim::AgentParams agent{f.eta, f.rho, f.reservation, f.disutility};
    hasim::EnvironmentParams env{f.mean, f.sigma};
    hasim::Benchmark b = hasim::solve_second_best(agent, env);
    if (!b.feasible) {
        std::cerr << "no premium satisfies the participation constraint\n";
        return 1;
    }
    std::printf("premium*      %.10g\n", b.premium_star);
    std::printf("effort*       %.10g\n", b.effort_star);
    std::printf("outcome*      %.10g\n", b.outcome_star);
    std::printf("principal_eu* %.10g\n", b.principal_eu);
    std::printf("agent_eu*     %.10g\n", b.agent_eu);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hidden-action contracting simulation"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "Run scenarios, write CSV outputs");
    add_run_flags(run_cmd, run_flags, true);

    RunFlags grid_flags;
    CLI::App* grid_cmd =
        app.add_subcommand("grid-info", "List the scenario grid");
    add_run_flags(grid_cmd, grid_flags, false);

    BenchmarkFlags bench_flags;
    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "Print the deterministic contract solution");
    bench_cmd->add_option("--eta", bench_flags.eta, "Risk aversion");
    bench_cmd->add_option("--rho", bench_flags.rho, "Effort productivity");
    bench_cmd->add_option("--reservation-utility", bench_flags.reservation,
                          "Outside option");
    bench_cmd->add_option("--disutility", bench_flags.disutility,
                          "Quadratic effort cost coefficient");
    bench_cmd->add_option("--mean", bench_flags.mean, "Environment mean");
    bench_cmd->add_option("--sigma", bench_flags.sigma,
                          "Environment standard deviation (absolute)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run_cmd->parsed()) return cmd_run(run_cmd, run_flags);
        if (grid_cmd->parsed()) return cmd_grid_info(grid_cmd, grid_flags);
        if (bench_cmd->parsed()) return cmd_benchmark(bench_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
