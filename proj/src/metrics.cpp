#include "hasim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hasim/normal.hpp"

namespace hasim {

std::vector<double> normalized_effort_series(const std::vector<RunTrace>& traces,
                                             double effort_star) {
    if (effort_star <= 0.0)
        throw std::domain_error("normalized_effort_series: effort_star must be positive");
    if (traces.empty()) return {};
    std::size_t periods = traces.front().periods.size();
    std::vector<double> series(periods, 0.0);
    for (const RunTrace& trace : traces)
        for (std::size_t t = 0; t < periods; ++t)
            series[t] += trace.periods[t].effort / effort_star;
    for (double& v : series) v /= static_cast<double>(traces.size());
    return series;
}

double manhattan_distance(const std::vector<double>& series,
                          bool literal_first_period) {
    if (series.empty()) return 0.0;
    double d = 0.0;
    if (literal_first_period) {
        d = static_cast<double>(series.size()) * (series.front() - 1.0);
    } else {
        for (double v : series) d += v - 1.0;
    }
    return d;
}

std::pair<double, double> confidence_interval(const std::vector<double>& samples,
                                              double alpha) {
    if (samples.size() < 2)
        throw std::domain_error("confidence_interval: need at least two samples");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::domain_error("confidence_interval: alpha must lie in (0,1)");
    double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    double z = normal_quantile(1.0 - alpha / 2.0);
    return {mean - z * se, mean + z * se};
}

ScenarioResult summarize_scenario(const ScenarioConfig& scenario,
                                  const ScenarioRuns& runs, double alpha,
                                  bool manhattan_literal) {
    ScenarioResult result;
    result.scenario = scenario;
    result.alpha = alpha;

    double effort_star = scenario.reference.effort_star;
    if (scenario.toggles.normalizer == Normalizer::kPerSigma) {
        EnvironmentParams env{scenario.environment_mean, resolved_sigma(scenario)};
        Benchmark at_sigma = solve_second_best(scenario.agent, env);
        if (!at_sigma.feasible)
            throw std::runtime_error("per-sigma normalizer: benchmark infeasible");
        effort_star = at_sigma.effort_star;
    }
    result.effort_star = effort_star;

    result.series = normalized_effort_series(runs.traces, effort_star);
    std::size_t periods = result.series.size();
    result.ci_low.resize(periods);
    result.ci_high.resize(periods);
    std::vector<double> samples(runs.traces.size());
    for (std::size_t t = 0; t < periods; ++t) {
        for (std::size_t r = 0; r < runs.traces.size(); ++r)
            samples[r] = runs.traces[r].periods[t].effort / effort_star;
        if (samples.size() >= 2) {
            auto [lo, hi] = confidence_interval(samples, alpha);
            result.ci_low[t] = lo;
            result.ci_high[t] = hi;
        } else {
            result.ci_low[t] = result.series[t];
            result.ci_high[t] = result.series[t];
        }
    }
    result.manhattan = manhattan_distance(result.series, manhattan_literal);
    result.final_efforts.reserve(runs.traces.size());
    for (const RunTrace& trace : runs.traces)
        result.final_efforts.push_back(
            trace.periods.empty() ? 0.0 : trace.periods.back().effort);
    return result;
}

std::optional<int> overtake_period(const std::vector<double>& stable,
                                   const std::vector<double>& turbulent) {
    bool turbulent_led = false;
    std::size_t horizon = std::min(stable.size(), turbulent.size());
    for (std::size_t t = 0; t < horizon; ++t) {
        if (turbulent[t] > stable[t] + 1e-9)
            turbulent_led = true;
        else if (turbulent_led && stable[t] > turbulent[t])
            return static_cast<int>(t) + 1;
    }
    return std::nullopt;
}

namespace {

// Round-trip precision so that re-parsing the file reproduces the doubles
// exactly; locale-independent '.' decimal point.
std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string axis(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string memory_label(std::size_t depth) {
    return depth == 0 ? "inf" : std::to_string(depth);
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // fixed '\n' on every platform
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

void emit_timeseries_csv(const std::vector<ScenarioResult>& results,
                         const std::string& path) {
    std::ofstream out = open_or_throw(path);
    out << "scenario_id,m,q,delta,sigma_mult,t,p_tilde,ci_low,ci_high\n";
    for (const ScenarioResult& res : results) {
        const ScenarioConfig& sc = res.scenario;
        for (std::size_t t = 0; t < res.series.size(); ++t) {
            out << sc.id << ',' << memory_label(sc.memory_depth) << ','
                << sc.window_divisor << ',' << axis(sc.exploration_propensity) << ','
                << axis(sc.sigma_multiplier) << ',' << (t + 1) << ','
                << full(res.series[t]) << ',' << full(res.ci_low[t]) << ','
                << full(res.ci_high[t]) << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void emit_contour_csv(const std::vector<ScenarioResult>& results,
                      const std::string& path) {
    std::ofstream out = open_or_throw(path);
    out << "m,q,delta,sigma_mult,d\n";
    for (const ScenarioResult& res : results) {
        const ScenarioConfig& sc = res.scenario;
        out << memory_label(sc.memory_depth) << ',' << sc.window_divisor << ','
            << axis(sc.exploration_propensity) << ',' << axis(sc.sigma_multiplier)
            << ',' << full(res.manhattan) << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace hasim
