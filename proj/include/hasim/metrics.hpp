#pragma once

// Performance measures over scenario runs — normalized effort series,
// Manhattan distance, confidence intervals — and the CSV emitters for the
// time-series and contour-grid outputs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasim/engine.hpp"

namespace hasim {

struct ScenarioResult {
    ScenarioConfig scenario;
    double effort_star = 0.0;       // normalizer actually used
    std::vector<double> series;     // mean normalized effort per period
    std::vector<double> ci_low;     // two-sided normal CI at alpha
    std::vector<double> ci_high;
    double alpha = 0.01;
    double manhattan = 0.0;
    std::vector<double> final_efforts;  // raw per-run last-period efforts
};

// Mean over runs of a_t / effort_star, per period. Throws std::domain_error
// when effort_star <= 0.
std::vector<double> normalized_effort_series(const std::vector<RunTrace>& traces,
                                             double effort_star);

// Sum of (series_t - 1) over the whole horizon: total shortfall against the
// benchmark. literal_first_period reproduces the variant that sums the
// first period's value T times (kept for auditing only).
double manhattan_distance(const std::vector<double>& series,
                          bool literal_first_period = false);

// Normal-approximation two-sided interval: mean +- z_{1-alpha/2} s/sqrt(n).
// Throws std::domain_error on fewer than two samples or alpha outside (0,1).
std::pair<double, double> confidence_interval(const std::vector<double>& samples,
                                              double alpha);

// Full per-scenario aggregation. The normalizer follows the scenario's
// toggle: the cached deterministic benchmark, or a re-solve at the
// scenario's actual sigma.
ScenarioResult summarize_scenario(const ScenarioConfig& scenario,
                                  const ScenarioRuns& runs, double alpha = 0.01,
                                  bool manhattan_literal = false);

// First period (1-based) at which the stable series rises above the
// turbulent one after the turbulent one has led; nullopt when that never
// happens.
std::optional<int> overtake_period(const std::vector<double>& stable,
                                   const std::vector<double>& turbulent);

// Columns: scenario_id, m, q, delta, sigma_mult, t, p_tilde, ci_low,
// ci_high. One row per scenario-period; unbounded memory prints as "inf".
// Values are emitted with round-trip precision. Throws std::runtime_error
// (with the path) when the file cannot be opened.
void emit_timeseries_csv(const std::vector<ScenarioResult>& results,
                         const std::string& path);

// Columns: m, q, delta, sigma_mult, d — one row per scenario.
void emit_contour_csv(const std::vector<ScenarioResult>& results,
                      const std::string& path);

}  // namespace hasim
