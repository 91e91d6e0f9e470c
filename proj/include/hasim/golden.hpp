#pragma once

// Bounded scalar maximization: golden-section search, optionally preceded by
// a coarse scan so multimodal objectives are refined in the right bracket.

#include <functional>

namespace hasim {

struct ScalarMax {
    double arg = 0.0;
    double value = 0.0;
};

// Golden-section maximization of f on [lo, hi] down to an argument interval
// of width tol. Assumes f is unimodal on the bracket; boundary optima are
// returned as such.
ScalarMax golden_max(const std::function<double(double)>& f,
                     double lo, double hi, double tol);

// Evaluates f at n+1 equally spaced points, then golden-refines inside the
// bracket around the best sample. Guards against multimodality as long as
// the scan is fine enough to land in the global mode's basin.
ScalarMax scan_then_golden_max(const std::function<double(double)>& f,
                               double lo, double hi, int n, double tol);

}  // namespace hasim
