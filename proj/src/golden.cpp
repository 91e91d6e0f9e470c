#include "hasim/golden.hpp"

#include <algorithm>
#include <cmath>

namespace hasim {

ScalarMax golden_max(const std::function<double(double)>& f,
                     double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    // Candidates include the outer bounds so boundary optima survive intact.
    double best_arg = c, best_val = fc;
    for (double x : {d, lo, hi}) {
        double v = (x == d) ? fd : f(x);
        if (v > best_val) {
            best_val = v;
            best_arg = x;
        }
    }
    return {best_arg, best_val};
}

ScalarMax scan_then_golden_max(const std::function<double(double)>& f,
                               double lo, double hi, int n, double tol) {
    if (n < 2 || hi <= lo) return golden_max(f, lo, hi, tol);
    double step = (hi - lo) / n;
    int best_i = 0;
    double best_v = f(lo);
    for (int i = 1; i <= n; ++i) {
        double v = f(lo + i * step);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }
    double a = lo + std::max(0, best_i - 1) * step;
    double b = lo + std::min(n, best_i + 1) * step;
    ScalarMax refined = golden_max(f, a, b, tol);
    if (refined.value >= best_v) return refined;
    return {lo + best_i * step, best_v};
}

}  // namespace hasim
