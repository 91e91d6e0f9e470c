#pragma once

// Normal-distribution helpers: CDF via erfc and the Wichura AS241 inverse
// CDF (absolute error well below 1e-9 over the full open unit interval).

namespace hasim {

double normal_cdf(double z);

// Quantile of the standard normal. Throws std::domain_error for p outside (0,1).
double normal_quantile(double p);

// Quantile of N(mean, sd). sd must be > 0 (degenerate distributions are the
// caller's responsibility; see exploration_threshold).
double normal_quantile(double p, double mean, double sd);

}  // namespace hasim
