#pragma once

namespace ara {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1).
double normal_quantile(double p);

}  // namespace ara
