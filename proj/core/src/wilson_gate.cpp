#include "ara/wilson_gate.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "ara/errors.hpp"
#include "ara/normal.hpp"

namespace ara {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument(fmt::format("normal quantile needs p in (0, 1), got {}", p));
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

std::string to_string(GateMode mode) {
  return mode == GateMode::kPaperFaithful ? "paper-faithful" : "standard-wilson";
}

GateMode parse_gate_mode(const std::string& text) {
  if (text == "paper-faithful") return GateMode::kPaperFaithful;
  if (text == "standard-wilson") return GateMode::kStandardWilson;
  throw InvalidArgument("unknown gate mode '" + text +
                        "' (expected paper-faithful or standard-wilson)");
}

GateParams GateParams::make(double alpha, GateMode mode) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InvalidArgument(fmt::format("alpha {} outside (0, .5)", alpha));
  }
  GateParams gate;
  gate.alpha = alpha;
  gate.mode = mode;
  gate.z = normal_quantile(1.0 - alpha);
  gate.n0 = static_cast<int>(std::ceil(gate.z * gate.z));
  return gate;
}

double wilson_lower_bound(std::int64_t trials, std::int64_t failures,
                          const GateParams& gate) {
  if (trials < 1) throw InvalidArgument("gate needs at least one trial");
  if (failures < 0 || failures > trials) {
    throw InvalidArgument(
        fmt::format("failures {} outside 0..{}", failures, trials));
  }
  const double n = static_cast<double>(trials);
  const double f = static_cast<double>(failures);
  const double z2 = gate.z * gate.z;
  const double spread = gate.mode == GateMode::kPaperFaithful
                            ? f * (n - f) / (n * n * n)
                            : f * (n - f) / n;
  return (n - f + z2 / 2.0) / (n + z2) -
         gate.z / (n + z2) * std::sqrt(spread + z2 / 4.0);
}

bool wilson_gate(std::int64_t trials, std::int64_t failures,
                 const GateParams& gate) {
  return wilson_lower_bound(trials, failures, gate) > 0.5;
}

}  // namespace ara
