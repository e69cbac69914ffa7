#pragma once

#include <cstdint>
#include <string>

namespace ara {

/// kPaperFaithful uses the radicand f(N-f)/N^3 + z^2/4 as published with
/// the termination lemma; kStandardWilson uses the textbook f(N-f)/N.
/// Only the former yields the 2f + n0 trial counts.
enum class GateMode { kPaperFaithful, kStandardWilson };

std::string to_string(GateMode mode);
GateMode parse_gate_mode(const std::string& text);

struct GateParams {
  double alpha = 0.05;  // one-sided risk in (0, .5)
  double z = 0.0;       // Phi^{-1}(1 - alpha)
  int n0 = 0;           // ceil(z^2)
  GateMode mode = GateMode::kPaperFaithful;

  /// Throws InvalidArgument unless 0 < alpha < .5.
  static GateParams make(double alpha = 0.05,
                         GateMode mode = GateMode::kPaperFaithful);

  friend bool operator==(const GateParams&, const GateParams&) = default;
};

/// Lower confidence bound on the leading outcome's probability after
/// `trials` trials, `failures` of which it did not win.
double wilson_lower_bound(std::int64_t trials, std::int64_t failures,
                          const GateParams& gate);

/// True when the bound exceeds .5, i.e. the leading outcome is the most
/// likely one with confidence 1 - alpha. Throws InvalidArgument unless
/// 0 <= failures <= trials and trials >= 1.
bool wilson_gate(std::int64_t trials, std::int64_t failures,
                 const GateParams& gate);

}  // namespace ara
