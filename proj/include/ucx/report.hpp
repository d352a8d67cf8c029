#pragma once

#include <cstddef>
#include <string>

namespace ucx {

/// Outcome of one numerical claim check.
struct VerificationReport {
  std::string claim;
  std::size_t grid = 0;
  double worst_value = 0.0;
  double worst_arg = 0.0;
  bool pass = false;

  /// `claim=<id> pass=<bool> worst=<float> at=<float> grid=<n>`
  std::string line() const;
};

/// %.17g: round-trips every double.
std::string format_double(double v);

}  // namespace ucx
