#include "ucx/report.hpp"

#include <cstdio>

namespace ucx {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string VerificationReport::line() const {
  return "claim=" + claim + " pass=" + (pass ? "true" : "false") + " worst=" + format_double(worst_value) +
         " at=" + format_double(worst_arg) + " grid=" + std::to_string(grid);
}

}  // namespace ucx
