#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Command { Table, Verify, Envelope, BruteForce };
enum class Format { Csv, Json };

/// Raised for malformed configurations; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Table;
  double p = 2.0;
  std::vector<double> eps;  // empty when not supplied
  std::size_t grid_n = 10001;
  std::uint64_t seed = 1;
  std::string output;  // empty: the output stream passed to run()
  Format format = Format::Csv;

  // command-specific knobs
  double s_max = 100.0;
  double s_probe = 1e3;
  std::size_t slices = 25;
  std::size_t restarts = 200;
  std::size_t local_steps = 2000;
  std::size_t trials = 10000;  // witness_test in verify; 0 skips it
  std::optional<std::vector<double>> x;

  /// Throws UsageError unless p > 1, every ε in [0,2], grid_n >= 2.
  void validate() const;
};

/// `lo:hi:n` (n equispaced values, inclusive) or a single number.
std::vector<double> parse_eps_grid(const std::string& spec);

/// `x1,x2,x3`. Throws UsageError on malformed input or negative entries.
std::vector<double> parse_point(const std::string& spec);

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_envelope(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bruteforce(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ucx::cli
