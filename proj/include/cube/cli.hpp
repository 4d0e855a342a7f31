#pragma once

// Command-line front end. Every subcommand writes JSON (or, for `network`,
// one edge per line) to stdout or to the requested file, and a one-line
// summary to stderr.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cube/lattice.hpp"
#include "cube/laurent.hpp"

namespace cube {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command {
  Help,
  Evolve,
  Groves,
  JCoeff,
  QPoly,
  Network,
  VerifyPeriodicity,
  VerifyCylrec,
  VerifyPleth,
  VerifyGroves,
  VerifyEntropy,
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitWindowTooSmall = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

struct RunConfig {
  Command command = Command::Help;
  std::string help;  // usage text for Command::Help

  std::string region = "triangle";  // evolve: triangle, cylinder or torus
  int n = 1;
  int m = 0;
  Vertex A{3, -3, 0}, B{0, 3, -3};
  std::optional<Vertex> v;
  int t = 2;
  int t_max = 12;
  std::optional<int> r;
  int i = 0;
  std::optional<int> j;  // restricts verify cylrec/pleth to one vertex of the column

  std::vector<std::pair<Vertex, Rational>> assignments;  // canonical vertices of the region
  std::optional<Rational> fill;
  bool keep_symbolic = false;

  std::optional<std::string> json_out, svg_out, dot_out;

  bool symbolic = false;
  std::optional<std::uint64_t> seed;  // verify cylrec: random point instead of symbolic
  int trials = 3;
  int l_max = 8;

  /// The region the assignments refer to.
  Region build_region() const;
};

/// args excludes the program name. Throws UsageError naming the offending flag.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a parsed configuration and returns the exit code: 0 pass, 1 fail,
/// 2 window too small, 74 on I/O failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run; usage errors print to err and return 64.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cube
