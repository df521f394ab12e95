#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specinv/error.hpp"
#include "specinv/shape.hpp"

namespace specinv::cli {

inline constexpr const char* kVersion = "0.1.0";

/// `min:max:count[:lin|log]`; log spacing is the default.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  bool log = true;

  std::vector<double> values() const;
  std::string text() const;
};

GridSpec parse_grid(std::string_view text);

/// `coulomb`, `hulthen`, `log`, `power Q`, `coulomb_plus W A B` with W one of
/// `linear`, `quadratic`, `log` or `power Q`. A trailing `scale A b B` applies
/// A f(r/b) + B.
PotentialShape parse_shape(std::string_view text);

struct RunConfig {
  std::string command;
  std::string preset;
  std::string shape;
  std::string shape_csv;
  int n = 1;
  int ell = 0;
  double v = 1.0;
  std::optional<GridSpec> vgrid, sgrid, rgrid;
  // inversion
  std::string target;
  std::string target_csv;
  std::optional<GridSpec> target_vgrid;
  std::optional<GridSpec> window;
  std::string seed = "coulomb";
  bool excited_seed = false;
  int iterations = 3;
  double tolerance = 1e-6;
  int samples_per_decade = 32;
  // solver overrides
  double step_cap = 0.0;
  double rmax_tolerance = 0.0;
  // output
  std::filesystem::path out = "out";
  bool timings = false;
  unsigned threads = 0;

  /// Sorted key=value lines of every setting that affects results.
  std::string canonical() const;
  /// FNV-1a (64 bit) of `canonical()`, as 16 hex digits.
  std::string hash() const;
  /// `specinv <version> config=<hash>`.
  std::string header() const;
};

std::uint64_t fnv1a(std::string_view bytes);

/// Thrown by `parse_args` for --help and --version.
struct InfoRequest {
  std::string text;
};

/// Parses flags and an optional `--config` file of key=value lines (flags win)
/// and expands presets. Throws bad_input on any parse problem.
RunConfig parse_args(const std::vector<std::string>& args);

int exit_code(ErrorCode code) noexcept;

/// Executes one command. Summaries go to `out`; artifacts to `config.out`.
void run(const RunConfig& config, std::ostream& out);

/// Full entry point: parse, run, report failures as JSON on `err`.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace specinv::cli
