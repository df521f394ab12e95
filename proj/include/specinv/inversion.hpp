#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "specinv/curves.hpp"
#include "specinv/shape.hpp"
#include "specinv/solver.hpp"

namespace specinv {

struct InversionConfig {
  explicit InversionConfig(SpectralCurve target_curve) : target(std::move(target_curve)) {}

  SpectralCurve target;
  PotentialShape seed = PotentialShape::coulomb();
  /// Replaces the seed's own K-function in the first step.
  std::optional<KFunction> seed_kfunction;
  StateLabel state{};
  double r_lo = 0.05;
  double r_hi = 10.0;
  std::size_t r_points = 200;
  /// Couplings where curve errors are measured; empty selects the default.
  std::vector<double> v_window;
  int max_iterations = 3;
  double tolerance = 1e-6;
  /// Iterate curves are sampled on a geometric lattice with this density.
  int samples_per_decade = 32;
  double monotone_tolerance = 1e-6;
  GridControls grid{};
  unsigned threads = 1;
};

/// Geometric grid of 24 couplings on [max(1.2 v1, v1 + 0.5), 50 v1], or
/// [0.5, 100] when v1 = 0.
std::vector<double> default_v_window(double critical);

struct InversionState {
  explicit InversionState(PotentialShape s) : shape(std::move(s)) {}

  int iteration = 0;
  PotentialShape shape;
  /// Filled when the iterate's own curve and K-function are needed.
  std::optional<SpectralCurve> curve;
  std::optional<KFunction> kfun;
  std::vector<double> r;        // reconstruction grid
  std::vector<double> f;        // shape on the grid
  std::vector<double> window_F; // iterate curve on the coupling window
  double curve_error = 0.0;
  double shape_delta = 0.0;
  bool projected = false;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

struct InversionResult {
  std::vector<InversionState> history;
  std::vector<double> v_window;
  bool converged = false;

  const InversionState& final_state() const { return history.back(); }
};

/// State 0 for the configured seed, with its curve error on the window.
InversionState initial_state(const InversionConfig& config, const std::vector<double>& v_window);

/// Attaches the iterate's K-function to `state` (sampling its curve when
/// needed) and returns the next iterate built from the target curve.
InversionState invert_step(InversionState& state, const InversionConfig& config, const std::vector<double>& v_window);

/// Iterates until the curve error drops to the tolerance or the iteration
/// budget is spent. Three consecutive error increases raise a divergence
/// error.
InversionResult run_inversion(const InversionConfig& config);

/// K(r) = (n + l)^2 / r^2, the Coulomb K-function of the same excitation.
KFunction excited_state_seed(int n, int ell);

/// Per-iterate `r,f` and `v,F,error` tables plus manifest.json.
void export_history(const std::filesystem::path& dir, const InversionResult& result, const InversionConfig& config,
                    const std::string& header, bool timings);

nlohmann::json manifest(const InversionResult& result, const InversionConfig& config, bool timings);

}  // namespace specinv
