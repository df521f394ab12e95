#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "specinv/curves.hpp"
#include "specinv/shape.hpp"

namespace specinv {

/// Mesh and accuracy controls. Zero means "choose automatically".
struct GridControls {
  double r_min = 0.0;
  double r_max = 0.0;
  double step_cap = 0.005;      // largest step in the mesh variable
  double phase_step = 0.05;     // step times local wavenumber, allowed region
  double decay_step = 0.5;      // step times local decay rate, forbidden region
  double decay_integral = 30.0; // WKB e-folds kept beyond the outer turning point
  double rmax_tolerance = 1e-8; // relative energy change accepted when r_max grows
  std::size_t max_points = 400000;
};

struct RadialProblem {
  PotentialShape shape = PotentialShape::coulomb();
  double v = 1.0;
  int n = 1;
  int ell = 0;
  GridControls grid{};
};

struct MeshStats {
  double r_min = 0.0;
  double r_max = 0.0;
  double scale = 0.0;  // crossover radius between log and linear spacing
  double step = 0.0;
  std::size_t points = 0;
  int rmax_extensions = 0;
};

struct EigenSolution {
  double energy = 0.0;
  int nodes = 0;
  double norm_check = 0.0;
  double expectation_f = 0.0;
  bool converged = false;
  double residual = 0.0;
  MeshStats mesh{};
  /// Normalized reduced radial function u(r) = r psi(r) on the mesh.
  std::vector<double> r;
  std::vector<double> u;
};

/// n-th eigenvalue of -u'' + [v f(r) + l(l+1)/r^2] u = E u.
EigenSolution solve_state(const RadialProblem& problem);

/// Samples F(v) and F'(v) = <f> on `v_grid`. Throws PartialCurveError when
/// some couplings have no bound state.
SpectralCurve spectral_curve(const PotentialShape& shape, StateLabel state, const std::vector<double>& v_grid,
                             const GridControls& grid = {}, unsigned threads = 1);

/// Number of bound states with energy below the continuum threshold
/// (radial states of angular momentum ell). Short-range shapes only.
int threshold_state_count(const PotentialShape& shape, double v, int ell);

/// Smallest coupling at which state (n, ell) is bound; 0 for shapes with
/// a confining or long-range tail.
double detect_critical_coupling(const PotentialShape& shape, StateLabel state);

struct LowerBound {
  double value = 0.0;
  double radius = 0.0;
};

/// min over r of [(l + 1/2)^2 / r^2 + v f(r)]; l = 0 gives 1/(4 r^2).
LowerBound energy_lower_bound(const PotentialShape& shape, double v, int ell = 0);

nlohmann::json to_json(const EigenSolution& solution);
nlohmann::json to_json(const MeshStats& mesh);

}  // namespace specinv
