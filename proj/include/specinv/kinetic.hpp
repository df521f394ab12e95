#pragma once

#include <functional>
#include <vector>

#include "specinv/curves.hpp"
#include "specinv/numerics.hpp"
#include "specinv/shape.hpp"

namespace specinv {

struct Optimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Extremum of objective(v) over the curve's coupling domain, searched in the
/// curve's logarithmic parameter. An optimum on the domain edge raises
/// BoundaryError carrying that coupling.
Optimum curve_extremum(const SpectralCurve& curve, const std::function<double(double)>& objective, Goal goal,
                       const char* what);

/// fbar(s) = max_v [(F(v) - s) / v]; `arg` is the maximizing coupling.
Optimum kinetic_value(const SpectralCurve& curve, double s);

/// K = max_u [F(u) - u f] for one potential value f; `arg` is the maximizer.
Optimum kfunction_value(const SpectralCurve& curve, double f);

/// Samples fbar on `s_grid` with exact slopes fbar'(s) = -1/v*.
KineticPotential kinetic_from_curve(const SpectralCurve& curve, const std::vector<double>& s_grid, unsigned threads = 1);

/// F(v) = min_s [s + v fbar(s)] on `v_grid`, with F'(v) = fbar(s*).
SpectralCurve curve_from_kinetic(const KineticPotential& kp, const std::vector<double>& v_grid, StateLabel state = {});

/// K(r) = max_v [F(v) - v f(r)] on `r_grid`.
KFunction kfunction_from_curve(const SpectralCurve& curve, const PotentialShape& shape, const std::vector<double>& r_grid,
                               unsigned threads = 1);

/// min_r [K(r) + v f(r)] over the K-function's radial domain.
Optimum energy_from_kfunction(const KFunction& k, const PotentialShape& shape, double v);

/// Monotone map g with f = g(h).
using Transformation = std::function<double(double)>;

/// F(v) = min_u [H(u) - u H'(u) + v g(H'(u))] on `v_grid`, with
/// F'(v) = g(H'(u*)).
SpectralCurve curve_from_coupling_form(const SpectralCurve& curve_h, const Transformation& g,
                                       const std::vector<double>& v_grid);

/// Pointwise form of the above; `arg` is the minimizing basis coupling u.
Optimum coupling_form_value(const SpectralCurve& curve_h, const Transformation& g, double v);

}  // namespace specinv
