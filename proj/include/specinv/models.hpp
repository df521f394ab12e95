#pragma once

#include "specinv/curves.hpp"
#include "specinv/shape.hpp"

namespace specinv {

/// Unit-coupling eigenvalue E(q) of -Delta + sgn(q) r^q and the matching
/// coefficient P(q) of the K-function P^2 / r^2.
struct PowerSpectralConstants {
  double q = 0.0;
  int n = 1;
  int ell = 0;
  double E_nl = 0.0;
  double P_nl = 0.0;
};

/// P from E: |E|^{(2+q)/(2q)} (2/(2+q))^{1/q} |q/(2+q)|^{1/2}.
double power_P(double q, double E);

/// Closed forms for q = -1 and q = 2, the radial solver otherwise.
PowerSpectralConstants power_constants(double q, StateLabel state);

/// Unit-coupling eigenvalue of -Delta + ln r.
double log_energy(StateLabel state);
/// P for the logarithm: P^2 = exp(2 E - 1) / 2.
double log_P(double E_log);

/// Analytic F(v) for Hulthen (ell = 0), power, log and Coulomb shapes,
/// including any outer scale/shift transformation.
SpectralCurve exact_spectral_curve(const PotentialShape& shape, StateLabel state);

/// Analytic fbar(s) for the same family.
KineticPotential exact_kinetic_potential(const PotentialShape& shape, StateLabel state);

/// P^2 / r^2 for power, log and Coulomb shapes (scaled as K(r/b)/b^2).
KFunction exact_kfunction(const PotentialShape& shape, StateLabel state);

}  // namespace specinv
