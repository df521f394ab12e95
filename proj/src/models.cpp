#include "specinv/models.hpp"

#include <cmath>

#include "specinv/error.hpp"
#include "specinv/solver.hpp"

namespace specinv {

namespace {

struct Transform {
  double A = 1.0;
  double b = 1.0;
  double B = 0.0;
};

Transform transform_of(const PotentialShape& shape) {
  if (!(shape.scale() > 0.0)) {
    throw Error(ErrorCode::unsupported_model, "a flat shape has no bound states", {{"shape", shape.describe()}});
  }
  return {shape.scale(), shape.length(), shape.shift()};
}

[[noreturn]] void unsupported(const PotentialShape& shape, StateLabel state) {
  throw Error(ErrorCode::unsupported_model, "no closed form for this shape and state",
              {{"shape", shape.describe()}, {"n", state.n}, {"ell", state.ell}});
}

bool is_coulomb(const PotentialShape& s) {
  return s.kind() == ShapeKind::coulomb || (s.kind() == ShapeKind::power && s.exponent() == -1.0);
}

}  // namespace

double power_P(double q, double E) {
  if (!(q > -2.0) || q == 0.0) throw Error(ErrorCode::domain, "power exponent must satisfy q > -2, q != 0", {{"q", q}});
  return std::pow(std::fabs(E), (2.0 + q) / (2.0 * q)) * std::pow(2.0 / (2.0 + q), 1.0 / q) *
         std::sqrt(std::fabs(q / (2.0 + q)));
}

PowerSpectralConstants power_constants(double q, StateLabel state) {
  validate(state);
  if (!(q > -2.0)) throw Error(ErrorCode::domain, "power exponent must exceed -2", {{"q", q}});
  PowerSpectralConstants c{q, state.n, state.ell, 0.0, 0.0};
  const double nl = state.n + state.ell;
  if (q == -1.0) {
    c.E_nl = -1.0 / (4.0 * nl * nl);
    c.P_nl = nl;
  } else if (q == 2.0) {
    c.E_nl = 4.0 * state.n + 2.0 * state.ell - 1.0;
    c.P_nl = 2.0 * state.n + state.ell - 0.5;
  } else {
    RadialProblem p{PotentialShape::power(q), 1.0, state.n, state.ell, {}};
    c.E_nl = solve_state(p).energy;
    c.P_nl = power_P(q, c.E_nl);
  }
  return c;
}

double log_energy(StateLabel state) {
  RadialProblem p{PotentialShape::log(), 1.0, state.n, state.ell, {}};
  return solve_state(p).energy;
}

double log_P(double E_log) { return std::sqrt(0.5 * std::exp(2.0 * E_log - 1.0)); }

SpectralCurve exact_spectral_curve(const PotentialShape& shape, StateLabel state) {
  validate(state);
  const Transform t = transform_of(shape);
  const PotentialShape base = shape.base();
  std::function<double(double)> F, dF;
  double critical = 0.0;
  const double nsq = static_cast<double>(state.n) * state.n;

  if (is_coulomb(base)) {
    const double k = 0.25 / ((state.n + state.ell) * static_cast<double>(state.n + state.ell));
    F = [k](double v) { return -k * v * v; };
    dF = [k](double v) { return -2.0 * k * v; };
  } else if (base.kind() == ShapeKind::power) {
    const double q = base.exponent();
    const double E = power_constants(q, state).E_nl;
    const double p = 2.0 / (2.0 + q);
    F = [E, p](double v) { return E * std::pow(v, p); };
    dF = [E, p](double v) { return E * p * std::pow(v, p - 1.0); };
  } else if (base.kind() == ShapeKind::log) {
    const double E = log_energy(state);
    F = [E](double v) { return v * E - 0.5 * v * std::log(v); };
    dF = [E](double v) { return E - 0.5 * std::log(v) - 0.5; };
  } else if (base.kind() == ShapeKind::hulthen && state.ell == 0) {
    const double n = state.n;
    critical = nsq;
    F = [n, nsq](double v) {
      const double x = (v - nsq) / (2.0 * n);
      return -x * x;
    };
    dF = [nsq](double v) { return -(v - nsq) / (2.0 * nsq); };
  } else {
    unsupported(shape, state);
  }

  if (!shape.transformed()) return SpectralCurve::analytic(state, critical, F, dF);
  const double c = t.A * t.b * t.b;
  auto Fs = [F, t, c](double v) { return F(c * v) / (t.b * t.b) + t.B * v; };
  auto dFs = [dF, t, c](double v) { return t.A * dF(c * v) + t.B; };
  return SpectralCurve::analytic(state, critical / c, Fs, dFs, 1e16 / std::max(c, 1.0));
}

KineticPotential exact_kinetic_potential(const PotentialShape& shape, StateLabel state) {
  validate(state);
  const Transform t = transform_of(shape);
  const PotentialShape base = shape.base();
  std::function<double(double)> fb, dfb;

  if (base.kind() == ShapeKind::coulomb || base.kind() == ShapeKind::power) {
    const double q = is_coulomb(base) ? -1.0 : base.exponent();
    const double E = power_constants(q, state).E_nl;
    const double c = (2.0 / q) * std::pow(std::fabs(q * E / (2.0 + q)), 0.5 * (q + 2.0));
    fb = [c, q](double s) { return c * std::pow(s, -0.5 * q); };
    dfb = [c, q](double s) { return -0.5 * q * c * std::pow(s, -0.5 * q - 1.0); };
  } else if (base.kind() == ShapeKind::log) {
    const double E = log_energy(state);
    fb = [E](double s) { return E - 0.5 * std::log(2.0 * std::exp(1.0) * s); };
    dfb = [](double s) { return -0.5 / s; };
  } else if (base.kind() == ShapeKind::hulthen && state.ell == 0) {
    const double nsq = static_cast<double>(state.n) * state.n;
    fb = [nsq](double s) { return -0.5 * (std::sqrt(4.0 * s / nsq + 1.0) - 1.0); };
    dfb = [nsq](double s) { return -1.0 / (nsq * std::sqrt(4.0 * s / nsq + 1.0)); };
  } else {
    unsupported(shape, state);
  }

  if (!shape.transformed()) return KineticPotential::analytic(fb, dfb);
  const double b2 = t.b * t.b;
  auto fs = [fb, t, b2](double s) { return t.A * fb(b2 * s) + t.B; };
  auto dfs = [dfb, t, b2](double s) { return t.A * b2 * dfb(b2 * s); };
  return KineticPotential::analytic(fs, dfs, 1e-12 / b2, 1e16 / b2);
}

KFunction exact_kfunction(const PotentialShape& shape, StateLabel state) {
  validate(state);
  const Transform t = transform_of(shape);
  const PotentialShape base = shape.base();
  double P = 0.0;
  if (is_coulomb(base)) {
    P = state.n + state.ell;
  } else if (base.kind() == ShapeKind::power) {
    P = power_constants(base.exponent(), state).P_nl;
  } else if (base.kind() == ShapeKind::log) {
    P = log_P(log_energy(state));
  } else {
    unsupported(shape, state);
  }
  const KFunction k = KFunction::inverse_square(P);
  return t.b == 1.0 ? k : k.scaled(t.b);
}

}  // namespace specinv
