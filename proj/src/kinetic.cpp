#include "specinv/kinetic.hpp"

#include <cmath>
#include <limits>

#include "specinv/error.hpp"

namespace specinv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Points outside an operand's domain count as infeasible rather than fatal.
std::function<double(double)> guarded(const std::function<double(double)>& fn) {
  return [&fn](double x) {
    try {
      return fn(x);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::range || e.code() == ErrorCode::domain) return kNaN;
      throw;
    }
  };
}

Optimum log_extremum(double lo, double hi, const std::function<double(double)>& objective, Goal goal,
                     const char* what, const char* variable) {
  auto obj = guarded(objective);
  auto in_t = [&](double t) { return obj(std::exp(t)); };
  const auto best = scan_extremum(in_t, std::log(lo), std::log(hi), goal);
  const double x = std::exp(best.arg);
  if (best.edge != ScanResult::Edge::none) {
    const auto side = best.edge == ScanResult::Edge::lower ? BoundaryError::Side::lower : BoundaryError::Side::upper;
    throw BoundaryError(std::string(what) + ": optimum on the edge of the " + variable + " domain", x, side,
                        {{variable, x}, {"lo", lo}, {"hi", hi}});
  }
  return {x, best.value};
}

std::vector<double> checked_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw Error(ErrorCode::bad_input, std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorCode::bad_input, std::string(name) + " grid must be positive and increasing", {{"index", i}});
    }
  }
  return grid;
}

}  // namespace

Optimum curve_extremum(const SpectralCurve& curve, const std::function<double(double)>& objective, Goal goal,
                       const char* what) {
  auto obj = guarded(objective);
  auto in_t = [&](double t) { return obj(curve.from_param(t)); };
  const auto [lo, hi] = curve.param_range();
  const auto best = scan_extremum(in_t, lo, hi, goal);
  const double v = curve.from_param(best.arg);
  if (best.edge != ScanResult::Edge::none) {
    const auto side = best.edge == ScanResult::Edge::lower ? BoundaryError::Side::lower : BoundaryError::Side::upper;
    throw BoundaryError(std::string(what) + ": optimum on the edge of the coupling domain", v, side,
                        {{"v", v}, {"v_lo", curve.from_param(lo)}, {"v_hi", curve.from_param(hi)}});
  }
  return {v, best.value};
}

Optimum kinetic_value(const SpectralCurve& curve, double s) {
  return curve_extremum(curve, [&](double v) { return (curve(v) - s) / v; }, Goal::maximize, "kinetic potential");
}

Optimum kfunction_value(const SpectralCurve& curve, double f) {
  return curve_extremum(curve, [&](double u) { return curve(u) - u * f; }, Goal::maximize, "K-function");
}

KineticPotential kinetic_from_curve(const SpectralCurve& curve, const std::vector<double>& s_grid, unsigned threads) {
  auto s = checked_grid(s_grid, "kinetic energy");
  if (s.size() < 2) throw Error(ErrorCode::bad_input, "kinetic energy grid needs two points");
  std::vector<double> fbar(s.size()), slope(s.size());
  parallel_for(
      s.size(),
      [&](std::size_t i) {
        const auto best = kinetic_value(curve, s[i]);
        fbar[i] = best.value;
        slope[i] = -1.0 / best.arg;
      },
      threads);
  return KineticPotential::sampled(std::move(s), std::move(fbar), std::move(slope));
}

SpectralCurve curve_from_kinetic(const KineticPotential& kp, const std::vector<double>& v_grid, StateLabel state) {
  auto v = checked_grid(v_grid, "coupling");
  std::vector<double> F(v.size()), dF(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    const auto best =
        log_extremum(kp.lower(), kp.upper(), [&](double s) { return s + vi * kp(s); }, Goal::minimize, "energy", "s");
    F[i] = best.value;
    dF[i] = kp(best.arg);
  }
  return SpectralCurve::sampled(state, std::move(v), std::move(F), std::move(dF));
}

KFunction kfunction_from_curve(const SpectralCurve& curve, const PotentialShape& shape, const std::vector<double>& r_grid,
                               unsigned threads) {
  auto r = checked_grid(r_grid, "radius");
  std::vector<double> K(r.size());
  parallel_for(r.size(), [&](std::size_t i) { K[i] = kfunction_value(curve, shape(r[i])).value; }, threads);
  return KFunction::sampled(std::move(r), std::move(K));
}

Optimum energy_from_kfunction(const KFunction& k, const PotentialShape& shape, double v) {
  if (!(v > 0.0)) throw Error(ErrorCode::domain, "coupling must be positive", {{"v", v}});
  return log_extremum(k.lower(), k.upper(), [&](double r) { return k(r) + v * shape(r); }, Goal::minimize, "energy",
                      "r");
}

Optimum coupling_form_value(const SpectralCurve& curve_h, const Transformation& g, double v) {
  return curve_extremum(
      curve_h,
      [&](double u) {
        const double dH = curve_h.derivative(u);
        return curve_h(u) - u * dH + v * g(dH);
      },
      Goal::minimize, "coupling form");
}

SpectralCurve curve_from_coupling_form(const SpectralCurve& curve_h, const Transformation& g,
                                       const std::vector<double>& v_grid) {
  auto v = checked_grid(v_grid, "coupling");
  std::vector<double> F(v.size()), dF(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto best = coupling_form_value(curve_h, g, v[i]);
    F[i] = best.value;
    dF[i] = g(curve_h.derivative(best.arg));
  }
  return SpectralCurve::sampled(curve_h.state(), std::move(v), std::move(F), std::move(dF));
}

}  // namespace specinv
