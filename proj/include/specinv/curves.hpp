#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "specinv/numerics.hpp"

namespace specinv {

/// Radial index n >= 1 (n - 1 nodes) and angular momentum ell >= 0.
struct StateLabel {
  int n = 1;
  int ell = 0;
};

void validate(const StateLabel& state);

/// E = F(v) for one bound state: an analytic formula or samples
/// (v_i, F_i, F'_i). Between samples F' is interpolated by a monotone cubic
/// and integrated exactly, with a per-segment linear correction so the
/// interpolant passes through every F_i; this keeps F concave.
class SpectralCurve {
 public:
  using Function = std::function<double(double)>;

  static SpectralCurve analytic(StateLabel state, double critical, Function value, Function derivative,
                                double v_max = 1e16);
  static SpectralCurve sampled(StateLabel state, std::vector<double> v, std::vector<double> F,
                               std::vector<double> dF, double critical = 0.0);

  double operator()(double v) const;
  double derivative(double v) const;

  StateLabel state() const { return state_; }
  /// v_1: the state exists for v > v_1.
  double critical_coupling() const { return critical_; }
  double lower() const;
  double upper() const { return v_max_; }
  bool is_sampled() const { return sampled_; }
  const std::vector<double>& nodes() const { return v_; }
  const std::vector<double>& values() const { return F_; }
  const std::vector<double>& derivatives() const { return dF_; }
  /// Sampled curves: second divided differences <= 1e-8 (scaled) and F'
  /// non-increasing. Analytic curves are trusted.
  bool concave_verified() const { return concave_; }

  /// Logarithmic search parameter used by the extremum searches:
  /// t = ln(v - v_1) for analytic curves with v_1 > 0, ln v otherwise.
  double to_param(double v) const;
  double from_param(double t) const;
  std::pair<double, double> param_range() const;

 private:
  SpectralCurve() = default;
  std::size_t locate(double v) const;
  void check_domain(double v) const;

  StateLabel state_{};
  bool sampled_ = false;
  double critical_ = 0.0;
  double v_max_ = 0.0;
  Function value_;
  Function derivative_;
  std::vector<double> v_, F_, dF_;
  MonotoneCubic slope_;
  std::vector<double> correction_;  // per-segment slope offset
  bool concave_ = true;
};

/// The kinetic potential s -> fbar(s); monotone decreasing.
class KineticPotential {
 public:
  using Function = std::function<double(double)>;

  static KineticPotential analytic(Function value, Function derivative, double s_lo = 1e-12, double s_hi = 1e16);
  /// Cubic Hermite through (s_i, fbar_i) with the supplied exact slopes.
  static KineticPotential sampled(std::vector<double> s, std::vector<double> fbar, std::vector<double> dfbar);

  double operator()(double s) const;
  double derivative(double s) const;
  double lower() const { return s_lo_; }
  double upper() const { return s_hi_; }
  bool is_sampled() const { return sampled_; }
  const std::vector<double>& nodes() const { return s_; }
  const std::vector<double>& values() const { return fbar_; }
  const std::vector<double>& derivatives() const { return dfbar_; }
  bool monotone_decreasing() const;

 private:
  KineticPotential() = default;
  void check_domain(double s) const;

  bool sampled_ = false;
  double s_lo_ = 0.0;
  double s_hi_ = 0.0;
  Function value_;
  Function derivative_;
  std::vector<double> s_, fbar_, dfbar_;
  MonotoneCubic spline_;
};

/// K(r) = (fbar^{-1} o f)(r): either P^2 / r^2 or samples on an r-grid
/// (interpolated monotonically in ln r, ln K).
class KFunction {
 public:
  enum class Form { inverse_square, sampled };

  static KFunction inverse_square(double P, double r_lo = 1e-12, double r_hi = 1e12);
  static KFunction sampled(std::vector<double> r, std::vector<double> K);

  double operator()(double r) const;
  Form form() const { return form_; }
  /// P for the inverse-square form.
  double P() const { return P_; }
  double lower() const { return r_lo_ * length_; }
  double upper() const { return r_hi_ * length_; }
  /// K(r / b) / b^2.
  KFunction scaled(double b) const;

  /// Node radii and K values (sampled form; scaled by the length factor).
  std::vector<double> nodes() const;
  std::vector<double> values() const;

 private:
  KFunction() = default;

  Form form_ = Form::inverse_square;
  double P_ = 0.0;
  double r_lo_ = 0.0;
  double r_hi_ = 0.0;
  double length_ = 1.0;
  std::vector<double> r_, K_;
  MonotoneCubic spline_;  // ln K against ln r
};

}  // namespace specinv
