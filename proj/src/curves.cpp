#include "specinv/curves.hpp"

#include <algorithm>
#include <cmath>

#include "specinv/error.hpp"

namespace specinv {

namespace {

constexpr double kEdgeSlack = 1e-12;

void check_increasing(const std::vector<double>& x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) throw Error(ErrorCode::domain, std::string(what) + " must be positive");
    if (i > 0 && !(x[i] > x[i - 1])) throw Error(ErrorCode::domain, std::string(what) + " must be strictly increasing");
  }
}

}  // namespace

void validate(const StateLabel& state) {
  if (state.n < 1 || state.ell < 0) {
    throw Error(ErrorCode::bad_input, "state needs n >= 1 and ell >= 0", {{"n", state.n}, {"ell", state.ell}});
  }
}

SpectralCurve SpectralCurve::analytic(StateLabel state, double critical, Function value, Function derivative,
                                      double v_max) {
  validate(state);
  SpectralCurve c;
  c.state_ = state;
  c.critical_ = std::max(critical, 0.0);
  c.v_max_ = v_max;
  c.value_ = std::move(value);
  c.derivative_ = std::move(derivative);
  return c;
}

SpectralCurve SpectralCurve::sampled(StateLabel state, std::vector<double> v, std::vector<double> F,
                                     std::vector<double> dF, double critical) {
  validate(state);
  if (v.size() < 3 || v.size() != F.size() || v.size() != dF.size()) {
    throw Error(ErrorCode::bad_input, "sampled curve needs >= 3 matching (v, F, F') samples");
  }
  check_increasing(v, "curve couplings");
  if (critical > v.front()) throw Error(ErrorCode::domain, "samples below the critical coupling");

  SpectralCurve c;
  c.state_ = state;
  c.sampled_ = true;
  c.critical_ = std::max(critical, 0.0);
  c.v_max_ = v.back();
  c.slope_ = MonotoneCubic(v, dF);
  c.correction_.resize(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double h = v[i + 1] - v[i];
    c.correction_[i] = (F[i + 1] - F[i] - c.slope_.segment_integral(i)) / h;
  }

  double scale = 0.0;
  for (double f : F) scale = std::max(scale, std::fabs(f));
  for (std::size_t i = 1; i + 1 < v.size() && c.concave_; ++i) {
    const double h0 = v[i] - v[i - 1];
    const double h1 = v[i + 1] - v[i];
    const double dd2 = 2.0 * ((F[i + 1] - F[i]) / h1 - (F[i] - F[i - 1]) / h0) / (h0 + h1);
    if (dd2 > 1e-8 + 1e-9 * scale / (h0 * h1)) c.concave_ = false;
  }
  for (std::size_t i = 1; i < dF.size() && c.concave_; ++i) {
    if (dF[i] > dF[i - 1] + 1e-8 * (1.0 + std::fabs(dF[i - 1]))) c.concave_ = false;
  }

  c.v_ = std::move(v);
  c.F_ = std::move(F);
  c.dF_ = std::move(dF);
  return c;
}

double SpectralCurve::lower() const { return sampled_ ? v_.front() : critical_; }

void SpectralCurve::check_domain(double v) const {
  if (sampled_) {
    if (v < v_.front() * (1.0 - kEdgeSlack) || v > v_.back() * (1.0 + kEdgeSlack) || !std::isfinite(v)) {
      throw Error(ErrorCode::range, "coupling outside sampled curve", {{"v", v}, {"lo", v_.front()}, {"hi", v_.back()}});
    }
  } else if (!(v > critical_) || !std::isfinite(v)) {
    throw Error(ErrorCode::domain, "coupling at or below the critical coupling", {{"v", v}, {"critical", critical_}});
  }
}

std::size_t SpectralCurve::locate(double v) const { return slope_.segment(v); }

double SpectralCurve::operator()(double v) const {
  check_domain(v);
  if (!sampled_) return value_(v);
  const std::size_t i = locate(v);
  return F_[i] + slope_.partial_integral(i, v) + (v - v_[i]) * correction_[i];
}

double SpectralCurve::derivative(double v) const {
  check_domain(v);
  if (!sampled_) return derivative_(v);
  const std::size_t i = locate(v);
  return slope_(v) + correction_[i];
}

double SpectralCurve::to_param(double v) const {
  if (!sampled_ && critical_ > 0.0) return std::log(v - critical_);
  return std::log(v);
}

double SpectralCurve::from_param(double t) const {
  if (sampled_) return std::clamp(std::exp(t), v_.front(), v_.back());
  if (critical_ > 0.0) return critical_ + std::exp(t);
  return std::exp(t);
}

std::pair<double, double> SpectralCurve::param_range() const {
  if (sampled_) return {std::log(v_.front()), std::log(v_.back())};
  if (critical_ > 0.0) return {std::log(1e-12 * std::max(1.0, critical_)), std::log(v_max_ - critical_)};
  return {std::log(1e-12), std::log(v_max_)};
}

KineticPotential KineticPotential::analytic(Function value, Function derivative, double s_lo, double s_hi) {
  if (!(s_lo > 0.0) || !(s_hi > s_lo)) throw Error(ErrorCode::bad_input, "kinetic potential needs 0 < s_lo < s_hi");
  KineticPotential k;
  k.s_lo_ = s_lo;
  k.s_hi_ = s_hi;
  k.value_ = std::move(value);
  k.derivative_ = std::move(derivative);
  return k;
}

KineticPotential KineticPotential::sampled(std::vector<double> s, std::vector<double> fbar, std::vector<double> dfbar) {
  if (s.size() < 2 || s.size() != fbar.size() || s.size() != dfbar.size()) {
    throw Error(ErrorCode::bad_input, "sampled kinetic potential needs matching (s, fbar, fbar') samples");
  }
  check_increasing(s, "kinetic energies");
  KineticPotential k;
  k.sampled_ = true;
  k.s_lo_ = s.front();
  k.s_hi_ = s.back();
  k.spline_ = MonotoneCubic(s, fbar, dfbar, false);
  k.s_ = std::move(s);
  k.fbar_ = std::move(fbar);
  k.dfbar_ = std::move(dfbar);
  return k;
}

void KineticPotential::check_domain(double s) const {
  if (!(s >= s_lo_ * (1.0 - kEdgeSlack)) || !(s <= s_hi_ * (1.0 + kEdgeSlack))) {
    throw Error(ErrorCode::range, "kinetic energy outside kinetic-potential domain", {{"s", s}, {"lo", s_lo_}, {"hi", s_hi_}});
  }
}

double KineticPotential::operator()(double s) const {
  check_domain(s);
  return sampled_ ? spline_(s) : value_(s);
}

double KineticPotential::derivative(double s) const {
  check_domain(s);
  return sampled_ ? spline_.derivative(s) : derivative_(s);
}

bool KineticPotential::monotone_decreasing() const {
  if (sampled_) {
    for (std::size_t i = 1; i < fbar_.size(); ++i) {
      if (fbar_[i] > fbar_[i - 1]) return false;
    }
    return true;
  }
  double prev = value_(s_lo_);
  for (double s : geomspace(s_lo_, s_hi_, 64)) {
    const double cur = value_(s);
    if (cur > prev) return false;
    prev = cur;
  }
  return true;
}

KFunction KFunction::inverse_square(double P, double r_lo, double r_hi) {
  if (!(P > 0.0) || !std::isfinite(P)) throw Error(ErrorCode::domain, "inverse-square K-function needs P > 0", {{"P", P}});
  KFunction k;
  k.form_ = Form::inverse_square;
  k.P_ = P;
  k.r_lo_ = r_lo;
  k.r_hi_ = r_hi;
  return k;
}

KFunction KFunction::sampled(std::vector<double> r, std::vector<double> K) {
  if (r.size() < 3 || r.size() != K.size()) throw Error(ErrorCode::bad_input, "sampled K-function needs >= 3 (r, K) pairs");
  check_increasing(r, "K-function radii");
  std::vector<double> lr(r.size()), lk(K.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(K[i] > 0.0) || !std::isfinite(K[i])) {
      throw Error(ErrorCode::invariant_violation, "K-function must be positive", {{"r", r[i]}, {"K", K[i]}});
    }
    lr[i] = std::log(r[i]);
    lk[i] = std::log(K[i]);
  }
  KFunction k;
  k.form_ = Form::sampled;
  k.r_lo_ = r.front();
  k.r_hi_ = r.back();
  k.spline_ = MonotoneCubic(lr, lk);
  k.r_ = std::move(r);
  k.K_ = std::move(K);
  return k;
}

double KFunction::operator()(double r) const {
  if (!(r > 0.0)) throw Error(ErrorCode::domain, "K-function at r <= 0", {{"r", r}});
  const double x = r / length_;
  if (form_ == Form::inverse_square) return P_ * P_ / (r * r);
  if (x < r_lo_ * (1.0 - kEdgeSlack) || x > r_hi_ * (1.0 + kEdgeSlack)) {
    throw Error(ErrorCode::range, "radius outside K-function domain", {{"r", r}, {"lo", lower()}, {"hi", upper()}});
  }
  return std::exp(spline_(std::log(x))) / (length_ * length_);
}

KFunction KFunction::scaled(double b) const {
  if (!(b > 0.0)) throw Error(ErrorCode::domain, "K-function scale must be positive", {{"b", b}});
  KFunction k = *this;
  k.length_ *= b;
  return k;
}

std::vector<double> KFunction::nodes() const {
  std::vector<double> out = r_;
  for (auto& r : out) r *= length_;
  return out;
}

std::vector<double> KFunction::values() const {
  std::vector<double> out = K_;
  for (auto& k : out) k /= length_ * length_;
  return out;
}

}  // namespace specinv
