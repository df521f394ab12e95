#include "specinv/envelope.hpp"

#include <cmath>
#include <limits>

#include "specinv/error.hpp"
#include "specinv/kinetic.hpp"
#include "specinv/models.hpp"

namespace specinv {

const char* to_string(Convexity c) noexcept {
  switch (c) {
    case Convexity::convex: return "convex";
    case Convexity::concave: return "concave";
    case Convexity::indefinite: return "indefinite";
  }
  return "indefinite";
}

EnvelopeBasis EnvelopeBasis::coulomb(StateLabel state) {
  const auto h = PotentialShape::coulomb();
  return {h, exact_spectral_curve(h, state), exact_kfunction(h, state), "coulomb"};
}

double EnvelopeBasis::consistency_gap(const std::vector<double>& v_samples) const {
  double worst = 0.0;
  for (double v : v_samples) {
    const double H = curve_H(v);
    const double E = energy_from_kfunction(kfunction_K, shape_h, v).value;
    worst = std::max(worst, std::fabs(E - H) / std::max(std::fabs(H), 1e-300));
  }
  return worst;
}

TransformationProfile::TransformationProfile(PotentialShape f, PotentialShape h, std::vector<double> r_grid)
    : f_(std::move(f)), h_(std::move(h)), r_(std::move(r_grid)) {
  if (r_.size() < 3) throw Error(ErrorCode::bad_input, "transformation needs at least three radii");
  hv_.resize(r_.size());
  gv_.resize(r_.size());
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!(r_[i] > 0.0) || (i > 0 && !(r_[i] > r_[i - 1]))) {
      throw Error(ErrorCode::bad_input, "radius grid must be positive and increasing", {{"index", i}});
    }
    hv_[i] = h_(r_[i]);
    gv_[i] = f_(r_[i]);
    if (i > 0 && !(hv_[i] > hv_[i - 1])) {
      throw Error(ErrorCode::basis_unsuitable, "basis potential is not strictly increasing on the grid",
                  {{"r", r_[i]}, {"h", hv_[i]}, {"h_prev", hv_[i - 1]}});
    }
  }
  bool convex = true, concave = true;
  double prev = (gv_[1] - gv_[0]) / (hv_[1] - hv_[0]);
  for (std::size_t i = 1; i + 1 < r_.size(); ++i) {
    const double d = (gv_[i + 1] - gv_[i]) / (hv_[i + 1] - hv_[i]);
    const double tol = 1e-8 * (std::fabs(d) + std::fabs(prev)) + 1e-300;
    if (d - prev < -tol) convex = false;
    if (d - prev > tol) concave = false;
    prev = d;
  }
  convexity_ = convex ? Convexity::convex : (concave ? Convexity::concave : Convexity::indefinite);
}

double TransformationProfile::g(double y) const {
  const double lo = std::log(1e-12 * h_.length());
  const double hi = std::log(1e12 * h_.length());
  auto gap = [&](double t) { return h_(std::exp(t)) - y; };
  if (gap(lo) > 0.0 || gap(hi) < 0.0) {
    throw Error(ErrorCode::range, "value outside the range of the basis potential", {{"h", y}});
  }
  return f_(std::exp(bracketed_root(gap, lo, hi, 60)));
}

double TransformationProfile::slope_at(double t) const {
  const double dh = h_.derivative(t);
  const double a = f_.derivative(t) / dh;
  if (!(dh > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::tangency, "g is not differentiable at this touch point", {{"t", t}, {"h_prime", dh}});
  }
  return a;
}

double TransformationProfile::intercept_at(double t) const { return f_(t) - h_(t) * slope_at(t); }

TransformationProfile build_transformation(const PotentialShape& f, const PotentialShape& h,
                                           const std::vector<double>& r_grid) {
  return TransformationProfile(f, h, r_grid);
}

PotentialShape tangential_potential(const TransformationProfile& profile, const EnvelopeBasis& basis, double t) {
  if (!(t >= profile.r_lo()) || !(t <= profile.r_hi())) {
    throw Error(ErrorCode::tangency, "touch point outside the profile grid",
                {{"t", t}, {"r_lo", profile.r_lo()}, {"r_hi", profile.r_hi()}});
  }
  const double a = profile.slope_at(t);
  return basis.shape_h.affine(a, profile.intercept_at(t));
}

BoundRecord envelope_bound(const TransformationProfile& profile, const EnvelopeBasis& basis, double v) {
  if (!(v > 0.0)) throw Error(ErrorCode::domain, "coupling must be positive", {{"v", v}});
  if (profile.convexity() == Convexity::indefinite) {
    throw Error(ErrorCode::no_certificate, "transformation has no definite convexity; bound direction unknown");
  }
  const bool lower = profile.convexity() == Convexity::convex;
  auto objective = [&](double lt) {
    const double t = std::exp(lt);
    try {
      const double a = profile.slope_at(t);
      return basis.curve_H(a * v) + profile.intercept_at(t) * v;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::domain || e.code() == ErrorCode::range) return std::numeric_limits<double>::quiet_NaN();
      throw;
    }
  };
  const auto best = scan_extremum(objective, std::log(profile.r_lo()), std::log(profile.r_hi()),
                                  lower ? Goal::maximize : Goal::minimize);
  const double t = std::exp(best.arg);
  if (best.edge != ScanResult::Edge::none) {
    throw BoundaryError("envelope bound: touch point on the edge of the radius grid", t,
                        best.edge == ScanResult::Edge::lower ? BoundaryError::Side::lower : BoundaryError::Side::upper,
                        {{"t", t}, {"v", v}});
  }
  return {v, best.value, lower ? BoundKind::lower : BoundKind::upper, basis.name, t};
}

nlohmann::json to_json(const BoundRecord& record) {
  return {{"v", record.v},
          {"value", record.value},
          {"kind", record.kind == BoundKind::lower ? "lower" : "upper"},
          {"basis", record.basis},
          {"touch_point", record.touch_point}};
}

}  // namespace specinv
