#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "specinv/curves.hpp"
#include "specinv/shape.hpp"

namespace specinv {

enum class Convexity { convex, concave, indefinite };
const char* to_string(Convexity c) noexcept;

/// A basis potential h together with its spectral curve H(v) and K-function.
struct EnvelopeBasis {
  PotentialShape shape_h;
  SpectralCurve curve_H;
  KFunction kfunction_K;
  std::string name;

  /// Coulomb basis -1/r for the given state.
  static EnvelopeBasis coulomb(StateLabel state = {});
  /// Largest relative gap between min_r [K + v h] and H(v) over `v_samples`.
  double consistency_gap(const std::vector<double>& v_samples) const;
};

/// f = g(h) sampled along an r-grid, with the convexity of g classified from
/// second differences (relative tolerance 1e-8).
class TransformationProfile {
 public:
  TransformationProfile(PotentialShape f, PotentialShape h, std::vector<double> r_grid);

  Convexity convexity() const { return convexity_; }
  const PotentialShape& target() const { return f_; }
  const PotentialShape& basis() const { return h_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& h_values() const { return hv_; }
  const std::vector<double>& g_values() const { return gv_; }
  double r_lo() const { return r_.front(); }
  double r_hi() const { return r_.back(); }

  /// g(y) = f(h^{-1}(y)) for y in the range of h.
  double g(double y) const;
  /// Tangent line of g at h(t): slope a(t) = f'(t)/h'(t), intercept b(t).
  double slope_at(double t) const;
  double intercept_at(double t) const;

 private:
  PotentialShape f_, h_;
  std::vector<double> r_, hv_, gv_;
  Convexity convexity_ = Convexity::indefinite;
};

TransformationProfile build_transformation(const PotentialShape& f, const PotentialShape& h,
                                           const std::vector<double>& r_grid);

/// a(t) h(r) + b(t), touching f at r = t.
PotentialShape tangential_potential(const TransformationProfile& profile, const EnvelopeBasis& basis, double t);

enum class BoundKind { lower, upper };

struct BoundRecord {
  double v = 0.0;
  double value = 0.0;
  BoundKind kind = BoundKind::lower;
  std::string basis;
  double touch_point = 0.0;
};

/// Convex g: max over t of H(a(t) v) + b(t) v, a lower bound. Concave g: the
/// min, an upper bound. Indefinite g raises a no-certificate error.
BoundRecord envelope_bound(const TransformationProfile& profile, const EnvelopeBasis& basis, double v);

nlohmann::json to_json(const BoundRecord& record);

}  // namespace specinv
