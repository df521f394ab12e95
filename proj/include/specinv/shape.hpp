#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "specinv/numerics.hpp"

namespace specinv {

enum class ShapeKind { coulomb, power, log, hulthen, coulomb_plus, tabulated };

/// Summary classification: singular at the origin (no worse than c/r),
/// otherwise confining at infinity, otherwise bounded.
enum class Singularity { coulombic, bounded, confining };

/// Large-r behaviour, which decides whether a critical coupling can exist.
enum class Tail { confining, long_range, short_range };

/// The w(r) term of -a/r + b w(r): sgn(q) r^q, or ln r.
struct Perturbation {
  bool logarithmic = false;
  double q = 1.0;

  static Perturbation power(double q) { return {false, q}; }
  static Perturbation log() { return {true, 0.0}; }
};

/// Radial shape f(r) of an attractive central potential v f(r).
///
/// Shapes are immutable values. Every kind may carry an outer affine
/// transformation A f(r/b) + B, produced by `scale_shift`.
class PotentialShape {
 public:
  static PotentialShape coulomb();
  /// sgn(q) r^q with q > -2, q != 0.
  static PotentialShape power(double q);
  static PotentialShape log();
  /// -1/(e^r - 1).
  static PotentialShape hulthen();
  /// -a/r + b w(r) with a, b > 0.
  static PotentialShape coulomb_plus(Perturbation w, double a, double b);
  /// Table of (r, f) pairs interpolated monotonically in ln r. Outside the
  /// table: c/r + d through the two innermost nodes, linear continuation of
  /// the outermost segment.
  static PotentialShape tabulated(std::vector<double> r, std::vector<double> f, bool extrapolate = true);

  double operator()(double r) const;
  double derivative(double r) const;

  ShapeKind kind() const { return kind_; }
  /// Exponent q for power shapes (−1 for Coulomb).
  double exponent() const;
  double coulomb_strength() const { return a_; }
  double perturbation_strength() const { return b_; }
  const Perturbation& perturbation() const { return w_; }

  double scale() const { return scale_; }
  double length() const { return length_; }
  double shift() const { return shift_; }
  bool transformed() const { return scale_ != 1.0 || length_ != 1.0 || shift_ != 0.0; }
  /// The same shape with the affine transformation removed.
  PotentialShape base() const;

  /// lim r f(r) as r -> 0+ (0 for shapes weaker than Coulomb).
  double origin_coefficient() const;
  bool singular_at_origin() const;
  Tail tail() const;
  /// lim f(r) as r -> infinity (+inf when confining).
  double limit_at_infinity() const;
  Singularity singularity() const;

  bool extrapolates() const { return extrapolate_; }
  /// Table nodes (empty for analytic kinds).
  std::vector<double> table_r() const;
  std::vector<double> table_f() const;

  /// A f(r/b) + B. Requires A > 0, b > 0.
  PotentialShape scale_shift(double A, double b, double B) const;
  /// A f(r) + B with A >= 0; used for tangential potentials.
  PotentialShape affine(double A, double B) const;

  std::string describe() const;

 private:
  struct Table;

  PotentialShape() = default;
  double base_value(double r) const;
  double base_derivative(double r) const;

  ShapeKind kind_ = ShapeKind::coulomb;
  double q_ = -1.0;
  double a_ = 1.0;
  double b_ = 0.0;
  Perturbation w_{};
  double scale_ = 1.0;
  double length_ = 1.0;
  double shift_ = 0.0;
  bool extrapolate_ = true;
  std::shared_ptr<const Table> table_;
};

double eval_shape(const PotentialShape& shape, double r);
PotentialShape scale_shift(const PotentialShape& shape, double A, double b, double B);

/// Two-column CSV with header `r,f`; lines starting with '#' are comments.
PotentialShape read_shape_csv(const std::filesystem::path& path, bool extrapolate = true);
void write_shape_csv(const std::filesystem::path& path, std::span<const double> r, std::span<const double> f,
                     const std::string& comment = {});

}  // namespace specinv
