#include "specinv/shape.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "specinv/csv.hpp"
#include "specinv/error.hpp"

namespace specinv {

struct PotentialShape::Table {
  std::vector<double> r;
  std::vector<double> f;
  MonotoneCubic spline;  // f as a function of ln r
  double inner_c = 0.0;  // f ~ inner_c / r + inner_d below r.front()
  double inner_d = 0.0;
  double outer_slope = 0.0;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn_power(double q, double r) { return q > 0 ? std::pow(r, q) : -std::pow(r, q); }
double sgn_power_derivative(double q, double r) { return std::fabs(q) * std::pow(r, q - 1.0); }

double w_value(const Perturbation& w, double r) { return w.logarithmic ? std::log(r) : sgn_power(w.q, r); }
double w_derivative(const Perturbation& w, double r) {
  return w.logarithmic ? 1.0 / r : sgn_power_derivative(w.q, r);
}

void check_exponent(double q, const char* what) {
  if (!(q > -2.0) || q == 0.0 || !std::isfinite(q)) {
    throw Error(ErrorCode::domain, std::string(what) + " exponent must satisfy q > -2, q != 0", {{"q", q}});
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

PotentialShape PotentialShape::coulomb() {
  PotentialShape s;
  s.kind_ = ShapeKind::coulomb;
  return s;
}

PotentialShape PotentialShape::power(double q) {
  check_exponent(q, "power");
  PotentialShape s;
  s.kind_ = ShapeKind::power;
  s.q_ = q;
  return s;
}

PotentialShape PotentialShape::log() {
  PotentialShape s;
  s.kind_ = ShapeKind::log;
  return s;
}

PotentialShape PotentialShape::hulthen() {
  PotentialShape s;
  s.kind_ = ShapeKind::hulthen;
  return s;
}

PotentialShape PotentialShape::coulomb_plus(Perturbation w, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::domain, "coulomb_plus needs a > 0 and b > 0", {{"a", a}, {"b", b}});
  if (!w.logarithmic) check_exponent(w.q, "perturbation");
  PotentialShape s;
  s.kind_ = ShapeKind::coulomb_plus;
  s.a_ = a;
  s.b_ = b;
  s.w_ = w;
  return s;
}

PotentialShape PotentialShape::tabulated(std::vector<double> r, std::vector<double> f, bool extrapolate) {
  if (r.size() < 3 || r.size() != f.size()) throw Error(ErrorCode::bad_input, "tabulated shape needs >= 3 (r, f) pairs");
  double span = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw Error(ErrorCode::domain, "tabulated r must be positive", {{"r", r[i]}});
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw Error(ErrorCode::domain, "tabulated r must be strictly increasing", {{"index", i}});
    }
    span = std::max(span, std::fabs(f[i]));
  }
  const double tol = 1e-10 * std::max(span, 1e-300);
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] < f[i - 1] - tol) {
      throw Error(ErrorCode::domain, "tabulated shape must be non-decreasing",
                  {{"index", i}, {"r", r[i]}, {"drop", f[i - 1] - f[i]}});
    }
  }

  auto table = std::make_shared<Table>();
  std::vector<double> logr(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) logr[i] = std::log(r[i]);
  table->spline = MonotoneCubic(logr, f);
  table->inner_c = (f[0] - f[1]) / (1.0 / r[0] - 1.0 / r[1]);
  table->inner_d = f[0] - table->inner_c / r[0];
  const std::size_t n = r.size();
  table->outer_slope = (f[n - 1] - f[n - 2]) / (r[n - 1] - r[n - 2]);
  table->r = std::move(r);
  table->f = std::move(f);

  PotentialShape s;
  s.kind_ = ShapeKind::tabulated;
  s.extrapolate_ = extrapolate;
  s.table_ = std::move(table);
  return s;
}

double PotentialShape::base_value(double r) const {
  switch (kind_) {
    case ShapeKind::coulomb: return -1.0 / r;
    case ShapeKind::power: return sgn_power(q_, r);
    case ShapeKind::log: return std::log(r);
    case ShapeKind::hulthen: return -1.0 / std::expm1(r);
    case ShapeKind::coulomb_plus: return -a_ / r + b_ * w_value(w_, r);
    case ShapeKind::tabulated: {
      const auto& t = *table_;
      if (r < t.r.front()) {
        if (!extrapolate_ && r < t.r.front() * (1.0 - 1e-12)) {
          throw Error(ErrorCode::range, "r below tabulated range", {{"r", r}, {"r_min", t.r.front()}});
        }
        return t.inner_c / r + t.inner_d;
      }
      if (r > t.r.back()) {
        if (!extrapolate_ && r > t.r.back() * (1.0 + 1e-12)) {
          throw Error(ErrorCode::range, "r above tabulated range", {{"r", r}, {"r_max", t.r.back()}});
        }
        return t.f.back() + t.outer_slope * (r - t.r.back());
      }
      return t.spline(std::log(r));
    }
  }
  return 0.0;
}

double PotentialShape::base_derivative(double r) const {
  switch (kind_) {
    case ShapeKind::coulomb: return 1.0 / (r * r);
    case ShapeKind::power: return sgn_power_derivative(q_, r);
    case ShapeKind::log: return 1.0 / r;
    case ShapeKind::hulthen: {
      const double em = -std::expm1(-r);
      return std::exp(-r) / (em * em);
    }
    case ShapeKind::coulomb_plus: return a_ / (r * r) + b_ * w_derivative(w_, r);
    case ShapeKind::tabulated: {
      const auto& t = *table_;
      if (r < t.r.front()) return -t.inner_c / (r * r);
      if (r > t.r.back()) return t.outer_slope;
      return t.spline.derivative(std::log(r)) / r;
    }
  }
  return 0.0;
}

double PotentialShape::operator()(double r) const {
  if (!(r > 0.0)) throw Error(ErrorCode::domain, "shape evaluated at r <= 0", {{"r", r}});
  return scale_ * base_value(r / length_) + shift_;
}

double PotentialShape::derivative(double r) const {
  if (!(r > 0.0)) throw Error(ErrorCode::domain, "shape derivative at r <= 0", {{"r", r}});
  return scale_ / length_ * base_derivative(r / length_);
}

double PotentialShape::exponent() const {
  if (kind_ == ShapeKind::power) return q_;
  if (kind_ == ShapeKind::coulomb) return -1.0;
  return std::numeric_limits<double>::quiet_NaN();
}

PotentialShape PotentialShape::base() const {
  PotentialShape s = *this;
  s.scale_ = 1.0;
  s.length_ = 1.0;
  s.shift_ = 0.0;
  return s;
}

double PotentialShape::origin_coefficient() const {
  double c = 0.0;
  switch (kind_) {
    case ShapeKind::coulomb:
    case ShapeKind::hulthen: c = -1.0; break;
    case ShapeKind::power: c = q_ == -1.0 ? -1.0 : (q_ > -1.0 ? 0.0 : -kInf); break;
    case ShapeKind::log: c = 0.0; break;
    case ShapeKind::coulomb_plus: {
      c = -a_;
      if (!w_.logarithmic && w_.q <= -1.0) c += w_.q == -1.0 ? -b_ : -kInf;
      break;
    }
    case ShapeKind::tabulated: c = table_->inner_c; break;
  }
  return scale_ * length_ * c;
}

bool PotentialShape::singular_at_origin() const {
  if (scale_ == 0.0) return false;
  switch (kind_) {
    case ShapeKind::tabulated: return table_->inner_c < 0.0;
    case ShapeKind::power: return q_ < 0.0;
    default: return true;
  }
}

Tail PotentialShape::tail() const {
  if (scale_ == 0.0) return Tail::short_range;
  switch (kind_) {
    case ShapeKind::coulomb: return Tail::long_range;
    case ShapeKind::power: return q_ > 0.0 ? Tail::confining : Tail::long_range;
    case ShapeKind::log: return Tail::confining;
    case ShapeKind::hulthen: return Tail::short_range;
    case ShapeKind::coulomb_plus:
      return (w_.logarithmic || w_.q > 0.0) ? Tail::confining : Tail::long_range;
    case ShapeKind::tabulated:
      return (extrapolate_ && table_->outer_slope > 0.0) ? Tail::confining : Tail::short_range;
  }
  return Tail::short_range;
}

double PotentialShape::limit_at_infinity() const {
  if (tail() == Tail::confining) return kInf;
  double base = 0.0;
  if (kind_ == ShapeKind::tabulated) base = table_->f.back();
  return scale_ * base + shift_;
}

Singularity PotentialShape::singularity() const {
  if (singular_at_origin()) return Singularity::coulombic;
  if (tail() == Tail::confining) return Singularity::confining;
  return Singularity::bounded;
}

std::vector<double> PotentialShape::table_r() const { return table_ ? table_->r : std::vector<double>{}; }

std::vector<double> PotentialShape::table_f() const {
  if (!table_) return {};
  std::vector<double> out = table_->f;
  for (auto& v : out) v = scale_ * v + shift_;
  return out;
}

PotentialShape PotentialShape::scale_shift(double A, double b, double B) const {
  if (!(A > 0.0) || !(b > 0.0) || !std::isfinite(B)) {
    throw Error(ErrorCode::domain, "scale_shift needs A > 0, b > 0", {{"A", A}, {"b", b}, {"B", B}});
  }
  PotentialShape s = *this;
  s.scale_ = scale_ * A;
  s.length_ = length_ * b;
  s.shift_ = A * shift_ + B;
  return s;
}

PotentialShape PotentialShape::affine(double A, double B) const {
  if (!(A >= 0.0) || !std::isfinite(A) || !std::isfinite(B)) {
    throw Error(ErrorCode::domain, "affine transformation needs A >= 0", {{"A", A}, {"B", B}});
  }
  PotentialShape s = *this;
  s.scale_ = scale_ * A;
  s.shift_ = A * shift_ + B;
  return s;
}

std::string PotentialShape::describe() const {
  std::string out;
  switch (kind_) {
    case ShapeKind::coulomb: out = "coulomb"; break;
    case ShapeKind::power: out = "power(q=" + fmt(q_) + ")"; break;
    case ShapeKind::log: out = "log"; break;
    case ShapeKind::hulthen: out = "hulthen"; break;
    case ShapeKind::coulomb_plus:
      out = "coulomb_plus(" + (w_.logarithmic ? std::string("log") : "q=" + fmt(w_.q)) + ",a=" + fmt(a_) +
            ",b=" + fmt(b_) + ")";
      break;
    case ShapeKind::tabulated: out = "tabulated(" + std::to_string(table_->r.size()) + " nodes)"; break;
  }
  if (transformed()) out += "*scale(A=" + fmt(scale_) + ",b=" + fmt(length_) + ",B=" + fmt(shift_) + ")";
  return out;
}

double eval_shape(const PotentialShape& shape, double r) { return shape(r); }

PotentialShape scale_shift(const PotentialShape& shape, double A, double b, double B) {
  return shape.scale_shift(A, b, B);
}

PotentialShape read_shape_csv(const std::filesystem::path& path, bool extrapolate) {
  const auto table = read_csv(path);
  return PotentialShape::tabulated(table.column("r"), table.column("f"), extrapolate);
}

void write_shape_csv(const std::filesystem::path& path, std::span<const double> r, std::span<const double> f,
                     const std::string& comment) {
  write_csv(path, {"r", "f"}, {r, f}, comment);
}

}  // namespace specinv
