#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace specinv {

std::vector<double> linspace(double lo, double hi, std::size_t count);
std::vector<double> geomspace(double lo, double hi, std::size_t count);

/// Piecewise cubic Hermite interpolant. With the default slopes it is the
/// monotone (Hyman-filtered three-point) variant: monotone data yields a
/// monotone interpolant, and smooth data keeps third-order accuracy.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  /// Hermite interpolant with caller-supplied node slopes. `limit` applies
  /// the monotonicity filter to them.
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes, bool limit);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Index of the segment [x_i, x_{i+1}] containing `x` (clamped).
  std::size_t segment(double x) const;
  /// Integral of the interpolant from x_seg to x.
  double partial_integral(std::size_t seg, double x) const;
  double segment_integral(std::size_t seg) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }

 private:
  void validate() const;
  void limit_slopes();

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

/// Least-squares non-decreasing fit (pool adjacent violators).
std::vector<double> isotonic_increasing(std::span<const double> y);

enum class Goal { minimize, maximize };

struct ScanResult {
  enum class Edge { none, lower, upper };
  double arg = 0.0;
  double value = 0.0;
  Edge edge = Edge::none;
};

/// Global scan of `objective` over `scan_points` uniform parameter values in
/// [lo, hi], then Brent (golden section + parabolic steps) refinement around
/// the best sample. `edge` reports an optimum pinned to either end.
/// Non-finite objective values are treated as the worst possible.
ScanResult scan_extremum(const std::function<double(double)>& objective, double lo, double hi, Goal goal,
                         int scan_points = 200);

/// Root of a continuous function with a sign change on [lo, hi] (TOMS 748).
double bracketed_root(const std::function<double(double)>& fn, double lo, double hi, int bits = 50,
                      int max_iterations = 200);

/// Runs body(i) for i in [0, count). Results must not depend on scheduling;
/// with threads <= 1 the loop is sequential.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads);

unsigned default_thread_count();

}  // namespace specinv
