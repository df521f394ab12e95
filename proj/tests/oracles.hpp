#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Eigenvalues below x of the Dirichlet finite-difference operator
// -u'' + W u on (0, R) with N interior points (Sturm count).
inline int count_below(double R, std::size_t N, double x, const std::vector<double>& w) {
  const double h = R / static_cast<double>(N + 1);
  const double off = 1.0 / (h * h);
  int negatives = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double diag = 2.0 * off + w[i] - x;
    d = (i == 0) ? diag : diag - off * off / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

// index-th eigenvalue (0-based) of the finite-difference operator.
inline double fd_eigenvalue(const std::function<double(double)>& W, double R, std::size_t N, int index, double lo,
                            double hi) {
  const double h = R / static_cast<double>(N + 1);
  std::vector<double> w(N);
  for (std::size_t i = 0; i < N; ++i) w[i] = W(h * static_cast<double>(i + 1));
  for (int k = 0; k < 200 && hi - lo > 1e-14 * (std::fabs(lo) + std::fabs(hi)); ++k) {
    const double mid = 0.5 * (lo + hi);
    (count_below(R, N, mid, w) > index ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Two Richardson passes over N, 2N, 4N (error terms h^2 and h^4).
inline double fd_extrapolated(const std::function<double(double)>& W, double R, std::size_t N, int index, double lo,
                              double hi) {
  const double e1 = fd_eigenvalue(W, R, N, index, lo, hi);
  const double e2 = fd_eigenvalue(W, R, 2 * N + 1, index, lo, hi);
  const double e4 = fd_eigenvalue(W, R, 4 * N + 3, index, lo, hi);
  const double r1 = (4.0 * e2 - e1) / 3.0;
  const double r2 = (4.0 * e4 - e2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = fn(a) + fn(b);
  for (int i = 1; i < panels; ++i) s += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Brute-force extremum of fn over a log grid on [lo, hi].
inline double grid_max(const std::function<double(double)>& fn, double lo, double hi, int points) {
  double best = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    best = std::max(best, fn(x));
  }
  return best;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace oracle
