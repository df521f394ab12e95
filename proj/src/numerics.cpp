#include "specinv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "specinv/error.hpp"

namespace specinv {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::bad_input, "grid needs at least two points");
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> geomspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw Error(ErrorCode::bad_input, "geometric grid needs positive bounds");
  auto logs = linspace(std::log(lo), std::log(hi), count);
  for (auto& v : logs) v = std::exp(v);
  logs.front() = lo;
  logs.back() = hi;
  return logs;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  validate();
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) m_[i] = (h[i] * d[i - 1] + h[i - 1] * d[i]) / (h[i - 1] + h[i]);
  m_[0] = ((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]);
  m_[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) / (h[n - 2] + h[n - 3]);
  limit_slopes();
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes, bool limit)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
  validate();
  if (m_.size() != x_.size()) throw Error(ErrorCode::bad_input, "slope count does not match node count");
  if (limit) limit_slopes();
}

void MonotoneCubic::validate() const {
  if (x_.size() < 2 || x_.size() != y_.size()) throw Error(ErrorCode::bad_input, "interpolant needs >= 2 matching nodes");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i + 1] > x_[i])) throw Error(ErrorCode::bad_input, "interpolation nodes must be strictly increasing");
  }
  for (double v : y_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::bad_input, "interpolation data must be finite");
  }
}

// Hyman (1983) filter: clamp each slope into the monotone region of its
// neighbouring secants; local extrema of the data get a flat slope.
void MonotoneCubic::limit_slopes() {
  const std::size_t n = x_.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  auto clamp_to = [](double m, double sign, double cap) {
    return sign * std::min(std::max(0.0, sign * m), cap);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? d[i - 1] : d[0];
    const double right = i + 1 < n ? d[i] : d[n - 2];
    if (left * right <= 0.0) {
      m_[i] = 0.0;
      continue;
    }
    const double sign = left > 0.0 ? 1.0 : -1.0;
    m_[i] = clamp_to(m_[i], sign, 3.0 * std::min(std::fabs(left), std::fabs(right)));
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t idx = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(idx, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y_[i] * (2 * t3 - 3 * t2 + 1) + h * m_[i] * (t3 - 2 * t2 + t) + y_[i + 1] * (-2 * t3 + 3 * t2) +
         h * m_[i + 1] * (t3 - t2);
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  return (y_[i] * (6 * t2 - 6 * t) + y_[i + 1] * (-6 * t2 + 6 * t)) / h + m_[i] * (3 * t2 - 4 * t + 1) +
         m_[i + 1] * (3 * t2 - 2 * t);
}

double MonotoneCubic::partial_integral(std::size_t i, double x) const {
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const double a00 = 0.5 * t4 - t3 + t;
  const double a10 = 0.25 * t4 - 2.0 / 3.0 * t3 + 0.5 * t2;
  const double a01 = -0.5 * t4 + t3;
  const double a11 = 0.25 * t4 - t3 / 3.0;
  return h * (y_[i] * a00 + h * m_[i] * a10 + y_[i + 1] * a01 + h * m_[i + 1] * a11);
}

double MonotoneCubic::segment_integral(std::size_t i) const {
  const double h = x_[i + 1] - x_[i];
  return h * (0.5 * (y_[i] + y_[i + 1]) + h * (m_[i] - m_[i + 1]) / 12.0);
}

std::vector<double> isotonic_increasing(std::span<const double> y) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  for (double v : y) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

ScanResult scan_extremum(const std::function<double(double)>& objective, double lo, double hi, Goal goal,
                         int scan_points) {
  if (!(hi > lo)) throw Error(ErrorCode::bad_input, "extremum search needs lo < hi");
  scan_points = std::max(scan_points, 3);
  const double sign = goal == Goal::minimize ? 1.0 : -1.0;
  auto cost = [&](double t) {
    const double v = sign * objective(t);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };

  const auto grid = linspace(lo, hi, static_cast<std::size_t>(scan_points));
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = cost(grid[i]);
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  if (best_cost == std::numeric_limits<double>::max()) {
    throw Error(ErrorCode::numerical_instability, "objective not finite anywhere on the search interval",
                {{"lo", lo}, {"hi", hi}});
  }

  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  std::uintmax_t iterations = 200;
  const auto refined =
      boost::math::tools::brent_find_minima(cost, a, b, std::numeric_limits<double>::digits / 2, iterations);

  ScanResult out;
  out.arg = refined.first;
  out.value = sign * refined.second;
  if (refined.second > best_cost) {
    out.arg = grid[best];
    out.value = sign * best_cost;
  }
  const double width = grid[1] - grid[0];
  if (best == 0 && out.arg - lo <= 1e-6 * width) out.edge = ScanResult::Edge::lower;
  if (best + 1 == grid.size() && hi - out.arg <= 1e-6 * width) out.edge = ScanResult::Edge::upper;
  return out;
}

double bracketed_root(const std::function<double(double)>& fn, double lo, double hi, int bits, int max_iterations) {
  const double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorCode::numerical_instability, "root is not bracketed", {{"lo", lo}, {"hi", hi}});
  }
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto bracket = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi,
                                                         boost::math::tools::eps_tolerance<double>(bits), iterations);
  return 0.5 * (bracket.first + bracket.second);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace specinv
