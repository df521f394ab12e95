#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "specinv/csv.hpp"
#include "specinv/curves.hpp"
#include "specinv/error.hpp"
#include "specinv/numerics.hpp"

using namespace specinv;

TEST_CASE("grids") {
  const auto g = geomspace(0.1, 10.0, 3);
  CHECK(g[0] == doctest::Approx(0.1));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g[2] == 10.0);
  const auto l = linspace(-1.0, 1.0, 5);
  CHECK(l[2] == doctest::Approx(0.0));
  CHECK(l.back() == 1.0);
}

TEST_CASE("monotone cubic reproduces cubics and keeps monotone data monotone") {
  std::vector<double> x = linspace(0.0, 2.0, 41), y;
  for (double t : x) y.push_back(t * t * t);
  MonotoneCubic exact(x, y, [&] {
    std::vector<double> m;
    for (double t : x) m.push_back(3.0 * t * t);
    return m;
  }(), false);
  CHECK(exact(1.234) == doctest::Approx(1.234 * 1.234 * 1.234).epsilon(1e-13));
  CHECK(exact.derivative(0.77) == doctest::Approx(3.0 * 0.77 * 0.77).epsilon(1e-12));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs{0.0}, ys{0.0};
    for (int i = 1; i < 12; ++i) {
      xs.push_back(xs.back() + oracle::uniform(rng, 0.1, 2.0));
      ys.push_back(ys.back() + (oracle::uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : oracle::uniform(rng, 0.0, 3.0)));
    }
    const MonotoneCubic s(xs, ys);
    double prev = s(xs.front());
    for (int k = 1; k <= 2000; ++k) {
      const double t = xs.front() + (xs.back() - xs.front()) * k / 2000.0;
      const double val = s(t);
      REQUIRE(val >= prev - 1e-12);
      prev = val;
    }
  }
}

TEST_CASE("segment integrals match Simpson quadrature of the interpolant") {
  std::vector<double> x = geomspace(0.5, 8.0, 9), y;
  for (double t : x) y.push_back(std::log(t));
  const MonotoneCubic s(x, y);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double ref = oracle::simpson([&](double t) { return s(t); }, x[i], x[i + 1], 2);
    CHECK(s.segment_integral(i) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("isotonic fit is non-decreasing, idempotent and mean preserving") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(1 + rng() % 30);
    for (double& v : y) v = oracle::uniform(rng, -1.0, 1.0);
    const auto fit = isotonic_increasing(y);
    double sum_y = 0.0, sum_fit = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      sum_y += y[i];
      sum_fit += fit[i];
      if (i > 0) REQUIRE(fit[i] >= fit[i - 1]);
    }
    CHECK(sum_fit == doctest::Approx(sum_y).epsilon(1e-12));
    CHECK(isotonic_increasing(fit) == fit);
  }
  const std::vector<double> bump{1.0, 3.0, 2.0};
  const auto fit = isotonic_increasing(bump);
  CHECK(fit[1] == doctest::Approx(2.5));
  CHECK(fit[2] == doctest::Approx(2.5));
}

TEST_CASE("scan extremum finds interior optima and flags edges") {
  const auto best = scan_extremum([](double t) { return -(t - 0.3) * (t - 0.3); }, -2.0, 2.0, Goal::maximize);
  CHECK(best.edge == ScanResult::Edge::none);
  CHECK(best.arg == doctest::Approx(0.3).epsilon(1e-7));
  const auto edge = scan_extremum([](double t) { return t; }, 0.0, 1.0, Goal::minimize);
  CHECK(edge.edge == ScanResult::Edge::lower);
  const auto nan_hole = scan_extremum(
      [](double t) { return t < 0.0 ? std::nan("") : -(t - 1.0) * (t - 1.0); }, -3.0, 3.0, Goal::maximize);
  CHECK(nan_hole.arg == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("bracketed root") {
  CHECK(bracketed_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) REQUIRE(h == 1);
}

TEST_CASE("csv round trip is exact") {
  const auto path = std::filesystem::temp_directory_path() / "specinv_numerics_roundtrip.csv";
  std::mt19937 rng(3);
  std::vector<double> a(50), b(50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = oracle::log_uniform(rng, 1e-300, 1e300);
    b[i] = oracle::uniform(rng, -1.0, 1.0) / 3.0;
  }
  write_csv(path, {"a", "b"}, {a, b}, "specinv test");
  const auto t = read_csv(path);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.column("a") == a);
  CHECK(t.column("b") == b);
  CHECK_THROWS_AS(t.column("c"), Error);
  std::filesystem::remove(path);
}

TEST_CASE("sampled spectral curve") {
  std::vector<double> v = geomspace(0.5, 20.0, 40), F, dF;
  for (double x : v) {
    F.push_back(-0.25 * x * x);
    dF.push_back(-0.5 * x);
  }
  const auto c = SpectralCurve::sampled({1, 0}, v, F, dF);
  CHECK(c.concave_verified());
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    const double x = oracle::uniform(rng, 0.5, 20.0);
    CHECK(c(x) == doctest::Approx(-0.25 * x * x).epsilon(1e-6));
    CHECK(c.derivative(x) == doctest::Approx(-0.5 * x).epsilon(1e-5));
  }
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(c(v[i]) == doctest::Approx(F[i]).epsilon(1e-14));
  CHECK_THROWS_AS(c(0.1), Error);
  CHECK_THROWS_AS(SpectralCurve::sampled({1, 0}, {1.0, 2.0}, {0.0, 0.0}, {0.0, 0.0}), Error);

  std::vector<double> bent = F;
  bent[20] += 1.0;
  CHECK_FALSE(SpectralCurve::sampled({1, 0}, v, bent, dF).concave_verified());
}

TEST_CASE("state labels") {
  CHECK_THROWS_AS(validate(StateLabel{0, 0}), Error);
  CHECK_THROWS_AS(validate(StateLabel{1, -1}), Error);
  CHECK_NOTHROW(validate(StateLabel{3, 2}));
}

TEST_CASE("K-function forms") {
  const auto k = KFunction::inverse_square(1.5);
  CHECK(k(2.0) == doctest::Approx(2.25 / 4.0));
  CHECK(k.scaled(3.0)(6.0) == doctest::Approx(k(2.0) / 9.0));
  CHECK_THROWS_AS(KFunction::sampled({1.0, 2.0, 3.0}, {1.0, -1.0, 0.5}), Error);
  std::vector<double> r = geomspace(0.1, 10.0, 30), K;
  for (double x : r) K.push_back(4.0 / (x * x));
  const auto s = KFunction::sampled(r, K);
  CHECK(s(0.77) == doctest::Approx(4.0 / (0.77 * 0.77)).epsilon(1e-10));
}
