#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "specinv/error.hpp"
#include "specinv/models.hpp"
#include "specinv/shape.hpp"

using namespace specinv;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

// Ground state of -u'' + ln(r) u, by finite differences.
double log_ground_energy() {
  return oracle::fd_extrapolated([](double r) { return std::log(r); }, 12.0, 6000, 0, -5.0, 5.0);
}

}  // namespace

TEST_CASE("shape values") {
  CHECK(eval_shape(PotentialShape::coulomb(), 2.0) == -0.5);
  CHECK(eval_shape(PotentialShape::power(2.0), 3.0) == doctest::Approx(9.0));
  CHECK(eval_shape(PotentialShape::power(-0.5), 4.0) == doctest::Approx(-0.5));
  CHECK(eval_shape(PotentialShape::log(), std::exp(1.5)) == doctest::Approx(1.5));
  const auto h = PotentialShape::hulthen();
  CHECK(1e-7 * h(1e-7) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(h.origin_coefficient() == -1.0);
  const auto cl = PotentialShape::coulomb_plus(Perturbation::log(), 1.0, 0.5);
  CHECK(cl(2.0) == doctest::Approx(-0.5 + 0.5 * std::log(2.0)));
}

TEST_CASE("shape errors") {
  CHECK(code_of([] { eval_shape(PotentialShape::coulomb(), 0.0); }) == ErrorCode::domain);
  CHECK(code_of([] { eval_shape(PotentialShape::coulomb(), -1.0); }) == ErrorCode::domain);
  CHECK(code_of([] { PotentialShape::power(-2.0); }) == ErrorCode::domain);
  CHECK(code_of([] { PotentialShape::power(0.0); }) == ErrorCode::domain);
  CHECK(code_of([] { PotentialShape::coulomb_plus(Perturbation::power(1.0), 0.0, 1.0); }) == ErrorCode::domain);
  const auto t = PotentialShape::tabulated({1.0, 2.0, 3.0}, {-1.0, -0.5, -0.2}, false);
  CHECK(code_of([&] { t(0.5); }) == ErrorCode::range);
  CHECK(code_of([&] { t(4.0); }) == ErrorCode::range);
  CHECK(code_of([] { PotentialShape::tabulated({1.0, 2.0, 3.0}, {-1.0, -2.0, 0.0}); }) == ErrorCode::domain);
}

TEST_CASE("tabulated extrapolation") {
  const auto t = PotentialShape::tabulated({1.0, 2.0, 4.0}, {-1.0, -0.5, -0.1});
  CHECK(t(0.5) == doctest::Approx(-2.0));
  CHECK(t(0.25) == doctest::Approx(-4.0));
  CHECK(t(6.0) == doctest::Approx(-0.1 + 0.2 * 2.0));
  CHECK(t.origin_coefficient() == doctest::Approx(-1.0));
  CHECK(t.tail() == Tail::confining);
}

TEST_CASE("tabulated interpolation stays monotone (property)") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> r = geomspace(0.05, 10.0, 8 + rng() % 20), f;
    double acc = -oracle::uniform(rng, 1.0, 20.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      f.push_back(acc);
      acc += oracle::uniform(rng, 0.0, 1.0) < 0.2 ? 0.0 : oracle::uniform(rng, 0.0, 2.0);
    }
    const auto t = PotentialShape::tabulated(r, f);
    double prev = t(0.01);
    for (int k = 1; k <= 500; ++k) {
      const double x = 0.01 * std::pow(2000.0, k / 500.0);
      const double val = t(x);
      REQUIRE(val >= prev - 1e-12);
      prev = val;
    }
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(t(r[i]) == doctest::Approx(f[i]).epsilon(1e-13));
  }
}

TEST_CASE("scale and shift") {
  const auto c2 = scale_shift(PotentialShape::coulomb(), 2.0, 1.0, 0.0);
  CHECK(c2(0.5) == doctest::Approx(-4.0));
  const auto p = scale_shift(PotentialShape::power(1.0), 1.0, 2.0, 0.0);
  CHECK(p(3.0) == doctest::Approx(1.5));
  const auto s = scale_shift(PotentialShape::log(), 3.0, 2.0, 1.0);
  CHECK(s(5.0) == doctest::Approx(3.0 * std::log(2.5) + 1.0));
  CHECK(code_of([] { scale_shift(PotentialShape::log(), -1.0, 1.0, 0.0); }) == ErrorCode::domain);
}

TEST_CASE("tail classes") {
  CHECK(PotentialShape::coulomb().tail() == Tail::long_range);
  CHECK(PotentialShape::hulthen().tail() == Tail::short_range);
  CHECK(PotentialShape::power(2.0).tail() == Tail::confining);
  CHECK(PotentialShape::log().tail() == Tail::confining);
  CHECK(PotentialShape::coulomb_plus(Perturbation::power(2.0), 1.0, 0.5).tail() == Tail::confining);
}

TEST_CASE("exact spectral curves") {
  CHECK(exact_spectral_curve(PotentialShape::hulthen(), {1, 0})(4.0) == doctest::Approx(-2.25));
  CHECK(exact_spectral_curve(PotentialShape::coulomb(), {1, 0})(1.0) == doctest::Approx(-0.25));
  CHECK(exact_spectral_curve(PotentialShape::power(2.0), {1, 0})(1.0) == doctest::Approx(3.0));
  CHECK(exact_spectral_curve(PotentialShape::power(2.0), {2, 1})(1.0) == doctest::Approx(9.0));
  CHECK(exact_spectral_curve(PotentialShape::coulomb(), {2, 1})(2.0) == doctest::Approx(-1.0 / 9.0));
  CHECK(exact_spectral_curve(PotentialShape::hulthen(), {2, 0}).critical_coupling() == 4.0);
  CHECK(code_of([] { exact_spectral_curve(PotentialShape::hulthen(), {1, 1}); }) == ErrorCode::unsupported_model);
  CHECK(code_of([] {
          exact_spectral_curve(PotentialShape::coulomb_plus(Perturbation::power(1.0), 1.0, 0.5), {1, 0});
        }) == ErrorCode::unsupported_model);
  CHECK(code_of([] { exact_spectral_curve(PotentialShape::hulthen(), {1, 0})(0.5); }) == ErrorCode::domain);
}

TEST_CASE("scaled curve follows the scaling law") {
  const auto base = PotentialShape::power(1.0);
  const auto curve = exact_spectral_curve(base, {1, 0});
  const auto scaled = exact_spectral_curve(scale_shift(base, 2.0, 3.0, -1.0), {1, 0});
  for (double v : {0.3, 1.0, 7.0}) CHECK(scaled(v) == doctest::Approx(curve(2.0 * 9.0 * v) / 9.0 - v));
}

TEST_CASE("analytic curves are concave (property)") {
  std::mt19937 rng(8);
  const std::vector<std::pair<PotentialShape, StateLabel>> cases = {
      {PotentialShape::hulthen(), {1, 0}},      {PotentialShape::hulthen(), {2, 0}},
      {PotentialShape::coulomb(), {1, 1}},      {PotentialShape::power(2.0), {2, 0}},
      {PotentialShape::power(1.0), {1, 0}},     {PotentialShape::power(-0.5), {1, 0}},
      {PotentialShape::log(), {1, 0}},
  };
  for (const auto& [shape, state] : cases) {
    const auto c = exact_spectral_curve(shape, state);
    for (int k = 0; k < 20; ++k) {
      const double v = c.critical_coupling() + oracle::log_uniform(rng, 0.05, 50.0);
      const double h = 1e-3 * v;
      const double d2 = (c(v + h) - 2.0 * c(v) + c(v - h)) / (h * h);
      CHECK(d2 <= 1e-6 * (1.0 + std::fabs(c(v))) / (v * v));
    }
  }
}

TEST_CASE("Hulthen large-coupling asymptotics") {
  for (int n : {1, 2, 3}) {
    const auto c = exact_spectral_curve(PotentialShape::hulthen(), {n, 0});
    for (double v : {1e3, 1e4}) {
      const double ratio = c(v) / (v * v) * 4.0 * n * n;
      CHECK(std::fabs(ratio + 1.0) < 3.0 * n * n / v);
    }
  }
}

TEST_CASE("P from E reproduces the closed forms") {
  for (int n = 1; n <= 3; ++n) {
    for (int ell = 0; ell <= 2; ++ell) {
      const double Ec = -1.0 / (4.0 * (n + ell) * (n + ell));
      const double Eo = 4.0 * n + 2.0 * ell - 1.0;
      CHECK(power_P(-1.0, Ec) == doctest::Approx(n + ell).epsilon(1e-12));
      CHECK(power_P(2.0, Eo) == doctest::Approx(2.0 * n + ell - 0.5).epsilon(1e-12));
      const auto pc = power_constants(-1.0, {n, ell});
      CHECK(pc.P_nl == doctest::Approx(n + ell).epsilon(1e-12));
    }
  }
}

TEST_CASE("K-functions") {
  const auto kc = exact_kfunction(PotentialShape::coulomb(), {1, 0});
  CHECK(kc(1.0) == doctest::Approx(1.0));
  CHECK(kc(2.0) == doctest::Approx(0.25));
  const auto ko = exact_kfunction(PotentialShape::power(2.0), {1, 0});
  CHECK(ko(1.0) == doctest::Approx(2.25));
  const auto kl = exact_kfunction(PotentialShape::log(), {1, 0});
  const double E = log_ground_energy();
  CHECK(E == doctest::Approx(1.0443).epsilon(1e-4));
  CHECK(kl(1.0) == doctest::Approx(std::exp(2.0 * E - 1.0) / 2.0).epsilon(1e-7));
  CHECK(log_energy({1, 0}) == doctest::Approx(E).epsilon(1e-8));
  CHECK(code_of([] { exact_kfunction(PotentialShape::hulthen(), {1, 0}); }) == ErrorCode::unsupported_model);
  CHECK(code_of([] { power_constants(-2.5, {1, 0}); }) == ErrorCode::domain);
}

TEST_CASE("K-function is invariant under scale and shift (property)") {
  std::mt19937 rng(4);
  for (double q : {-1.0, -0.5, 1.0, 2.0}) {
    const auto base = PotentialShape::power(q);
    const auto k = exact_kfunction(base, {1, 0});
    for (int trial = 0; trial < 10; ++trial) {
      const double A = oracle::log_uniform(rng, 0.1, 10.0);
      const double b = oracle::log_uniform(rng, 0.1, 10.0);
      const double B = oracle::uniform(rng, -3.0, 3.0);
      const auto ks = exact_kfunction(scale_shift(base, A, b, B), {1, 0});
      for (double r : geomspace(0.05, 20.0, 7)) CHECK(ks(r) == doctest::Approx(k(r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact kinetic potentials") {
  const auto h = exact_kinetic_potential(PotentialShape::hulthen(), {1, 0});
  CHECK(h(2.0) == doctest::Approx(-1.0));
  const auto c = exact_kinetic_potential(PotentialShape::coulomb(), {1, 0});
  CHECK(c(1.0) == doctest::Approx(-1.0));
  CHECK(c(4.0) == doctest::Approx(-2.0));
}
