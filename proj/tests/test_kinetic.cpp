#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "specinv/error.hpp"
#include "specinv/kinetic.hpp"
#include "specinv/models.hpp"
#include "specinv/solver.hpp"

using namespace specinv;

namespace {

SpectralCurve curve_of(const PotentialShape& s, StateLabel st = {}) { return exact_spectral_curve(s, st); }

struct Named {
  PotentialShape shape;
  const char* name;
};

std::vector<Named> analytic_family() {
  return {{PotentialShape::hulthen(), "hulthen"},
          {PotentialShape::coulomb(), "coulomb"},
          {PotentialShape::power(1.0), "linear"},
          {PotentialShape::power(2.0), "oscillator"},
          {PotentialShape::log(), "log"}};
}

// s range whose optimal couplings stay inside [v_lo, v_hi] for each curve.
std::pair<double, double> s_range(const SpectralCurve& c, double v_lo, double v_hi) {
  auto s_of = [&](double v) { return c(v) - v * c.derivative(v); };
  double a = s_of(v_lo), b = s_of(v_hi);
  if (a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace

TEST_CASE("kinetic potential examples") {
  CHECK(kinetic_value(curve_of(PotentialShape::hulthen()), 2.0).value == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(kinetic_value(curve_of(PotentialShape::coulomb()), 1.0).value == doctest::Approx(-1.0).epsilon(1e-10));
  const auto log = curve_of(PotentialShape::log());
  const auto kp = kinetic_from_curve(log, geomspace(0.05, 50.0, 30), 1);
  for (std::size_t i = 0; i < kp.nodes().size(); ++i) {
    const double s = kp.nodes()[i];
    CHECK(std::fabs(kp.values()[i] + 0.5 * std::log(2.0 * std::exp(1.0) * s) - log(1.0)) < 1e-9);
  }
}

TEST_CASE("curve from kinetic potential") {
  const auto root = KineticPotential::analytic([](double s) { return -std::sqrt(s); },
                                               [](double s) { return -0.5 / std::sqrt(s); });
  const auto c = curve_from_kinetic(root, {0.5, 2.0, 5.0}, {1, 0});
  CHECK(c.values()[1] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(c.values()[2] == doctest::Approx(-6.25).epsilon(1e-10));
  const auto hk = exact_kinetic_potential(PotentialShape::hulthen(), {1, 0});
  CHECK(curve_from_kinetic(hk, {2.0, 4.0, 9.0}, {1, 0}).values()[1] == doctest::Approx(-2.25).epsilon(1e-10));
}

TEST_CASE("K-function examples") {
  const auto kc = kfunction_from_curve(curve_of(PotentialShape::coulomb()), PotentialShape::coulomb(), {1.0, 2.0, 4.0}, 1);
  CHECK(kc(2.0) == doctest::Approx(0.25).epsilon(1e-9));
  const auto ko = kfunction_from_curve(curve_of(PotentialShape::power(2.0)), PotentialShape::power(2.0), {0.5, 1.0, 2.0}, 1);
  CHECK(ko(1.0) == doctest::Approx(2.25).epsilon(1e-9));

  const auto e1 = energy_from_kfunction(KFunction::inverse_square(1.0), PotentialShape::coulomb(), 2.0);
  CHECK(e1.value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e1.arg == doctest::Approx(1.0).epsilon(1e-6));
  const auto e2 = energy_from_kfunction(KFunction::inverse_square(1.5), PotentialShape::power(2.0), 1.0);
  CHECK(e2.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("K-function has the inverse-square form for powers and the log") {
  const auto r = geomspace(0.05, 10.0, 40);
  for (double q : {-1.0, -0.5, 1.0, 2.0, 0.0}) {
    const auto shape = q == 0.0 ? PotentialShape::log() : PotentialShape::power(q);
    const auto k = kfunction_from_curve(curve_of(shape), shape, r, 1);
    double lo = INFINITY, hi = -INFINITY;
    for (double x : r) {
      lo = std::min(lo, x * x * k(x));
      hi = std::max(hi, x * x * k(x));
    }
    INFO("q=" << q);
    CHECK((hi - lo) / hi < 1e-5);
    CHECK(std::sqrt(hi) == doctest::Approx(exact_kfunction(shape, {1, 0}).P()).epsilon(1e-6));
  }
}

TEST_CASE("Legendre round trip is the identity (property)") {
  std::mt19937 rng(1234);
  for (const auto& [shape, name] : analytic_family()) {
    const auto curve = curve_of(shape);
    const double v1 = curve.critical_coupling();
    const double v_lo = v1 + 0.3 * std::max(1.0, v1), v_hi = v1 + 60.0;
    const auto [s_lo, s_hi] = s_range(curve, v_lo, v_hi);
    const auto kp = kinetic_from_curve(curve, geomspace(s_lo, s_hi, 160), 1);
    INFO(name);
    CHECK(kp.monotone_decreasing());
    const double w_lo = v_lo * 1.5, w_hi = v_hi / 1.5;
    for (int k = 0; k < 10; ++k) {
      const double v = oracle::log_uniform(rng, w_lo, w_hi);
      const auto back = curve_from_kinetic(kp, {v, v * 1.001, v * 1.002}, {1, 0});
      CHECK(back.values()[0] == doctest::Approx(curve(v)).epsilon(1e-6));
      const double s = oracle::log_uniform(rng, s_lo * 2.0, s_hi / 2.0);
      const auto kp2 = kinetic_from_curve(curve, {s, s * 1.001}, 1);
      CHECK(kp2.values()[0] == doctest::Approx(kp(s)).epsilon(1e-6));
    }
  }
}

TEST_CASE("sampled curves survive the round trip") {
  const auto shape = PotentialShape::coulomb_plus(Perturbation::power(1.0), 1.0, 0.5);
  const auto curve = spectral_curve(shape, {1, 0}, geomspace(0.05, 200.0, 97));
  const auto [s_lo, s_hi] = s_range(curve, 0.1, 100.0);
  const auto kp = kinetic_from_curve(curve, geomspace(s_lo, s_hi, 120), 1);
  const auto back = curve_from_kinetic(kp, geomspace(0.3, 30.0, 9), {1, 0});
  for (std::size_t i = 0; i < back.nodes().size(); ++i) {
    CHECK(back.values()[i] == doctest::Approx(curve(back.nodes()[i])).epsilon(1e-6));
  }
}

TEST_CASE("parametric Legendre consistency (property)") {
  std::mt19937 rng(42);
  for (const auto& [shape, name] : analytic_family()) {
    const auto curve = curve_of(shape);
    for (int k = 0; k < 10; ++k) {
      const double v = curve.critical_coupling() + oracle::log_uniform(rng, 0.5, 40.0);
      const double s = curve(v) - v * curve.derivative(v);
      const double fbar = kinetic_value(curve, s).value;
      INFO(name << " v=" << v);
      CHECK(fbar == doctest::Approx(curve.derivative(v)).epsilon(1e-8));
      CHECK(s + v * fbar == doctest::Approx(curve(v)).epsilon(1e-8));
    }
  }
}

TEST_CASE("second derivatives of a Legendre pair multiply to -1/v^3") {
  for (const auto& [shape, name] : analytic_family()) {
    const auto curve = curve_of(shape);
    const auto kp = exact_kinetic_potential(shape, {1, 0});
    for (double dv : geomspace(0.5, 30.0, 10)) {
      const double v = curve.critical_coupling() + dv;
      const double h = 1e-3 * v;
      const double F2 = (curve(v + h) - 2.0 * curve(v) + curve(v - h)) / (h * h);
      const double s = curve(v) - v * curve.derivative(v);
      const double k = 1e-3 * s;
      const double f2 = (kp(s + k) - 2.0 * kp(s) + kp(s - k)) / (k * k);
      INFO(name << " v=" << v);
      CHECK(F2 * f2 == doctest::Approx(-1.0 / (v * v * v)).epsilon(1e-2));
    }
  }
}

TEST_CASE("coupling form") {
  const auto H = curve_of(PotentialShape::coulomb());
  const auto same = curve_from_coupling_form(H, [](double h) { return h; }, {0.5, 1.0, 3.0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(same.values()[i] == doctest::Approx(H(same.nodes()[i])).epsilon(1e-9));
  const auto affine = curve_from_coupling_form(H, [](double h) { return 2.0 * h + 1.0; }, {0.5, 1.0, 3.0});
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = affine.nodes()[i];
    CHECK(affine.values()[i] == doctest::Approx(-v * v + v).epsilon(1e-9));
  }
}

TEST_CASE("boundary optima are errors with a location") {
  const auto c = curve_of(PotentialShape::hulthen());
  try {
    kinetic_value(c, 1e40);
    FAIL("expected a boundary error");
  } catch (const BoundaryError& e) {
    CHECK(e.code() == ErrorCode::boundary_extremum);
    CHECK(e.side() == BoundaryError::Side::upper);
    CHECK(e.location() > 1e10);
  }
  const auto sampled = spectral_curve(PotentialShape::coulomb(), {1, 0}, geomspace(1.0, 4.0, 7));
  CHECK_THROWS_AS(kinetic_value(sampled, 100.0), BoundaryError);
  CHECK_THROWS_AS(kinetic_from_curve(c, {}, 1), Error);
}
