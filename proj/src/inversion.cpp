#include "specinv/inversion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>

#include "specinv/csv.hpp"
#include "specinv/error.hpp"
#include "specinv/kinetic.hpp"
#include "specinv/models.hpp"

namespace specinv {

namespace {

using Clock = std::chrono::steady_clock;

double relative_error(double value, double reference) {
  return std::fabs(value - reference) / std::max(std::fabs(reference), 1e-300);
}

double window_error(const std::vector<double>& F, const std::vector<double>& v, const SpectralCurve& target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, relative_error(F[i], target(v[i])));
  return worst;
}

std::vector<double> solve_window(const PotentialShape& shape, const InversionConfig& config,
                                 const std::vector<double>& v_window) {
  std::vector<double> F(v_window.size());
  parallel_for(
      v_window.size(),
      [&](std::size_t i) {
        try {
          F[i] = solve_state({shape, v_window[i], config.state.n, config.state.ell, config.grid}).energy;
        } catch (const Error& e) {
          throw Error(ErrorCode::iterate_unsolvable, std::string("iterate curve failed: ") + e.what(),
                      {{"v", v_window[i]}, {"cause", e.to_json()}});
        }
      },
      config.threads);
  return F;
}

// Iterate curve on the lattice u_j = 10^(j / density), widened until the
// slopes F'(u) bracket every potential value in [f_lo, f_hi].
class LatticeSampler {
 public:
  LatticeSampler(const PotentialShape& shape, const InversionConfig& config) : shape_(shape), config_(config) {}

  SpectralCurve sample(double f_lo, double f_hi, int extra_lo, int extra_hi) {
    const int d = std::max(config_.samples_per_decade, 4);
    int lo = -d, hi = d;
    fill(lo, hi);
    while (!lowest(lo, hi)) {
      if (hi + d > 12 * d) throw unsolvable("no bound state up to the largest coupling", f_lo);
      fill(hi + 1, hi + d);
      hi += d;
    }
    while (slope(*lowest(lo, hi)) <= f_hi) {
      if (lo - d < -10 * d) throw unsolvable("lower coupling limit reached", f_hi);
      const bool bound = fill(lo - d, lo - 1);
      lo -= d;
      if (!bound) throw unsolvable("no bound state reaches the outer potential value", f_hi);
    }
    while (slope(hi) >= f_lo) {
      if (hi + d > 12 * d) throw unsolvable("upper coupling limit reached", f_lo);
      fill(hi + 1, hi + d);
      hi += d;
    }
    const int margin = d / 2;
    fill(lo - margin - extra_lo * d, lo - 1);
    lo -= margin + extra_lo * d;
    fill(hi + 1, hi + margin + extra_hi * d);
    hi += margin + extra_hi * d;

    std::vector<double> u, F, dF;
    for (const auto& [j, sample] : solved_) {
      if (j < lo || j > hi) continue;
      u.push_back(coupling(j));
      F.push_back(sample.first);
      dF.push_back(sample.second);
    }
    return SpectralCurve::sampled(config_.state, std::move(u), std::move(F), std::move(dF), 0.0);
  }

 private:
  double coupling(int j) const { return std::pow(10.0, static_cast<double>(j) / config_.samples_per_decade); }
  double slope(int j) const { return solved_.at(j).second; }

  std::optional<int> lowest(int from, int to) const {
    for (int j = from; j <= to; ++j) {
      if (solved_.count(j)) return j;
    }
    return std::nullopt;
  }

  Error unsolvable(const char* why, double f) const {
    return Error(ErrorCode::iterate_unsolvable, std::string("iterate curve sampling: ") + why, {{"f", f}});
  }

  // Solves lattice points in [a, b]; false when none of the new points bind.
  bool fill(int a, int b) {
    std::vector<int> todo;
    for (int j = a; j <= b; ++j) {
      if (!solved_.count(j) && !unbound_.count(j)) todo.push_back(j);
    }
    std::vector<double> F(todo.size()), dF(todo.size());
    std::vector<char> ok(todo.size(), 0);
    parallel_for(
        todo.size(),
        [&](std::size_t i) {
          try {
            const auto s = solve_state({shape_, coupling(todo[i]), config_.state.n, config_.state.ell, config_.grid});
            F[i] = s.energy;
            dF[i] = s.expectation_f;
            ok[i] = 1;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::no_bound_state) {
              throw Error(ErrorCode::iterate_unsolvable, std::string("iterate curve failed: ") + e.what(),
                          {{"v", coupling(todo[i])}, {"cause", e.to_json()}});
            }
          }
        },
        config_.threads);
    bool any = false;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      if (ok[i]) {
        solved_[todo[i]] = {F[i], dF[i]};
        any = true;
      } else {
        unbound_[todo[i]] = 1;
      }
    }
    for (int j = a; j <= b; ++j) any = any || solved_.count(j);
    return any;
  }

  const PotentialShape& shape_;
  const InversionConfig& config_;
  std::map<int, std::pair<double, double>> solved_;
  std::map<int, char> unbound_;
};

std::optional<KFunction> closed_form_kfunction(const PotentialShape& shape, StateLabel state) {
  try {
    return exact_kfunction(shape, state);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_model) throw;
  }
  return std::nullopt;
}

std::optional<SpectralCurve> closed_form_curve(const PotentialShape& shape, StateLabel state) {
  try {
    return exact_spectral_curve(shape, state);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_model) throw;
  }
  return std::nullopt;
}

void attach_kfunction(InversionState& state, const InversionConfig& config) {
  if (state.kfun) return;
  if (state.iteration == 0) {
    if (config.seed_kfunction) {
      state.kfun = config.seed_kfunction;
      return;
    }
    if (auto k = closed_form_kfunction(state.shape, config.state)) {
      state.kfun = *k;
      return;
    }
  }
  const double f_lo = state.shape(state.r.front());
  const double f_hi = state.shape(state.r.back());
  LatticeSampler sampler(state.shape, config);
  if (!state.curve) state.curve = sampler.sample(f_lo, f_hi, 0, 0);
  try {
    state.kfun = kfunction_from_curve(*state.curve, state.shape, state.r, config.threads);
  } catch (const BoundaryError& e) {
    if (!state.curve->is_sampled()) throw;
    const bool low = e.side() == BoundaryError::Side::lower;
    state.curve = sampler.sample(f_lo, f_hi, low ? 1 : 0, low ? 0 : 1);
    state.kfun = kfunction_from_curve(*state.curve, state.shape, state.r, config.threads);
  }
}

}  // namespace

std::vector<double> default_v_window(double critical) {
  if (critical > 0.0) return geomspace(std::max(1.2 * critical, critical + 0.5), 50.0 * critical, 24);
  return geomspace(0.5, 100.0, 24);
}

KFunction excited_state_seed(int n, int ell) {
  validate(StateLabel{n, ell});
  return KFunction::inverse_square(static_cast<double>(n + ell));
}

InversionState initial_state(const InversionConfig& config, const std::vector<double>& v_window) {
  const auto start = Clock::now();
  InversionState s(config.seed);
  s.r = geomspace(config.r_lo, config.r_hi, config.r_points);
  s.f.resize(s.r.size());
  for (std::size_t i = 0; i < s.r.size(); ++i) s.f[i] = config.seed(s.r[i]);
  s.curve = closed_form_curve(config.seed, config.state);
  if (s.curve) {
    s.window_F.resize(v_window.size());
    for (std::size_t i = 0; i < v_window.size(); ++i) s.window_F[i] = (*s.curve)(v_window[i]);
  } else {
    s.window_F = solve_window(config.seed, config, v_window);
  }
  s.curve_error = window_error(s.window_F, v_window, config.target);
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

InversionState invert_step(InversionState& state, const InversionConfig& config, const std::vector<double>& v_window) {
  const auto start = Clock::now();
  attach_kfunction(state, config);
  const KFunction& K = *state.kfun;

  InversionState next(state.shape);
  next.iteration = state.iteration + 1;
  next.r = state.r;
  next.f.resize(next.r.size());
  parallel_for(
      next.r.size(),
      [&](std::size_t i) {
        try {
          next.f[i] = kinetic_value(config.target, K(next.r[i])).value;
        } catch (const BoundaryError& e) {
          auto detail = e.detail();
          detail["r"] = next.r[i];
          throw BoundaryError("inversion step: target curve too narrow for this radius", e.location(), e.side(), detail);
        }
      },
      config.threads);

  double drop = 0.0, lo = next.f.front(), hi = next.f.front();
  for (std::size_t i = 1; i < next.f.size(); ++i) {
    drop = std::max(drop, next.f[i - 1] - next.f[i]);
    lo = std::min(lo, next.f[i]);
    hi = std::max(hi, next.f[i]);
  }
  if (drop > 0.0) {
    next.f = isotonic_increasing(next.f);
    next.projected = true;
    if (drop > config.monotone_tolerance * std::max(1.0, hi - lo)) {
      next.warnings.push_back("iterate " + std::to_string(next.iteration) +
                              " was not monotone (largest drop " + format_number(drop) + "); projected");
    }
  }
  next.shape = PotentialShape::tabulated(next.r, next.f, true);
  for (std::size_t i = 0; i < next.f.size(); ++i) {
    next.shape_delta = std::max(next.shape_delta, std::fabs(next.f[i] - state.f[i]));
  }
  next.window_F = solve_window(next.shape, config, v_window);
  next.curve_error = window_error(next.window_F, v_window, config.target);
  next.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return next;
}

InversionResult run_inversion(const InversionConfig& config) {
  validate(config.state);
  if (!(config.r_lo > 0.0) || !(config.r_hi > config.r_lo) || config.r_points < 3) {
    throw Error(ErrorCode::bad_input, "reconstruction window needs 0 < r_lo < r_hi and >= 3 points",
                {{"r_lo", config.r_lo}, {"r_hi", config.r_hi}, {"r_points", config.r_points}});
  }
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::bad_input, "tolerance must be positive");
  InversionResult result;
  result.v_window = config.v_window.empty() ? default_v_window(config.target.critical_coupling()) : config.v_window;
  for (double v : result.v_window) {
    if (!(v > config.target.lower()) && !(config.target.is_sampled() && v == config.target.lower())) {
      throw Error(ErrorCode::bad_input, "coupling window extends below the target domain", {{"v", v}});
    }
    if (v > config.target.upper()) throw Error(ErrorCode::bad_input, "coupling window exceeds the target domain", {{"v", v}});
  }

  result.history.push_back(initial_state(config, result.v_window));
  int rises = 0;
  while (result.history.back().curve_error > config.tolerance &&
         result.history.back().iteration < config.max_iterations) {
    auto next = invert_step(result.history.back(), config, result.v_window);
    const double before = result.history.back().curve_error;
    result.history.push_back(std::move(next));
    rises = result.history.back().curve_error > before ? rises + 1 : 0;
    if (rises >= 3) {
      nlohmann::json errors = nlohmann::json::array();
      for (const auto& s : result.history) errors.push_back(s.curve_error);
      throw Error(ErrorCode::divergence, "curve error increased for three consecutive iterations",
                  {{"curve_errors", errors}});
    }
  }
  result.converged = result.history.back().curve_error <= config.tolerance;
  return result;
}

nlohmann::json manifest(const InversionResult& result, const InversionConfig& config, bool timings) {
  nlohmann::json cfg;
  cfg["seed"] = config.seed.describe();
  cfg["seed_kfunction"] = config.seed_kfunction ? "inverse_square(P=" + format_number(config.seed_kfunction->P()) + ")"
                                                : "from seed";
  cfg["n"] = config.state.n;
  cfg["ell"] = config.state.ell;
  cfg["r_window"] = {config.r_lo, config.r_hi};
  cfg["r_points"] = config.r_points;
  cfg["v_window"] = result.v_window;
  cfg["max_iterations"] = config.max_iterations;
  cfg["tolerance"] = config.tolerance;
  cfg["samples_per_decade"] = config.samples_per_decade;
  cfg["target"] = {{"sampled", config.target.is_sampled()},
                   {"critical_coupling", config.target.critical_coupling()},
                   {"v_lo", config.target.lower()},
                   {"v_hi", config.target.upper()}};
  cfg["mesh"] = {{"step_cap", config.grid.step_cap},
                 {"phase_step", config.grid.phase_step},
                 {"decay_step", config.grid.decay_step},
                 {"decay_integral", config.grid.decay_integral},
                 {"rmax_tolerance", config.grid.rmax_tolerance}};

  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& s : result.history) {
    nlohmann::json it = {{"iteration", s.iteration},
                         {"curve_error", s.curve_error},
                         {"shape_delta", s.shape_delta},
                         {"projected", s.projected},
                         {"warnings", s.warnings},
                         {"shape_file", "iterate_" + std::to_string(s.iteration) + "_shape.csv"},
                         {"curve_file", "iterate_" + std::to_string(s.iteration) + "_curve.csv"}};
    if (timings) it["seconds"] = s.seconds;
    iterations.push_back(it);
  }
  return {{"config", cfg}, {"iterations", iterations}, {"converged", result.converged}};
}

void export_history(const std::filesystem::path& dir, const InversionResult& result, const InversionConfig& config,
                    const std::string& header, bool timings) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  for (const auto& s : result.history) {
    const std::string stem = "iterate_" + std::to_string(s.iteration);
    write_csv(dir / (stem + "_shape.csv"), {"r", "f"}, {s.r, s.f}, header);
    std::vector<double> err(result.v_window.size());
    for (std::size_t i = 0; i < err.size(); ++i) err[i] = relative_error(s.window_F[i], config.target(result.v_window[i]));
    write_csv(dir / (stem + "_curve.csv"), {"v", "F", "error"}, {result.v_window, s.window_F, err}, header);
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write manifest in " + dir.string());
  auto j = manifest(result, config, timings);
  j["header"] = header;
  out << j.dump(2) << '\n';
}

}  // namespace specinv
