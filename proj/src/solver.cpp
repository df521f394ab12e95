#include "specinv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "specinv/error.hpp"

namespace specinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRescale = 1e150;

// Radii where the shape can be evaluated: a tabulated shape without
// extrapolation acts as a box with hard walls at its table ends.
struct Domain {
  double lo = 0.0;
  double hi = kInf;
  bool walls = false;
};

Domain shape_domain(const PotentialShape& shape) {
  Domain d;
  if (shape.kind() == ShapeKind::tabulated && !shape.extrapolates()) {
    const auto r = shape.table_r();
    d.lo = r.front() * shape.length();
    d.hi = r.back() * shape.length();
    d.walls = true;
  }
  return d;
}

double centrifugal(int ell) { return static_cast<double>(ell) * (ell + 1); }

// Mesh variable x = ln r + r / beta: logarithmic below beta, linear above.
double x_of_r(double r, double beta) { return std::log(r) + r / beta; }

double r_of_x(double x, double beta) {
  double y = x;
  if (beta * x > 1.0) y = std::min(x, std::log(beta * x));
  for (int it = 0; it < 200; ++it) {
    const double e = std::exp(y) / beta;
    const double step = (y + e - x) / (1.0 + e);
    y -= step;
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(y))) break;
  }
  return std::exp(y);
}

struct MeshSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  double beta = 1.0;
  double h = 0.01;
};

// Numerov form w'' = G(x) w with u = sqrt(r') w and G = base - E * g2.
struct Mesh {
  MeshSpec spec;
  std::vector<double> r, g2, base, f;

  std::size_t size() const { return r.size(); }
};

Mesh build_mesh(const PotentialShape& shape, double v, int ell, MeshSpec spec) {
  const double x0 = x_of_r(spec.r_min, spec.beta);
  const double x1 = x_of_r(spec.r_max, spec.beta);
  const auto steps = static_cast<std::size_t>(std::ceil((x1 - x0) / spec.h));
  Mesh m;
  m.spec = spec;
  m.r.resize(steps + 1);
  m.g2.resize(steps + 1);
  m.base.resize(steps + 1);
  m.f.resize(steps + 1);
  const double beta = spec.beta;
  const double l2 = centrifugal(ell);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double r = i == 0 ? spec.r_min : r_of_x(x0 + spec.h * static_cast<double>(i), beta);
    const double s = r + beta;
    const double g = r * beta / s;
    const double fr = shape(r);
    if (!std::isfinite(fr)) throw Error(ErrorCode::numerical_instability, "shape not finite on mesh", {{"r", r}});
    m.r[i] = r;
    m.f[i] = fr;
    m.g2[i] = g * g;
    const double q = beta / s;
    m.base[i] = g * g * v * fr + l2 * q * q + beta * beta * beta * (r + 0.25 * beta) / (s * s * s * s);
  }
  m.spec.r_max = m.r.back();
  return m;
}

struct Sweep {
  int nodes = 0;
  double z0 = 0.0;  // z at the stop index
  double z1 = 0.0;  // z at the index beyond it (in sweep direction)
};

class Numerov {
 public:
  Numerov(const Mesh& mesh, int ell, double coulomb) : mesh_(mesh), ell_(ell), coulomb_(coulomb) {}

  double c(std::size_t i, double E) const {
    const double h = mesh_.spec.h;
    return 1.0 - h * h * (mesh_.base[i] - E * mesh_.g2[i]) / 12.0;
  }

  // Regular solution r^{l+1} (1 + a r), scaled by r_0^{-(l+1)}.
  std::pair<double, double> start(double v) const {
    const double a = std::isfinite(coulomb_) ? v * coulomb_ / (2.0 * (ell_ + 1)) : 0.0;
    const double r0 = mesh_.r[0], r1 = mesh_.r[1];
    const double w0 = (1.0 + a * r0) / std::sqrt(std::sqrt(mesh_.g2[0]));
    const double w1 = std::pow(r1 / r0, ell_ + 1) * (1.0 + a * r1) / std::sqrt(std::sqrt(mesh_.g2[1]));
    return {w0, w1};
  }

  // Outward sweep to index `stop`; counts sign changes along the way.
  Sweep outward(double E, double v, std::size_t stop, std::vector<double>* store = nullptr) const {
    auto [w0, w1] = start(v);
    double zp = c(0, E) * w0;
    double z = c(1, E) * w1;
    check(c(0, E), 0);
    if (store) {
      store->assign(stop + 1, 0.0);
      (*store)[0] = zp;
      (*store)[1] = z;
    }
    Sweep s;
    if ((zp > 0) != (z > 0) && zp != 0.0) ++s.nodes;
    for (std::size_t i = 1; i < stop; ++i) {
      const double ci = c(i, E);
      check(ci, i);
      const double zn = z * (12.0 / ci - 10.0) - zp;
      if (!std::isfinite(zn)) throw Error(ErrorCode::numerical_instability, "outward integration overflow", {{"E", E}});
      if (zn != 0.0 && z != 0.0 && ((zn > 0) != (z > 0))) ++s.nodes;
      zp = z;
      z = zn == 0.0 ? std::copysign(1e-300, z) : zn;
      if (store) (*store)[i + 1] = z;
      if (std::fabs(z) > kRescale) {
        z /= kRescale;
        zp /= kRescale;
        if (store) {
          for (std::size_t k = 0; k <= i + 1; ++k) (*store)[k] /= kRescale;
        }
      }
    }
    s.z0 = zp;
    s.z1 = z;
    return s;
  }

  // Inward sweep from the Dirichlet wall at the last mesh point to `stop`.
  Sweep inward(double E, std::size_t stop, std::vector<double>* store = nullptr) const {
    const std::size_t last = mesh_.size() - 1;
    double zp = 0.0;
    double z = 1.0;
    if (store) {
      store->assign(mesh_.size(), 0.0);
      (*store)[last - 1] = z;
    }
    for (std::size_t i = last - 1; i > stop; --i) {
      const double ci = c(i, E);
      check(ci, i);
      const double zn = z * (12.0 / ci - 10.0) - zp;
      if (!std::isfinite(zn)) throw Error(ErrorCode::numerical_instability, "inward integration overflow", {{"E", E}});
      zp = z;
      z = zn;
      if (store) (*store)[i - 1] = z;
      if (std::fabs(z) > kRescale) {
        z /= kRescale;
        zp /= kRescale;
        if (store) {
          for (std::size_t k = i - 1; k <= last; ++k) (*store)[k] /= kRescale;
        }
      }
    }
    Sweep s;
    s.z0 = z;   // at stop
    s.z1 = zp;  // at stop + 1
    return s;
  }

  int count(double E, double v) const { return outward(E, v, mesh_.size() - 1).nodes; }

  // Normalized mismatch of outward and inward solutions across [m, m+1].
  double wronskian(double E, double v, std::size_t m) const {
    const Sweep o = outward(E, v, m + 1);
    const Sweep in = inward(E, m);
    const double w = o.z0 * in.z1 - o.z1 * in.z0;
    return w / (std::hypot(o.z0, o.z1) * std::hypot(in.z0, in.z1));
  }

  // Last mesh index in the classically allowed region at energy E.
  std::size_t matching_index(double E) const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < mesh_.size(); ++i) {
      if (mesh_.base[i] - E * mesh_.g2[i] < 0.0) m = i;
    }
    const std::size_t last = mesh_.size() - 1;
    if (m == 0) m = last / 2;
    return std::clamp<std::size_t>(m, 2, last - 3);
  }

 private:
  void check(double ci, std::size_t i) const {
    if (!(ci > 0.0)) {
      throw Error(ErrorCode::numerical_instability, "mesh step too coarse for the local potential",
                  {{"r", mesh_.r[i]}, {"step", mesh_.spec.h}});
    }
  }

  const Mesh& mesh_;
  int ell_;
  double coulomb_;
};

double effective_potential(const PotentialShape& shape, double v, int ell, double r) {
  return v * shape(r) + centrifugal(ell) / (r * r);
}

// Outer turning point for energy E and the radius beyond it where the
// WKB decay integral reaches `decay`.
std::pair<double, double> turning_and_cutoff(const PotentialShape& shape, double v, int ell, double E,
                                              double well, double decay, const Domain& dom) {
  const double grow = 1.02;
  double r = std::max(well, dom.lo);
  const double limit = std::min(dom.hi, std::max(well, 1.0) * 1e12);
  while (r < limit && effective_potential(shape, v, ell, r) < E) r *= grow;
  const double turning = std::min(r, limit);
  double integral = 0.0;
  double prev_k = 0.0;
  while (r < limit && integral < decay) {
    const double next = std::min(r * grow, limit);
    const double k = std::sqrt(std::max(0.0, effective_potential(shape, v, ell, next) - E));
    integral += 0.5 * (prev_k + k) * (next - r);
    prev_k = k;
    r = next;
  }
  return {turning, std::min(r, limit)};
}

// Step from the local wavenumber and decay rate over [E_lo, E_hi].
double choose_step(const PotentialShape& shape, double v, int ell, MeshSpec spec, double E_lo, double E_hi,
                   const GridControls& grid, bool coarse) {
  spec.h = (x_of_r(spec.r_max, spec.beta) - x_of_r(spec.r_min, spec.beta)) / 4000.0;
  const Mesh probe = build_mesh(shape, v, ell, spec);
  double max_neg = 0.0, max_pos = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    max_neg = std::max(max_neg, -(probe.base[i] - E_hi * probe.g2[i]));
    max_pos = std::max(max_pos, probe.base[i] - E_lo * probe.g2[i]);
  }
  const double relax = coarse ? 4.0 : 1.0;
  double h = grid.step_cap * relax;
  if (max_neg > 0.0) h = std::min(h, grid.phase_step * relax / std::sqrt(max_neg));
  if (max_pos > 0.0) h = std::min(h, grid.decay_step / std::sqrt(max_pos));
  const double span = x_of_r(spec.r_max, spec.beta) - x_of_r(spec.r_min, spec.beta);
  return std::max(h, span / static_cast<double>(grid.max_points));
}

struct Context {
  const RadialProblem& p;
  Domain dom;
  double lower = 0.0;  // rigorous lower bound on every eigenvalue
  double well = 1.0;   // radius of that bound's minimizer
  double cap = kInf;   // continuum threshold
};

MeshSpec design(const Context& ctx, double E_lo, double E_hi, bool coarse) {
  const auto& p = ctx.p;
  MeshSpec spec;
  const auto [turning, cutoff] = turning_and_cutoff(p.shape, p.v, p.ell, E_hi, ctx.well, p.grid.decay_integral, ctx.dom);
  spec.beta = std::max(ctx.well, 0.25 * turning);
  spec.r_min = p.grid.r_min > 0.0 ? p.grid.r_min : 1e-6 * std::min(1.0, spec.beta);
  spec.r_max = p.grid.r_max > 0.0 ? p.grid.r_max : cutoff;
  if (ctx.dom.walls) {
    spec.r_min = std::max(spec.r_min, ctx.dom.lo);
    spec.r_max = std::min(spec.r_max, ctx.dom.hi);
  }
  if (!(spec.r_max > spec.r_min)) {
    throw Error(ErrorCode::domain, "empty integration interval", {{"r_min", spec.r_min}, {"r_max", spec.r_max}});
  }
  spec.h = choose_step(p.shape, p.v, p.ell, spec, E_lo, E_hi, p.grid, coarse);
  return spec;
}

struct Located {
  double energy = 0.0;
  double residual = 0.0;
  std::size_t match = 0;
};

// Isolates state n between two energies by node counting, then refines.
Located locate(const Numerov& num, const Context& ctx, double lo, double hi) {
  const int n = ctx.p.n;
  const double v = ctx.p.v;
  int c_lo = num.count(lo, v);
  int c_hi = num.count(hi, v);
  if (c_lo >= n || c_hi < n) {
    throw Error(ErrorCode::numerical_instability, "energy bracket does not isolate the state",
                {{"E_lo", lo}, {"E_hi", hi}, {"nodes_lo", c_lo}, {"nodes_hi", c_hi}, {"n", n}});
  }
  auto tiny = [](double a, double b) { return std::fabs(b - a) <= 1e-14 * std::max(std::fabs(a), std::fabs(b)) + 1e-300; };
  while (!(c_lo == n - 1 && c_hi == n) && !tiny(lo, hi)) {
    const double mid = 0.5 * (lo + hi);
    const int c = num.count(mid, v);
    if (c >= n) {
      hi = mid;
      c_hi = c;
    } else {
      lo = mid;
      c_lo = c;
    }
  }
  Located out;
  out.match = num.matching_index(0.5 * (lo + hi));
  auto W = [&](double E) { return num.wronskian(E, v, out.match); };
  const double w_lo = W(lo);
  const double w_hi = W(hi);
  if ((w_lo > 0.0) != (w_hi > 0.0) && w_lo != 0.0 && w_hi != 0.0) {
    out.energy = bracketed_root(W, lo, hi, 52, 200);
  } else {
    while (!tiny(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      (num.count(mid, v) >= n ? hi : lo) = mid;
    }
    out.energy = 0.5 * (lo + hi);
  }
  out.residual = std::fabs(W(out.energy));
  return out;
}

// Expands an energy bracket around `guess` on a given mesh.
std::pair<double, double> bracket_near(const Numerov& num, const Context& ctx, double guess) {
  const int n = ctx.p.n;
  const double v = ctx.p.v;
  const double scale = std::max(std::fabs(guess), 1e-300);
  double d_lo = 1e-6 * scale, d_hi = 1e-6 * scale;
  double lo = guess - d_lo;
  for (int k = 0; k < 60 && num.count(lo, v) >= n; ++k) {
    d_lo *= 4.0;
    lo = std::max(guess - d_lo, ctx.lower);
  }
  auto upper = [&](int k) {
    double e = guess + d_hi;
    if (std::isfinite(ctx.cap)) e = std::min(e, guess + (ctx.cap - guess) * (1.0 - std::ldexp(1.0, -k - 1)));
    return e;
  };
  double hi = upper(0);
  for (int k = 1; k < 60 && num.count(hi, v) < n; ++k) {
    d_hi *= 4.0;
    hi = upper(k);
  }
  return {lo, hi};
}

void fill_solution(const Mesh& mesh, const Numerov& num, const Context& ctx, const Located& loc, EigenSolution& sol) {
  const double E = loc.energy;
  const std::size_t m = loc.match;
  std::vector<double> out, in;
  num.outward(E, ctx.p.v, m + 1, &out);
  num.inward(E, m, &in);
  const double denom = in[m] * in[m] + in[m + 1] * in[m + 1];
  const double scale = (out[m] * in[m] + out[m + 1] * in[m + 1]) / denom;
  const std::size_t N = mesh.size();
  std::vector<double> w(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double z = i <= m ? out[i] : scale * in[i];
    w[i] = z / num.c(i, E);
  }
  // trapezoid weights in x; the integrand vanishes at both ends
  double norm = 0.0, fsum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double d = mesh.g2[i] * w[i] * w[i];
    norm += d;
    fsum += d * mesh.f[i];
  }
  const double h = mesh.spec.h;
  norm *= h;
  double simpson = 0.0;
  const std::size_t even = (N - 1) % 2 == 0 ? N - 1 : N - 2;
  for (std::size_t i = 0; i <= even; ++i) {
    const double wt = (i == 0 || i == even) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    simpson += wt * mesh.g2[i] * w[i] * w[i];
  }
  simpson *= h / 3.0;
  for (std::size_t i = even + 1; i < N; ++i) {
    simpson += 0.5 * h * (mesh.g2[i] * w[i] * w[i] + mesh.g2[i - 1] * w[i - 1] * w[i - 1]);
  }

  sol.r = mesh.r;
  sol.u.resize(N);
  double peak = 0.0;
  const double inv = 1.0 / std::sqrt(norm);
  for (std::size_t i = 0; i < N; ++i) {
    sol.u[i] = std::sqrt(std::sqrt(mesh.g2[i])) * w[i] * inv;
    peak = std::max(peak, std::fabs(sol.u[i]));
  }
  int nodes = 0;
  double last = 0.0;
  for (double u : sol.u) {
    if (std::fabs(u) < 1e-8 * peak) continue;
    if (last != 0.0 && ((u > 0) != (last > 0))) ++nodes;
    last = u;
  }
  sol.energy = E;
  sol.nodes = nodes;
  sol.norm_check = simpson / norm;
  sol.expectation_f = fsum * h / norm;
  sol.residual = loc.residual;
  sol.mesh.r_min = mesh.spec.r_min;
  sol.mesh.r_max = mesh.r.back();
  sol.mesh.scale = mesh.spec.beta;
  sol.mesh.step = h;
  sol.mesh.points = N;
}

void validate_problem(const RadialProblem& p) {
  validate(StateLabel{p.n, p.ell});
  if (!(p.v > 0.0) || !std::isfinite(p.v)) throw Error(ErrorCode::domain, "coupling must be positive", {{"v", p.v}});
  if (p.grid.r_min < 0.0 || p.grid.r_max < 0.0 || (p.grid.r_max > 0.0 && p.grid.r_max <= p.grid.r_min)) {
    throw Error(ErrorCode::bad_input, "invalid radial interval", {{"r_min", p.grid.r_min}, {"r_max", p.grid.r_max}});
  }
}

}  // namespace

LowerBound energy_lower_bound(const PotentialShape& shape, double v, int ell) {
  if (!(v > 0.0)) throw Error(ErrorCode::domain, "coupling must be positive", {{"v", v}});
  const Domain dom = shape_domain(shape);
  const double k = (ell + 0.5) * (ell + 0.5);
  const double lo = std::max(dom.lo, 1e-12 * shape.length());
  const double hi = std::min(dom.hi, 1e12 * shape.length());
  auto objective = [&](double t) {
    const double r = std::exp(t);
    return k / (r * r) + v * shape(r);
  };
  const auto best = scan_extremum(objective, std::log(lo), std::log(hi), Goal::minimize, 400);
  LowerBound out{best.value, std::exp(best.arg)};
  if (best.edge == ScanResult::Edge::lower && !dom.walls) {
    throw Error(ErrorCode::invariant_violation, "operator lower bound is unbounded below near the origin",
                {{"v", v}, {"r", out.radius}});
  }
  if (best.edge == ScanResult::Edge::upper && !dom.walls && shape.tail() != Tail::confining) {
    out.value = std::min(out.value, v * shape.limit_at_infinity());
  }
  return out;
}

int threshold_state_count(const PotentialShape& shape, double v, int ell) {
  validate(StateLabel{1, ell});
  if (shape.tail() != Tail::short_range) {
    throw Error(ErrorCode::unsupported_model, "threshold counting needs a short-range tail", {{"shape", shape.describe()}});
  }
  const double f_inf = shape.limit_at_infinity();
  const double E = v * f_inf;
  double R = 1e-3 * shape.length();
  while (R < 1e7 * shape.length()) {
    if (std::fabs(v * (shape(R) - f_inf)) * R * R <= 1e-12 && R > shape.length()) break;
    R *= 1.1;
  }
  MeshSpec spec;
  spec.beta = std::max(R / 10.0, shape.length());
  spec.r_min = 1e-6 * std::min(1.0, spec.beta);
  spec.r_max = R;
  GridControls grid;
  spec.h = choose_step(shape, v, ell, spec, E, E, grid, false);
  const Mesh mesh = build_mesh(shape, v, ell, spec);
  const Numerov num(mesh, ell, shape.origin_coefficient());
  std::vector<double> z;
  const Sweep s = num.outward(E, v, mesh.size() - 1, &z);
  const std::size_t last = mesh.size() - 1;
  std::size_t j = last;
  while (j > 0 && mesh.r[j] > 0.5 * mesh.r[last]) --j;
  auto u_at = [&](std::size_t i) { return std::sqrt(std::sqrt(mesh.g2[i])) * z[i] / num.c(i, E); };
  // u = A r^{l+1} + B r^{-l} beyond the range of the potential
  const double r1 = mesh.r[j], r2 = mesh.r[last];
  const double u1 = u_at(j), u2 = u_at(last);
  const double p1 = std::pow(r1, ell + 1), p2 = std::pow(r2, ell + 1);
  const double m1 = std::pow(r1, -ell), m2 = std::pow(r2, -ell);
  const double det = p1 * m2 - p2 * m1;
  const double A = (u1 * m2 - u2 * m1) / det;
  const double B = (p1 * u2 - p2 * u1) / det;
  const bool zero_beyond = A * B < 0.0 && -B / A > std::pow(r2, 2 * ell + 1);
  return s.nodes + (zero_beyond ? 1 : 0);
}

double detect_critical_coupling(const PotentialShape& shape, StateLabel state) {
  validate(state);
  if (shape.tail() != Tail::short_range || shape_domain(shape).walls) return 0.0;
  const int n = state.n;
  auto bound = [&](double v) { return threshold_state_count(shape, v, state.ell) >= n; };
  double hi = 1.0;
  while (!bound(hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::unbounded_search, "no bound state found up to v = 1e12", {{"n", n}});
  }
  double lo = hi / 2.0;
  while (bound(lo)) {
    lo /= 2.0;
    if (lo < 1e-12) return 0.0;
  }
  hi = std::min(hi, 2.0 * lo);
  while (hi / lo - 1.0 > 1e-10) {
    const double mid = std::sqrt(lo * hi);
    (bound(mid) ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

// Trial upper energies for a confined spectrum. A negative lower bound is
// approached geometrically so that no trial sits far above the state.
double confined_trial(double lower, int k) {
  const double spread = std::max(std::fabs(lower), 1e-300);
  if (lower >= 0.0) return lower + spread * std::pow(2.0, 0.5 * (k - 12));
  if (k <= 40) return lower * std::pow(2.0, -0.5 * k);
  return spread * 1e-6 * std::pow(2.0, 0.5 * (k - 41));
}

EigenSolution solve_state(const RadialProblem& p) {
  validate_problem(p);
  Context ctx{p, shape_domain(p.shape)};
  const auto lb = energy_lower_bound(p.shape, p.v, p.ell);
  ctx.lower = lb.value - 1e-6 * (1.0 + std::fabs(lb.value));
  ctx.well = lb.radius;
  const bool confined = p.shape.tail() == Tail::confining || ctx.dom.walls;
  if (!confined) ctx.cap = p.v * p.shape.limit_at_infinity();
  const nlohmann::json evidence = {{"v", p.v}, {"n", p.n}, {"ell", p.ell}, {"lower_bound", lb.value}};

  if (!confined && p.shape.tail() == Tail::short_range) {
    const int count = threshold_state_count(p.shape, p.v, p.ell);
    if (count < p.n) {
      auto detail = evidence;
      detail["threshold"] = ctx.cap;
      detail["states_below_threshold"] = count;
      throw Error(ErrorCode::no_bound_state, "no bound state with the requested node count", detail);
    }
  }
  if (!(ctx.lower < ctx.cap)) throw Error(ErrorCode::no_bound_state, "lower bound above the continuum", evidence);

  // coarse pass: bracket on meshes built for the trial upper energy
  double hi = 0.0;
  std::optional<Mesh> coarse;
  for (int k = 1;; ++k) {
    if (k > 120) throw Error(ErrorCode::numerical_instability, "could not bracket the state", evidence);
    hi = confined ? confined_trial(ctx.lower, k) : ctx.cap - (ctx.cap - ctx.lower) * std::ldexp(1.0, -k);
    coarse.emplace(build_mesh(p.shape, p.v, p.ell, design(ctx, ctx.lower, hi, true)));
    const Numerov num(*coarse, p.ell, p.shape.origin_coefficient());
    if (num.count(hi, p.v) >= p.n) break;
  }
  const Numerov coarse_num(*coarse, p.ell, p.shape.origin_coefficient());
  const double guess = locate(coarse_num, ctx, ctx.lower, hi).energy;

  // fine pass on a mesh designed for the located energy
  double design_hi = guess;
  if (std::isfinite(ctx.cap)) design_hi = std::min(guess + 1e-3 * std::fabs(guess), 0.5 * (guess + ctx.cap));
  MeshSpec spec = design(ctx, ctx.lower, design_hi, false);
  EigenSolution sol;
  double previous = 0.0;
  for (int extension = 0;; ++extension) {
    const Mesh mesh = build_mesh(p.shape, p.v, p.ell, spec);
    const Numerov num(mesh, p.ell, p.shape.origin_coefficient());
    const auto [lo, up] = bracket_near(num, ctx, extension == 0 ? guess : previous);
    const Located loc = locate(num, ctx, lo, up);
    const bool fixed = p.grid.r_max > 0.0 || ctx.dom.walls;
    const bool settled =
        extension > 0 && std::fabs(loc.energy - previous) <= p.grid.rmax_tolerance * std::max(std::fabs(previous), 1e-300);
    if (fixed || settled || extension >= 6) {
      fill_solution(mesh, num, ctx, loc, sol);
      sol.converged = fixed || settled;
      sol.mesh.rmax_extensions = extension;
      break;
    }
    previous = loc.energy;
    const double x0 = x_of_r(spec.r_min, spec.beta);
    const double steps = std::ceil((x_of_r(1.5 * spec.r_max, spec.beta) - x0) / spec.h);
    spec.r_max = r_of_x(x0 + steps * spec.h, spec.beta);
  }
  if (sol.nodes != p.n - 1) {
    throw Error(ErrorCode::numerical_instability, "eigenfunction node count mismatch",
                {{"v", p.v}, {"n", p.n}, {"ell", p.ell}, {"nodes", sol.nodes}, {"energy", sol.energy}});
  }
  return sol;
}

SpectralCurve spectral_curve(const PotentialShape& shape, StateLabel state, const std::vector<double>& v_grid,
                             const GridControls& grid, unsigned threads) {
  validate(state);
  if (v_grid.size() < 3) throw Error(ErrorCode::bad_input, "curve grid needs at least three couplings");
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    if (!(v_grid[i] > 0.0) || (i > 0 && !(v_grid[i] > v_grid[i - 1]))) {
      throw Error(ErrorCode::bad_input, "coupling grid must be positive and increasing", {{"index", i}});
    }
  }
  const std::size_t count = v_grid.size();
  std::vector<double> F(count), dF(count);
  std::vector<char> ok(count, 0);
  parallel_for(
      count,
      [&](std::size_t i) {
        try {
          RadialProblem p{shape, v_grid[i], state.n, state.ell, grid};
          const auto sol = solve_state(p);
          F[i] = sol.energy;
          dF[i] = sol.expectation_f;
          ok[i] = 1;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::no_bound_state) throw;
        }
      },
      threads);
  std::vector<PartialCurveError::Sample> solved;
  std::vector<double> failed;
  for (std::size_t i = 0; i < count; ++i) {
    if (ok[i]) {
      solved.push_back({v_grid[i], F[i], dF[i]});
    } else {
      failed.push_back(v_grid[i]);
    }
  }
  if (!failed.empty()) throw PartialCurveError(std::move(solved), std::move(failed));
  const double critical = std::min(detect_critical_coupling(shape, state), v_grid.front());
  return SpectralCurve::sampled(state, v_grid, std::move(F), std::move(dF), critical);
}

nlohmann::json to_json(const MeshStats& mesh) {
  return {{"r_min", mesh.r_min},   {"r_max", mesh.r_max},   {"scale", mesh.scale},
          {"step", mesh.step},     {"points", mesh.points}, {"rmax_extensions", mesh.rmax_extensions}};
}

nlohmann::json to_json(const EigenSolution& s) {
  return {{"energy", s.energy},
          {"nodes", s.nodes},
          {"norm_check", s.norm_check},
          {"expectation_f", s.expectation_f},
          {"converged", s.converged},
          {"residual", s.residual},
          {"mesh", to_json(s.mesh)}};
}

}  // namespace specinv
