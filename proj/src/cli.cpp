#include "specinv/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "specinv/csv.hpp"
#include "specinv/envelope.hpp"
#include "specinv/inversion.hpp"
#include "specinv/kinetic.hpp"
#include "specinv/models.hpp"
#include "specinv/solver.hpp"

namespace specinv::cli {

namespace {

const std::vector<std::string> kCommands = {"solve", "curve", "kinetic", "kfun", "bounds", "invert"};

[[noreturn]] void bad(const std::string& message, nlohmann::json detail = nlohmann::json::object()) {
  throw Error(ErrorCode::bad_input, message, std::move(detail));
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::string> words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double number(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) bad("expected a number for " + what, {{"token", token}});
  return x;
}

Perturbation parse_perturbation(const std::vector<std::string>& w, std::size_t& i) {
  if (i >= w.size()) bad("coulomb_plus needs a perturbation kind");
  const std::string kind = w[i++];
  if (kind == "linear") return Perturbation::power(1.0);
  if (kind == "quadratic" || kind == "oscillator") return Perturbation::power(2.0);
  if (kind == "log") return Perturbation::log();
  if (kind == "power") {
    if (i >= w.size()) bad("power perturbation needs an exponent");
    return Perturbation::power(number(w[i++], "perturbation exponent"));
  }
  bad("unknown perturbation kind", {{"kind", kind}});
}

std::string grid_or_empty(const std::optional<GridSpec>& g) { return g ? g->text() : std::string(); }

void require_log(const GridSpec& g, const char* what) {
  if (!g.log) bad(std::string(what) + " grid must be logarithmic", {{"grid", g.text()}});
}

struct Preset {
  std::string target;
  std::string target_vgrid;
  std::string rgrid;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"hulthen-fig1", {"hulthen", "", "0.05:10:200:log"}},
      {"coulinear-fig3", {"coulomb_plus linear 1 0.5", "1e-4:1e4:257:log", "0.05:10:200:log"}},
      {"couosc-fig4", {"coulomb_plus quadratic 1 0.5", "1e-5:1e4:289:log", "0.05:10:200:log"}},
      {"coulog-fig5", {"coulomb_plus log 1 0.5", "1e-4:1e4:257:log", "0.02:40:300:log"}},
  };
  return table;
}

// key=value lines; '#' starts a comment line.
std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file", {{"path", path}});
  std::vector<std::string> tokens;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) bad("config line is not key=value", {{"path", path}, {"line", lineno}, {"text", t}});
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) bad("config line has an empty key", {{"path", path}, {"line", lineno}});
    if (key == "config") bad("config files cannot include other config files", {{"path", path}, {"line", lineno}});
    tokens.push_back(key);
    tokens.push_back(value);
    tokens.push_back(std::to_string(lineno));
  }
  return tokens;
}

GridControls grid_controls(const RunConfig& c) {
  GridControls g;
  if (c.step_cap > 0.0) g.step_cap = c.step_cap;
  if (c.rmax_tolerance > 0.0) g.rmax_tolerance = c.rmax_tolerance;
  return g;
}

unsigned thread_count(const RunConfig& c) { return c.threads > 0 ? c.threads : default_thread_count(); }

StateLabel state_of(const RunConfig& c) {
  StateLabel s{c.n, c.ell};
  validate(s);
  return s;
}

PotentialShape shape_of(const RunConfig& c) {
  if (!c.shape.empty() && !c.shape_csv.empty()) bad("give either --shape or --shape-csv, not both");
  if (!c.shape_csv.empty()) return read_shape_csv(c.shape_csv);
  if (c.shape.empty()) bad("this command needs --shape or --shape-csv");
  return parse_shape(c.shape);
}

const GridSpec& need(const std::optional<GridSpec>& g, const char* flag) {
  if (!g) bad(std::string("this command needs ") + flag);
  return *g;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) bad("cannot create output directory", {{"path", dir.string()}, {"reason", ec.message()}});
  const auto probe = dir / ".specinv-write-test";
  {
    std::ofstream t(probe);
    if (!t) bad("output directory is not writable", {{"path", dir.string()}});
  }
  std::filesystem::remove(probe, ec);
}

void write_json(const std::filesystem::path& path, nlohmann::json j, const std::string& header) {
  j["header"] = header;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// Closed form when the model module has one, else solver samples on --vgrid.
SpectralCurve curve_for(const RunConfig& c, const PotentialShape& shape, StateLabel state) {
  if (!c.vgrid) {
    try {
      return exact_spectral_curve(shape, state);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsupported_model) throw;
      bad("no closed-form curve for this shape; give --vgrid to sample it", {{"shape", shape.describe()}});
    }
  }
  return spectral_curve(shape, state, c.vgrid->values(), grid_controls(c), thread_count(c));
}

void cmd_solve(const RunConfig& c, std::ostream& out) {
  const auto shape = shape_of(c);
  const auto sol = solve_state({shape, c.v, c.n, c.ell, grid_controls(c)});
  out << "E = " << format_number(sol.energy) << '\n';
  auto j = to_json(sol);
  j["shape"] = shape.describe();
  j["v"] = c.v;
  j["n"] = c.n;
  j["ell"] = c.ell;
  out << j.dump() << '\n';
  prepare_dir(c.out);
  write_json(c.out / "solve.json", j, c.header());
  write_csv(c.out / "wavefunction.csv", {"r", "u"}, {sol.r, sol.u}, c.header());
}

void cmd_curve(const RunConfig& c, std::ostream& out) {
  const auto shape = shape_of(c);
  const auto& g = need(c.vgrid, "--vgrid");
  const auto curve = spectral_curve(shape, state_of(c), g.values(), grid_controls(c), thread_count(c));
  prepare_dir(c.out);
  write_csv(c.out / "curve.csv", {"v", "F", "Fprime"}, {curve.nodes(), curve.values(), curve.derivatives()},
            c.header());
  out << nlohmann::json{{"points", curve.nodes().size()},
                        {"concave", curve.concave_verified()},
                        {"critical_coupling", curve.critical_coupling()},
                        {"file", (c.out / "curve.csv").string()}}
             .dump()
      << '\n';
}

void cmd_kinetic(const RunConfig& c, std::ostream& out) {
  const auto shape = shape_of(c);
  const auto& g = need(c.sgrid, "--sgrid");
  const auto curve = curve_for(c, shape, state_of(c));
  const auto kp = kinetic_from_curve(curve, g.values(), thread_count(c));
  prepare_dir(c.out);
  write_csv(c.out / "kinetic.csv", {"s", "fbar"}, {kp.nodes(), kp.values()}, c.header());
  out << nlohmann::json{{"points", kp.nodes().size()},
                        {"monotone_decreasing", kp.monotone_decreasing()},
                        {"file", (c.out / "kinetic.csv").string()}}
             .dump()
      << '\n';
}

void cmd_kfun(const RunConfig& c, std::ostream& out) {
  const auto shape = shape_of(c);
  const auto& g = need(c.rgrid, "--rgrid");
  const auto curve = curve_for(c, shape, state_of(c));
  const auto k = kfunction_from_curve(curve, shape, g.values(), thread_count(c));
  prepare_dir(c.out);
  const auto r = k.nodes();
  const auto K = k.values();
  write_csv(c.out / "kfun.csv", {"r", "K"}, {r, K}, c.header());
  out << nlohmann::json{{"points", r.size()}, {"file", (c.out / "kfun.csv").string()}}.dump() << '\n';
}

void cmd_bounds(const RunConfig& c, std::ostream& out) {
  const auto shape = shape_of(c);
  const auto state = state_of(c);
  const auto& g = need(c.vgrid, "--vgrid");
  const auto r_grid = c.rgrid ? c.rgrid->values() : geomspace(1e-3, 1e3, 400);
  const auto basis = EnvelopeBasis::coulomb(state);
  const auto profile = build_transformation(shape, basis.shape_h, r_grid);
  const auto v = g.values();
  std::vector<double> E(v.size()), bound(v.size()), slack(v.size()), touch(v.size());
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    E[i] = solve_state({shape, v[i], c.n, c.ell, grid_controls(c)}).energy;
    const auto rec = envelope_bound(profile, basis, v[i]);
    bound[i] = rec.value;
    touch[i] = rec.touch_point;
    slack[i] = rec.kind == BoundKind::lower ? E[i] - rec.value : rec.value - E[i];
    auto j = to_json(rec);
    j["energy"] = E[i];
    j["slack"] = slack[i];
    records.push_back(j);
  }
  prepare_dir(c.out);
  write_csv(c.out / "bounds.csv", {"v", "E", "bound", "slack", "touch"}, {v, E, bound, slack, touch}, c.header());
  const nlohmann::json summary = {{"shape", shape.describe()},
                                  {"basis", basis.name},
                                  {"convexity", to_string(profile.convexity())},
                                  {"records", records}};
  write_json(c.out / "bounds.json", summary, c.header());
  out << nlohmann::json{{"convexity", to_string(profile.convexity())},
                        {"points", v.size()},
                        {"file", (c.out / "bounds.csv").string()}}
             .dump()
      << '\n';
}

void cmd_invert(const RunConfig& c, std::ostream& out) {
  const auto state = state_of(c);
  if (!c.target.empty() && !c.target_csv.empty()) bad("give either --target or --target-csv, not both");
  if (c.target.empty() && c.target_csv.empty()) bad("invert needs --target, --target-csv or --preset");
  std::optional<PotentialShape> goal;
  std::optional<SpectralCurve> target;
  if (!c.target_csv.empty()) {
    const auto table = read_csv(c.target_csv);
    target = SpectralCurve::sampled(state, table.column("v"), table.column("F"), table.column("Fprime"));
  } else {
    goal = parse_shape(c.target);
    if (c.target_vgrid) {
      target = spectral_curve(*goal, state, c.target_vgrid->values(), grid_controls(c), thread_count(c));
    } else {
      try {
        target = exact_spectral_curve(*goal, state);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::unsupported_model) throw;
        bad("no closed-form curve for the target; give --target-vgrid to sample it", {{"target", c.target}});
      }
    }
  }

  InversionConfig ic(*target);
  ic.seed = parse_shape(c.seed);
  if (c.excited_seed) ic.seed_kfunction = excited_state_seed(c.n, c.ell);
  ic.state = state;
  const GridSpec r = c.rgrid.value_or(GridSpec{0.05, 10.0, 200, true});
  require_log(r, "--rgrid");
  ic.r_lo = r.lo;
  ic.r_hi = r.hi;
  ic.r_points = r.count;
  if (c.window) ic.v_window = c.window->values();
  ic.max_iterations = c.iterations;
  ic.tolerance = c.tolerance;
  ic.samples_per_decade = c.samples_per_decade;
  ic.grid = grid_controls(c);
  ic.threads = thread_count(c);

  prepare_dir(c.out);
  const auto result = run_inversion(ic);
  export_history(c.out, result, ic, c.header(), c.timings);

  const auto& first = result.history.front();
  std::vector<std::string> header = {"r", "seed"};
  std::vector<std::span<const double>> columns = {first.r, first.f};
  std::vector<std::size_t> picks;
  if (result.history.size() > 1) picks.push_back(1);
  if (result.history.size() > 2) picks.push_back(result.history.size() - 1);
  for (std::size_t k : picks) {
    header.push_back("f" + std::to_string(k));
    columns.emplace_back(result.history[k].f);
  }
  std::vector<double> goal_f;
  if (goal) {
    for (double x : first.r) goal_f.push_back((*goal)(x));
    header.push_back("goal");
    columns.emplace_back(goal_f);
  }
  write_csv(c.out / "figure.csv", header, columns, c.header());

  nlohmann::json errors = nlohmann::json::array();
  for (const auto& s : result.history) errors.push_back(s.curve_error);
  out << nlohmann::json{{"iterations", result.history.size() - 1},
                        {"curve_errors", errors},
                        {"converged", result.converged},
                        {"directory", c.out.string()}}
             .dump()
      << '\n';
}

}  // namespace

std::vector<double> GridSpec::values() const { return log ? geomspace(lo, hi, count) : linspace(lo, hi, count); }

std::string GridSpec::text() const {
  return format_number(lo) + ":" + format_number(hi) + ":" + std::to_string(count) + (log ? ":log" : ":lin");
}

GridSpec parse_grid(std::string_view text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() < 3 || parts.size() > 4) bad("grid must be min:max:count[:lin|log]", {{"grid", std::string(text)}});
  GridSpec g;
  g.lo = number(parts[0], "grid minimum");
  g.hi = number(parts[1], "grid maximum");
  const double count = number(parts[2], "grid count");
  if (count != std::floor(count) || count < 2) bad("grid count must be an integer >= 2", {{"grid", std::string(text)}});
  g.count = static_cast<std::size_t>(count);
  if (parts.size() == 4) {
    if (parts[3] == "lin") {
      g.log = false;
    } else if (parts[3] != "log") {
      bad("grid spacing must be lin or log", {{"grid", std::string(text)}});
    }
  }
  if (!(g.lo < g.hi)) bad("grid minimum must be below its maximum", {{"grid", std::string(text)}});
  if (g.log && !(g.lo > 0.0)) bad("log grid needs a positive minimum", {{"grid", std::string(text)}});
  return g;
}

PotentialShape parse_shape(std::string_view text) {
  const auto w = words(text);
  if (w.empty()) bad("empty shape specification");
  std::size_t i = 1;
  std::optional<PotentialShape> shape;
  const std::string& kind = w[0];
  if (kind == "coulomb") {
    shape = PotentialShape::coulomb();
  } else if (kind == "hulthen") {
    shape = PotentialShape::hulthen();
  } else if (kind == "log") {
    shape = PotentialShape::log();
  } else if (kind == "power") {
    if (w.size() < 2) bad("power shape needs an exponent");
    shape = PotentialShape::power(number(w[i++], "power exponent"));
  } else if (kind == "coulomb_plus") {
    const auto pert = parse_perturbation(w, i);
    if (i + 2 > w.size()) bad("coulomb_plus needs strengths a and b", {{"shape", std::string(text)}});
    const double a = number(w[i++], "Coulomb strength");
    const double b = number(w[i++], "perturbation strength");
    shape = PotentialShape::coulomb_plus(pert, a, b);
  } else {
    bad("unknown shape kind", {{"kind", kind}});
  }
  if (i < w.size()) {
    if (w[i] != "scale" || i + 4 != w.size()) bad("trailing shape tokens must be `scale A b B`", {{"shape", std::string(text)}});
    shape = shape->scale_shift(number(w[i + 1], "scale A"), number(w[i + 2], "length b"), number(w[i + 3], "shift B"));
  }
  return *shape;
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv = {
      {"command", command},
      {"preset", preset},
      {"shape", shape},
      {"shape-csv", shape_csv},
      {"n", std::to_string(n)},
      {"ell", std::to_string(ell)},
      {"v", format_number(v)},
      {"vgrid", grid_or_empty(vgrid)},
      {"sgrid", grid_or_empty(sgrid)},
      {"rgrid", grid_or_empty(rgrid)},
      {"target", target},
      {"target-csv", target_csv},
      {"target-vgrid", grid_or_empty(target_vgrid)},
      {"window", grid_or_empty(window)},
      {"seed", seed},
      {"excited-seed", excited_seed ? "true" : "false"},
      {"iterations", std::to_string(iterations)},
      {"tolerance", format_number(tolerance)},
      {"samples-per-decade", std::to_string(samples_per_decade)},
      {"step-cap", format_number(step_cap)},
      {"rmax-tolerance", format_number(rmax_tolerance)},
      {"timings", timings ? "true" : "false"},
  };
  std::string text;
  for (const auto& [k, v] : kv) text += k + "=" + v + "\n";
  return text;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

std::string RunConfig::header() const { return std::string("specinv ") + kVersion + " config=" + hash(); }

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  std::string vgrid, sgrid, rgrid, target_vgrid, window, config_path;
  std::string out_dir = c.out.string();

  CLI::App app{"Spectral curves, kinetic potentials, envelope bounds and geometric spectral inversion", "specinv"};
  app.set_version_flag("--version", kVersion);
  app.add_option("command", c.command, "solve | curve | kinetic | kfun | bounds | invert")
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config_path, "key=value file; flags win on conflict");
  app.add_option("--preset", c.preset, "hulthen-fig1 | coulinear-fig3 | couosc-fig4 | coulog-fig5");
  app.add_option("--shape", c.shape, "shape specification, e.g. \"coulomb_plus linear 1 0.5\"");
  app.add_option("--shape-csv", c.shape_csv, "tabulated shape with header r,f");
  app.add_option("--n", c.n, "radial index (n - 1 nodes)");
  app.add_option("--ell", c.ell, "angular momentum");
  app.add_option("--v", c.v, "coupling for solve");
  app.add_option("--vgrid", vgrid, "coupling grid min:max:count[:lin|log]");
  app.add_option("--sgrid", sgrid, "kinetic energy grid");
  app.add_option("--rgrid", rgrid, "radius grid (reconstruction window for invert)");
  app.add_option("--target", c.target, "target shape for invert");
  app.add_option("--target-csv", c.target_csv, "target curve with header v,F,Fprime");
  app.add_option("--target-vgrid", target_vgrid, "couplings for sampling a target without a closed form");
  app.add_option("--window", window, "couplings where curve errors are measured");
  app.add_option("--seed", c.seed, "seed shape for invert");
  app.add_flag("--excited-seed", c.excited_seed, "seed K-function (n + ell)^2 / r^2");
  app.add_option("--iterations", c.iterations, "inversion iterations");
  app.add_option("--tolerance", c.tolerance, "curve error that stops the inversion");
  app.add_option("--samples-per-decade", c.samples_per_decade, "iterate curve lattice density");
  app.add_option("--step-cap", c.step_cap, "largest Numerov step in the mesh variable");
  app.add_option("--rmax-tolerance", c.rmax_tolerance, "relative energy change that settles the outer radius");
  app.add_option("--out", out_dir, "artifact directory");
  app.add_flag("--timings", c.timings, "record wall-clock seconds in manifests");
  app.add_option("--threads", c.threads, "worker threads (0 = hardware)");
  for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // pre-scan for the config file so its values can precede the flags
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  std::vector<std::string> merged;
  bool has_command = std::any_of(args.begin(), args.end(),
                                 [](const std::string& a) { return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end(); });
  std::string file_command;
  if (!config_path.empty()) {
    const auto tokens = read_config_file(config_path);
    for (std::size_t i = 0; i < tokens.size(); i += 3) {
      const std::string& key = tokens[i];
      if (key == "command") {
        file_command = tokens[i + 1];
        continue;
      }
      const auto* opt = app.get_option_no_throw("--" + key);
      if (opt == nullptr) bad("unknown config key", {{"path", config_path}, {"line", std::stoi(tokens[i + 2])}, {"key", key}});
      merged.push_back("--" + key + "=" + tokens[i + 1]);
    }
  }
  if (!has_command && !file_command.empty()) merged.insert(merged.begin(), file_command);
  merged.insert(merged.end(), args.begin(), args.end());

  std::vector<std::string> reversed(merged.rbegin(), merged.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequest{app.help()};
  } catch (const CLI::CallForVersion&) {
    throw InfoRequest{std::string(kVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    bad(std::string("argument error: ") + e.what(), {{"cli11", e.get_name()}});
  }

  if (!c.preset.empty()) {
    const auto it = presets().find(c.preset);
    if (it == presets().end()) bad("unknown preset", {{"preset", c.preset}});
    if (c.command.empty()) c.command = "invert";
    if (c.command != "invert") bad("presets apply to invert", {{"preset", c.preset}, {"command", c.command}});
    if (c.target.empty() && c.target_csv.empty()) c.target = it->second.target;
    if (target_vgrid.empty()) target_vgrid = it->second.target_vgrid;
    if (rgrid.empty()) rgrid = it->second.rgrid;
  }
  if (c.command.empty()) bad("missing command; expected one of solve, curve, kinetic, kfun, bounds, invert");
  if (!vgrid.empty()) c.vgrid = parse_grid(vgrid);
  if (!sgrid.empty()) c.sgrid = parse_grid(sgrid);
  if (!rgrid.empty()) c.rgrid = parse_grid(rgrid);
  if (!target_vgrid.empty()) c.target_vgrid = parse_grid(target_vgrid);
  if (!window.empty()) c.window = parse_grid(window);
  if (c.iterations < 1) bad("--iterations must be at least 1");
  if (!(c.tolerance > 0.0)) bad("--tolerance must be positive");
  if (c.samples_per_decade < 4) bad("--samples-per-decade must be at least 4");
  if (c.step_cap < 0.0 || c.rmax_tolerance < 0.0) bad("solver overrides must be positive");
  if (!(c.v > 0.0)) bad("--v must be positive", {{"v", c.v}});
  c.out = out_dir;
  return c;
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::bad_input:
    case ErrorCode::domain:
    case ErrorCode::range:
    case ErrorCode::unsupported_model:
    case ErrorCode::io: return 2;
    case ErrorCode::no_bound_state:
    case ErrorCode::partial_curve: return 3;
    case ErrorCode::boundary_extremum: return 4;
    case ErrorCode::divergence: return 5;
    default: return 1;
  }
}

void run(const RunConfig& config, std::ostream& out) {
  if (config.command == "solve") return cmd_solve(config, out);
  if (config.command == "curve") return cmd_curve(config, out);
  if (config.command == "kinetic") return cmd_kinetic(config, out);
  if (config.command == "kfun") return cmd_kfun(config, out);
  if (config.command == "bounds") return cmd_bounds(config, out);
  if (config.command == "invert") return cmd_invert(config, out);
  bad("unknown command", {{"command", config.command}});
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    run(parse_args(args), out);
    return 0;
  } catch (const InfoRequest& info) {
    out << info.text;
    return 0;
  } catch (const Error& e) {
    auto j = e.to_json();
    j["exit_code"] = exit_code(e.code());
    err << j.dump() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", "internal"}, {"message", e.what()}, {"exit_code", 1}}.dump() << '\n';
    return 1;
  }
}

}  // namespace specinv::cli
