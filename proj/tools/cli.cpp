#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlsplit/errors.hpp"
#include "nlsplit/experiments.hpp"
#include "nlsplit/foodchain.hpp"
#include "nlsplit/harness.hpp"
#include "nlsplit/io.hpp"
#include "nlsplit/models.hpp"
#include "nlsplit/splitting.hpp"
#include "nlsplit/verify.hpp"

#ifdef NLSPLIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlsplit::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

// Flags and config-file keys share names; a flag given on the command line
// wins over the file.
struct Overrides {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    options.emplace_back(key, app->add_option("--" + flag, values[key], help));
  }
};

struct Command {
  std::string config_path;
  Overrides flags;
};

KeyValues resolve(const Command& cmd, const std::set<std::string>& allowed) {
  KeyValues kv;
  if (!cmd.config_path.empty()) kv = read_key_values(cmd.config_path);
  for (const auto& [key, value] : kv)
    if (!allowed.contains(key)) throw ConfigError("unknown config key '" + key + "' in " + cmd.config_path);
  for (const auto& [key, opt] : cmd.flags.options)
    if (opt->count() > 0) kv[key] = cmd.flags.values.at(key);
  return kv;
}

std::set<std::string> keys_of(const Overrides& o) {
  std::set<std::string> keys;
  for (const auto& [key, opt] : o.options) keys.insert(key);
  return keys;
}

bool has(const KeyValues& kv, const std::string& key) { return kv.contains(key) && !kv.at(key).empty(); }

double real_or(const KeyValues& kv, const std::string& key, double fallback) {
  return has(kv, key) ? parse_real(kv.at(key), key) : fallback;
}

std::size_t count_or(const KeyValues& kv, const std::string& key, std::size_t fallback) {
  if (!has(kv, key)) return fallback;
  const std::string& text = kv.at(key);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("'" + key + "' expects a nonnegative integer, got '" + text + "'");
  return value;
}

std::string string_or(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  return has(kv, key) ? kv.at(key) : fallback;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    KeyValues one{{"sizes", item}};
    sizes.push_back(count_or(one, "sizes", 0));
  }
  if (sizes.size() < 2) throw ConfigError("'sizes' needs at least two comma-separated grid sizes");
  return sizes;
}

CflRule parse_cfl(const std::string& s) {
  if (s == "quarter") return CflRule::quarter;
  if (s == "half") return CflRule::half;
  throw ConfigError("'cfl' must be quarter or half, got '" + s + "'");
}

Predictor parse_predictor(const std::string& s) {
  if (s == "two_pass") return Predictor::two_pass;
  if (s == "euler") return Predictor::euler;
  throw ConfigError("'predictor' must be two_pass or euler, got '" + s + "'");
}

fs::path output_dir(const KeyValues& kv) {
  fs::path dir = has(kv, "output") ? fs::path(kv.at("output")) : fs::path();
  if (dir.empty()) {
    const char* env = std::getenv("SOLVER_OUTPUT_DIR");
    dir = env && *env ? fs::path(env) : fs::path("out");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  os.imbue(std::locale::classic());
  return os;
}

json config_json(const KeyValues& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

// summary.json plus config.cfg, the resolved key=value config that re-runs
// the experiment via --config.
void write_summary(const fs::path& dir, const std::string& experiment, const json& params, const json& result,
                   const json& tolerances, bool pass, const KeyValues& kv) {
  json s;
  s["experiment"] = experiment;
  s["params"] = params;
  s["result"] = result;
  s["tolerances"] = tolerances;
  s["pass"] = pass;
  s["config"] = config_json(kv);
  std::ofstream js = open_output(dir / "summary.json");
  js << s.dump(2) << '\n';
  std::ofstream cfg = open_output(dir / "config.cfg");
  for (const auto& [k, v] : kv)
    if (k != "config") cfg << k << '=' << v << '\n';
}

json params_json(const FoodChainParams& p) {
  json j = json::object();
  for (const auto& [k, v] : p.to_key_values()) j[k] = parse_real(v, k);
  return j;
}

double rel_error(double value, double target) { return std::abs(value / target - 1.0); }

// ---------------------------------------------------------------- run

struct RunSettings {
  ExperimentKind kind;
  std::size_t n;
  double t_end;
  std::optional<double> tau;
  std::size_t stride;
  StepController ctrl;
  Predictor predictor;
};

RunSettings run_settings(const KeyValues& kv) {
  if (!has(kv, "experiment")) throw ConfigError("'experiment' is required");
  RunSettings s{parse_experiment(kv.at("experiment")), 0, 0.0, std::nullopt, 1, {}, Predictor::two_pass};
  s.n = count_or(kv, "N", 49);
  const double default_t = s.kind == ExperimentKind::example4 ? 2.0 : (s.kind == ExperimentKind::example3 ? 0.05 : 0.25);
  s.t_end = real_or(kv, "T", default_t);
  if (has(kv, "tau")) s.tau = parse_real(kv.at("tau"), "tau");
  s.stride = count_or(kv, "stride", 1);
  s.ctrl.cfl_rule = parse_cfl(string_or(kv, "cfl", "quarter"));
  s.ctrl.safety = real_or(kv, "safety", s.ctrl.safety);
  s.ctrl.tau_min = real_or(kv, "tau_min", s.ctrl.tau_min);
  s.ctrl.max_steps = count_or(kv, "max_steps", 0);
  s.ctrl.tau_max = real_or(kv, "tau_max", s.ctrl.tau_max);
  s.predictor = parse_predictor(string_or(kv, "predictor", "two_pass"));
  if (s.n < 2) throw ConfigError("N must be at least 2");
  if (!(s.t_end > 0.0)) throw ConfigError("T must be positive");
  if (s.stride < 1) throw ConfigError("stride must be at least 1");
  if (s.tau && !(*s.tau > 0.0)) throw ConfigError("tau must be positive");
  try {
    s.ctrl.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return s;
}

FoodChainParams foodchain_params(const KeyValues& kv, ExperimentKind kind) {
  FoodChainParams p = kind == ExperimentKind::example3 ? FoodChainParams::example3() : FoodChainParams::table2();
  if (has(kv, "params")) p = FoodChainParams::from_key_values(read_key_values(kv.at("params")), p);
  p.c = real_or(kv, "c", p.c);
  p.d4 = real_or(kv, "d4", p.d4);
  try {
    p.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return p;
}

int run_single_species(const RunSettings& s, const KeyValues& kv, std::ostream& out) {
  const fs::path dir = output_dir(kv);
  const Grid2D grid(s.n);
  const Problem problem = make_problem(s.kind);
  StepOptions opts;
  opts.cfl_rule = s.ctrl.cfl_rule;
  opts.predictor = s.predictor;
  // A prescribed tau is taken as given; the adaptive loop enforces the bound.
  opts.enforce_cfl = !s.tau.has_value();
  SplittingStepper stepper(grid, problem.source, problem.species[0].diffusion, opts);
  const Field v0 = Field::sample(grid, problem.species[0].initial);
  const AdvanceResult run = s.tau ? advance_fixed(stepper, v0, 0.0, s.t_end, *s.tau, s.stride)
                                  : advance(stepper, v0, 0.0, s.t_end, s.ctrl, s.stride);
  {
    std::ofstream csv = open_output(dir / "trace.csv");
    run.trace.write_csv(csv);
  }

  std::vector<double> times, maxima, energies;
  for (const TraceRow& row : run.trace.rows) {
    times.push_back(row.t);
    maxima.push_back(row.max_v);
    energies.push_back(row.energy);
  }
  json result;
  result["t_final"] = run.trace.rows.back().t;
  result["steps"] = run.steps;
  result["rejected_steps"] = run.trace.rejected_steps;
  result["max_v"] = max_value(run.state);
  result["min_v"] = min_value(run.state);
  json tolerances;
  bool pass = true;
  if (s.kind == ExperimentKind::example1) {
    const SlopeFit fit = fit_log_slope(times, maxima);
    Field exact = Field::sample(grid, [&](double x, double y) { return problem.exact(x, y, s.t_end); });
    double err = 0.0;
    for (std::size_t m = 0; m < exact.size(); ++m) err = std::max(err, std::abs(run.state[m] - exact[m]));
    result["max_error"] = err;
    result["slope"] = fit.slope;
    result["slope_rel_error"] = rel_error(fit.slope, -kTwoPiSq);
    tolerances["slope_rel_error"] = 0.005;
    pass = rel_error(fit.slope, -kTwoPiSq) <= 0.005;
  } else {
    const SlopeFit efit = fit_log_slope(times, energies);
    bool monotone = true;
    for (std::size_t k = 1; k < energies.size(); ++k) monotone = monotone && energies[k] <= energies[k - 1];
    result["energy_slope"] = efit.slope;
    result["norm_slope"] = 0.5 * efit.slope;
    result["norm_slope_rel_error"] = rel_error(0.5 * efit.slope, -kTwoPiSq);
    result["energy_monotone"] = monotone;
    tolerances["norm_slope_rel_error"] = 0.01;
    pass = monotone && rel_error(0.5 * efit.slope, -kTwoPiSq) <= 0.01;
  }
  write_summary(dir, to_string(s.kind), json::object(), result, tolerances, pass, kv);
  out << to_string(s.kind) << ": " << run.steps << " steps to t=" << format_real(run.trace.rows.back().t)
      << (pass ? ", checks pass" : ", checks FAIL") << "; wrote " << (dir / "summary.json").string() << '\n';
  return kSuccess;
}

int run_foodchain(const RunSettings& s, const KeyValues& kv, std::ostream& out) {
  const FoodChainParams params = foodchain_params(kv, s.kind);
  const fs::path dir = output_dir(kv);
  const Grid2D grid(s.n);
  const Problem problem = make_problem(s.kind, params);
  FoodChainOptions opts;
  opts.cfl_rule = s.ctrl.cfl_rule;
  opts.predictor = s.predictor;
  opts.enforce_cfl = !s.tau.has_value();
  FoodChainStepper stepper(grid, params, opts);
  const EcosystemState s0 = EcosystemState::from_problem(problem, grid);
  const EcosystemRun run = s.tau ? advance_ecosystem_fixed(stepper, s0, s.t_end, *s.tau, s.stride)
                                 : advance_ecosystem(stepper, s0, s.t_end, s.ctrl, s.stride);
  {
    std::ofstream csv = open_output(dir / "trace.csv");
    run.trace.write_csv(csv);
  }
  const bool blowup = run.outcome == Outcome::blowup;
  const bool unresolved = run.outcome == Outcome::unresolved;
  json result;
  result["outcome"] = blowup ? "blowup" : (unresolved ? "unresolved" : "completed");
  result["t_final"] = run.state.t;
  result["steps"] = run.steps;
  result["rejected_steps"] = run.trace.rejected_steps;
  result["max_u"] = max_value(run.state.u);
  result["max_v"] = max_value(run.state.v);
  result["max_r"] = max_value(run.state.r);
  if (blowup) {
    result["blowup_time"] = run.blowup_time;
    result["blowup_max_r"] = run.blowup_max_r;
  }
  json tolerances;
  tolerances["blowup_threshold"] = opts.blowup_threshold;
  tolerances["tau_min"] = s.ctrl.tau_min;
  if (s.ctrl.max_steps > 0) tolerances["max_steps"] = s.ctrl.max_steps;
  // An exhausted step budget is neither success nor blow-up: exit 0, pass false.
  write_summary(dir, to_string(s.kind), params_json(params), result, tolerances, !blowup && !unresolved, kv);
  out << to_string(s.kind) << ": "
      << (blowup ? "blow-up at t=" + format_real(run.blowup_time)
                 : unresolved ? "step budget exhausted at t=" + format_real(run.state.t) : std::string("completed"))
      << " after " << run.steps << " steps; wrote " << (dir / "summary.json").string() << '\n';
  return blowup ? kBlowup : kSuccess;
}

int do_run(const KeyValues& kv, std::ostream& out) {
  const RunSettings s = run_settings(kv);
  if (s.kind == ExperimentKind::example1 || s.kind == ExperimentKind::example2) return run_single_species(s, kv, out);
  return run_foodchain(s, kv, out);
}

// ---------------------------------------------------------------- order

json order_json(const OrderEstimate& e) {
  json j;
  j["p"] = e.p;
  j["tau"] = e.tau_coarse;
  j["nodes_used"] = e.nodes_used;
  j["nodes_total"] = e.nodes_total;
  j["node_min"] = e.node_min;
  j["node_max"] = e.node_max;
  j["node_stddev"] = e.node_stddev;
  return j;
}

void write_order_csv(const fs::path& path, const OrderEstimate& e) {
  std::ofstream csv = open_output(path);
  csv << "tau,p,nodes_used\n" << format_real(e.tau_coarse) << ',' << format_real(e.p) << ',' << e.nodes_used << '\n';
}

int do_order(const KeyValues& kv, std::ostream& out) {
  const std::string study = string_or(kv, "study", "manufactured");
  const std::size_t n = count_or(kv, "N", 49);
  if (n < 2) throw ConfigError("N must be at least 2");
  const std::size_t refine = count_or(kv, "refine", 64);
  if (refine < 4) throw ConfigError("refine must be at least 4");
  StepOptions opts;
  opts.enforce_cfl = false;
  opts.predictor = parse_predictor(string_or(kv, "predictor", "two_pass"));
  const fs::path dir = output_dir(kv);
  json result, tolerances;
  bool pass = false;

  auto window = [&](double lo, double hi, double p) {
    tolerances["p_min"] = lo;
    tolerances["p_max"] = hi;
    return p >= lo && p <= hi;
  };
  if (study == "manufactured") {
    const double tau = real_or(kv, "tau", 2e-4);
    const double t_end = real_or(kv, "T", 0.25);
    if (!(tau > 0.0) || !(t_end > 0.0)) throw ConfigError("tau and T must be positive");
    const std::string source = string_or(kv, "source", "discrete");
    if (source != "discrete" && source != "continuous") throw ConfigError("'source' must be discrete or continuous");
    const ManufacturedStudy st = manufactured_study(n, tau, t_end, source == "discrete", opts);
    write_order_csv(dir / "order.csv", st.order);
    result = order_json(st.order);
    result["max_error_coarse"] = st.max_error_coarse;
    result["max_error_fine"] = st.max_error_fine;
    result["center_slope"] = st.center.slope;
    pass = window(1.9, 2.1, st.order.p);
  } else if (study == "reference") {
    const double tau = real_or(kv, "tau", 2e-4);
    const double t_end = real_or(kv, "T", 0.1);
    if (!(tau > 0.0) || !(t_end > 0.0)) throw ConfigError("tau and T must be positive");
    const ReferenceOrderStudy st = reference_order_study(n, tau, t_end, static_cast<int>(refine), opts);
    write_order_csv(dir / "order.csv", st.order);
    result = order_json(st.order);
    result["tau_reference"] = st.tau_reference;
    pass = window(1.9, 2.1, st.order.p);
  } else if (study == "foodchain") {
    const double tau = real_or(kv, "tau", 1e-4);
    const double t_end = real_or(kv, "T", 0.05);
    if (!(tau > 0.0) || !(t_end > 0.0)) throw ConfigError("tau and T must be positive");
    FoodChainOptions fopts;
    fopts.enforce_cfl = false;
    fopts.predictor = opts.predictor;
    const FoodChainOrderStudy st = foodchain_order_study(n, tau, t_end, static_cast<int>(refine), fopts);
    const char* names[3] = {"u", "v", "r"};
    pass = true;
    for (int k = 0; k < 3; ++k) {
      write_order_csv(dir / (std::string("order_") + names[k] + ".csv"), st.order[k]);
      result[names[k]] = order_json(st.order[k]);
      pass = window(1.85, 2.15, st.order[k].p) && pass;
    }
    result["tau_reference"] = st.tau_reference;
  } else {
    throw ConfigError("'study' must be manufactured, reference or foodchain");
  }
  write_summary(dir, "order-" + study, json::object(), result, tolerances, pass, kv);
  out << "order study " << study << (pass ? ": within tolerance" : ": OUTSIDE tolerance") << "; wrote "
      << (dir / "summary.json").string() << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- timing

int do_timing(const KeyValues& kv, std::ostream& out) {
  const std::vector<std::size_t> sizes = parse_sizes(string_or(kv, "sizes", "21,41,81,161"));
  for (std::size_t n : sizes)
    if (n < 2) throw ConfigError("every size must be at least 2");
  const std::size_t steps = count_or(kv, "steps", 200);
  const double tau = real_or(kv, "tau", 1e-6);
  const std::size_t reps = count_or(kv, "reps", 5);
  if (steps < 1 || reps < 1 || !(tau > 0.0)) throw ConfigError("steps, reps and tau must be positive");
  const fs::path dir = output_dir(kv);
  const TimingResult t = timing_study(sizes, steps, tau, static_cast<int>(reps));
  {
    std::ofstream csv = open_output(dir / "timing.csv");
    t.write_csv(csv);
  }
  json result;
  result["slope"] = t.fit.slope;
  result["intercept"] = t.fit.intercept;
  result["residual_rms"] = t.fit.residual_rms;
  result["sizes"] = t.sizes;
  result["seconds"] = t.seconds;
  json tolerances;
  tolerances["slope_max"] = 2.1;
  const bool pass = t.fit.slope <= 2.1;
  write_summary(dir, "timing", json::object(), result, tolerances, pass, kv);
  out << "timing slope " << format_real(t.fit.slope) << "; wrote " << (dir / "summary.json").string() << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- blowup-search

int do_blowup_search(const KeyValues& kv, std::ostream& out) {
  FoodChainParams params = FoodChainParams::table2();
  if (has(kv, "params")) params = FoodChainParams::from_key_values(read_key_values(kv.at("params")), params);
  params.d4 = real_or(kv, "d4", params.d4);
  params.validate();
  const double c_low = real_or(kv, "c_low", 4.5);
  const double c_high = real_or(kv, "c_high", 6.0);
  const double tol = real_or(kv, "tol", 0.01);
  BlowupSettings bs;
  bs.n = count_or(kv, "N", bs.n);
  bs.t_end = real_or(kv, "T", bs.t_end);
  bs.controller.safety = real_or(kv, "safety", bs.controller.safety);
  bs.controller.tau_min = real_or(kv, "tau_min", bs.controller.tau_min);
  bs.controller.max_steps = count_or(kv, "max_steps", bs.controller.max_steps);
  if (bs.n < 2) throw ConfigError("N must be at least 2");
  if (!(bs.t_end > 0.0)) throw ConfigError("T must be positive");
  const fs::path dir = output_dir(kv);
  const CriticalValue cv = find_critical_c(params, c_low, c_high, tol, bs);
  {
    std::ofstream csv = open_output(dir / "bisection.csv");
    cv.write_csv(csv);
  }
  json result;
  result["c_star"] = cv.c_star;
  result["c_completed"] = cv.c_low;
  result["c_blowup"] = cv.c_high;
  result["probes"] = cv.history.size();
  result["unresolved_probes"] = cv.unresolved;
  json tolerances;
  tolerances["tol"] = tol;
  tolerances["max_steps"] = bs.controller.max_steps;
  write_summary(dir, "blowup-search", params_json(params), result, tolerances, true, kv);
  out << "c* = " << format_real(cv.c_star) << " (d4 = " << format_real(params.d4) << ")"
      << (cv.unresolved ? "; " + std::to_string(cv.unresolved) + " probe(s) hit the step budget, so this is a lower estimate"
                        : std::string())
      << "; wrote "
      << (dir / "summary.json").string() << '\n';
  return kSuccess;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear ADI splitting solver for self-diffusion reaction-diffusion models"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads for the line sweeps (default: hardware)")
      ->check(CLI::NonNegativeNumber);

  const std::set<std::string> run_keys = {"experiment", "N", "T", "tau", "stride", "output", "params", "c",
                                          "d4", "cfl", "safety", "tau_min", "tau_max", "predictor", "seed", "max_steps"};
  Command run, order, timing, blowup;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment and write trace.csv and summary.json");
  run_cmd->add_option("--config", run.config_path, "key=value config file; flags override it");
  for (const std::string& key : run_keys) run.flags.add(run_cmd, key, "");

  CLI::App* order_cmd = app.add_subcommand("order", "Temporal order study");
  order_cmd->add_option("--config", order.config_path, "key=value config file; flags override it");
  for (const char* key : {"study", "N", "tau", "T", "refine", "source", "predictor", "output"})
    order.flags.add(order_cmd, key, "");

  CLI::App* timing_cmd = app.add_subcommand("timing", "Wall-clock scaling study on one worker");
  timing_cmd->add_option("--config", timing.config_path, "key=value config file; flags override it");
  for (const char* key : {"sizes", "steps", "tau", "reps", "output"}) timing.flags.add(timing_cmd, key, "");

  CLI::App* blowup_cmd = app.add_subcommand("blowup-search", "Bisect the critical growth rate c*");
  blowup_cmd->add_option("--config", blowup.config_path, "key=value config file; flags override it");
  for (const char* key : {"params", "d4", "c_low", "c_high", "tol", "N", "T", "safety", "tau_min", "max_steps", "output"})
    blowup.flags.add(blowup_cmd, key, "");

  std::uint64_t seed = 1;
  std::string fault;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Property suite against dense oracles (N <= 16)");
  verify_cmd->add_option("--seed", seed, "Seed for the randomized checks");
  verify_cmd->add_option("--inject-fault", fault, "Test fixture: 'stage3' flips a sign in stage 3")
      ->check(CLI::IsMember({"stage3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kError;
  }

#ifdef NLSPLIT_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*run_cmd) {
      KeyValues kv = resolve(run, run_keys);
      return do_run(kv, out);
    }
    if (*order_cmd) return do_order(resolve(order, keys_of(order.flags)), out);
    if (*timing_cmd) return do_timing(resolve(timing, keys_of(timing.flags)), out);
    if (*blowup_cmd) return do_blowup_search(resolve(blowup, keys_of(blowup.flags)), out);
    if (*verify_cmd) {
      VerifyOptions vo;
      vo.seed = seed;
      vo.fault.flip_stage3_sign = fault == "stage3";
      const VerifyReport report = run_verify(vo);
      report.write_table(out);
      return report.all_passed() ? kSuccess : kError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace nlsplit::cli
