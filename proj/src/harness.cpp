#include "nlsplit/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nlsplit/errors.hpp"
#include "nlsplit/io.hpp"
#include "nlsplit/splitting.hpp"

#ifdef NLSPLIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlsplit {

OrderEstimate estimate_order(std::span<const double> errors_coarse, std::span<const double> errors_fine,
                             double reference_scale, double tau_coarse) {
  if (errors_coarse.size() != errors_fine.size() || errors_coarse.empty())
    throw DimensionMismatch("estimate_order: error fields differ in size");
  const double floor = 1e-14 * reference_scale;
  OrderEstimate est;
  est.tau_coarse = tau_coarse;
  est.nodes_total = errors_coarse.size();
  std::vector<double> orders;
  orders.reserve(errors_coarse.size());
  for (std::size_t m = 0; m < errors_coarse.size(); ++m) {
    const double ec = std::abs(errors_coarse[m]);
    const double ef = std::abs(errors_fine[m]);
    if (!(ec >= floor && ef >= floor) || ec == 0.0 || ef == 0.0) continue;
    orders.push_back(std::log(ec / ef) / std::numbers::ln2);
  }
  est.nodes_used = orders.size();
  if (10 * est.nodes_used < est.nodes_total) {
    std::ostringstream os;
    os << "estimate_order: only " << est.nodes_used << " of " << est.nodes_total << " nodes have resolvable errors";
    throw DegenerateEstimate(os.str());
  }
  double sum = 0.0;
  for (double q : orders) sum += q;
  est.p = sum / static_cast<double>(orders.size());
  double var = 0.0;
  for (double q : orders) var += (q - est.p) * (q - est.p);
  est.node_stddev = std::sqrt(var / static_cast<double>(orders.size()));
  est.node_min = *std::min_element(orders.begin(), orders.end());
  est.node_max = *std::max_element(orders.begin(), orders.end());
  return est;
}

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("fit_line: x and y differ in length");
  if (x.size() < 2) throw DomainError("fit_line: need at least two samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line: abscissae are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.slope * x[k] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.n_samples = x.size();
  return fit;
}

SlopeFit fit_log_slope(std::span<const double> times, std::span<const double> values) {
  std::vector<double> logs(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0.0)) throw DomainError("fit_log_slope: values must be positive");
    logs[k] = std::log(values[k]);
  }
  return fit_line(times, logs);
}

bool EnergySeries::monotone_nonincreasing() const {
  for (std::size_t k = 1; k < energies.size(); ++k)
    if (energies[k] > energies[k - 1]) return false;
  return true;
}

SlopeFit fit_log_slope(const EnergySeries& series) {
  if (series.times.size() != series.energies.size()) throw DimensionMismatch("EnergySeries: length mismatch");
  return fit_log_slope(series.times, series.energies);
}

SlopeFit fit_loglog(std::span<const double> sizes, std::span<const double> seconds) {
  std::vector<double> lx(sizes.size()), ly(seconds.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (!(sizes[k] > 0.0)) throw DomainError("fit_loglog: sizes must be positive");
    lx[k] = std::log(sizes[k]);
  }
  for (std::size_t k = 0; k < seconds.size(); ++k) {
    if (!(seconds[k] > 0.0)) throw DomainError("fit_loglog: timings must be positive");
    ly[k] = std::log(seconds[k]);
  }
  return fit_line(lx, ly);
}

void TimingResult::write_csv(std::ostream& os) const {
  os << "N,seconds\n";
  for (std::size_t k = 0; k < sizes.size(); ++k) os << sizes[k] << ',' << format_real(seconds[k]) << '\n';
}

TimingResult timing_study(std::span<const std::size_t> sizes, std::size_t steps, double tau, int repetitions) {
  if (sizes.size() < 2) throw ContractViolation("timing_study: need at least two sizes");
  if (steps == 0 || repetitions < 1) throw ContractViolation("timing_study: steps and repetitions must be positive");
#ifdef NLSPLIT_HAVE_OPENMP
  const int saved_threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  TimingResult out;
  for (std::size_t n : sizes) {
    const Grid2D grid(n);
    StepOptions opts;
    opts.enforce_cfl = false;
    SplittingStepper stepper(grid, manufactured_source_term(), {}, opts);
    const Field v0 = Field::sample(grid, [](double x, double y) { return manufactured_exact(x, y, 0.0); });
    auto run_once = [&] {
      const auto start = std::chrono::steady_clock::now();
      Field v = v0;
      double t = 0.0;
      for (std::size_t k = 0; k < steps; ++k) {
        v = stepper.step(v, t, tau).state;
        t += tau;
      }
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    run_once();  // warm-up
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repetitions; ++r) best = std::min(best, run_once());
    out.sizes.push_back(n);
    out.seconds.push_back(best);
  }
#ifdef NLSPLIT_HAVE_OPENMP
  omp_set_num_threads(saved_threads);
#endif
  std::vector<double> ns(out.sizes.begin(), out.sizes.end());
  out.fit = fit_loglog(ns, out.seconds);
  return out;
}

void CriticalValue::write_csv(std::ostream& os) const {
  os << "iter,c_low,c_high,outcome\n";
  for (const BisectionRecord& r : history)
    os << r.iter << ',' << format_real(r.c_low) << ',' << format_real(r.c_high) << ','
       << (r.unresolved ? "unresolved" : (r.blowup ? "blowup" : "completed")) << '\n';
}

CriticalValue find_critical_c(const std::function<bool(double)>& blows_up, double c_low, double c_high, double tol) {
  if (!(c_low < c_high)) throw ContractViolation("find_critical_c: need c_low < c_high");
  if (!(tol > 0.0)) throw ContractViolation("find_critical_c: tol must be positive");
  CriticalValue cv;
  // Each probe lies strictly inside the current bracket, so outcomes at the
  // probed points are consistent by construction; a non-monotone predicate
  // can only hide a second transition inside a bracket.
  const auto& probe = blows_up;

  double lo = c_low, hi = c_high;
  std::size_t iter = 0;
  const bool low_blows = probe(lo);
  cv.history.push_back({iter++, lo, hi, lo, low_blows});
  if (low_blows) throw ContractViolation("find_critical_c: lower bracket end already blows up");
  const bool high_blows = probe(hi);
  cv.history.push_back({iter++, lo, hi, hi, high_blows});
  if (!high_blows) throw ContractViolation("find_critical_c: upper bracket end does not blow up");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool b = probe(mid);
    if (b)
      hi = mid;
    else
      lo = mid;
    cv.history.push_back({iter++, lo, hi, mid, b});
  }
  cv.c_low = lo;
  cv.c_high = hi;
  cv.c_star = 0.5 * (lo + hi);
  return cv;
}

EcosystemRun run_blowup_probe(const FoodChainParams& params, double c, const BlowupSettings& settings) {
  FoodChainParams p = params;
  p.c = c;
  const Grid2D grid(settings.n);
  const Problem problem = make_problem(ExperimentKind::example4, p);
  FoodChainStepper stepper(grid, p);
  const EcosystemState s0 = EcosystemState::from_problem(problem, grid);
  return advance_ecosystem(stepper, s0, settings.t_end, settings.controller,
                           std::numeric_limits<std::size_t>::max());
}

CriticalValue find_critical_c(const FoodChainParams& params, double c_low, double c_high, double tol,
                              const BlowupSettings& settings) {
  std::vector<double> unresolved;
  CriticalValue cv = find_critical_c(
      [&](double c) {
        const Outcome o = run_blowup_probe(params, c, settings).outcome;
        if (o == Outcome::unresolved) unresolved.push_back(c);
        return o != Outcome::completed;
      },
      c_low, c_high, tol);
  for (BisectionRecord& r : cv.history)
    r.unresolved = std::find(unresolved.begin(), unresolved.end(), r.c_probe) != unresolved.end();
  cv.unresolved = unresolved.size();
  return cv;
}

}  // namespace nlsplit
