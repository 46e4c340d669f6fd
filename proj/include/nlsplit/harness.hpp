#pragma once

// Measurement tools: temporal order estimation, log-slope fits, energy
// series, wall-clock scaling, and bisection for the critical growth rate c*.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "nlsplit/foodchain.hpp"
#include "nlsplit/grid.hpp"
#include "nlsplit/models.hpp"

namespace nlsplit {

struct OrderEstimate {
  double p = 0.0;
  double tau_coarse = 0.0;
  std::size_t nodes_used = 0;
  std::size_t nodes_total = 0;
  // Spread of the per-node orders log2(|e_tau| / |e_tau/2|).
  double node_min = 0.0;
  double node_max = 0.0;
  double node_stddev = 0.0;
};

// Mean over nodes of log2(|coarse| / |fine|). Nodes where either error is
// below 1e-14 * reference_scale are excluded; fewer than 10% of nodes left
// throws DegenerateEstimate.
OrderEstimate estimate_order(std::span<const double> errors_coarse, std::span<const double> errors_fine,
                             double reference_scale, double tau_coarse = 0.0);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t n_samples = 0;
};

// Ordinary least squares y = slope * x + intercept.
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);
// OLS on (t, ln value); nonpositive values throw DomainError.
SlopeFit fit_log_slope(std::span<const double> times, std::span<const double> values);

struct EnergySeries {
  std::vector<double> times;
  std::vector<double> energies;

  void push(double t, double e) {
    times.push_back(t);
    energies.push_back(e);
  }
  // True when no entry exceeds its predecessor.
  bool monotone_nonincreasing() const;
};

SlopeFit fit_log_slope(const EnergySeries& series);

// Log-log least squares of seconds against N.
SlopeFit fit_loglog(std::span<const double> sizes, std::span<const double> seconds);

struct TimingResult {
  std::vector<std::size_t> sizes;
  std::vector<double> seconds;  // fastest of the repetitions
  SlopeFit fit;

  // N,seconds
  void write_csv(std::ostream& os) const;
};

// Wall clock of `steps` manufactured-problem steps at fixed tau per N. A
// warm-up run is discarded and the fastest of `repetitions` is kept, since
// interference only ever adds time. Runs on a single worker.
TimingResult timing_study(std::span<const std::size_t> sizes, std::size_t steps, double tau = 1e-6,
                          int repetitions = 5);

struct BisectionRecord {
  std::size_t iter = 0;
  double c_low = 0.0;
  double c_high = 0.0;
  double c_probe = 0.0;
  bool blowup = false;
  bool unresolved = false;  // step budget exhausted; counted as blow-up
};

struct CriticalValue {
  double c_star = 0.0;
  double c_low = 0.0;   // last probe that completed
  double c_high = 0.0;  // last probe that blew up
  std::vector<BisectionRecord> history;
  // Probes that ran out of steps. When nonzero, c_star is a lower estimate.
  std::size_t unresolved = 0;

  // iter,c_low,c_high,outcome
  void write_csv(std::ostream& os) const;
};

// Bisection with `blows_up` as predicate. The bracket ends are probed first;
// c_low must complete and c_high must blow up, else ContractViolation.
CriticalValue find_critical_c(const std::function<bool(double)>& blows_up, double c_low, double c_high, double tol);

struct BlowupSettings {
  std::size_t n = 49;  // h = 0.02
  double t_end = 2.0;
  // Probes near c* with d4 > 0 can need millions of CFL-limited steps.
  StepController controller = [] {
    StepController c;
    c.max_steps = 250000;
    return c;
  }();
};

// Outcome of one food-chain run of the Table-2 configuration at growth rate c.
EcosystemRun run_blowup_probe(const FoodChainParams& params, double c, const BlowupSettings& settings);

CriticalValue find_critical_c(const FoodChainParams& params, double c_low, double c_high, double tol,
                              const BlowupSettings& settings = {});

}  // namespace nlsplit
