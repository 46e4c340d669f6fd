#include "nlsplit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nlsplit/dense_oracle.hpp"
#include "nlsplit/errors.hpp"
#include "nlsplit/harness.hpp"
#include "nlsplit/io.hpp"
#include "nlsplit/models.hpp"

namespace nlsplit {

namespace {

using Rng = std::mt19937_64;

Field random_field(const Grid2D& grid, Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Field f(grid);
  for (std::size_t m = 0; m < f.size(); ++m) f[m] = scale * unit(rng);
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult laplacian_vs_dense(Rng& rng) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 16; ++n) {
    const Grid2D grid(n);
    const DenseOracle oracle(grid);
    const Field v = random_field(grid, rng);
    const Eigen::VectorXd x = oracle.to_vector(v);
    const double scale = 1.0 / (grid.h() * grid.h());
    for (Axis axis : {Axis::x, Axis::y}) {
      const Field mf = apply_laplacian(v, axis);
      const Field dense = oracle.to_field(oracle.op(axis) * x);
      worst = std::max(worst, max_diff(mf, dense) / scale);
    }
  }
  return at_most("laplacian_matches_dense", worst, 1e-13, "max |matrix-free - dense| h^2, N=2..16");
}

CheckResult line_solver_vs_dense(Rng& rng) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 16; ++n) {
    const Grid2D grid(n);
    const DenseOracle oracle(grid);
    LineSolver solver(grid);
    const double alpha = 0.9 * 0.25 * grid.h() * grid.h();
    const Field d = random_field(grid, rng);
    const Field rhs = random_field(grid, rng);
    for (Axis axis : {Axis::x, Axis::y}) {
      Field a = rhs;
      solver.solve_constant(axis, alpha, a.values());
      const Field da = oracle.to_field(DenseOracle::solve(oracle.implicit_stage(axis, alpha), oracle.to_vector(rhs)));
      Field b = rhs;
      solver.solve_scaled(axis, alpha, d.values(), b.values());
      const Field db = oracle.to_field(DenseOracle::solve(oracle.implicit_stage(axis, alpha, d), oracle.to_vector(rhs)));
      worst = std::max({worst, max_diff(a, da), max_diff(b, db)});
    }
  }
  return at_most("line_solves_match_dense", worst, 1e-12, "constant and scaled stages, both axes, N=2..16");
}

CheckResult batched_equals_strided(Rng& rng) {
  double worst = 0.0;
  for (std::size_t n : {3, 7, 16}) {
    const Grid2D grid(n);
    LineSolver batched(grid, SweepLayout::batched), strided(grid, SweepLayout::strided);
    const Field d = random_field(grid, rng);
    const Field rhs = random_field(grid, rng);
    const double alpha = 0.2 * grid.h() * grid.h();
    Field a = rhs, b = rhs, c = rhs, e = rhs;
    batched.solve_constant(Axis::y, alpha, a.values());
    strided.solve_constant(Axis::y, alpha, b.values());
    batched.solve_scaled(Axis::y, alpha, d.values(), c.values());
    strided.solve_scaled(Axis::y, alpha, d.values(), e.values());
    worst = std::max({worst, max_diff(a, b), max_diff(c, e)});
  }
  return at_most("batched_sweep_bit_identical", worst, 0.0, "y-sweeps, batched vs strided");
}

CheckResult oracle_equivalence(Rng& rng, Predictor predictor, const FaultInjection& fault) {
  double worst = 0.0;
  // N cycles through 3..8 and the source alternates every full cycle.
  const std::size_t cases = 50;
  for (std::size_t k = 0; k < cases; ++k) {
    const Grid2D grid(3 + k % 6);
    const DenseOracle oracle(grid);
    const SourceTerm source = (k / 6) % 2 ? manufactured_source_term() : SourceTerm::zero();
    StepOptions opts;
    opts.predictor = predictor;
    opts.fault = fault;
    opts.positivity_tolerance = std::numeric_limits<double>::infinity();
    SplittingStepper stepper(grid, source, {}, opts);
    const Field v = random_field(grid, rng);
    const double tau = 0.9 * stepper.cfl_bound(v);
    const Field a = stepper.step(v, 0.05, tau).state;
    const Field b = oracle.split_step(v, 0.05, tau, source, {}, predictor);
    worst = std::max(worst, max_diff(a, b));
  }
  const char* name = predictor == Predictor::euler ? "oracle_equivalence_euler" : "oracle_equivalence_two_pass";
  return at_most(name, worst, 1e-11, std::to_string(cases) + " random states, N=3..8, max-norm defect");
}

CheckResult factored_defect_ratio() {
  const Grid2D grid(8);
  const DenseOracle oracle(grid);
  const SourceTerm source = manufactured_source_term();
  StepOptions opts;
  opts.enforce_cfl = false;
  SplittingStepper stepper(grid, source, {}, opts);
  const Field v = Field::sample(grid, [](double x, double y) { return manufactured_exact(x, y, 0.0); });
  auto defect = [&](double tau) {
    return max_diff(stepper.step(v, 0.0, tau).state, oracle.factored_step(v, 0.0, tau, source));
  };
  const double ratio = defect(1e-3) / defect(5e-4);
  CheckResult r{"factored_form_defect_ratio", ratio >= 6.5 && ratio <= 9.5, ratio, 8.0, "tau 1e-3 vs 5e-4, N=8, accept [6.5, 9.5]"};
  return r;
}

CheckResult inverse_positivity(Rng& rng) {
  double worst = 0.0;  // most negative entry, relative to the largest
  for (std::size_t n = 2; n <= 8; ++n) {
    const Grid2D grid(n);
    const DenseOracle oracle(grid);
    SplittingStepper stepper(grid, SourceTerm::zero());
    for (int trial = 0; trial < 20; ++trial) {
      const Field v = random_field(grid, rng);
      const double tau = 0.9 * stepper.cfl_bound(v);
      const Field pred = oracle.predict(v, 0.0, tau, SourceTerm::zero(), {}, Predictor::two_pass);
      const Field& d = pred;
      for (const Eigen::MatrixXd& a :
           {oracle.implicit_stage(Axis::x, 0.5 * tau), oracle.implicit_stage(Axis::y, 0.5 * tau),
            oracle.implicit_stage(Axis::x, 0.5 * tau, d), oracle.implicit_stage(Axis::y, 0.5 * tau, d)}) {
        const Eigen::MatrixXd inv = DenseOracle::inverse(a);
        worst = std::max(worst, -inv.minCoeff() / inv.cwiseAbs().maxCoeff());
      }
    }
  }
  return at_most("stage_inverses_nonnegative", worst, 1e-14, "N=2..8, 20 random states each, 4 stage matrices");
}

CheckResult accepted_step_positivity(Rng& rng) {
  double lowest = 0.0;
  std::size_t rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Grid2D grid(2 + static_cast<std::size_t>(trial % 7));
    SplittingStepper stepper(grid, SourceTerm::zero());
    const Field v0 = random_field(grid, rng, 2.0);
    const AdvanceResult run = advance(stepper, v0, 0.0, 0.01, {});
    rejected += run.trace.rejected_steps;
    for (const TraceRow& row : run.trace.rows) lowest = std::min(lowest, row.min_v);
  }
  return at_most("accepted_steps_nonnegative", lowest < 0.0 ? -lowest : 0.0, 1e-12,
                 "100 random trials N=2..8, " + std::to_string(rejected) + " rejected steps");
}

CheckResult spectral_bound(Rng& rng) {
  double worst_rel = 0.0;
  double worst_rayleigh = 0.0;  // max of quotient / (4/h^2)
  std::normal_distribution<double> normal;
  for (std::size_t n = 2; n <= 16; ++n) {
    const Grid2D grid(n);
    const DenseOracle oracle(grid);
    const double h = grid.h();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle.T(), Eigen::EigenvaluesOnly);
    std::vector<double> formula(n);
    for (std::size_t j = 1; j <= n; ++j) {
      const double s = std::sin(std::numbers::pi * static_cast<double>(j) / (2.0 * static_cast<double>(n + 1)));
      formula[j - 1] = -4.0 / (h * h) * s * s;
    }
    std::sort(formula.begin(), formula.end());
    for (std::size_t j = 0; j < n; ++j)
      worst_rel = std::max(worst_rel, std::abs(eig.eigenvalues()(static_cast<Eigen::Index>(j)) - formula[j]) /
                                          std::abs(formula[j]));
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(n));
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = normal(rng);
      const double q = std::abs(x.dot(oracle.T() * x) / x.squaredNorm());
      worst_rayleigh = std::max(worst_rayleigh, q * h * h / 4.0);
    }
  }
  CheckResult r = at_most("eigenvalues_match_formula", worst_rel, 1e-10, "T for N=2..16, relative error");
  r.detail += "; max |Rayleigh quotient| h^2/4 = " + format_real(worst_rayleigh);
  r.passed = r.passed && worst_rayleigh <= 1.0;
  return r;
}

CheckResult order_sanity(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  std::vector<double> coarse(400), fine(400), fine_first(400);
  for (std::size_t m = 0; m < coarse.size(); ++m) {
    coarse[m] = unit(rng) * (m % 2 ? 1.0 : -1.0);
    fine[m] = coarse[m] / 4.0;
    fine_first[m] = coarse[m] / 2.0;
  }
  const double p2 = estimate_order(coarse, fine, 1.0).p;
  const double p1 = estimate_order(coarse, fine_first, 1.0).p;
  std::vector<double> pc = coarse, pf = fine;
  std::reverse(pc.begin(), pc.end());
  std::reverse(pf.begin(), pf.end());
  const double p2r = estimate_order(pc, pf, 1.0).p;
  const double err = std::max({std::abs(p2 - 2.0), std::abs(p1 - 1.0), std::abs(p2r - p2)});
  return at_most("order_estimator_sanity", err, 1e-12, "e/4 -> 2, e/2 -> 1, node permutation invariance");
}

CheckResult cfl_enforced(Rng& rng) {
  const Grid2D grid(6);
  SplittingStepper stepper(grid, SourceTerm::zero());
  const Field v = random_field(grid, rng, 3.0);
  const double bound = stepper.cfl_bound(v);
  bool rejected = false;
  try {
    stepper.step(v, 0.0, 1.01 * bound);
  } catch (const CflViolation&) {
    rejected = true;
  }
  return {"cfl_violation_rejected", rejected, 1.01 * bound, bound, "step at 1.01x the bound must raise"};
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerifyReport::write_table(std::ostream& os) const {
  os << "verify seed=" << seed << '\n';
  for (const CheckResult& c : checks) {
    os << std::left << std::setw(30) << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << "  value=" << format_real(c.value)
       << "  threshold=" << format_real(c.threshold);
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  os << (all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  Rng rng(options.seed);
  report.checks.push_back(laplacian_vs_dense(rng));
  report.checks.push_back(line_solver_vs_dense(rng));
  report.checks.push_back(batched_equals_strided(rng));
  report.checks.push_back(oracle_equivalence(rng, Predictor::euler, options.fault));
  report.checks.push_back(oracle_equivalence(rng, Predictor::two_pass, options.fault));
  report.checks.push_back(factored_defect_ratio());
  report.checks.push_back(inverse_positivity(rng));
  report.checks.push_back(accepted_step_positivity(rng));
  report.checks.push_back(spectral_bound(rng));
  report.checks.push_back(order_sanity(rng));
  report.checks.push_back(cfl_enforced(rng));
  return report;
}

}  // namespace nlsplit
