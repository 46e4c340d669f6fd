#include "nlsplit/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nlsplit/errors.hpp"
#include "nlsplit/models.hpp"

namespace nlsplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRate = 2.0 * kPi * kPi;

Field sine_field(const Grid2D& grid) {
  return Field::sample(grid, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
}

double center_value(const Field& v) {
  const std::size_t n = v.grid().n();
  if (n % 2 == 1) return v.at((n + 1) / 2, (n + 1) / 2);
  const std::size_t c = n / 2;
  return 0.25 * (v.at(c, c) + v.at(c + 1, c) + v.at(c, c + 1) + v.at(c + 1, c + 1));
}

std::vector<double> difference(const Field& a, const Field& b) {
  std::vector<double> d(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) d[m] = a[m] - b[m];
  return d;
}

Field laplacian(const Field& v) {
  Field out(v.grid()), tmp(v.grid());
  laplacian_into(v.grid(), Axis::x, v.values(), out.values());
  laplacian_into(v.grid(), Axis::y, v.values(), tmp.values());
  for (std::size_t m = 0; m < v.size(); ++m) out[m] += tmp[m];
  return out;
}

}  // namespace

SourceTerm discrete_manufactured_source(const Grid2D& grid) {
  const Field s = sine_field(grid);
  Field s2(grid);
  for (std::size_t m = 0; m < s.size(); ++m) s2[m] = s[m] * s[m];
  const Field ls = laplacian(s);
  const Field ls2 = laplacian(s2);
  // U = e^{-kt} S:  f = U_t - L_h U - L_h U^2.
  return SourceTerm([s, ls, ls2](const Field&, double t, Field& out) {
    const double e1 = std::exp(-kRate * t);
    const double e2 = e1 * e1;
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = -kRate * e1 * s[m] - e1 * ls[m] - e2 * ls2[m];
  });
}

ManufacturedStudy manufactured_study(std::size_t n, double tau, double t_end, bool discrete_source,
                                     const StepOptions& options, std::size_t stride) {
  const Grid2D grid(n);
  const SourceTerm source = discrete_source ? discrete_manufactured_source(grid) : manufactured_source_term();
  SplittingStepper stepper(grid, source, {}, options);
  const Field v0 = sine_field(grid);

  ManufacturedStudy out;
  const AdvanceResult coarse = advance_fixed(stepper, v0, 0.0, t_end, tau, stride);
  std::vector<double> times, centers;
  AdvanceResult fine = advance_fixed(stepper, v0, 0.0, t_end, 0.5 * tau, stride,
                                     [&](std::size_t, double t, const Field& v) {
                                       times.push_back(t);
                                       centers.push_back(center_value(v));
                                     });
  const double decay = std::exp(-kRate * t_end);
  Field exact = sine_field(grid);
  for (std::size_t m = 0; m < exact.size(); ++m) exact[m] *= decay;

  const std::vector<double> ec = difference(coarse.state, exact);
  const std::vector<double> ef = difference(fine.state, exact);
  out.order = estimate_order(ec, ef, norm_max(exact), tau);
  out.max_error_coarse = norm_max(ec);
  out.max_error_fine = norm_max(ef);
  out.center = fit_log_slope(times, centers);
  out.trace = std::move(fine.trace);
  return out;
}

EnergyStudy energy_study(std::size_t n, double tau, double t_end, const StepOptions& options, std::size_t stride) {
  const Grid2D grid(n);
  SplittingStepper stepper(grid, SourceTerm::zero(), {}, options);
  EnergyStudy out;
  AdvanceResult run = advance_fixed(stepper, sine_field(grid), 0.0, t_end, tau, stride,
                                    [&](std::size_t, double t, const Field& v) { out.energy.push(t, discrete_energy(v)); });
  out.monotone = out.energy.monotone_nonincreasing();
  out.energy_fit = fit_log_slope(out.energy);
  std::vector<double> norms(out.energy.energies.size());
  for (std::size_t k = 0; k < norms.size(); ++k) norms[k] = std::sqrt(out.energy.energies[k]);
  out.norm_fit = fit_log_slope(out.energy.times, norms);
  out.trace = std::move(run.trace);
  return out;
}

ReferenceOrderStudy reference_order_study(std::size_t n, double tau, double t_end, int refine,
                                          const StepOptions& options) {
  if (refine < 4) throw ContractViolation("reference_order_study: refine must be at least 4");
  const Grid2D grid(n);
  SplittingStepper stepper(grid, SourceTerm::zero(), {}, options);
  const Field v0 = sine_field(grid);
  const std::size_t quiet = std::numeric_limits<std::size_t>::max();
  const Field a = advance_fixed(stepper, v0, 0.0, t_end, tau, quiet).state;
  const Field b = advance_fixed(stepper, v0, 0.0, t_end, 0.5 * tau, quiet).state;
  const double tau_ref = tau / refine;
  const Field ref = advance_fixed(stepper, v0, 0.0, t_end, tau_ref, quiet).state;
  return {estimate_order(difference(a, ref), difference(b, ref), norm_max(ref), tau), tau_ref};
}

FoodChainOrderStudy foodchain_order_study(std::size_t n, double tau, double t_end, int refine,
                                          const FoodChainOptions& options) {
  if (refine < 4) throw ContractViolation("foodchain_order_study: refine must be at least 4");
  const Grid2D grid(n);
  const Problem problem = make_problem(ExperimentKind::example3);
  FoodChainStepper stepper(grid, *problem.params, options);
  const EcosystemState s0 = EcosystemState::from_problem(problem, grid);
  const std::size_t quiet = std::numeric_limits<std::size_t>::max();
  const EcosystemState a = advance_ecosystem_fixed(stepper, s0, t_end, tau, quiet).state;
  const EcosystemState b = advance_ecosystem_fixed(stepper, s0, t_end, 0.5 * tau, quiet).state;
  const double tau_ref = tau / refine;
  const EcosystemState ref = advance_ecosystem_fixed(stepper, s0, t_end, tau_ref, quiet).state;

  FoodChainOrderStudy out;
  out.tau_reference = tau_ref;
  out.order[0] = estimate_order(difference(a.u, ref.u), difference(b.u, ref.u), norm_max(ref.u), tau);
  out.order[1] = estimate_order(difference(a.v, ref.v), difference(b.v, ref.v), norm_max(ref.v), tau);
  out.order[2] = estimate_order(difference(a.r, ref.r), difference(b.r, ref.r), norm_max(ref.r), tau);
  return out;
}

PerturbationStudy perturbation_study(std::size_t n, double t_end, double epsilon, std::uint64_t seed, double safety,
                                     const StepOptions& options) {
  if (!(epsilon > 0.0)) throw ContractViolation("perturbation_study: epsilon must be positive");
  const Grid2D grid(n);
  SplittingStepper stepper(grid, SourceTerm::zero(), {}, options);
  const Field v0 = sine_field(grid);
  Field w0 = v0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t m = 0; m < w0.size(); ++m) w0[m] += epsilon * unit(rng);
  const double z0 = norm_max(std::span<const double>(difference(w0, v0)));

  PerturbationStudy out;
  out.epsilon = epsilon;
  out.tau = safety * stepper.cfl_bound(w0);
  std::vector<Field> base;
  const std::size_t quiet = std::numeric_limits<std::size_t>::max();
  advance_fixed(stepper, v0, 0.0, t_end, out.tau, quiet, [&](std::size_t, double, const Field& v) { base.push_back(v); });
  std::size_t k = 0;
  const AdvanceResult run =
      advance_fixed(stepper, w0, 0.0, t_end, out.tau, quiet, [&](std::size_t, double t, const Field& w) {
        const double ratio = norm_max(std::span<const double>(difference(w, base[k++]))) / z0;
        out.times.push_back(t);
        out.amplification.push_back(ratio);
        out.max_amplification = std::max(out.max_amplification, ratio);
      });
  out.steps = run.steps;
  out.final_amplification = out.amplification.back();
  return out;
}

}  // namespace nlsplit
