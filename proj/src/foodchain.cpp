#include "nlsplit/foodchain.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "nlsplit/errors.hpp"
#include "nlsplit/io.hpp"

namespace nlsplit {

EcosystemState EcosystemState::from_problem(const Problem& problem, const Grid2D& grid, double t0) {
  if (problem.species.size() != 3) throw ContractViolation("EcosystemState: problem is not a three-species model");
  return {Field::sample(grid, problem.species[0].initial), Field::sample(grid, problem.species[1].initial),
          Field::sample(grid, problem.species[2].initial), t0};
}

void EcosystemState::require_valid(double tolerance) const {
  if (!(u.grid() == v.grid()) || !(u.grid() == r.grid()))
    throw DimensionMismatch("EcosystemState: species live on different grids");
  u.require_nonnegative(tolerance);
  v.require_nonnegative(tolerance);
  r.require_nonnegative(tolerance);
}

FoodChainStepper::FoodChainStepper(const Grid2D& grid, const FoodChainParams& params, FoodChainOptions options)
    : grid_(grid),
      params_(params),
      options_(options),
      solver_(grid, options.layout),
      f0_(grid), g0_(grid), h0_(grid), f1_(grid), g1_(grid), h1_(grid),
      ru_(grid), rv_(grid), rr_(grid),
      sq_(grid), lx_(grid), ly_(grid), nx_(grid), ny_(grid), tmp_(grid) {
  params_.validate();
}

double FoodChainStepper::cfl_bound(const EcosystemState& s) const {
  const double h = grid_.h();
  const CflRule rule = options_.cfl_rule;
  return std::min({species_cfl_bound(s.u, h, rule, {params_.d1, 0.0}),
                   species_cfl_bound(s.v, h, rule, {params_.d2, 0.0}),
                   species_cfl_bound(s.r, h, rule, {params_.d3, params_.d4})});
}

EcosystemState FoodChainStepper::coupled_step(const EcosystemState& s, double tau) {
  if (!(s.u.grid() == grid_) || !(s.v.grid() == grid_) || !(s.r.grid() == grid_))
    throw DimensionMismatch("FoodChainStepper: state grid mismatch");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("FoodChainStepper: tau must be positive");
  if (options_.enforce_cfl) {
    const double bound = cfl_bound(s);
    if (!(tau < bound)) {
      std::ostringstream os;
      os << "step size " << tau << " violates coupled CFL bound " << bound;
      throw CflViolation(os.str());
    }
  }

  const FoodChainParams& p = params_;
  const std::size_t n2 = grid_.size();

  foodchain_sources_into(s.u, s.v, s.r, p, f0_, g0_, h0_);
  for (std::size_t m = 0; m < n2; ++m) sq_[m] = s.r[m] * s.r[m];
  laplacian_into(grid_, Axis::x, s.r.values(), lx_.values());
  laplacian_into(grid_, Axis::y, s.r.values(), ly_.values());
  laplacian_into(grid_, Axis::x, sq_.values(), nx_.values());
  laplacian_into(grid_, Axis::y, sq_.values(), ny_.values());

  EcosystemState next{Field(grid_), Field(grid_), Field(grid_), s.t + tau};

  if (options_.predictor == Predictor::euler) {
    auto predict_linear = [&](const Field& x, double d, const Field& src, Field& out) {
      laplacian_into(grid_, Axis::x, x.values(), tmp_.values());
      for (std::size_t m = 0; m < n2; ++m) out[m] = x[m] + tau * (d * tmp_[m] + src[m]);
      laplacian_into(grid_, Axis::y, x.values(), tmp_.values());
      for (std::size_t m = 0; m < n2; ++m) out[m] += tau * d * tmp_[m];
    };
    predict_linear(s.u, p.d1, f0_, ru_);
    predict_linear(s.v, p.d2, g0_, rv_);
    for (std::size_t m = 0; m < n2; ++m)
      rr_[m] = s.r[m] + tau * (p.d3 * (lx_[m] + ly_[m]) + p.d4 * (nx_[m] + ny_[m]) + h0_[m]);
  } else {
    // First pass: D_{k+1} = D_k and sources frozen at t_k.
    std::copy(s.r.values().begin(), s.r.values().end(), rr_.values().begin());
    f1_ = f0_;
    g1_ = g0_;
    h1_ = h0_;
    run_sweeps(s, tau, next);
    std::swap(ru_, next.u);
    std::swap(rv_, next.v);
    std::swap(rr_, next.r);
  }

  foodchain_sources_into(ru_, rv_, rr_, p, f1_, g1_, h1_);
  run_sweeps(s, tau, next);

  next.require_valid(options_.positivity_tolerance);
  return next;
}

void FoodChainStepper::run_sweeps(const EcosystemState& s, double tau, EcosystemState& next) {
  const FoodChainParams& p = params_;
  const std::size_t n2 = grid_.size();
  const double half = 0.5 * tau;
  Field& r = next.r;
  Field& v = next.v;
  Field& u = next.u;

  // r1
  for (std::size_t m = 0; m < n2; ++m)
    r[m] = s.r[m] + half * (p.d3 * lx_[m] + 2.0 * p.d3 * ly_[m] + 2.0 * p.d4 * nx_[m] + 2.0 * p.d4 * ny_[m]) +
           tau * h0_[m];
  solver_.solve_constant(Axis::x, half * p.d3, r.values());

  // Peaceman-Rachford takes the explicit half of each sweep along the other
  // axis; the literal listing keeps it on the implicit axis.
  const bool pr = options_.linear_sweeps == LinearSweeps::peaceman_rachford;

  // v1, u1
  auto first_sweep = [&](const Field& x, double d, const Field& src, Field& out) {
    laplacian_into(grid_, pr ? Axis::y : Axis::x, x.values(), tmp_.values());
    for (std::size_t m = 0; m < n2; ++m) out[m] = x[m] + half * d * tmp_[m] + half * src[m];
    solver_.solve_constant(Axis::x, half * d, out.values());
  };
  first_sweep(s.v, p.d2, g0_, v);
  first_sweep(s.u, p.d1, f0_, u);

  // r2
  for (std::size_t m = 0; m < n2; ++m) r[m] = r[m] - half * p.d3 * ly_[m];
  solver_.solve_constant(Axis::y, half * p.d3, r.values());

  // v', u'
  auto second_sweep = [&](double d, const Field& src, Field& inout) {
    laplacian_into(grid_, pr ? Axis::x : Axis::y, inout.values(), tmp_.values());
    for (std::size_t m = 0; m < n2; ++m) inout[m] = inout[m] + half * d * tmp_[m] + half * src[m];
    solver_.solve_constant(Axis::y, half * d, inout.values());
  };
  second_sweep(p.d2, g1_, v);
  second_sweep(p.d1, f1_, u);

  // r3, r'
  for (std::size_t m = 0; m < n2; ++m) r[m] = r[m] - half * p.d4 * nx_[m];
  if (p.d4 != 0.0) solver_.solve_scaled(Axis::x, half * p.d4, rr_.values(), r.values());
  for (std::size_t m = 0; m < n2; ++m) r[m] = r[m] - half * p.d4 * ny_[m] + half * (h1_[m] - h0_[m]);
  if (p.d4 != 0.0) solver_.solve_scaled(Axis::y, half * p.d4, rr_.values(), r.values());
}

void EcosystemTrace::write_csv(std::ostream& os) const {
  os << "step,t,tau,max_u,max_v,max_r,energy_u,energy_v,energy_r\n";
  for (const EcosystemTraceRow& r : rows) {
    os << r.step << ',' << format_real(r.t) << ',' << format_real(r.tau) << ',' << format_real(r.max_u) << ','
       << format_real(r.max_v) << ',' << format_real(r.max_r) << ',' << format_real(r.energy_u) << ','
       << format_real(r.energy_v) << ',' << format_real(r.energy_r) << '\n';
  }
}

namespace {

EcosystemTraceRow make_row(std::size_t step, double tau, const EcosystemState& s) {
  return {step,
          s.t,
          tau,
          max_value(s.u),
          max_value(s.v),
          max_value(s.r),
          discrete_energy(s.u),
          discrete_energy(s.v),
          discrete_energy(s.r)};
}

}  // namespace

EcosystemRun advance_ecosystem(FoodChainStepper& stepper, const EcosystemState& s0, double t_end,
                               const StepController& ctrl, std::size_t stride) {
  ctrl.validate();
  if (!(t_end > s0.t)) throw ContractViolation("advance_ecosystem: t_end must exceed the initial time");
  if (stride == 0) throw ContractViolation("advance_ecosystem: stride must be >= 1");
  s0.require_valid(stepper.options().positivity_tolerance);

  EcosystemRun run{s0, {}, Outcome::completed, 0.0, 0.0, 0};
  run.trace.rows.push_back(make_row(0, 0.0, s0));
  const double snap = 1e-12 * (t_end - s0.t);
  auto blowup = [&](double t) {
    run.outcome = Outcome::blowup;
    run.blowup_time = t;
    run.blowup_max_r = max_value(run.state.r);
    run.trace.rows.push_back(make_row(run.steps, 0.0, run.state));
    return run;
  };

  while (t_end - run.state.t > snap) {
    const double t = run.state.t;
    const double remaining = t_end - t;
    double tau = std::min({ctrl.safety * stepper.cfl_bound(run.state), ctrl.tau_max, remaining});
    bool landing = tau == remaining;
    if (tau < ctrl.tau_min && !landing) return blowup(t);

    int halvings = 0;
    bool accepted = false;
    while (!accepted) {
      try {
        EcosystemState next = stepper.coupled_step(run.state, tau);
        next.t = landing ? t_end : t + tau;
        run.state = std::move(next);
        accepted = true;
      } catch (const RejectedStep&) {
        ++run.trace.rejected_steps;
        tau *= 0.5;
        landing = false;
        if (++halvings > ctrl.max_halvings || tau < ctrl.tau_min) return blowup(t);
      }
    }
    ++run.steps;
    const bool last = t_end - run.state.t <= snap;
    if (run.steps % stride == 0 || last) run.trace.rows.push_back(make_row(run.steps, tau, run.state));
    if (max_value(run.state.r) > stepper.options().blowup_threshold) {
      run.outcome = Outcome::blowup;
      run.blowup_time = run.state.t;
      run.blowup_max_r = max_value(run.state.r);
      if (!(run.steps % stride == 0 || last)) run.trace.rows.push_back(make_row(run.steps, tau, run.state));
      return run;
    }
    if (ctrl.max_steps > 0 && run.steps >= ctrl.max_steps && !last) {
      run.outcome = Outcome::unresolved;
      if (run.steps % stride != 0) run.trace.rows.push_back(make_row(run.steps, tau, run.state));
      return run;
    }
  }
  return run;
}

EcosystemRun advance_ecosystem_fixed(FoodChainStepper& stepper, const EcosystemState& s0, double t_end, double tau,
                                     std::size_t stride) {
  if (!(t_end > s0.t)) throw ContractViolation("advance_ecosystem_fixed: t_end must exceed the initial time");
  if (!(tau > 0.0)) throw ContractViolation("advance_ecosystem_fixed: tau must be positive");
  if (stride == 0) throw ContractViolation("advance_ecosystem_fixed: stride must be >= 1");
  const double t0 = s0.t;
  const double span = t_end - t0;
  const auto full = static_cast<std::size_t>(std::floor(span / tau + 1e-9));
  const double tail = span - static_cast<double>(full) * tau;
  const bool has_tail = tail > 1e-9 * tau;
  const std::size_t total = full + (has_tail ? 1 : 0);

  EcosystemRun run{s0, {}, Outcome::completed, 0.0, 0.0, 0};
  run.trace.rows.push_back(make_row(0, 0.0, s0));
  for (std::size_t k = 0; k < total; ++k) {
    const double dt = k < full ? tau : tail;
    EcosystemState next = stepper.coupled_step(run.state, dt);
    next.t = k + 1 == total ? t_end : t0 + static_cast<double>(k + 1) * tau;
    run.state = std::move(next);
    ++run.steps;
    if (run.steps % stride == 0 || k + 1 == total) run.trace.rows.push_back(make_row(run.steps, dt, run.state));
  }
  return run;
}

}  // namespace nlsplit
