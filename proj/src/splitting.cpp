#include "nlsplit/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "nlsplit/errors.hpp"
#include "nlsplit/io.hpp"

namespace nlsplit {

double cfl_divisor(CflRule rule) { return rule == CflRule::half ? 2.0 : 4.0; }

double cfl_bound(const Field& v, double h, CflRule rule, double diffusion_scale) {
  if (diffusion_scale < 0.0) throw DomainError("cfl_bound: diffusion_scale must be nonnegative");
  const double vmax = std::max(1.0, max_value(v));
  return h * h / (cfl_divisor(rule) * vmax * std::max(1.0, diffusion_scale));
}

double species_cfl_bound(const Field& v, double h, CflRule rule, const DiffusionCoefficients& coeffs) {
  if (coeffs.linear < 0.0 || coeffs.self < 0.0) throw DomainError("species_cfl_bound: negative coefficient");
  const double scale = std::max({1.0, coeffs.linear, coeffs.self * max_value(v)});
  return h * h / (cfl_divisor(rule) * scale);
}

SourceTerm SourceTerm::from_xt(std::function<double(double, double, double)> fn) {
  return SourceTerm([fn = std::move(fn)](const Field& state, double t, Field& out) {
    const Grid2D& g = state.grid();
    for (std::size_t j = 1; j <= g.n(); ++j)
      for (std::size_t i = 1; i <= g.n(); ++i) out.at(i, j) = fn(g.x(i), g.y(j), t);
  });
}

void SourceTerm::evaluate(const Field& state, double t, Field& out) const {
  if (!(out.grid() == state.grid())) throw DimensionMismatch("SourceTerm: output grid mismatch");
  if (!fn_) {
    std::fill(out.values().begin(), out.values().end(), 0.0);
    return;
  }
  fn_(state, t, out);
}

Field SourceTerm::evaluate(const Field& state, double t) const {
  Field out(state.grid());
  evaluate(state, t, out);
  return out;
}

void StepController::validate() const {
  if (!(safety > 0.0 && safety <= 1.0)) throw ContractViolation("StepController: safety must lie in (0, 1]");
  if (!(tau_min > 0.0)) throw ContractViolation("StepController: tau_min must be positive");
  if (!(tau_max >= tau_min)) throw ContractViolation("StepController: tau_max must be >= tau_min");
  if (max_halvings < 0) throw ContractViolation("StepController: max_halvings must be nonnegative");
}

Prediction predict_diagonal(const Field& v, const Field& f_now, double tau, const DiffusionCoefficients& coeffs) {
  if (!(f_now.grid() == v.grid())) throw DimensionMismatch("predict_diagonal: source grid mismatch");
  const Grid2D& g = v.grid();
  const std::size_t n2 = g.size();
  std::vector<double> sq(n2), lx(n2), ly(n2), nx(n2), ny(n2);
  for (std::size_t m = 0; m < n2; ++m) sq[m] = v[m] * v[m];
  laplacian_into(g, Axis::x, v.values(), lx);
  laplacian_into(g, Axis::y, v.values(), ly);
  laplacian_into(g, Axis::x, sq, nx);
  laplacian_into(g, Axis::y, sq, ny);
  Field pred(g);
  for (std::size_t m = 0; m < n2; ++m)
    pred[m] = v[m] + tau * (coeffs.linear * (lx[m] + ly[m]) + coeffs.self * (nx[m] + ny[m]) + f_now[m]);
  DiagonalField diag(pred);
  return {std::move(pred), std::move(diag)};
}

SplittingStepper::SplittingStepper(const Grid2D& grid, SourceTerm source, DiffusionCoefficients coeffs,
                                   StepOptions options)
    : grid_(grid),
      source_(std::move(source)),
      coeffs_(coeffs),
      options_(options),
      solver_(grid, options.layout),
      sq_(grid),
      px_(grid),
      ry_(grid),
      pdx_(grid),
      rdy_(grid),
      f0_(grid),
      f1_(grid),
      pred_(grid),
      w_(grid),
      rhs_copy_(grid) {
  if (coeffs.linear < 0.0 || coeffs.self < 0.0)
    throw DomainError("SplittingStepper: diffusion coefficients must be nonnegative");
}

double SplittingStepper::cfl_bound(const Field& v) const {
  return species_cfl_bound(v, grid_.h(), options_.cfl_rule, coeffs_);
}

namespace {

// max |(I - alpha T_axis D) x - rhs|, D = I when d is empty.
double stage_residual(const Grid2D& g, Axis axis, double alpha, std::span<const double> d,
                      std::span<const double> x, std::span<const double> rhs) {
  std::vector<double> tx(x.size());
  if (d.empty())
    laplacian_into(g, axis, x, tx);
  else
    scaled_laplacian_into(g, axis, d, x, tx);
  double r = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) r = std::max(r, std::abs(x[m] - alpha * tx[m] - rhs[m]));
  return r;
}

}  // namespace

void SplittingStepper::run_stages(const Field& v, double tau, StepReport* report) {
  const std::size_t n2 = grid_.size();
  const double a = coeffs_.linear;
  const double b = coeffs_.self;
  const double half = 0.5 * tau;
  auto remember_rhs = [&] {
    if (report) std::copy(w_.values().begin(), w_.values().end(), rhs_copy_.values().begin());
  };

  // Stage 1: x-sweep, full explicit right side.
  for (std::size_t m = 0; m < n2; ++m)
    w_[m] = v[m] + half * (a * px_[m] + 2.0 * a * ry_[m] + 2.0 * b * pdx_[m] + 2.0 * b * rdy_[m]) + tau * f0_[m];
  remember_rhs();
  solver_.solve_constant(Axis::x, half * a, w_.values());
  if (report) report->stage_residuals[0] = stage_residual(grid_, Axis::x, half * a, {}, w_.values(), rhs_copy_.values());

  // Stage 2: y-sweep, linear correction.
  for (std::size_t m = 0; m < n2; ++m) w_[m] = w_[m] - half * a * ry_[m];
  remember_rhs();
  solver_.solve_constant(Axis::y, half * a, w_.values());
  if (report) report->stage_residuals[1] = stage_residual(grid_, Axis::y, half * a, {}, w_.values(), rhs_copy_.values());

  // Stage 3: x-sweep with the predicted diagonal.
  const double sign3 = options_.fault.flip_stage3_sign ? 1.0 : -1.0;
  for (std::size_t m = 0; m < n2; ++m) w_[m] = w_[m] + sign3 * half * b * pdx_[m];
  remember_rhs();
  if (b != 0.0) solver_.solve_scaled(Axis::x, half * b, pred_.values(), w_.values());
  if (report)
    report->stage_residuals[2] = stage_residual(grid_, Axis::x, half * b, pred_.values(), w_.values(), rhs_copy_.values());

  // Stage 4: y-sweep with the predicted diagonal and the source correction.
  for (std::size_t m = 0; m < n2; ++m) w_[m] = w_[m] - half * b * rdy_[m] + half * (f1_[m] - f0_[m]);
  remember_rhs();
  if (b != 0.0) solver_.solve_scaled(Axis::y, half * b, pred_.values(), w_.values());
  if (report)
    report->stage_residuals[3] = stage_residual(grid_, Axis::y, half * b, pred_.values(), w_.values(), rhs_copy_.values());
}

SplittingStepper::Result SplittingStepper::step(const Field& v, double t, double tau) {
  if (!(v.grid() == grid_)) throw DimensionMismatch("SplittingStepper::step: grid mismatch");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("SplittingStepper::step: tau must be positive");

  StepReport report;
  report.cfl_bound = cfl_bound(v);
  if (options_.enforce_cfl && !(tau < report.cfl_bound)) {
    std::ostringstream os;
    os << "step size " << tau << " violates CFL bound " << report.cfl_bound;
    throw CflViolation(os.str());
  }

  const std::size_t n2 = grid_.size();
  const double a = coeffs_.linear;
  const double b = coeffs_.self;

  for (std::size_t m = 0; m < n2; ++m) sq_[m] = v[m] * v[m];
  laplacian_into(grid_, Axis::x, v.values(), px_.values());
  laplacian_into(grid_, Axis::y, v.values(), ry_.values());
  laplacian_into(grid_, Axis::x, sq_.values(), pdx_.values());
  laplacian_into(grid_, Axis::y, sq_.values(), rdy_.values());

  const bool has_source = !source_.is_zero();
  if (has_source)
    source_.evaluate(v, t, f0_);
  else
    std::fill(f0_.values().begin(), f0_.values().end(), 0.0);

  if (options_.predictor == Predictor::euler) {
    for (std::size_t m = 0; m < n2; ++m)
      pred_[m] = v[m] + tau * (a * (px_[m] + ry_[m]) + b * (pdx_[m] + rdy_[m]) + f0_[m]);
  } else {
    // First pass with D_k frozen and f_{k+1} = f_k; its result carries an
    // O(tau^2) local error, enough for the second-pass D_{k+1}.
    std::copy(v.values().begin(), v.values().end(), pred_.values().begin());
    std::copy(f0_.values().begin(), f0_.values().end(), f1_.values().begin());
    run_stages(v, tau, nullptr);
    std::copy(w_.values().begin(), w_.values().end(), pred_.values().begin());
  }

  if (has_source)
    source_.evaluate(pred_, t + tau, f1_);
  else
    std::fill(f1_.values().begin(), f1_.values().end(), 0.0);

  run_stages(v, tau, options_.compute_residuals ? &report : nullptr);

  Field next = w_;
  next.require_nonnegative(options_.positivity_tolerance);

  report.t_new = t + tau;
  report.tau_used = tau;
  report.min_value = min_value(next);
  report.max_value = max_value(next);
  return {std::move(next), report};
}

void RunTrace::write_csv(std::ostream& os) const {
  os << "step,t,tau,max_v,min_v,energy\n";
  for (const TraceRow& r : rows) {
    os << r.step << ',' << format_real(r.t) << ',' << format_real(r.tau) << ',' << format_real(r.max_v) << ','
       << format_real(r.min_v) << ',' << format_real(r.energy) << '\n';
  }
}

namespace {

TraceRow make_row(std::size_t step, double t, double tau, const Field& v) {
  return {step, t, tau, max_value(v), min_value(v), discrete_energy(v)};
}

}  // namespace

AdvanceResult advance(SplittingStepper& stepper, const Field& v0, double t0, double t_end,
                      const StepController& ctrl, std::size_t stride) {
  ctrl.validate();
  if (!(t_end > t0)) throw ContractViolation("advance: t_end must exceed t0");
  if (stride == 0) throw ContractViolation("advance: stride must be >= 1");
  v0.require_nonnegative(stepper.options().positivity_tolerance);

  AdvanceResult out{v0, {}, 0};
  out.trace.rows.push_back(make_row(0, t0, 0.0, v0));
  double t = t0;
  const double snap = 1e-12 * (t_end - t0);

  while (t_end - t > snap) {
    const double remaining = t_end - t;
    double tau = std::min({ctrl.safety * stepper.cfl_bound(out.state), ctrl.tau_max, remaining});
    bool landing = tau == remaining;
    if (tau < ctrl.tau_min && !landing) {
      std::ostringstream os;
      os << "CFL step " << tau << " below floor " << ctrl.tau_min << " at t = " << t;
      throw StepFloorReached(t, os.str());
    }
    int halvings = 0;
    for (;;) {
      try {
        SplittingStepper::Result res = stepper.step(out.state, t, tau);
        out.state = std::move(res.state);
        break;
      } catch (const RejectedStep& e) {
        ++out.trace.rejected_steps;
        tau *= 0.5;
        landing = false;
        if (++halvings > ctrl.max_halvings || tau < ctrl.tau_min) {
          std::ostringstream os;
          os << "step size floor reached at t = " << t << " (" << e.what() << ")";
          throw StepFloorReached(t, os.str());
        }
      }
    }
    t = landing ? t_end : t + tau;
    ++out.steps;
    if (out.steps % stride == 0 || t_end - t <= snap) out.trace.rows.push_back(make_row(out.steps, t, tau, out.state));
  }
  return out;
}

AdvanceResult advance_fixed(SplittingStepper& stepper, const Field& v0, double t0, double t_end, double tau,
                            std::size_t stride, const std::function<void(std::size_t, double, const Field&)>& observer) {
  if (!(t_end > t0)) throw ContractViolation("advance_fixed: t_end must exceed t0");
  if (!(tau > 0.0)) throw ContractViolation("advance_fixed: tau must be positive");
  if (stride == 0) throw ContractViolation("advance_fixed: stride must be >= 1");

  const double span = t_end - t0;
  const auto full = static_cast<std::size_t>(std::floor(span / tau + 1e-9));
  const double tail = span - static_cast<double>(full) * tau;
  const bool has_tail = tail > 1e-9 * tau;
  const std::size_t total = full + (has_tail ? 1 : 0);

  AdvanceResult out{v0, {}, 0};
  out.trace.rows.push_back(make_row(0, t0, 0.0, v0));
  if (observer) observer(0, t0, v0);
  for (std::size_t k = 0; k < total; ++k) {
    const double t = t0 + static_cast<double>(k) * tau;
    const double dt = k < full ? tau : tail;
    SplittingStepper::Result res = stepper.step(out.state, t, dt);
    out.state = std::move(res.state);
    const double t_new = k + 1 == total ? t_end : t0 + static_cast<double>(k + 1) * tau;
    ++out.steps;
    if (observer) observer(out.steps, t_new, out.state);
    if (out.steps % stride == 0 || k + 1 == total) out.trace.rows.push_back(make_row(out.steps, t_new, dt, out.state));
  }
  return out;
}

}  // namespace nlsplit
