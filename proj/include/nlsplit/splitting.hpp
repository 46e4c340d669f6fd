#pragma once

// Variable-step nonlinear Douglas-Gunn splitting for
//
//   u_t = a*Lap(u) + b*Lap(u^2) + f(u, x, t)
//
// (a = b = 1 is the unit-coefficient model). With L = P + R, one step from
// v_k to v_{k+1} with step tau solves, in order,
//
//   (I - tau/2 aP) w1      = (I + tau/2 (aP + 2aR + 2bPD_k + 2bRD_k)) v_k + tau f_k
//   (I - tau/2 aR) w2      = w1 - tau/2 aR v_k
//   (I - tau/2 bPD_{k+1}) w3 = w2 - tau/2 bPD_k v_k
//   (I - tau/2 bRD_{k+1}) v_{k+1} = w3 - tau/2 bRD_k v_k + tau/2 (f_{k+1} - f_k)
//
// D_{k+1} and f_{k+1} come from one shared prediction of v_{k+1}; see
// Predictor for the two variants.

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "nlsplit/grid.hpp"
#include "nlsplit/tridiag.hpp"

namespace nlsplit {

// Coefficients of the linear and self-diffusion terms.
struct DiffusionCoefficients {
  double linear = 1.0;
  double self = 1.0;
};

enum class CflRule {
  half,     // tau/h^2 < 1 / (2 max{1, max v})
  quarter,  // tau/h^2 < 1 / (4 max{1, max v})
};

double cfl_divisor(CflRule rule);

// h^2 / (divisor * max{1, max v} * max{1, diffusion_scale}).
double cfl_bound(const Field& v, double h, CflRule rule, double diffusion_scale = 1.0);

// Bound for a species with general coefficients:
// h^2 / (divisor * max{1, linear, self * max v}). Equals cfl_bound() for unit
// coefficients.
double species_cfl_bound(const Field& v, double h, CflRule rule, const DiffusionCoefficients& coeffs);

// The reactive term f(u, x, t), evaluated nodewise on a whole field.
class SourceTerm {
 public:
  using Fn = std::function<void(const Field& state, double t, Field& out)>;

  SourceTerm() = default;
  explicit SourceTerm(Fn fn) : fn_(std::move(fn)) {}

  static SourceTerm zero() { return SourceTerm(); }
  // f depending on position and time only.
  static SourceTerm from_xt(std::function<double(double, double, double)> fn);

  bool is_zero() const noexcept { return !fn_; }
  void evaluate(const Field& state, double t, Field& out) const;
  Field evaluate(const Field& state, double t) const;

 private:
  Fn fn_;
};

struct StepController {
  double safety = 0.9;
  double tau_min = 1e-10;
  double tau_max = std::numeric_limits<double>::infinity();
  CflRule cfl_rule = CflRule::quarter;
  int max_halvings = 40;
  // Accepted-step budget for the food-chain loop; 0 means unlimited.
  std::size_t max_steps = 0;

  void validate() const;
};

struct StepReport {
  double t_new = 0.0;
  double tau_used = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double cfl_bound = 0.0;
  // max |A x - rhs| per stage, filled only when residuals are requested.
  std::array<double, 4> stage_residuals{};
};

// Explicit Euler prediction shared by D_{k+1} and f_{k+1}.
struct Prediction {
  Field state;
  DiagonalField diagonal;
};

Prediction predict_diagonal(const Field& v, const Field& f_now, double tau,
                            const DiffusionCoefficients& coeffs = {});

// Test fixture: perturbs one stage so that oracle comparisons must fail.
struct FaultInjection {
  bool flip_stage3_sign = false;
};

// How D_{k+1} and f_{k+1} are predicted.
enum class Predictor {
  // v_k + tau (aLv_k + bLD_kv_k + f_k). Unstable for tau/h^2 above roughly
  // 0.15 at N >= 49: the explicit step amplifies the checkerboard mode of
  // D_{k+1} by |1 - 8 tau/h^2 (a + 2b max v)|.
  euler,
  // The four stages run once with D_{k+1} = D_k and f_{k+1} = f_k; their
  // result is the prediction. Same order, twice the cost, stable on the
  // CFL range.
  two_pass,
};

struct StepOptions {
  CflRule cfl_rule = CflRule::quarter;
  Predictor predictor = Predictor::two_pass;
  // Fixed-step studies that sit exactly on the CFL boundary turn this off.
  bool enforce_cfl = true;
  double positivity_tolerance = 1e-12;
  bool compute_residuals = false;
  SweepLayout layout = SweepLayout::batched;
  FaultInjection fault{};
};

class SplittingStepper {
 public:
  struct Result {
    Field state;
    StepReport report;
  };

  SplittingStepper(const Grid2D& grid, SourceTerm source, DiffusionCoefficients coeffs = {},
                   StepOptions options = {});

  const Grid2D& grid() const noexcept { return grid_; }
  const DiffusionCoefficients& coefficients() const noexcept { return coeffs_; }
  const StepOptions& options() const noexcept { return options_; }
  const SourceTerm& source() const noexcept { return source_; }

  double cfl_bound(const Field& v) const;

  // Advances v from t by tau. Throws CflViolation (including
  // SingularStageError) or PositivityLoss; v is never modified.
  Result step(const Field& v, double t, double tau);

 private:
  // Stages 1-4 from v, using f0_, f1_, pred_ and the Laplacians of v and v^2;
  // the result is left in w_.
  void run_stages(const Field& v, double tau, StepReport* report);

  Grid2D grid_;
  SourceTerm source_;
  DiffusionCoefficients coeffs_;
  StepOptions options_;
  LineSolver solver_;

  // workspaces
  Field sq_, px_, ry_, pdx_, rdy_, f0_, f1_, pred_, w_, rhs_copy_;
};

struct TraceRow {
  std::size_t step = 0;
  double t = 0.0;
  double tau = 0.0;
  double max_v = 0.0;
  double min_v = 0.0;
  double energy = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::size_t rejected_steps = 0;

  // step,t,tau,max_v,min_v,energy with 17 significant digits.
  void write_csv(std::ostream& os) const;
};

struct AdvanceResult {
  Field state;
  RunTrace trace;
  std::size_t steps = 0;
};

// Adaptive loop: tau = min(safety * CFL bound, tau_max, t_end - t), halving
// on rejected steps. Throws StepFloorReached when tau drops below tau_min
// (other than for the final clipped step) or the halving budget runs out.
// The trace records the initial state and every `stride`-th step plus the last.
AdvanceResult advance(SplittingStepper& stepper, const Field& v0, double t0, double t_end,
                      const StepController& ctrl, std::size_t stride = 1);

// Constant-step loop; the last step is clipped to land on t_end. `observer`
// (optional) sees every accepted state.
AdvanceResult advance_fixed(SplittingStepper& stepper, const Field& v0, double t0, double t_end,
                            double tau, std::size_t stride = 1,
                            const std::function<void(std::size_t, double, const Field&)>& observer = {});

}  // namespace nlsplit
