#pragma once

// Coupled stepper for the three-species food chain. The top predator r
// (self-diffusion) uses the nonlinear splitting; v and u use two
// Crank-Nicolson line sweeps with the source split in halves. The eight
// solves run in the order r1, v1, u1, r2, v', u', r3, r'.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nlsplit/grid.hpp"
#include "nlsplit/models.hpp"
#include "nlsplit/splitting.hpp"
#include "nlsplit/tridiag.hpp"

namespace nlsplit {

struct EcosystemState {
  Field u;  // prey
  Field v;  // middle predator
  Field r;  // top predator
  double t = 0.0;

  static EcosystemState from_problem(const Problem& problem, const Grid2D& grid, double t0 = 0.0);
  void require_valid(double tolerance) const;
};

enum class LinearSweeps {
  // (I - tau/2 dP) x1 = (I + tau/2 dR) x_k + tau/2 s_k,
  // (I - tau/2 dR) x' = (I + tau/2 dP) x1 + tau/2 s_{k+1}. Second order.
  peaceman_rachford,
  // Crank-Nicolson in x then in y, each with its own explicit axis. The
  // half-sources sit on different sides of the diffusion, which costs one
  // order: first order in tau whenever the sources vary in space.
  literal,
};

struct FoodChainOptions {
  CflRule cfl_rule = CflRule::quarter;
  bool enforce_cfl = true;
  double positivity_tolerance = 1e-12;
  // Blow-up is declared once max r exceeds this, independently of the step floor.
  double blowup_threshold = 1e8;
  Predictor predictor = Predictor::two_pass;
  LinearSweeps linear_sweeps = LinearSweeps::peaceman_rachford;
  SweepLayout layout = SweepLayout::batched;
};

class FoodChainStepper {
 public:
  FoodChainStepper(const Grid2D& grid, const FoodChainParams& params, FoodChainOptions options = {});

  const Grid2D& grid() const noexcept { return grid_; }
  const FoodChainParams& params() const noexcept { return params_; }
  const FoodChainOptions& options() const noexcept { return options_; }

  // Minimum over species of the per-species CFL bounds.
  double cfl_bound(const EcosystemState& s) const;

  // Throws CflViolation / SingularStageError / PositivityLoss; s is untouched.
  EcosystemState coupled_step(const EcosystemState& s, double tau);

 private:
  // The eight solves from s with the current predicted fields; writes next.u/v/r.
  void run_sweeps(const EcosystemState& s, double tau, EcosystemState& next);

  Grid2D grid_;
  FoodChainParams params_;
  FoodChainOptions options_;
  LineSolver solver_;
  Field f0_, g0_, h0_, f1_, g1_, h1_;
  Field ru_, rv_, rr_;  // predicted u, v, r
  Field sq_, lx_, ly_, nx_, ny_, tmp_;
};

struct EcosystemTraceRow {
  std::size_t step = 0;
  double t = 0.0;
  double tau = 0.0;
  double max_u = 0.0, max_v = 0.0, max_r = 0.0;
  double energy_u = 0.0, energy_v = 0.0, energy_r = 0.0;
};

struct EcosystemTrace {
  std::vector<EcosystemTraceRow> rows;
  std::size_t rejected_steps = 0;

  // step,t,tau,max_u,max_v,max_r,energy_u,energy_v,energy_r
  void write_csv(std::ostream& os) const;
};

// unresolved: the step budget ran out before t_end. Near the blow-up
// threshold with d4 > 0 the CFL step shrinks like 1/max r, so a run can
// need arbitrarily many steps without crossing the blow-up threshold.
enum class Outcome { completed, blowup, unresolved };

struct EcosystemRun {
  EcosystemState state;
  EcosystemTrace trace;
  Outcome outcome = Outcome::completed;
  double blowup_time = 0.0;  // meaningful for Outcome::blowup
  double blowup_max_r = 0.0;
  std::size_t steps = 0;
};

// Adaptive loop with one shared tau per step. Blow-up (step floor, halving
// budget exhausted, or max r above threshold) is reported in the outcome,
// never thrown.
EcosystemRun advance_ecosystem(FoodChainStepper& stepper, const EcosystemState& s0, double t_end,
                               const StepController& ctrl, std::size_t stride = 1);

// Constant tau; rejected steps propagate as exceptions.
EcosystemRun advance_ecosystem_fixed(FoodChainStepper& stepper, const EcosystemState& s0, double t_end, double tau,
                                     std::size_t stride = 1);

}  // namespace nlsplit
