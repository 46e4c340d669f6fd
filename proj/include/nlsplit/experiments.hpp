#pragma once

// Experiment drivers built on the steppers and the harness estimators. Each
// returns plain data; the CLI and the acceptance suite format it.

#include <array>
#include <cstdint>
#include <vector>

#include "nlsplit/foodchain.hpp"
#include "nlsplit/harness.hpp"
#include "nlsplit/splitting.hpp"

namespace nlsplit {

// Source for which the sampled manufactured solution e^{-2 pi^2 t} sin sin
// solves the semi-discrete system exactly: the continuous source with the
// Laplacians replaced by the discrete ones. Errors against the exact
// solution are then purely temporal.
SourceTerm discrete_manufactured_source(const Grid2D& grid);

struct ManufacturedStudy {
  OrderEstimate order;       // tau against tau/2, errors against the exact solution
  SlopeFit center;           // ln v(1/2, 1/2) against t, on the tau/2 run
  double max_error_coarse = 0.0;
  double max_error_fine = 0.0;
  RunTrace trace;            // tau/2 run
};

// Fixed-step runs at tau and tau/2 on the manufactured problem. With
// `discrete_source` the semi-discrete source above replaces the continuous
// one. Odd N puts a node on the centre; even N fits the mean of the four
// central nodes.
ManufacturedStudy manufactured_study(std::size_t n, double tau, double t_end, bool discrete_source,
                                     const StepOptions& options = {}, std::size_t stride = 1);

struct EnergyStudy {
  EnergySeries energy;    // E = h^2 sum v^2 at every step
  SlopeFit energy_fit;    // ln E
  SlopeFit norm_fit;      // ln sqrt(E)
  bool monotone = false;  // E nonincreasing at every step
  RunTrace trace;
};

// Source-free sine data (the energy problem) at fixed tau.
EnergyStudy energy_study(std::size_t n, double tau, double t_end, const StepOptions& options = {},
                         std::size_t stride = 1);

struct ReferenceOrderStudy {
  OrderEstimate order;
  double tau_reference = 0.0;
};

// tau and tau/2 against a tau/refine reference, source-free sine data.
ReferenceOrderStudy reference_order_study(std::size_t n, double tau, double t_end, int refine = 64,
                                          const StepOptions& options = {});

struct FoodChainOrderStudy {
  std::array<OrderEstimate, 3> order;  // u, v, r
  double tau_reference = 0.0;
};

// Example-3 food chain, tau and tau/2 against tau/refine.
FoodChainOrderStudy foodchain_order_study(std::size_t n, double tau, double t_end, int refine = 64,
                                          const FoodChainOptions& options = {});

struct PerturbationStudy {
  double epsilon = 0.0;
  double tau = 0.0;
  std::size_t steps = 0;
  double max_amplification = 0.0;    // max_k |z_k|_inf / |z_0|_inf
  double final_amplification = 0.0;
  std::vector<double> times;
  std::vector<double> amplification;
};

// Two fixed-step runs of the energy problem, the second from data perturbed
// by epsilon * U(0, 1) per node (seeded). tau = safety * CFL bound of v_0,
// which bounds every later step since max v decays.
PerturbationStudy perturbation_study(std::size_t n, double t_end, double epsilon, std::uint64_t seed,
                                     double safety = 0.9, const StepOptions& options = {});

}  // namespace nlsplit
