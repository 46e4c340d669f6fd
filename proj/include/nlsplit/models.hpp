#pragma once

// Problem definitions: the manufactured-solution problem, the source-free
// energy problem, and the three-species food chain
//
//   r_t = d3 Lap r + d4 Lap r^2 + c r^2 - w3 r^2/(v + D3)          =: ... + h(u,v,r)
//   v_t = d2 Lap v - a2 v + w1 uv/(u + D1) - w2 vr/(v + D2)        =: ... + g(u,v,r)
//   u_t = d1 Lap u + a1 u - b2 u^2 - w0 uv/(u + D0)                =: ... + f(u,v,r)

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlsplit/grid.hpp"
#include "nlsplit/io.hpp"
#include "nlsplit/splitting.hpp"

namespace nlsplit {

struct FoodChainParams {
  double a1 = 1.0, a2 = 1.0;
  double w0 = 1.0, w1 = 1.0, w2 = 1.0, w3 = 1.0;
  double b2 = 1.0;
  double D0 = 10.0, D1 = 10.0, D2 = 10.0, D3 = 10.0;
  double c = 0.2;
  double d1 = 1.0, d2 = 1.0, d3 = 1.0, d4 = 1.0;

  // Convergence-study configuration: unit rates, D_i = 10, c = 0.2.
  static FoodChainParams example3();
  // Blow-up configuration; c and d4 are the swept quantities.
  static FoodChainParams table2(double c = 5.0, double d4 = 0.0);

  // All entries >= 0 and D0..D3 > 0; throws DomainError.
  void validate() const;

  KeyValues to_key_values() const;
  // Overrides fields of `base` with the given keys; unknown keys throw ConfigError.
  static FoodChainParams from_key_values(const KeyValues& kv, const FoodChainParams& base);

  friend bool operator==(const FoodChainParams&, const FoodChainParams&) = default;
};

// Reactive term whose exact solution is sin(pi x) sin(pi y) exp(-2 pi^2 t).
double manufactured_source(double x, double y, double t);
double manufactured_exact(double x, double y, double t);
SourceTerm manufactured_source_term();

struct ReactionTerms {
  Field f;  // prey u
  Field g;  // middle predator v
  Field h;  // top predator r
};

void foodchain_sources_into(const Field& u, const Field& v, const Field& r, const FoodChainParams& p, Field& f,
                            Field& g, Field& h);
ReactionTerms foodchain_sources(const Field& u, const Field& v, const Field& r, const FoodChainParams& p);

enum class ExperimentKind { example1, example2, example3, example4 };

ExperimentKind parse_experiment(const std::string& name);
std::string to_string(ExperimentKind kind);

struct SpeciesSpec {
  std::string name;
  std::function<double(double, double)> initial;
  DiffusionCoefficients diffusion;
};

struct Problem {
  ExperimentKind kind;
  // example1/2: a single species "u". example3/4: "u", "v", "r" in that order.
  std::vector<SpeciesSpec> species;
  // Single-species reactive term; unused by the food chain.
  SourceTerm source;
  std::optional<FoodChainParams> params;
  // Exact solution (x, y, t), manufactured problem only.
  std::function<double(double, double, double)> exact;
};

// Food-chain problems fall back to FoodChainParams::example3() / table2()
// when params is empty.
Problem make_problem(ExperimentKind kind, std::optional<FoodChainParams> params = std::nullopt);

}  // namespace nlsplit
