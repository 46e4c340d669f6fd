#include "nlsplit/models.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "nlsplit/errors.hpp"

namespace nlsplit {

namespace {

constexpr double kPi = std::numbers::pi;

using Member = double FoodChainParams::*;

const std::vector<std::pair<const char*, Member>>& param_table() {
  static const std::vector<std::pair<const char*, Member>> table = {
      {"a1", &FoodChainParams::a1}, {"a2", &FoodChainParams::a2}, {"w0", &FoodChainParams::w0},
      {"w1", &FoodChainParams::w1}, {"w2", &FoodChainParams::w2}, {"w3", &FoodChainParams::w3},
      {"b2", &FoodChainParams::b2}, {"D0", &FoodChainParams::D0}, {"D1", &FoodChainParams::D1},
      {"D2", &FoodChainParams::D2}, {"D3", &FoodChainParams::D3}, {"c", &FoodChainParams::c},
      {"d1", &FoodChainParams::d1}, {"d2", &FoodChainParams::d2}, {"d3", &FoodChainParams::d3},
      {"d4", &FoodChainParams::d4},
  };
  return table;
}

double sine_bump(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }

}  // namespace

FoodChainParams FoodChainParams::example3() { return FoodChainParams{}; }

FoodChainParams FoodChainParams::table2(double c, double d4) {
  FoodChainParams p;
  p.a1 = 5.0;
  p.a2 = 0.75;
  p.w0 = 0.55;
  p.w1 = 1.0;
  p.w2 = 0.25;
  p.w3 = 1.2;
  p.b2 = 0.5;
  p.D0 = 20.0;
  p.D1 = 13.0;
  p.D2 = 10.0;
  p.D3 = 20.0;
  p.d1 = 0.1;
  p.d2 = 0.1;
  p.d3 = 0.1;
  p.c = c;
  p.d4 = d4;
  return p;
}

void FoodChainParams::validate() const {
  for (const auto& [name, member] : param_table()) {
    const double value = this->*member;
    if (!std::isfinite(value) || value < 0.0)
      throw DomainError(std::string("food-chain parameter ") + name + " must be a nonnegative number");
  }
  if (!(D0 > 0.0 && D1 > 0.0 && D2 > 0.0 && D3 > 0.0))
    throw DomainError("food-chain saturation constants D0..D3 must be positive");
}

KeyValues FoodChainParams::to_key_values() const {
  KeyValues kv;
  for (const auto& [name, member] : param_table()) kv[name] = format_real(this->*member);
  return kv;
}

FoodChainParams FoodChainParams::from_key_values(const KeyValues& kv, const FoodChainParams& base) {
  FoodChainParams p = base;
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const auto& [name, member] : param_table()) {
      if (key == name) {
        p.*member = parse_real(value, "parameter " + key);
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("unknown food-chain parameter '" + key + "'");
  }
  p.validate();
  return p;
}

double manufactured_source(double x, double y, double t) {
  const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
  const double cx = std::cos(kPi * x), cy = std::cos(kPi * y);
  const double a = cx * sy;
  const double b = cy * sx;
  const double s = sx * sy;
  return -2.0 * kPi * kPi * (a * a + b * b - 2.0 * s * s) * std::exp(-4.0 * kPi * kPi * t);
}

double manufactured_exact(double x, double y, double t) {
  return sine_bump(x, y) * std::exp(-2.0 * kPi * kPi * t);
}

SourceTerm manufactured_source_term() { return SourceTerm::from_xt(manufactured_source); }

void foodchain_sources_into(const Field& u, const Field& v, const Field& r, const FoodChainParams& p, Field& f,
                            Field& g, Field& h) {
  const std::size_t n2 = u.size();
  if (v.size() != n2 || r.size() != n2 || f.size() != n2 || g.size() != n2 || h.size() != n2)
    throw DimensionMismatch("foodchain_sources: species fields differ in size");
  for (std::size_t m = 0; m < n2; ++m) {
    const double um = u[m], vm = v[m], rm = r[m];
    h[m] = p.c * rm * rm - p.w3 * rm * rm / (vm + p.D3);
    g[m] = -p.a2 * vm + p.w1 * um * vm / (um + p.D1) - p.w2 * vm * rm / (vm + p.D2);
    f[m] = p.a1 * um - p.b2 * um * um - p.w0 * um * vm / (um + p.D0);
  }
}

ReactionTerms foodchain_sources(const Field& u, const Field& v, const Field& r, const FoodChainParams& p) {
  ReactionTerms out{Field(u.grid()), Field(u.grid()), Field(u.grid())};
  foodchain_sources_into(u, v, r, p, out.f, out.g, out.h);
  return out;
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "example1") return ExperimentKind::example1;
  if (name == "example2") return ExperimentKind::example2;
  if (name == "example3") return ExperimentKind::example3;
  if (name == "example4") return ExperimentKind::example4;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::example1: return "example1";
    case ExperimentKind::example2: return "example2";
    case ExperimentKind::example3: return "example3";
    case ExperimentKind::example4: return "example4";
  }
  return "unknown";
}

Problem make_problem(ExperimentKind kind, std::optional<FoodChainParams> params) {
  Problem p{kind, {}, SourceTerm::zero(), std::nullopt, {}};
  switch (kind) {
    case ExperimentKind::example1:
      p.species.push_back({"u", sine_bump, {1.0, 1.0}});
      p.source = manufactured_source_term();
      p.exact = manufactured_exact;
      break;
    case ExperimentKind::example2:
      p.species.push_back({"u", sine_bump, {1.0, 1.0}});
      break;
    case ExperimentKind::example3:
    case ExperimentKind::example4: {
      const FoodChainParams fc =
          params ? *params : (kind == ExperimentKind::example3 ? FoodChainParams::example3() : FoodChainParams::table2());
      fc.validate();
      p.params = fc;
      if (kind == ExperimentKind::example3) {
        p.species.push_back({"u", sine_bump, {fc.d1, 0.0}});
        p.species.push_back({"v", sine_bump, {fc.d2, 0.0}});
        p.species.push_back({"r", sine_bump, {fc.d3, fc.d4}});
      } else {
        p.species.push_back({"u", [](double x, double y) { return 10.0 * sine_bump(x, y); }, {fc.d1, 0.0}});
        p.species.push_back({"v", [](double x, double y) { return 100.0 * sine_bump(x, y); }, {fc.d2, 0.0}});
        p.species.push_back({"r", [](double x, double y) { return 100.0 * sine_bump(x, y); }, {fc.d3, fc.d4}});
      }
      break;
    }
  }
  return p;
}

}  // namespace nlsplit
