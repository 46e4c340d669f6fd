#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlsplit/errors.hpp"
#include "nlsplit/models.hpp"
#include "support.hpp"

using namespace nlsplit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("manufactured source at sample points") {
  CHECK(manufactured_source(0.0, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(manufactured_source(0.5, 0.5, 0.0) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(manufactured_source(0.5, 0.5, 0.0) == doctest::Approx(39.478418).epsilon(1e-7));
  CHECK(manufactured_source(0.25, 0.25, 0.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("manufactured exact solution") {
  CHECK(manufactured_exact(0.5, 0.5, 0.0) == doctest::Approx(1.0));
  for (double y : {0.1, 0.5, 0.9})
    for (double t : {0.0, 0.3}) CHECK(manufactured_exact(0.0, y, t) == 0.0);
}

TEST_CASE("manufactured pair satisfies u_t = Lap(u + u^2) + f") {
  // Centered differences with step 1e-4 give a truncation error near 1e-7
  // relative to the second derivatives, whose size is about 2 pi^2.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const double d = 1e-4;
  auto w = [](double x, double y, double t) {
    const double u = manufactured_exact(x, y, t);
    return u + u * u;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const double x = unit(rng), y = unit(rng), t = 0.3 * unit(rng);
    const double ut = (manufactured_exact(x, y, t + d) - manufactured_exact(x, y, t - d)) / (2 * d);
    const double lap = (w(x + d, y, t) + w(x - d, y, t) + w(x, y + d, t) + w(x, y - d, t) - 4 * w(x, y, t)) / (d * d);
    CHECK(std::abs(ut - lap - manufactured_source(x, y, t)) < 1e-5);
  }
}

TEST_CASE("food-chain sources") {
  const Grid2D g(3);
  auto constant = [&](double c) { return Field::sample(g, [c](double, double) { return c; }); };

  SUBCASE("zero state") {
    const ReactionTerms s = foodchain_sources(Field(g), Field(g), Field(g), FoodChainParams::example3());
    CHECK(norm_max(s.f) == 0.0);
    CHECK(norm_max(s.g) == 0.0);
    CHECK(norm_max(s.h) == 0.0);
  }
  SUBCASE("unit state with the convergence-study rates") {
    const ReactionTerms s = foodchain_sources(constant(1.0), constant(1.0), constant(1.0), FoodChainParams::example3());
    for (std::size_t m = 0; m < g.size(); ++m) {
      CHECK(s.h[m] == doctest::Approx(0.2 - 1.0 / 11.0).epsilon(1e-14));
      CHECK(s.h[m] == doctest::Approx(0.109091).epsilon(1e-5));
      CHECK(s.g[m] == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(s.f[m] == doctest::Approx(-1.0 / 11.0).epsilon(1e-14));
    }
  }
  SUBCASE("lone top predator grows at c - w3/D3") {
    for (double c : {0.0, 0.06, 5.07}) {
      const ReactionTerms s =
          foodchain_sources(Field(g), Field(g), constant(1.0), FoodChainParams::table2(c, 0.0));
      CHECK(s.h[4] == doctest::Approx(c - 0.06).epsilon(1e-14));
    }
  }
}

TEST_CASE("food-chain sources have finite Lipschitz constants on a box") {
  // Finite-difference slopes on [0, 100]^3 stay below a fixed bound.
  const Grid2D g(2);
  const FoodChainParams p = FoodChainParams::table2(5.0, 0.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> box(0.0, 100.0);
  auto at = [&](double u, double v, double r) {
    auto c = [&](double x) { return Field::sample(g, [x](double, double) { return x; }); };
    const ReactionTerms s = foodchain_sources(c(u), c(v), c(r), p);
    return std::array<double, 3>{s.f[0], s.g[0], s.h[0]};
  };
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = box(rng), v = box(rng), r = box(rng), e = 1e-6;
    const auto base = at(u, v, r);
    for (const auto& moved : {at(u + e, v, r), at(u, v + e, r), at(u, v, r + e)})
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(moved[i] - base[i]) / e);
  }
  CHECK(std::isfinite(worst));
  // |dh/dr| <= 2 c r + 2 w3 r / D3 <= 2 * 5 * 100 + 12 dominates.
  CHECK(worst <= 1100.0);
}

TEST_CASE("problem initial data") {
  const Grid2D g(49);
  const std::size_t mid = g.index(25, 25);
  SUBCASE("manufactured") {
    const Problem p = make_problem(ExperimentKind::example1);
    REQUIRE(p.species.size() == 1);
    CHECK(Field::sample(g, p.species[0].initial)[mid] == doctest::Approx(1.0));
    CHECK(p.exact(0.5, 0.5, 0.0) == doctest::Approx(1.0));
    CHECK(!p.source.is_zero());
  }
  SUBCASE("energy problem is source free") {
    const Problem p = make_problem(ExperimentKind::example2);
    CHECK(p.source.is_zero());
  }
  SUBCASE("blow-up configuration") {
    const Problem p = make_problem(ExperimentKind::example4);
    REQUIRE(p.species.size() == 3);
    CHECK(Field::sample(g, p.species[0].initial)[mid] == doctest::Approx(10.0));
    CHECK(Field::sample(g, p.species[1].initial)[mid] == doctest::Approx(100.0));
    CHECK(Field::sample(g, p.species[2].initial)[mid] == doctest::Approx(100.0));
    CHECK(*p.params == FoodChainParams::table2());
  }
  SUBCASE("convergence configuration") {
    const Problem p = make_problem(ExperimentKind::example3);
    const FoodChainParams e = *p.params;
    for (double rate : {e.a1, e.a2, e.w0, e.w1, e.w2, e.w3, e.b2, e.d1, e.d2, e.d3, e.d4}) CHECK(rate == 1.0);
    for (double sat : {e.D0, e.D1, e.D2, e.D3}) CHECK(sat == 10.0);
    CHECK(e.c == 0.2);
    for (std::size_t k = 0; k < 3; ++k) CHECK(Field::sample(g, p.species[k].initial)[mid] == doctest::Approx(1.0));
  }
}

TEST_CASE("blow-up parameter table") {
  const FoodChainParams p = FoodChainParams::table2(5.07, 0.025);
  CHECK(p.a1 == 5.0);
  CHECK(p.a2 == 0.75);
  CHECK(p.w0 == 0.55);
  CHECK(p.w1 == 1.0);
  CHECK(p.w2 == 0.25);
  CHECK(p.w3 == 1.2);
  CHECK(p.b2 == 0.5);
  CHECK(p.D0 == 20.0);
  CHECK(p.D1 == 13.0);
  CHECK(p.D2 == 10.0);
  CHECK(p.D3 == 20.0);
  CHECK(p.d1 == 0.1);
  CHECK(p.d2 == 0.1);
  CHECK(p.d3 == 0.1);
  CHECK(p.c == 5.07);
  CHECK(p.d4 == 0.025);
}

TEST_CASE("parameters round-trip through key=value text") {
  const FoodChainParams p = FoodChainParams::table2(5.123456789012345, 0.025);
  const FoodChainParams q = FoodChainParams::from_key_values(p.to_key_values(), FoodChainParams::example3());
  CHECK(p == q);
  CHECK_THROWS_AS(FoodChainParams::from_key_values({{"nonsense", "1"}}, p), ConfigError);
  FoodChainParams bad = p;
  bad.D3 = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.c = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("experiment names") {
  for (auto k : {ExperimentKind::example1, ExperimentKind::example2, ExperimentKind::example3, ExperimentKind::example4})
    CHECK(parse_experiment(to_string(k)) == k);
  CHECK_THROWS_AS(parse_experiment("example9"), ConfigError);
}
