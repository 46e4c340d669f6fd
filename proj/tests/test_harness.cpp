#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nlsplit/errors.hpp"
#include "nlsplit/experiments.hpp"
#include "nlsplit/harness.hpp"

using namespace nlsplit;

TEST_CASE("order estimate from exact halving laws") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-6, 1e-3);
  std::vector<double> coarse(400), quarter(400), half(400);
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    coarse[k] = (k % 2 ? 1.0 : -1.0) * u(rng);
    quarter[k] = coarse[k] / 4.0;
    half[k] = coarse[k] / 2.0;
  }
  const OrderEstimate two = estimate_order(coarse, quarter, 1.0, 0.01);
  CHECK(two.p == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(two.node_stddev < 1e-12);
  CHECK(two.nodes_used == 400);
  CHECK(two.tau_coarse == 0.01);
  CHECK(estimate_order(coarse, half, 1.0).p == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("order estimate skips round-off nodes and refuses degenerate input") {
  std::vector<double> coarse(100, 1e-4), fine(100, 2.5e-5);
  for (std::size_t k = 0; k < 50; ++k) coarse[k] = fine[k] = 0.0;
  const OrderEstimate e = estimate_order(coarse, fine, 1.0);
  CHECK(e.nodes_used == 50);
  CHECK(e.p == doctest::Approx(2.0));
  std::vector<double> zeros(100, 0.0);
  CHECK_THROWS_AS(estimate_order(zeros, zeros, 1.0), DegenerateEstimate);
  CHECK_THROWS_AS(estimate_order(coarse, std::vector<double>(99, 1.0), 1.0), DimensionMismatch);
}

TEST_CASE("log-slope fits") {
  std::vector<double> t(100), e3(100), flat(100, 2.5);
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = 0.01 * static_cast<double>(k);
    e3[k] = std::exp(-3.0 * t[k]);
  }
  const SlopeFit fit = fit_log_slope(t, e3);
  CHECK(std::abs(fit.slope + 3.0) <= 1e-10);
  CHECK(fit.residual_rms < 1e-12);
  CHECK(fit.n_samples == 100);
  CHECK(std::abs(fit_log_slope(t, flat).slope) <= 1e-12);
  std::vector<double> bad = e3;
  bad[10] = 0.0;
  CHECK_THROWS_AS(fit_log_slope(t, bad), DomainError);
}

TEST_CASE("energy series monotonicity") {
  EnergySeries s;
  s.push(0.0, 1.0);
  s.push(0.1, 0.5);
  s.push(0.2, 0.5);
  CHECK(s.monotone_nonincreasing());
  CHECK(fit_log_slope(s).n_samples == 3);
  s.push(0.3, 0.6);
  CHECK_FALSE(s.monotone_nonincreasing());
}

TEST_CASE("log-log timing fits on synthetic data") {
  const std::vector<double> n{21, 41, 81, 161};
  std::vector<double> quad, sub;
  for (double x : n) {
    quad.push_back(3e-7 * x * x);
    sub.push_back(2e-6 * std::pow(x, 1.65));
  }
  CHECK(fit_loglog(n, quad).slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_loglog(n, sub).slope == doctest::Approx(1.65).epsilon(1e-12));
}

TEST_CASE("timing study runs each size and writes the table") {
  const std::vector<std::size_t> sizes{9, 17};
  const TimingResult t = timing_study(sizes, 5, 1e-6, 1);
  CHECK(t.seconds.size() == 2);
  for (double s : t.seconds) CHECK(s > 0.0);
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str().rfind("N,seconds\n9,", 0) == 0);
}

TEST_CASE("bisection on a synthetic threshold") {
  int calls = 0;
  const auto blows_up = [&](double c) {
    ++calls;
    return c > 5.07;
  };
  const CriticalValue cv = find_critical_c(blows_up, 4.5, 5.6, 1e-3);
  CHECK(std::abs(cv.c_star - 5.07) <= 1e-3);
  CHECK(cv.c_low <= 5.07);
  CHECK(cv.c_high > 5.07);
  CHECK(cv.c_high - cv.c_low <= 1e-3);
  CHECK(cv.history.size() == static_cast<std::size_t>(calls));
  std::ostringstream os;
  cv.write_csv(os);
  CHECK(os.str().rfind("iter,c_low,c_high,outcome\n", 0) == 0);
}

TEST_CASE("bisection preconditions") {
  const auto threshold = [](double c) { return c > 5.0; };
  CHECK_THROWS_AS(find_critical_c(threshold, 5.5, 6.0, 1e-3), ContractViolation);
  CHECK_THROWS_AS(find_critical_c(threshold, 4.0, 4.5, 1e-3), ContractViolation);
  CHECK_THROWS_AS(find_critical_c(threshold, 4.0, 6.0, 0.0), ContractViolation);
  // A non-monotone predicate still yields one of its transitions.
  const auto window = [](double c) { return (c > 4.2 && c < 4.4) || c > 5.9; };
  const CriticalValue cv = find_critical_c(window, 4.0, 6.0, 1e-3);
  CHECK(!window(cv.c_low));
  CHECK(window(cv.c_high));
}

TEST_CASE("critical growth rate brackets on a coarse grid") {
  BlowupSettings bs;
  bs.n = 9;
  bs.t_end = 0.5;
  const CriticalValue cv = find_critical_c(FoodChainParams::table2(), 0.001, 2.0, 0.05, bs);
  CHECK(run_blowup_probe(FoodChainParams::table2(), cv.c_low, bs).outcome == Outcome::completed);
  CHECK(run_blowup_probe(FoodChainParams::table2(), cv.c_high, bs).outcome == Outcome::blowup);
}

TEST_CASE("probes that exhaust the step budget count as blow-up and are flagged") {
  BlowupSettings bs;
  bs.n = 9;
  bs.t_end = 0.5;
  bs.controller.max_steps = 3;
  // Nothing completes in three steps, so even c_low looks like a blow-up.
  CHECK_THROWS_AS(find_critical_c(FoodChainParams::table2(), 0.001, 2.0, 0.05, bs), ContractViolation);
  CHECK(run_blowup_probe(FoodChainParams::table2(), 0.001, bs).outcome == Outcome::unresolved);
  // Synthetic history marks render in the table.
  CriticalValue cv = find_critical_c([](double c) { return c > 1.0; }, 0.0, 2.0, 0.5);
  cv.history.back().unresolved = true;
  std::ostringstream os;
  cv.write_csv(os);
  CHECK(os.str().find("unresolved") != std::string::npos);
}

TEST_CASE("perturbations of the energy problem are not amplified") {
  const PerturbationStudy st = perturbation_study(15, 0.05, 1e-8, 42);
  CHECK(st.steps > 0);
  CHECK(st.max_amplification <= 10.0);
  CHECK(st.amplification.front() == doctest::Approx(1.0));
}

TEST_CASE("reference order study on the energy problem") {
  StepOptions opts;
  opts.enforce_cfl = false;
  const ReferenceOrderStudy st = reference_order_study(15, 1e-3, 0.05, 32, opts);
  CHECK(st.order.p == doctest::Approx(2.0).epsilon(0.05));
  CHECK(st.tau_reference == doctest::Approx(1e-3 / 32));
}
