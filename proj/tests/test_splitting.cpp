#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlsplit/errors.hpp"
#include "nlsplit/experiments.hpp"
#include "nlsplit/harness.hpp"
#include "nlsplit/models.hpp"
#include "nlsplit/splitting.hpp"
#include "support.hpp"

using namespace nlsplit;
using testing::MatrixXd;
using testing::VectorXd;

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

VectorXd sampled_source(const Grid2D& g, double t) {
  return testing::vec(Field::sample(g, [t](double x, double y) { return manufactured_source(x, y, t); }));
}

// Prediction of v_{k+1} written out from the definitions.
VectorXd dense_prediction(const Grid2D& g, const VectorXd& v, const VectorXd& f0, double tau, Predictor pred) {
  const MatrixXd p = testing::dense_p(g), r = testing::dense_r(g);
  if (pred == Predictor::euler) return v + tau * ((p + r) * v + (p + r) * v.cwiseProduct(v) + f0);
  return testing::split_stages(p, r, v, v, f0, f0, tau);
}

VectorXd dense_step(const Grid2D& g, const VectorXd& v, double t, double tau, bool with_source, Predictor pred) {
  const VectorXd f0 = with_source ? sampled_source(g, t) : VectorXd::Zero(v.size());
  const VectorXd f1 = with_source ? sampled_source(g, t + tau) : VectorXd::Zero(v.size());
  const VectorXd d1 = dense_prediction(g, v, f0, tau, pred);
  return testing::split_stages(testing::dense_p(g), testing::dense_r(g), v, d1, f0, f1, tau);
}

Field smooth_data(const Grid2D& g) {
  return Field::sample(g, [](double x, double y) { return manufactured_exact(x, y, 0.0); });
}

}  // namespace

TEST_CASE("CFL bound") {
  const Grid2D g99(99);
  CHECK(cfl_bound(Field(g99), g99.h(), CflRule::half) == doctest::Approx(5e-5).epsilon(1e-12));
  CHECK(cfl_bound(Field(g99), g99.h(), CflRule::quarter) == doctest::Approx(2.5e-5).epsilon(1e-12));
  const Grid2D g9(9);
  Field v(g9);
  v[40] = 4.0;
  CHECK(cfl_bound(v, g9.h(), CflRule::quarter) == doctest::Approx(0.01 / 16.0).epsilon(1e-12));
  // Unit coefficients reduce the species bound to the plain one.
  CHECK(species_cfl_bound(v, g9.h(), CflRule::quarter, {}) == cfl_bound(v, g9.h(), CflRule::quarter));
  CHECK(species_cfl_bound(v, g9.h(), CflRule::quarter, {0.1, 0.0}) ==
        doctest::Approx(0.01 / 4.0).epsilon(1e-12));
}

TEST_CASE("Euler prediction") {
  const Grid2D g(3);
  SUBCASE("zero in, zero out") {
    const Prediction p = predict_diagonal(Field(g), Field(g), 1e-3);
    CHECK(norm_max(p.state) == 0.0);
  }
  SUBCASE("random data against dense Euler step") {
    std::mt19937_64 rng(4);
    const Field v = testing::random_field(g, rng);
    const double tau = 0.9 * cfl_bound(v, g.h(), CflRule::quarter);
    const Prediction p = predict_diagonal(v, Field(g), tau);
    const Field ref = testing::field(g, dense_prediction(g, testing::vec(v), VectorXd::Zero(9), tau, Predictor::euler));
    CHECK(testing::max_abs_diff(p.state, ref) <= 1e-12);
    for (std::size_t m = 0; m < g.size(); ++m) CHECK(p.diagonal[m] == p.state[m]);
  }
}

TEST_CASE("prediction error against the implicit fixed point is second order") {
  const Grid2D g(8);
  const MatrixXd p = testing::dense_p(g), r = testing::dense_r(g);
  const VectorXd v = testing::vec(smooth_data(g));
  const VectorXd f0 = sampled_source(g, 0.0);
  auto error = [&](double tau, Predictor pred) {
    const VectorXd f1 = sampled_source(g, tau);
    // D_{k+1} = diag(v_{k+1}) solved by iteration: a contraction for these tau.
    VectorXd d = v;
    for (int it = 0; it < 200; ++it) {
      const VectorXd next = testing::split_stages(p, r, v, d, f0, f1, tau);
      const double change = (next - d).cwiseAbs().maxCoeff();
      d = next;
      if (change < 1e-15) break;
    }
    return (dense_prediction(g, v, f0, tau, pred) - d).cwiseAbs().maxCoeff();
  };
  for (Predictor pred : {Predictor::euler, Predictor::two_pass}) {
    const double ratio = error(1e-3, pred) / error(5e-4, pred);
    CAPTURE(static_cast<int>(pred));
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("zero state is a fixed point without a source") {
  const Grid2D g(7);
  SplittingStepper s(g, SourceTerm::zero());
  const auto res = s.step(Field(g), 0.0, 1e-3);
  CHECK(norm_max(res.state) == 0.0);
}

TEST_CASE("split step equals the stage equations solved densely") {
  std::mt19937_64 rng(99);
  for (Predictor pred : {Predictor::euler, Predictor::two_pass}) {
    for (std::size_t n : {3u, 5u, 8u}) {
      const Grid2D g(n);
      for (bool with_source : {false, true}) {
        StepOptions opts;
        opts.predictor = pred;
        opts.compute_residuals = true;
        SplittingStepper s(g, with_source ? manufactured_source_term() : SourceTerm::zero(), {}, opts);
        for (int trial = 0; trial < 5; ++trial) {
          const Field v = testing::random_field(g, rng);
          const double tau = 0.9 * s.cfl_bound(v);
          const auto res = s.step(v, 0.1, tau);
          const Field ref = testing::field(g, dense_step(g, testing::vec(v), 0.1, tau, with_source, pred));
          CHECK(testing::max_abs_diff(res.state, ref) <= 1e-12);
          for (double resid : res.report.stage_residuals) CHECK(resid <= 1e-11);
          CHECK(res.report.tau_used == tau);
        }
      }
    }
  }
}

TEST_CASE("splitting defect against the unsplit factored form is third order") {
  const Grid2D g(8);
  const MatrixXd p = testing::dense_p(g), r = testing::dense_r(g);
  const std::size_t n = g.size();
  const MatrixXd id = MatrixXd::Identity(n, n);
  const Field v = smooth_data(g);
  const VectorXd vv = testing::vec(v);
  StepOptions opts;
  opts.enforce_cfl = false;
  SplittingStepper stepper(g, manufactured_source_term(), {}, opts);
  auto defect = [&](double tau) {
    const double s = 0.5 * tau;
    const VectorXd f0 = sampled_source(g, 0.0), f1 = sampled_source(g, tau);
    const MatrixXd d0 = vv.asDiagonal();
    const MatrixXd d1 = dense_prediction(g, vv, f0, tau, Predictor::two_pass).asDiagonal();
    const MatrixXd lhs = (id - s * p) * (id - s * r) * (id - s * p * d1) * (id - s * r * d1);
    const VectorXd rhs = (id + s * p) * (id + s * r) * (id + s * p * d0) * (id + s * r * d0) * vv + s * (f0 + f1);
    const Field factored = testing::field(g, lhs.lu().solve(rhs));
    return testing::max_abs_diff(stepper.step(v, 0.0, tau).state, factored);
  };
  const double ratio = defect(1e-3) / defect(5e-4);
  CHECK(ratio >= 6.5);
  CHECK(ratio <= 9.5);
}

TEST_CASE("step rejects tau above the CFL bound") {
  const Grid2D g(9);
  std::mt19937_64 rng(2);
  const Field v = testing::random_field(g, rng, 0.0, 3.0);
  SplittingStepper s(g, SourceTerm::zero());
  const double bound = s.cfl_bound(v);
  CHECK_NOTHROW(s.step(v, 0.0, 0.99 * bound));
  CHECK_THROWS_AS(s.step(v, 0.0, 1.01 * bound), CflViolation);
  CHECK_THROWS_AS(s.step(v, 0.0, -1.0), ContractViolation);
}

TEST_CASE("accepted steps keep random nonnegative data nonnegative") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> size(2, 16);
  const SourceTerm positive = SourceTerm::from_xt([](double x, double y, double) { return 1.0 + x * y; });
  double lowest = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Grid2D g(size(rng));
    SplittingStepper s(g, trial % 2 ? positive : SourceTerm::zero());
    const Field v = testing::random_field(g, rng, 0.0, 2.0);
    StepController ctrl;
    const AdvanceResult out = advance(s, v, 0.0, 3.0 * s.cfl_bound(v), ctrl);
    lowest = std::min(lowest, min_value(out.state));
  }
  CHECK(lowest >= -1e-12);
}

TEST_CASE("advance from zero data stays at zero") {
  const Grid2D g(6);
  SplittingStepper s(g, SourceTerm::zero());
  const AdvanceResult out = advance(s, Field(g), 0.0, 0.01, StepController{});
  CHECK(norm_max(out.state) == 0.0);
  for (const TraceRow& row : out.trace.rows) {
    CHECK(row.max_v == 0.0);
    CHECK(row.energy == 0.0);
  }
  CHECK(out.trace.rows.back().t == 0.01);
}

TEST_CASE("adaptive steps respect safety times the CFL bound and land on t_end") {
  const Grid2D g(15);
  SplittingStepper s(g, manufactured_source_term());
  StepController ctrl;
  ctrl.safety = 0.5;
  const Field v0 = smooth_data(g);
  const AdvanceResult out = advance(s, v0, 0.0, 0.02, ctrl);
  for (const TraceRow& row : out.trace.rows)
    if (row.step > 0) CHECK(row.tau <= 0.5 * g.h() * g.h() / 4.0 * (1.0 + 1e-12));
  CHECK(out.trace.rows.back().t == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(out.trace.rejected_steps == 0);
}

TEST_CASE("step floor raises StepFloorReached") {
  const Grid2D g(5);
  const SourceTerm explosive([](const Field& v, double, Field& out) {
    for (std::size_t m = 0; m < v.size(); ++m) out[m] = 1e3 * v[m] * v[m] * v[m];
  });
  SplittingStepper s(g, explosive);
  StepController ctrl;
  ctrl.tau_min = 1e-6;
  const Field v0 = Field::sample(g, [](double, double) { return 50.0; });
  CHECK_THROWS_AS(advance(s, v0, 0.0, 1.0, ctrl), StepFloorReached);
}

TEST_CASE("manufactured problem: center value decays at -2 pi^2 on the fine mesh") {
  // h = 0.01, tau = 5e-5 to T = 1 at exactly the half-rule bound.
  const Grid2D g(99);
  StepOptions opts;
  opts.enforce_cfl = false;
  SplittingStepper s(g, manufactured_source_term(), {}, opts);
  std::vector<double> t, center;
  const std::size_t mid = g.index(50, 50);
  advance_fixed(s, smooth_data(g), 0.0, 1.0, 5e-5, 1000, [&](std::size_t k, double tk, const Field& v) {
    if (k % 100 == 0) {
      t.push_back(tk);
      center.push_back(v[mid]);
    }
  });
  const SlopeFit fit = fit_log_slope(t, center);
  CHECK(fit.slope == doctest::Approx(-19.7392).epsilon(5e-4));
  CHECK(std::abs(fit.slope / -kTwoPiSq - 1.0) < 5e-3);
}

TEST_CASE("manufactured order with the semi-discrete source") {
  StepOptions opts;
  opts.enforce_cfl = false;
  const ManufacturedStudy st = manufactured_study(15, 5e-4, 0.1, true, opts);
  CHECK(st.order.p == doctest::Approx(2.0).epsilon(0.02));
  CHECK(st.order.nodes_used == st.order.nodes_total);
  CHECK(st.max_error_fine < st.max_error_coarse);
}

TEST_CASE("energy problem: E decays at twice the solution rate") {
  StepOptions opts;
  opts.enforce_cfl = false;
  const EnergyStudy st = energy_study(49, 1e-4, 2.0, opts, 100);
  CHECK(st.monotone);
  CHECK(std::abs(st.energy_fit.slope - 2.0 * st.norm_fit.slope) <= 1e-6 * std::abs(st.energy_fit.slope));
  CHECK(std::abs(st.norm_fit.slope / -kTwoPiSq - 1.0) < 0.01);
  CHECK(st.norm_fit.slope == doctest::Approx(-19.7398).epsilon(0.01));
}

TEST_CASE("batched and strided layouts give identical runs") {
  const Grid2D g(12);
  std::mt19937_64 rng(6);
  const Field v0 = testing::random_field(g, rng);
  StepOptions a, b;
  a.layout = SweepLayout::batched;
  b.layout = SweepLayout::strided;
  SplittingStepper sa(g, manufactured_source_term(), {}, a), sb(g, manufactured_source_term(), {}, b);
  const AdvanceResult ra = advance(sa, v0, 0.0, 0.01, StepController{});
  const AdvanceResult rb = advance(sb, v0, 0.0, 0.01, StepController{});
  CHECK(testing::max_abs_diff(ra.state, rb.state) == 0.0);
}
