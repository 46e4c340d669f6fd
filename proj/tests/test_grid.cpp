#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlsplit/grid.hpp"
#include "support.hpp"

using namespace nlsplit;
using testing::max_abs_diff;

namespace {

double lambda(std::size_t j, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n + 1);
  const double s = std::sin(std::numbers::pi * static_cast<double>(j) / (2.0 * static_cast<double>(n + 1)));
  return -4.0 / (h * h) * s * s;
}

}  // namespace

TEST_CASE("grid spacing and x-fastest indexing") {
  const Grid2D g(3);
  CHECK(g.h() == doctest::Approx(0.25));
  CHECK(g.size() == 9);
  CHECK(g.index(1, 1) == 0);
  CHECK(g.index(3, 1) == 2);
  CHECK(g.index(1, 2) == 3);
  CHECK(g.index(3, 3) == 8);
}

TEST_CASE("laplacians of the zero field vanish") {
  const Grid2D g(5);
  const Field z(g);
  CHECK(norm_max(apply_laplacian_x(z)) == 0.0);
  CHECK(norm_max(apply_laplacian_y(z)) == 0.0);
}

TEST_CASE("lowest sine mode is an eigenvector along x and along y") {
  const Grid2D g(3);
  const double l1 = lambda(1, 3);
  CHECK(l1 == doctest::Approx(-9.372583).epsilon(1e-6));
  const Field vx = Field::sample(g, [](double x, double) { return std::sin(std::numbers::pi * x); });
  const Field vy = Field::sample(g, [](double, double y) { return std::sin(std::numbers::pi * y); });
  const Field px = apply_laplacian_x(vx);
  const Field ry = apply_laplacian_y(vy);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(px[m] == doctest::Approx(l1 * vx[m]).epsilon(1e-12));
    CHECK(ry[m] == doctest::Approx(l1 * vy[m]).epsilon(1e-12));
  }
  // The dense product agrees as well.
  const testing::VectorXd dense = testing::dense_p(g) * testing::vec(vx);
  for (std::size_t m = 0; m < g.size(); ++m) CHECK(px[m] == doctest::Approx(dense[m]).epsilon(1e-12));
}

TEST_CASE("unit vector at the corner node") {
  const Grid2D g(3);
  Field e(g);
  e[0] = 1.0;
  const Field out = apply_laplacian_x(e);
  CHECK(out[0] == doctest::Approx(-32.0));
  CHECK(out[1] == doctest::Approx(16.0));
  for (std::size_t m = 2; m < 9; ++m) CHECK(out[m] == 0.0);
}

TEST_CASE("matrix-free laplacians match dense Kronecker assembly") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 9; ++n) {
    const Grid2D g(n);
    const Field v = testing::random_field(g, rng, -1.0, 1.0);
    const Field px = testing::field(g, testing::dense_p(g) * testing::vec(v));
    const Field ry = testing::field(g, testing::dense_r(g) * testing::vec(v));
    const double scale = 4.0 / (g.h() * g.h());
    CHECK(max_abs_diff(apply_laplacian_x(v), px) <= 1e-13 * scale);
    CHECK(max_abs_diff(apply_laplacian_y(v), ry) <= 1e-13 * scale);
  }
}

TEST_CASE("y laplacian is the transpose-conjugated x laplacian") {
  std::mt19937_64 rng(3);
  const Grid2D g(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Field v = testing::random_field(g, rng, -1.0, 1.0);
    CHECK(max_abs_diff(apply_laplacian_y(v), transpose(apply_laplacian_x(transpose(v)))) == 0.0);
  }
}

TEST_CASE("scaled laplacian P D(d) v") {
  std::mt19937_64 rng(5);
  const Grid2D g(3);
  const Field v = testing::random_field(g, rng);

  SUBCASE("d = 0 annihilates") {
    CHECK(norm_max(apply_pd(v, DiagonalField(Field(g)))) == 0.0);
  }
  SUBCASE("d = 1 reduces to the plain laplacian") {
    Field ones(g);
    for (std::size_t m = 0; m < g.size(); ++m) ones[m] = 1.0;
    CHECK(max_abs_diff(apply_pd(v, DiagonalField(ones)), apply_laplacian_x(v)) == 0.0);
    CHECK(max_abs_diff(apply_pd(v, DiagonalField(ones), Axis::y), apply_laplacian_y(v)) == 0.0);
  }
  SUBCASE("random d matches dense product") {
    const Field d = testing::random_field(g, rng);
    const testing::VectorXd dv = testing::vec(d);
    const auto dd = dv.asDiagonal();
    const Field px = testing::field(g, testing::dense_p(g) * (dd * testing::vec(v)));
    const Field ry = testing::field(g, testing::dense_r(g) * (dd * testing::vec(v)));
    CHECK(max_abs_diff(apply_pd(v, DiagonalField(d)), px) <= 1e-12);
    CHECK(max_abs_diff(apply_pd(v, DiagonalField(d), Axis::y), ry) <= 1e-12);
  }
}

TEST_CASE("vector norms") {
  const Grid2D g(3);
  Field v(g);
  CHECK(norm_l2(v) == 0.0);
  CHECK(norm_max(v) == 0.0);
  CHECK(max_value(v) == 0.0);
  v[0] = 3.0;
  v[1] = 4.0;
  CHECK(norm_l2(v) == doctest::Approx(5.0));
  Field w(g);
  w[0] = -2.0;
  w[1] = 1.0;
  CHECK(norm_max(w) == 2.0);
  CHECK(max_value(w) == 1.0);
  CHECK(min_value(w) == -2.0);
}

TEST_CASE("spectral bound 4/h^2 on random vectors") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {4u, 8u, 16u}) {
    const Grid2D g(n);
    const double bound = 4.0 / (g.h() * g.h());
    for (int trial = 0; trial < 20; ++trial) {
      const Field v = testing::random_field(g, rng, -1.0, 1.0);
      CHECK(norm_l2(apply_laplacian_x(v)) <= bound * norm_l2(v));
      CHECK(norm_l2(apply_laplacian_y(v)) <= bound * norm_l2(v));
    }
    // The top sine mode reaches |lambda_N|, which tends to the bound.
    const Field top = Field::sample(
        g, [&](double x, double) { return std::sin(std::numbers::pi * static_cast<double>(n) * x); });
    CHECK(norm_l2(apply_laplacian_x(top)) / norm_l2(top) == doctest::Approx(-lambda(n, n)).epsilon(1e-10));
  }
}

TEST_CASE("discrete energy") {
  const Grid2D g(99);
  CHECK(discrete_energy(Field(g)) == 0.0);
  const Field s = Field::sample(
      g, [](double x, double y) { return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y); });
  CHECK(std::abs(discrete_energy(s) - 0.25) < 1e-3);
  Field s2 = s;
  for (std::size_t m = 0; m < s2.size(); ++m) s2[m] *= 2.0;
  CHECK(discrete_energy(s2) == doctest::Approx(4.0 * discrete_energy(s)).epsilon(1e-14));
}

TEST_CASE("nonnegativity check") {
  const Grid2D g(3);
  Field v(g);
  v[4] = -1e-13;
  CHECK_NOTHROW(v.require_nonnegative(1e-12));
  v[4] = -1e-6;
  CHECK_THROWS(v.require_nonnegative(1e-12));
  v[4] = std::nan("");
  CHECK_THROWS(v.require_nonnegative(1e-12));
}
