#include "nlsplit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlsplit/errors.hpp"

namespace nlsplit {

namespace {

void require_conforming(const Grid2D& grid, std::size_t got, const char* what) {
  if (got != grid.size()) {
    std::ostringstream os;
    os << what << ": expected " << grid.size() << " values, got " << got;
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

Grid2D::Grid2D(std::size_t n_interior) : n_(n_interior) {
  if (n_interior == 0) throw ContractViolation("Grid2D: n_interior must be positive");
  h_ = 1.0 / static_cast<double>(n_interior + 1);
}

Field::Field(const Grid2D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(const Grid2D& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  require_conforming(grid_, values_.size(), "Field");
}

Field Field::sample(const Grid2D& grid, const std::function<double(double, double)>& fn) {
  Field f(grid);
  const std::size_t n = grid.n();
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 1; i <= n; ++i) f.at(i, j) = fn(grid.x(i), grid.y(j));
  return f;
}

void Field::require_nonnegative(double tolerance) const {
  double lo = std::numeric_limits<double>::infinity();
  bool finite = true;
  for (double x : values_) {
    if (!std::isfinite(x)) finite = false;
    lo = std::min(lo, x);
  }
  if (!finite) throw PositivityLoss(lo, "field has non-finite entries");
  if (lo < -tolerance) {
    std::ostringstream os;
    os << "field has negative entry " << lo;
    throw PositivityLoss(lo, os.str());
  }
}

void laplacian_into(const Grid2D& grid, Axis axis, std::span<const double> v, std::span<double> out) {
  require_conforming(grid, v.size(), "laplacian");
  require_conforming(grid, out.size(), "laplacian output");
  const std::size_t n = grid.n();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);

  if (axis == Axis::x) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < sn; ++j) {
      const double* row = v.data() + j * sn;
      double* o = out.data() + j * sn;
      for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? row[i - 1] : 0.0;
        const double right = i + 1 < n ? row[i + 1] : 0.0;
        o[i] = (left - 2.0 * row[i] + right) * inv_h2;
      }
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < sn; ++j) {
      const double* mid = v.data() + j * sn;
      const double* below = j > 0 ? mid - sn : nullptr;
      const double* above = j + 1 < sn ? mid + sn : nullptr;
      double* o = out.data() + j * sn;
      for (std::size_t i = 0; i < n; ++i) {
        const double b = below ? below[i] : 0.0;
        const double a = above ? above[i] : 0.0;
        o[i] = (b - 2.0 * mid[i] + a) * inv_h2;
      }
    }
  }
}

void scaled_laplacian_into(const Grid2D& grid, Axis axis, std::span<const double> d,
                           std::span<const double> v, std::span<double> out) {
  require_conforming(grid, d.size(), "scaled laplacian diagonal");
  require_conforming(grid, v.size(), "scaled laplacian");
  std::vector<double> dv(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) dv[m] = d[m] * v[m];
  laplacian_into(grid, axis, dv, out);
}

Field apply_laplacian(const Field& v, Axis axis) {
  Field out(v.grid());
  laplacian_into(v.grid(), axis, v.values(), out.values());
  return out;
}

Field apply_pd(const Field& v, const DiagonalField& d, Axis axis) {
  if (!(d.grid() == v.grid())) throw DimensionMismatch("apply_pd: diagonal and field grids differ");
  Field out(v.grid());
  scaled_laplacian_into(v.grid(), axis, d.diag(), v.values(), out.values());
  return out;
}

Field transpose(const Field& v) {
  Field out(v.grid());
  const std::size_t n = v.grid().n();
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 1; i <= n; ++i) out.at(j, i) = v.at(i, j);
  return out;
}

double norm_l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_max(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_value(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return *std::max_element(v.begin(), v.end());
}

double min_value(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return *std::min_element(v.begin(), v.end());
}

double discrete_energy(const Field& v) {
  const double h = v.grid().h();
  double s = 0.0;
  for (double x : v.values()) s += x * x;
  return h * h * s;
}

}  // namespace nlsplit
