#pragma once

// Uniform mesh on the unit square, grid functions, and matrix-free
// application of the Kronecker-structured difference operators
//
//   P = I_N (x) T     (second difference along x, contiguous lines)
//   R = T (x) I_N     (second difference along y, stride-N lines)
//
// where T = tridiag(1, -2, 1)/h^2 with homogeneous Dirichlet ghosts.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlsplit {

enum class Axis { x, y };

class Grid2D {
 public:
  explicit Grid2D(std::size_t n_interior);

  std::size_t n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return n_ * n_; }

  // Node coordinates for i in [0, N+1]; 0 and N+1 are boundary nodes.
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }
  double y(std::size_t j) const noexcept { return static_cast<double>(j) * h_; }

  // Lexicographic index of interior node (i, j), both 1-based, x fastest.
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return (j - 1) * n_ + (i - 1);
  }

  friend bool operator==(const Grid2D& a, const Grid2D& b) noexcept { return a.n_ == b.n_; }

 private:
  std::size_t n_;
  double h_;
};

class Field {
 public:
  explicit Field(const Grid2D& grid);
  Field(const Grid2D& grid, std::vector<double> values);

  // Samples fn(x, y) at every interior node.
  static Field sample(const Grid2D& grid, const std::function<double(double, double)>& fn);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  double& operator[](std::size_t m) noexcept { return values_[m]; }
  double operator[](std::size_t m) const noexcept { return values_[m]; }

  // 1-based interior access.
  double& at(std::size_t i, std::size_t j) noexcept { return values_[grid_.index(i, j)]; }
  double at(std::size_t i, std::size_t j) const noexcept { return values_[grid_.index(i, j)]; }

  // Throws PositivityLoss if any entry is below -tolerance or not finite.
  void require_nonnegative(double tolerance = 0.0) const;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

// D(v) = diag(v), kept as the vector of diagonal entries.
class DiagonalField {
 public:
  explicit DiagonalField(const Field& v) : grid_(v.grid()), diag_(v.vector()) {}

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<const double> diag() const noexcept { return diag_; }
  double operator[](std::size_t m) const noexcept { return diag_[m]; }

 private:
  Grid2D grid_;
  std::vector<double> diag_;
};

// Raw-span kernels used by the steppers. `out` must not alias `v`.
void laplacian_into(const Grid2D& grid, Axis axis, std::span<const double> v, std::span<double> out);
// out = T_axis (d .* v)
void scaled_laplacian_into(const Grid2D& grid, Axis axis, std::span<const double> d,
                           std::span<const double> v, std::span<double> out);

Field apply_laplacian(const Field& v, Axis axis);
inline Field apply_laplacian_x(const Field& v) { return apply_laplacian(v, Axis::x); }
inline Field apply_laplacian_y(const Field& v) { return apply_laplacian(v, Axis::y); }

// P D(d) v (axis x) or R D(d) v (axis y), applied to the scaled vector.
Field apply_pd(const Field& v, const DiagonalField& d, Axis axis = Axis::x);

// Physical transpose (i, j) -> (j, i).
Field transpose(const Field& v);

double norm_l2(std::span<const double> v);
double norm_max(std::span<const double> v);
double max_value(std::span<const double> v);
double min_value(std::span<const double> v);
inline double norm_l2(const Field& v) { return norm_l2(v.values()); }
inline double norm_max(const Field& v) { return norm_max(v.values()); }
inline double max_value(const Field& v) { return max_value(v.values()); }
inline double min_value(const Field& v) { return min_value(v.values()); }

// E = h^2 * sum v_m^2, the Riemann-sum approximation of the integral of u^2.
double discrete_energy(const Field& v);

}  // namespace nlsplit
