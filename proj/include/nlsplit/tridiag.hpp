#pragma once

// Tridiagonal line systems for the splitting stages and their batched
// Thomas solves.
//
// Every stage matrix of the scheme is block diagonal in a suitable ordering:
// I - alpha*P and I - alpha*P*D(d) decouple into N independent x-lines,
// I - alpha*R and I - alpha*R*D(d) into N independent y-lines.

#include <cstddef>
#include <span>
#include <vector>

#include "nlsplit/grid.hpp"

namespace nlsplit {

// lower[k] = A(k+1, k), main[k] = A(k, k), upper[k] = A(k, k+1).
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> main;
  std::vector<double> upper;

  std::size_t size() const noexcept { return main.size(); }
  static TridiagonalSystem identity(std::size_t n);

  std::vector<double> multiply(std::span<const double> x) const;

  // Weak diagonal dominance by rows or by columns, strict in at least one
  // row (column). Constant stages are row dominant; scaled stages
  // I - alpha*T*D(d) with d >= 0 are column dominant.
  bool diagonally_dominant() const;
};

// Thomas elimination without pivoting. `line` is only used in the error.
// Throws SingularStageError when |pivot| < 1e-14 * max|main|.
std::vector<double> solve(const TridiagonalSystem& sys, std::span<const double> rhs,
                          std::size_t line = 0);

// I - alpha*T along one axis: main 1 + 2*alpha/h^2, off-diagonals -alpha/h^2.
TridiagonalSystem build_constant_stage(double alpha, const Grid2D& grid, Axis direction);

// One line of I - alpha*T*D(d): main 1 + 2*alpha*d_k/h^2, lower entry of
// row k is -alpha*d_{k-1}/h^2, upper entry of row k is -alpha*d_{k+1}/h^2.
TridiagonalSystem build_scaled_stage(double alpha, std::span<const double> dline, const Grid2D& grid,
                                     Axis direction);

// y-lines are stride-N in memory. `strided` gathers each column into a
// buffer; `batched` eliminates all columns at once walking rows, which keeps
// the inner loop contiguous. Both produce bit-identical results.
enum class SweepLayout { strided, batched };

class LineSolver {
 public:
  explicit LineSolver(const Grid2D& grid, SweepLayout layout = SweepLayout::batched);

  const Grid2D& grid() const noexcept { return grid_; }
  SweepLayout layout() const noexcept { return layout_; }

  // Overwrites `inout` with the solution of (I - alpha*T_axis) x = inout.
  void solve_constant(Axis axis, double alpha, std::span<double> inout);

  // Overwrites `inout` with the solution of (I - alpha*T_axis*D(d)) x = inout.
  void solve_scaled(Axis axis, double alpha, std::span<const double> d, std::span<double> inout);

 private:
  template <class Coeffs>
  void sweep_x(const Coeffs& coeffs, std::span<double> inout);
  template <class Coeffs>
  void sweep_y_strided(const Coeffs& coeffs, std::span<double> inout);
  template <class Coeffs>
  void sweep_y_batched(const Coeffs& coeffs, std::span<double> inout);
  void check_pivots() const;

  Grid2D grid_;
  SweepLayout layout_;
  std::vector<double> cprime_;    // N*N modified upper diagonals
  std::vector<double> column_;    // N*N gather buffers for the strided layout
  std::vector<double> min_pivot_;
  std::vector<double> max_main_;
};

}  // namespace nlsplit
