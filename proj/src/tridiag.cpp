#include "nlsplit/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlsplit/errors.hpp"

#ifdef NLSPLIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlsplit {

namespace {

constexpr double kPivotTolerance = 1e-14;

[[noreturn]] void throw_singular(std::size_t line, double pivot, double scale) {
  std::ostringstream os;
  os << "singular stage system on line " << line << ": pivot " << pivot << " vs max|main| " << scale;
  throw SingularStageError(line, os.str());
}

bool pivot_ok(double min_pivot, double max_main) {
  return std::isfinite(min_pivot) && min_pivot >= kPivotTolerance * max_main;
}

// Row coefficients (a: sub, b: main, c: super) of line `line` at position k.
struct ConstantCoeffs {
  double s;
  std::size_t n;
  void operator()(std::size_t, std::size_t k, double& a, double& b, double& c) const {
    a = k > 0 ? -s : 0.0;
    b = 1.0 + 2.0 * s;
    c = k + 1 < n ? -s : 0.0;
  }
};

struct ScaledCoeffs {
  double s;
  std::size_t n;
  Axis axis;
  const double* d;
  double at(std::size_t line, std::size_t k) const { return axis == Axis::x ? d[line * n + k] : d[k * n + line]; }
  void operator()(std::size_t line, std::size_t k, double& a, double& b, double& c) const {
    a = k > 0 ? -s * at(line, k - 1) : 0.0;
    b = 1.0 + 2.0 * s * at(line, k);
    c = k + 1 < n ? -s * at(line, k + 1) : 0.0;
  }
};

struct PivotStats {
  double min_pivot;
  double max_main;
};

// Scalar Thomas on a contiguous line. The caller checks the pivot stats; no
// throwing here because this runs inside parallel regions.
template <class Coeffs>
PivotStats thomas_line(const Coeffs& coeffs, std::size_t line, std::size_t n, double* x, double* cp) {
  double a, b, c;
  coeffs(line, 0, a, b, c);
  double min_pivot = std::abs(b);
  double max_main = std::abs(b);
  cp[0] = c / b;
  x[0] = x[0] / b;
  for (std::size_t k = 1; k < n; ++k) {
    coeffs(line, k, a, b, c);
    const double m = b - a * cp[k - 1];
    min_pivot = std::min(min_pivot, std::abs(m));
    max_main = std::max(max_main, std::abs(b));
    cp[k] = c / m;
    x[k] = (x[k] - a * x[k - 1]) / m;
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] = x[k] - cp[k] * x[k + 1];
  return {min_pivot, max_main};
}

}  // namespace

TridiagonalSystem TridiagonalSystem::identity(std::size_t n) {
  TridiagonalSystem sys;
  sys.main.assign(n, 1.0);
  sys.lower.assign(n > 0 ? n - 1 : 0, 0.0);
  sys.upper.assign(n > 0 ? n - 1 : 0, 0.0);
  return sys;
}

std::vector<double> TridiagonalSystem::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw DimensionMismatch("TridiagonalSystem::multiply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = main[k] * x[k];
    if (k > 0) s += lower[k - 1] * x[k - 1];
    if (k + 1 < n) s += upper[k] * x[k + 1];
    y[k] = s;
  }
  return y;
}

bool TridiagonalSystem::diagonally_dominant() const {
  const std::size_t n = size();
  auto check = [&](auto off_sum) {
    bool strict = false;
    for (std::size_t k = 0; k < n; ++k) {
      const double off = off_sum(k);
      if (std::abs(main[k]) < off) return false;
      if (std::abs(main[k]) > off) strict = true;
    }
    return strict;
  };
  const bool rows = check([&](std::size_t k) {
    return (k > 0 ? std::abs(lower[k - 1]) : 0.0) + (k + 1 < n ? std::abs(upper[k]) : 0.0);
  });
  if (rows) return true;
  return check([&](std::size_t k) {
    return (k > 0 ? std::abs(upper[k - 1]) : 0.0) + (k + 1 < n ? std::abs(lower[k]) : 0.0);
  });
}

std::vector<double> solve(const TridiagonalSystem& sys, std::span<const double> rhs, std::size_t line) {
  const std::size_t n = sys.size();
  if (n == 0 || rhs.size() != n || sys.lower.size() + 1 != n || sys.upper.size() + 1 != n)
    throw DimensionMismatch("tridiagonal solve: inconsistent sizes");
  std::vector<double> x(rhs.begin(), rhs.end());
  std::vector<double> cp(n);
  auto coeffs = [&](std::size_t, std::size_t k, double& a, double& b, double& c) {
    a = k > 0 ? sys.lower[k - 1] : 0.0;
    b = sys.main[k];
    c = k + 1 < n ? sys.upper[k] : 0.0;
  };
  const PivotStats st = thomas_line(coeffs, line, n, x.data(), cp.data());
  if (!pivot_ok(st.min_pivot, st.max_main)) throw_singular(line, st.min_pivot, st.max_main);
  return x;
}

TridiagonalSystem build_constant_stage(double alpha, const Grid2D& grid, Axis) {
  if (alpha < 0.0) throw DomainError("build_constant_stage: alpha must be nonnegative");
  const std::size_t n = grid.n();
  const double s = alpha / (grid.h() * grid.h());
  TridiagonalSystem sys;
  sys.main.assign(n, 1.0 + 2.0 * s);
  sys.lower.assign(n - 1, -s);
  sys.upper.assign(n - 1, -s);
  return sys;
}

TridiagonalSystem build_scaled_stage(double alpha, std::span<const double> dline, const Grid2D& grid, Axis) {
  const std::size_t n = grid.n();
  if (dline.size() != n) throw DimensionMismatch("build_scaled_stage: line length must equal N");
  const double s = alpha / (grid.h() * grid.h());
  TridiagonalSystem sys;
  sys.main.resize(n);
  sys.lower.resize(n - 1);
  sys.upper.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    sys.main[k] = 1.0 + 2.0 * s * dline[k];
    if (k > 0) sys.lower[k - 1] = -s * dline[k - 1];
    if (k + 1 < n) sys.upper[k] = -s * dline[k + 1];
  }
  return sys;
}

LineSolver::LineSolver(const Grid2D& grid, SweepLayout layout)
    : grid_(grid),
      layout_(layout),
      cprime_(grid.size()),
      column_(layout == SweepLayout::strided ? grid.size() : 0),
      min_pivot_(grid.n()),
      max_main_(grid.n()) {}

template <class Coeffs>
void LineSolver::sweep_x(const Coeffs& coeffs, std::span<double> inout) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid_.n());
  double* data = inout.data();
  double* cp = cprime_.data();
  double* min_pivot = min_pivot_.data();
  double* max_main = max_main_.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t line = 0; line < n; ++line) {
    const PivotStats st = thomas_line(coeffs, static_cast<std::size_t>(line), static_cast<std::size_t>(n),
                                      data + line * n, cp + line * n);
    min_pivot[line] = st.min_pivot;
    max_main[line] = st.max_main;
  }
  check_pivots();
}

template <class Coeffs>
void LineSolver::sweep_y_strided(const Coeffs& coeffs, std::span<double> inout) {
  const std::size_t n = grid_.n();
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  double* data = inout.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t line = 0; line < sn; ++line) {
    double* col = column_.data() + line * sn;
    double* cp = cprime_.data() + line * sn;
    for (std::size_t k = 0; k < n; ++k) col[k] = data[k * n + static_cast<std::size_t>(line)];
    const PivotStats st = thomas_line(coeffs, static_cast<std::size_t>(line), n, col, cp);
    min_pivot_[static_cast<std::size_t>(line)] = st.min_pivot;
    max_main_[static_cast<std::size_t>(line)] = st.max_main;
    for (std::size_t k = 0; k < n; ++k) data[k * n + static_cast<std::size_t>(line)] = col[k];
  }
  check_pivots();
}

// Same arithmetic as thomas_line, with the loop over lines innermost.
template <class Coeffs>
void LineSolver::sweep_y_batched(const Coeffs& coeffs, std::span<double> inout) {
  const std::size_t n = grid_.n();
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  double* x = inout.data();
  double* cp = cprime_.data();
  double* min_pivot = min_pivot_.data();
  double* max_main = max_main_.data();

  // Lines are split into contiguous chunks; each chunk walks all rows.
#pragma omp parallel
  {
    std::ptrdiff_t lo = 0, hi = sn;
#ifdef NLSPLIT_HAVE_OPENMP
    const std::ptrdiff_t nt = omp_get_num_threads();
    const std::ptrdiff_t tid = omp_get_thread_num();
    lo = sn * tid / nt;
    hi = sn * (tid + 1) / nt;
#endif
    double a, b, c;
    for (std::ptrdiff_t line = lo; line < hi; ++line) {
      coeffs(static_cast<std::size_t>(line), 0, a, b, c);
      min_pivot[line] = std::abs(b);
      max_main[line] = std::abs(b);
      cp[line] = c / b;
      x[line] = x[line] / b;
    }
    for (std::size_t k = 1; k < n; ++k) {
      double* xk = x + k * n;
      const double* xprev = xk - n;
      double* cpk = cp + k * n;
      const double* cpprev = cpk - n;
      for (std::ptrdiff_t line = lo; line < hi; ++line) {
        coeffs(static_cast<std::size_t>(line), k, a, b, c);
        const double m = b - a * cpprev[line];
        min_pivot[line] = std::min(min_pivot[line], std::abs(m));
        max_main[line] = std::max(max_main[line], std::abs(b));
        cpk[line] = c / m;
        xk[line] = (xk[line] - a * xprev[line]) / m;
      }
    }
  }
  check_pivots();
#pragma omp parallel
  {
    std::ptrdiff_t lo = 0, hi = sn;
#ifdef NLSPLIT_HAVE_OPENMP
    const std::ptrdiff_t nt = omp_get_num_threads();
    const std::ptrdiff_t tid = omp_get_thread_num();
    lo = sn * tid / nt;
    hi = sn * (tid + 1) / nt;
#endif
    for (std::size_t k = n - 1; k-- > 0;) {
      double* xk = x + k * n;
      const double* xnext = xk + n;
      const double* cpk = cp + k * n;
      for (std::ptrdiff_t line = lo; line < hi; ++line) xk[line] = xk[line] - cpk[line] * xnext[line];
    }
  }
}

void LineSolver::check_pivots() const {
  for (std::size_t line = 0; line < grid_.n(); ++line)
    if (!pivot_ok(min_pivot_[line], max_main_[line])) throw_singular(line, min_pivot_[line], max_main_[line]);
}

void LineSolver::solve_constant(Axis axis, double alpha, std::span<double> inout) {
  if (inout.size() != grid_.size()) throw DimensionMismatch("LineSolver: field size mismatch");
  const ConstantCoeffs coeffs{alpha / (grid_.h() * grid_.h()), grid_.n()};
  if (axis == Axis::x)
    sweep_x(coeffs, inout);
  else if (layout_ == SweepLayout::batched)
    sweep_y_batched(coeffs, inout);
  else
    sweep_y_strided(coeffs, inout);
}

void LineSolver::solve_scaled(Axis axis, double alpha, std::span<const double> d, std::span<double> inout) {
  if (inout.size() != grid_.size() || d.size() != grid_.size())
    throw DimensionMismatch("LineSolver: field size mismatch");
  const ScaledCoeffs coeffs{alpha / (grid_.h() * grid_.h()), grid_.n(), axis, d.data()};
  if (axis == Axis::x)
    sweep_x(coeffs, inout);
  else if (layout_ == SweepLayout::batched)
    sweep_y_batched(coeffs, inout);
  else
    sweep_y_strided(coeffs, inout);
}

}  // namespace nlsplit
