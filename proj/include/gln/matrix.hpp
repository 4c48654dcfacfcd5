#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gln/errors.hpp"

namespace gln {

/// Dense real square matrix, row-major. The universal carrier for group
/// elements throughout the library; order is a runtime value (small, n <= ~70
/// once exterior powers enter).
class SquareMatrix {
 public:
  SquareMatrix() = default;

  explicit SquareMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw DimensionMismatch("matrix order must be >= 1");
  }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(std::span<const double> d) {
    SquareMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    SquareMatrix m(static_cast<int>(rows.size()));
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m.n_) {
        throw DimensionMismatch("row length differs from matrix order");
      }
      int j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int order() const { return n_; }

  double& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  std::span<const double> entries() const { return e_; }
  std::span<double> entries() { return e_; }

  /// True iff every entry is finite (no NaN/Inf).
  bool all_finite() const {
    for (double v : e_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

 private:
  int n_ = 0;
  std::vector<double> e_;
};

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix transpose(const SquareMatrix& a);

/// Max-entry norm, max_{ij} |a_ij|.
double max_abs(const SquareMatrix& a);

/// Max-entry norm of a - b.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

/// Max-entry norm of a - a^T.
double max_asymmetry(const SquareMatrix& a);

}  // namespace gln
