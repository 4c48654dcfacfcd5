#include "gln/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace gln {

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  const int n = a.order();
  if (b.order() != n) throw DimensionMismatch("multiply: orders differ");
  SquareMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

SquareMatrix transpose(const SquareMatrix& a) {
  const int n = a.order();
  SquareMatrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(j, i) = a(i, j);
  return t;
}

double max_abs(const SquareMatrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.order() != b.order()) throw DimensionMismatch("max_abs_diff: orders differ");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double max_asymmetry(const SquareMatrix& a) {
  const int n = a.order();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

}  // namespace gln
