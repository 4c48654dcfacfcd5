#include "gln/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gln/errors.hpp"

namespace gln {

namespace {

// In-place LU determinant with partial pivoting of an m x m buffer.
double lu_det(std::vector<double>& a, int m) {
  if (m == 0) return 1.0;
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * m + col]);
    for (int row = col + 1; row < m; ++row) {
      const double v = std::abs(a[static_cast<std::size_t>(row) * m + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < m; ++j) {
        std::swap(a[static_cast<std::size_t>(pivot) * m + j],
                  a[static_cast<std::size_t>(col) * m + j]);
      }
      det = -det;
    }
    const double d = a[static_cast<std::size_t>(col) * m + col];
    det *= d;
    for (int row = col + 1; row < m; ++row) {
      const double f = a[static_cast<std::size_t>(row) * m + col] / d;
      if (f == 0.0) continue;
      for (int j = col + 1; j < m; ++j) {
        a[static_cast<std::size_t>(row) * m + j] -= f * a[static_cast<std::size_t>(col) * m + j];
      }
    }
  }
  return det;
}

double dot_rows(const SquareMatrix& a, int i, const SquareMatrix& b, int j) {
  const int n = a.order();
  double s = 0.0;
  for (int c = 0; c < n; ++c) s += a(i, c) * b(j, c);
  return s;
}

}  // namespace

std::vector<double> minor_sequence(const SquareMatrix& b, MinorDirection direction) {
  const int n = b.order();
  std::vector<double> minors(static_cast<std::size_t>(n));
  std::vector<double> block;
  for (int r = 1; r <= n; ++r) {
    block.assign(static_cast<std::size_t>(r) * r, 0.0);
    const int off = direction == MinorDirection::Leading ? 0 : n - r;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) block[static_cast<std::size_t>(i) * r + j] = b(off + i, off + j);
    minors[static_cast<std::size_t>(r - 1)] = lu_det(block, r);
  }
  return minors;
}

double determinant(const SquareMatrix& b) {
  const int n = b.order();
  std::vector<double> block(b.entries().begin(), b.entries().end());
  return lu_det(block, n);
}

double submatrix_determinant(const SquareMatrix& a, std::span<const int> rows,
                             std::span<const int> cols) {
  if (rows.size() != cols.size()) {
    throw DimensionMismatch("submatrix_determinant: row/column counts differ");
  }
  const int m = static_cast<int>(rows.size());
  std::vector<double> block(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      block[static_cast<std::size_t>(i) * m + j] = a(rows[static_cast<std::size_t>(i)],
                                                     cols[static_cast<std::size_t>(j)]);
    }
  return lu_det(block, m);
}

bool is_orthogonal(const SquareMatrix& b, double tol) {
  const int n = b.order();
  // max-entry norm of B*B^T - I, formed row pair by row pair
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double g = dot_rows(b, i, b, j) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(g));
    }
  }
  return worst <= tol;
}

namespace {

// One bottom-up modified Gram-Schmidt pass over the rows of g.
TriangularOrthogonalFactors mgs_pass(const SquareMatrix& g, double breakdown_tol) {
  const int n = g.order();
  SquareMatrix k = g;
  SquareMatrix b(n);
  for (int i = n - 1; i >= 0; --i) {
    // subtract projections onto the already-orthonormalized rows below
    for (int j = n - 1; j > i; --j) {
      const double coef = dot_rows(k, i, k, j);
      b(i, j) = coef;
      for (int c = 0; c < n; ++c) k(i, c) -= coef * k(j, c);
    }
    const double norm = std::sqrt(dot_rows(k, i, k, i));
    if (norm < breakdown_tol) {
      throw NumericalBreakdown("gram_schmidt_rows_bottom_up: residual row collapsed");
    }
    b(i, i) = norm;
    for (int c = 0; c < n; ++c) k(i, c) /= norm;
  }
  return {std::move(b), std::move(k)};
}

}  // namespace

TriangularOrthogonalFactors gram_schmidt_rows_bottom_up(const SquareMatrix& g,
                                                        const ToleranceConfig& tol) {
  tol.validate();
  const int n = g.order();

  // scale-invariant invertibility test: the Hadamard ratio |det| / prod of
  // row norms is always in [0, 1] and vanishes exactly on singular matrices
  double row_norm_product = 1.0;
  for (int i = 0; i < n; ++i) row_norm_product *= std::sqrt(dot_rows(g, i, g, i));
  if (!(std::abs(determinant(g)) > tol.minor_tol * row_norm_product)) {
    throw SingularInput("gram_schmidt_rows_bottom_up: matrix is singular at the working tolerance");
  }

  // A second pass over the computed orthogonal factor keeps the orthogonality
  // defect at machine level even for ill-conditioned g; the correction folds
  // exactly into the triangular factor since g = b1 (b2 k2) = (b1 b2) k2.
  TriangularOrthogonalFactors first = mgs_pass(g, tol.minor_tol);
  TriangularOrthogonalFactors second = mgs_pass(first.k, tol.minor_tol);

  SquareMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = i; l <= j; ++l) acc += first.b(i, l) * second.b(l, j);
      b(i, j) = acc;
    }
  return {std::move(b), std::move(second.k)};
}

SymmetricEigen jacobi_sym_eig(const SquareMatrix& s, const ToleranceConfig& tol) {
  tol.validate();
  const int n = s.order();

  const double scale = max_abs(s);
  if (max_asymmetry(s) > tol.ortho_tol * scale) {
    throw NotSymmetric("jacobi_sym_eig: input asymmetry exceeds tolerance");
  }

  SquareMatrix w(n);
  double frob = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w(i, j) = 0.5 * (s(i, j) + s(j, i));
      frob += w(i, j) * w(i, j);
    }
  frob = std::sqrt(frob);
  const double target = tol.eig_tol * frob;

  SquareMatrix q = SquareMatrix::identity(n);
  auto off_norm = [&w, n]() {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) acc += w(i, j) * w(i, j);
    return std::sqrt(acc);
  };

  for (int sweep = 0; sweep < tol.max_sweeps; ++sweep) {
    if (off_norm() <= target) {
      SymmetricEigen out{std::move(q), std::vector<double>(static_cast<std::size_t>(n))};
      for (int i = 0; i < n; ++i) out.lambda[static_cast<std::size_t>(i)] = w(i, i);
      return out;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double wpr = w(p, r);
        if (wpr == 0.0) continue;
        const double theta = (w(r, r) - w(p, p)) / (2.0 * wpr);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;

        // W <- J^T W J with the rotation in the (p, r) plane
        for (int j = 0; j < n; ++j) {
          const double wpj = w(p, j);
          const double wrj = w(r, j);
          w(p, j) = c * wpj - sn * wrj;
          w(r, j) = sn * wpj + c * wrj;
        }
        for (int i = 0; i < n; ++i) {
          const double wip = w(i, p);
          const double wir = w(i, r);
          w(i, p) = c * wip - sn * wir;
          w(i, r) = sn * wip + c * wir;
        }
        for (int i = 0; i < n; ++i) {
          const double qip = q(i, p);
          const double qir = q(i, r);
          q(i, p) = c * qip - sn * qir;
          q(i, r) = sn * qip + c * qir;
        }
      }
    }
  }

  if (off_norm() <= target) {
    SymmetricEigen out{std::move(q), std::vector<double>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) out.lambda[static_cast<std::size_t>(i)] = w(i, i);
    return out;
  }
  throw NoConvergence("jacobi_sym_eig: sweep budget exhausted");
}

}  // namespace gln
