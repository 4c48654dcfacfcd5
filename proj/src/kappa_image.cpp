#include "gln/kappa_image.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gln/decomp.hpp"
#include "gln/errors.hpp"
#include "gln/linalg.hpp"

namespace gln {

namespace {

// Solve M x = rhs for the leading m x m block of b by LU with partial
// pivoting. The block is invertible whenever the leading minors of b are
// positive, which callers have already established.
std::vector<double> solve_leading_block(const SquareMatrix& b, int m, std::vector<double> rhs) {
  std::vector<double> lu(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lu[static_cast<std::size_t>(i) * m + j] = b(i, j);

  std::vector<int> piv(static_cast<std::size_t>(m));
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    double best = std::abs(lu[static_cast<std::size_t>(col) * m + col]);
    for (int row = col + 1; row < m; ++row) {
      const double v = std::abs(lu[static_cast<std::size_t>(row) * m + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    piv[static_cast<std::size_t>(col)] = pivot;
    if (pivot != col) {
      for (int j = 0; j < m; ++j) {
        std::swap(lu[static_cast<std::size_t>(pivot) * m + j],
                  lu[static_cast<std::size_t>(col) * m + j]);
      }
      std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
    }
    const double d = lu[static_cast<std::size_t>(col) * m + col];
    for (int row = col + 1; row < m; ++row) {
      const double f = lu[static_cast<std::size_t>(row) * m + col] / d;
      lu[static_cast<std::size_t>(row) * m + col] = f;
      if (f == 0.0) continue;
      for (int j = col + 1; j < m; ++j) {
        lu[static_cast<std::size_t>(row) * m + j] -= f * lu[static_cast<std::size_t>(col) * m + j];
      }
      rhs[static_cast<std::size_t>(row)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  for (int row = m - 1; row >= 0; --row) {
    double acc = rhs[static_cast<std::size_t>(row)];
    for (int j = row + 1; j < m; ++j) {
      acc -= lu[static_cast<std::size_t>(row) * m + j] * rhs[static_cast<std::size_t>(j)];
    }
    rhs[static_cast<std::size_t>(row)] = acc / lu[static_cast<std::size_t>(row) * m + row];
  }
  return rhs;
}

void require_positive_leading_minors(const std::vector<double>& minors, double cutoff) {
  for (std::size_t i = 0; i < minors.size(); ++i) {
    if (!(minors[i] > cutoff)) {
      throw MinorNotPositive(static_cast<int>(i + 1),
                             "leading minor " + std::to_string(i + 1) + " is not positive");
    }
  }
}

}  // namespace

SquareMatrix symmetrize_right(const SquareMatrix& b, const ToleranceConfig& tol) {
  tol.validate();
  const int n = b.order();
  require_positive_leading_minors(minor_sequence(b, MinorDirection::Leading), tol.minor_tol);

  SquareMatrix c = SquareMatrix::identity(n);
  // Column j of C (entries above the unit diagonal) makes (BC)_{ij} = (BC)_{ji}
  // for i < j; the values (BC)_{ji} only involve columns of C already solved.
  for (int j = 1; j < n; ++j) {
    std::vector<double> rhs(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) {
      double bc_ji = 0.0;  // (BC)_{ji} over C's column i, rows 0..i
      for (int l = 0; l <= i; ++l) bc_ji += b(j, l) * c(l, i);
      rhs[static_cast<std::size_t>(i)] = bc_ji - b(i, j);
    }
    const std::vector<double> col = solve_leading_block(b, j, std::move(rhs));
    for (int i = 0; i < j; ++i) c(i, j) = col[static_cast<std::size_t>(i)];
  }
  return c;
}

MembershipReport membership(const SquareMatrix& b, const ToleranceConfig& tol) {
  tol.validate();
  if (!is_orthogonal(b, tol.ortho_tol)) {
    throw NotOrthogonal("membership: input is not orthogonal at the configured tolerance");
  }
  MembershipReport report;
  report.leading_minors = minor_sequence(b, MinorDirection::Leading);
  report.trailing_minors = minor_sequence(b, MinorDirection::Trailing);

  report.in_image = true;
  for (double m : report.leading_minors) {
    if (!(m > tol.minor_tol)) report.in_image = false;
  }
  report.boundary = false;
  for (double m : report.leading_minors) {
    if (std::abs(m) < tol.minor_tol) report.boundary = true;
  }
  for (double m : report.trailing_minors) {
    if (std::abs(m) < tol.minor_tol) report.boundary = true;
  }
  return report;
}

SquareMatrix preimage_in_p0(const SquareMatrix& b, const ToleranceConfig& tol) {
  return preimage_with_roundtrip(b, tol).p;
}

PreimageCheck preimage_with_roundtrip(const SquareMatrix& b, const ToleranceConfig& tol) {
  const int n = b.order();
  const MembershipReport report = membership(b, tol);
  if (!report.in_image) {
    for (std::size_t i = 0; i < report.leading_minors.size(); ++i) {
      if (!(report.leading_minors[i] > tol.minor_tol)) {
        throw MinorNotPositive(static_cast<int>(i + 1),
                               "preimage_in_p0: leading minor " + std::to_string(i + 1) +
                                   " is not positive");
      }
    }
  }

  // c is unit upper triangular with B^T c symmetric; p = c^{-1} B solved by
  // back substitution, one column of B at a time.
  const SquareMatrix c = symmetrize_right(transpose(b), tol);
  SquareMatrix p(n);
  for (int col = 0; col < n; ++col) {
    for (int row = n - 1; row >= 0; --row) {
      double acc = b(row, col);
      for (int j = row + 1; j < n; ++j) acc -= c(row, j) * p(j, col);
      p(row, col) = acc;
    }
  }

  const double scale = std::max(1.0, max_abs(p));
  if (max_asymmetry(p) > 1e-8 * scale) {
    throw VerificationFailure("preimage_in_p0: constructed matrix is not symmetric");
  }
  SquareMatrix p_sym(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p_sym(i, j) = 0.5 * (p(i, j) + p(j, i));
  const SymmetricEigen eig = jacobi_sym_eig(p_sym, tol);
  for (double lam : eig.lambda) {
    if (!(lam > 0.0)) {
      throw VerificationFailure("preimage_in_p0: constructed matrix is not positive definite");
    }
  }

  // p is invertible by construction (det p = det B, near +-1), but its
  // entries blow up near the boundary of the image and a relative determinant
  // gate would reject it. Drop the gate for this factorization; the roundtrip
  // comparison below is the real check.
  ToleranceConfig relaxed = tol;
  relaxed.minor_tol = std::numeric_limits<double>::min();
  const double roundtrip = max_abs_diff(kappa(p, relaxed), b);
  if (roundtrip > 1e-8) {
    throw VerificationFailure("preimage_in_p0: projection does not return the input");
  }
  return {std::move(p), roundtrip};
}

}  // namespace gln
