#pragma once

#include <vector>

#include "gln/matrix.hpp"
#include "gln/tolerances.hpp"

namespace gln {

enum class MinorDirection { Leading, Trailing };

/// Determinant of the r x r top-left (Leading) or bottom-right (Trailing)
/// block of B, for r = 1..n. Each block determinant is an independent LU with
/// partial pivoting; blocks here never exceed order ~8 so nothing is reused.
std::vector<double> minor_sequence(const SquareMatrix& b, MinorDirection direction);

/// Determinant of B itself (LU with partial pivoting).
double determinant(const SquareMatrix& b);

/// Determinant of the submatrix with the given row and column index sets
/// (equal sizes; an empty selection has determinant 1).
double submatrix_determinant(const SquareMatrix& a, std::span<const int> rows,
                             std::span<const int> cols);

/// True iff max-entry norm of B*B^T - I is at most tol.
bool is_orthogonal(const SquareMatrix& b, double tol);

/// Result of the row factorization g = b * k.
struct TriangularOrthogonalFactors {
  SquareMatrix b;  // upper triangular, strictly positive diagonal
  SquareMatrix k;  // orthogonal
};

/// Factor g = b*k by modified Gram-Schmidt on the rows of g, processed from
/// the bottom row upward: row i of k is row i of g orthonormalized against
/// rows i+1..n of k, so b is upper triangular with b_ii = the residual norms.
///
/// Throws SingularInput when |det g| <= minor_tol * max|g_ij|^n, and
/// NumericalBreakdown when an intermediate residual norm drops below
/// minor_tol.
TriangularOrthogonalFactors gram_schmidt_rows_bottom_up(const SquareMatrix& g,
                                                        const ToleranceConfig& tol = {});

struct SymmetricEigen {
  SquareMatrix q;              // orthogonal; columns are eigenvectors
  std::vector<double> lambda;  // eigenvalues, in the diagonal order reached
};

/// Cyclic Jacobi eigensolver for symmetric S: S = Q * diag(lambda) * Q^T.
/// The input is symmetrized as (S + S^T)/2 before iterating; sweeps stop when
/// the off-diagonal Frobenius norm falls below eig_tol * ||S||_F.
///
/// Throws NotSymmetric when max|S_ij - S_ji| > ortho_tol * max|S_ij|, and
/// NoConvergence when max_sweeps is exhausted.
SymmetricEigen jacobi_sym_eig(const SquareMatrix& s, const ToleranceConfig& tol = {});

}  // namespace gln
