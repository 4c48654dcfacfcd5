#pragma once

#include <vector>

#include "gln/matrix.hpp"
#include "gln/tolerances.hpp"

namespace gln {

/// Where an orthogonal matrix sits relative to the open image of the positive
/// definite matrices under the orthogonal Iwasawa projection.
struct MembershipReport {
  bool in_image = false;               // every leading minor > minor_tol
  std::vector<double> leading_minors;  // r = 1..n
  std::vector<double> trailing_minors; // r = 1..n
  bool boundary = false;               // some |minor| below minor_tol, either sequence
};

/// For B with all leading principal minors strictly positive, returns the
/// unique unit upper triangular C such that B*C is symmetric. Column j of C is
/// found by solving the (j-1)x(j-1) leading system of B that forces
/// (BC)_{ij} = (BC)_{ji} for i < j; that system matrix is invertible because
/// its determinant is a leading minor of B.
///
/// Throws MinorNotPositive (with the first failing order) when a leading
/// minor is <= minor_tol.
SquareMatrix symmetrize_right(const SquareMatrix& b, const ToleranceConfig& tol = {});

/// Minor-sign test for membership of an orthogonal B in the image of the
/// positive definite matrices. The decision uses the leading minors only; the
/// trailing sequence is reported for cross-checking.
/// Throws NotOrthogonal if B fails is_orthogonal at ortho_tol.
MembershipReport membership(const SquareMatrix& b, const ToleranceConfig& tol = {});

/// Explicit positive definite preimage of an in-image orthogonal B: with
/// c = symmetrize_right(B^T) (so B^T c is symmetric), returns p = c^{-1} B.
/// Posterior checks: p symmetric, positive definite, and kappa(p) = B within
/// 1e-8; any failure raises VerificationFailure.
SquareMatrix preimage_in_p0(const SquareMatrix& b, const ToleranceConfig& tol = {});

/// Preimage together with its measured projection roundtrip error
/// max-entry |kappa(p) - B| (the quantity the posterior check bounds).
struct PreimageCheck {
  SquareMatrix p;
  double kappa_roundtrip_error = 0.0;
};
PreimageCheck preimage_with_roundtrip(const SquareMatrix& b, const ToleranceConfig& tol = {});

}  // namespace gln
