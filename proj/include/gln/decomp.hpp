#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gln/linalg.hpp"
#include "gln/matrix.hpp"
#include "gln/tolerances.hpp"

namespace gln {

/// g = n_part * diag(a_part) * k_part with n_part unipotent upper triangular,
/// a_part positive, k_part orthogonal.
struct IwasawaFactors {
  SquareMatrix n_part;
  std::vector<double> a_part;
  SquareMatrix k_part;
};

/// g = k_part * p_part with k_part orthogonal and p_part symmetric positive
/// definite.
struct CartanFactors {
  SquareMatrix k_part;
  SquareMatrix p_part;
};

/// Unique factorization g = n a k over the upper-triangular unipotent group,
/// the positive diagonal group, and the orthogonal group.
IwasawaFactors iwasawa(const SquareMatrix& g, const ToleranceConfig& tol = {});

/// Orthogonal factor of the Iwasawa factorization. Satisfies the cocycle
/// identity kappa(g * k0) = kappa(g) * k0 for orthogonal k0.
SquareMatrix kappa(const SquareMatrix& g, const ToleranceConfig& tol = {});

/// Positive diagonal factor of the Iwasawa factorization.
std::vector<double> h_projection(const SquareMatrix& g, const ToleranceConfig& tol = {});

/// prod_i a_i^((n - 2i + 1)/2) for a positive vector a (1-based i).
/// Throws NonPositiveEntry if some a_i <= 0.
double rho_power(std::span<const double> a);

/// Polar-style factorization g = k * p with p = (g^T g)^(1/2) computed through
/// the symmetric eigensolver; k is re-orthonormalized by one bottom-up
/// Gram-Schmidt pass if it misses the orthogonality tolerance.
CartanFactors cartan(const SquareMatrix& g, const ToleranceConfig& tol = {});

/// Seeded symmetric positive definite sample A^T A + 1e-6 I with A standard
/// Gaussian. Exactly symmetric by construction; smallest eigenvalue >= 1e-6.
SquareMatrix exp_p0_sample(int n, std::uint64_t seed);

}  // namespace gln
