#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gln/decomp.hpp"
#include "gln/matrix.hpp"
#include "gln/reps.hpp"
#include "gln/tolerances.hpp"

namespace gln {

/// Monte Carlo scalar estimate with its sampling metadata.
struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n_samples)
  long long n_samples = 0;
  std::uint64_t seed = 0;
  bool all_samples_positive = false;  // every raw integrand sample, not the mean
};

/// Monte Carlo operator estimate: entrywise means and standard errors.
struct OperatorEstimate {
  SquareMatrix mean_matrix;
  SquareMatrix stderr_matrix;
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Data of one principal coefficient evaluation: order, normal character
/// index r, real exponent character, and the evaluation point.
struct CoefficientSpec {
  int n = 0;
  int r = 0;
  ACharacter nu;
  SquareMatrix x;

  CoefficientSpec(int n_, int r_, ACharacter nu_, SquareMatrix x_);
};

/// Haar-distributed orthogonal matrix, deterministic in (n, seed, index):
/// a Gaussian matrix from the counter stream keyed by (seed, index) is
/// factored bottom-up as g = b k; the positive diagonal of b pins the factor
/// uniquely, which makes k exactly Haar on the orthogonal group.
SquareMatrix haar_sample(int n, std::uint64_t seed, std::uint64_t index);

/// One integrand sample: nu(H(k^-1 x)) * H(k^-1 x)^rho * (isotypic diagonal
/// entry of the wedge action of kappa(k^-1 x k)). The conjugated product is
/// factored once; its diagonal part equals H(k^-1 x) by right orthogonal
/// invariance.
double integrand_trace(const CoefficientSpec& spec, const SquareMatrix& k,
                       const ToleranceConfig& tol = {});

/// Same integrand for an arbitrary sign character in place of the normal one.
double integrand_trace_char(const MCharacter& delta, const ACharacter& nu,
                            const SquareMatrix& x, const SquareMatrix& k,
                            const ToleranceConfig& tol = {});

/// Monte Carlo trace estimate: dim(wedge space) times the Haar average of
/// integrand_trace over samples indexed 0..n_samples-1.
MCEstimate psi_estimate(const CoefficientSpec& spec, long long n_samples, std::uint64_t seed);

/// Monte Carlo operator estimate: dim times the Haar average of
/// pi(k) E pi(kappa(k^-1 x)), with E the rank-one projection onto the
/// isotypic basis vector. Shares the Haar sample stream with psi_estimate.
OperatorEstimate phi_estimate(const CoefficientSpec& spec, long long n_samples,
                              std::uint64_t seed);

/// Deterministic order-2 oracle: the orthogonal group splits into two circles
/// (rotations, and rotations times diag(1,-1)); each is integrated with the
/// composite trapezoid rule and the components are averaged with weight 1/2.
/// Throws InvalidOrder unless spec.n == 2.
double o2_quadrature(const CoefficientSpec& spec, int n_nodes);

/// One trace estimate inside a permutation-invariance comparison.
struct WeylCheckEntry {
  std::string label;      // permutation in one-line notation
  MCharacter delta;
  ACharacter nu;
  MCEstimate estimate;
};

struct WeylInvarianceReport {
  std::vector<WeylCheckEntry> entries;
  double max_abs_difference = 0.0;
  double max_allowed = 0.0;  // the largest pairwise 3-sigma bound
  bool pass = false;         // every pairwise difference within its own bound
};

/// Estimates the trace coefficient for (delta, nu) in normal form and for
/// every permuted pair (sigma.delta, sigma.nu), all with the same sample
/// schedule, and compares all pairs against 3x their combined standard
/// errors. All permutations are used for n <= 4, a seeded sample of 24
/// otherwise.
WeylInvarianceReport weyl_invariance_check(const MCharacter& delta, const ACharacter& nu,
                                           const SquareMatrix& x, long long n_samples,
                                           std::uint64_t seed);

/// One (trial, r) row of a positivity scan.
struct ScanRow {
  int trial = 0;
  int r = 0;
  std::vector<double> nu_exponents;
  MCEstimate estimate;
  bool pass = false;  // all samples positive and mean > 0
};

struct PositivityScan {
  std::vector<ScanRow> rows;
  bool all_pass = false;
};

/// For each trial draws a positive definite x and exponents uniform in
/// [-1, 1], then estimates the trace coefficient for every r = 0..n.
PositivityScan positivity_scan(int n, int trials, long long n_samples, std::uint64_t seed);

}  // namespace gln
