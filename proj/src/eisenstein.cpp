#include "gln/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "gln/errors.hpp"
#include "gln/linalg.hpp"
#include "gln/rng.hpp"

namespace gln {

namespace {

// Streaming mean/variance accumulator (Welford), updated in index order so
// results do not depend on scheduling.
struct RunningMoments {
  double mean = 0.0;
  double m2 = 0.0;
  long long count = 0;

  void add(double value) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const {
    return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

double char_integrand(const KTypeDescriptor& desc, const ACharacter& nu, const SquareMatrix& x,
                      const SquareMatrix& k, const ToleranceConfig& tol) {
  const SquareMatrix conj = multiply(multiply(transpose(k), x), k);
  const IwasawaFactors iw = iwasawa(conj, tol);
  // the diagonal part of the conjugated product equals H(k^-1 x): the extra
  // right orthogonal factor k is absorbed into the kappa part
  const double prefactor = nu.value(iw.a_part) * rho_power(iw.a_part);
  double minor = submatrix_determinant(iw.k_part, desc.iso_subset, desc.iso_subset);
  if (desc.twisted) minor *= determinant(iw.k_part);
  return prefactor * minor;
}

MCEstimate estimate_for_descriptor(const KTypeDescriptor& desc, const ACharacter& nu,
                                   const SquareMatrix& x, long long n_samples,
                                   std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("estimate: need at least 2 samples");
  const ToleranceConfig tol{};
  const int n = x.order();
  RunningMoments moments;
  bool all_positive = true;
  for (long long i = 0; i < n_samples; ++i) {
    const SquareMatrix k = haar_sample(n, seed, static_cast<std::uint64_t>(i));
    const double t = char_integrand(desc, nu, x, k, tol);
    if (!(t > 0.0)) all_positive = false;
    moments.add(t);
  }
  const double dim = static_cast<double>(desc.dim);
  MCEstimate est;
  est.mean = dim * moments.mean;
  est.stderr_ = dim * moments.standard_error();
  est.n_samples = n_samples;
  est.seed = seed;
  est.all_samples_positive = all_positive;
  return est;
}

std::string one_line_notation(const WeylElement& sigma) {
  std::string s = "(";
  for (int i = 0; i < sigma.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(sigma.perm[static_cast<std::size_t>(i)] + 1);
  }
  s += ')';
  return s;
}

}  // namespace

CoefficientSpec::CoefficientSpec(int n_, int r_, ACharacter nu_, SquareMatrix x_)
    : n(n_), r(r_), nu(std::move(nu_)), x(std::move(x_)) {
  if (r < 0 || r > n) throw InvalidDegree("CoefficientSpec: r out of [0, n]");
  if (nu.size() != n || x.order() != n) {
    throw DimensionMismatch("CoefficientSpec: inconsistent orders");
  }
  if (!x.all_finite()) throw DimensionMismatch("CoefficientSpec: evaluation point not finite");
}

SquareMatrix haar_sample(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) throw DimensionMismatch("haar_sample: order must be >= 1");
  std::uint64_t stream = index;
  for (int attempt = 0; attempt < 16; ++attempt) {
    CounterRng rng(seed, stream);
    SquareMatrix g(n);
    for (double& v : g.entries()) v = rng.gaussian();
    try {
      // b carries a strictly positive diagonal, which pins the factorization
      // uniquely and makes k exactly Haar distributed
      return gram_schmidt_rows_bottom_up(g).k;
    } catch (const Error&) {
      ++stream;  // essentially unreachable: Gaussian matrices are invertible a.s.
    }
  }
  throw SamplerFailure("haar_sample: repeated factorization breakdown");
}

double integrand_trace(const CoefficientSpec& spec, const SquareMatrix& k,
                       const ToleranceConfig& tol) {
  return char_integrand(lowest_ktype(spec.r, spec.n), spec.nu, spec.x, k, tol);
}

double integrand_trace_char(const MCharacter& delta, const ACharacter& nu, const SquareMatrix& x,
                            const SquareMatrix& k, const ToleranceConfig& tol) {
  return char_integrand(ktype_for_character(delta), nu, x, k, tol);
}

MCEstimate psi_estimate(const CoefficientSpec& spec, long long n_samples, std::uint64_t seed) {
  return estimate_for_descriptor(lowest_ktype(spec.r, spec.n), spec.nu, spec.x, n_samples, seed);
}

OperatorEstimate phi_estimate(const CoefficientSpec& spec, long long n_samples,
                              std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("phi_estimate: need at least 2 samples");
  const ToleranceConfig tol{};
  const KTypeDescriptor desc = lowest_ktype(spec.r, spec.n);
  const auto subsets = subsets_lex(spec.n, desc.wedge_degree);
  const int dim = static_cast<int>(desc.dim);

  std::vector<RunningMoments> moments(static_cast<std::size_t>(dim) * dim);
  std::vector<double> left(static_cast<std::size_t>(dim));   // column of pi(k) at the isotypic slot
  std::vector<double> right(static_cast<std::size_t>(dim));  // row of pi(kappa(k^-1 x)) at that slot

  for (long long i = 0; i < n_samples; ++i) {
    const SquareMatrix k = haar_sample(spec.n, seed, static_cast<std::uint64_t>(i));
    const SquareMatrix y = multiply(transpose(k), spec.x);
    const IwasawaFactors iw = iwasawa(y, tol);
    const double prefactor = spec.nu.value(iw.a_part) * rho_power(iw.a_part);

    const double det_k = desc.twisted ? determinant(k) : 1.0;
    const double det_ky = desc.twisted ? determinant(iw.k_part) : 1.0;
    for (int t = 0; t < dim; ++t) {
      const auto& subset = subsets[static_cast<std::size_t>(t)];
      left[static_cast<std::size_t>(t)] =
          det_k * submatrix_determinant(k, subset, desc.iso_subset);
      right[static_cast<std::size_t>(t)] =
          det_ky * submatrix_determinant(iw.k_part, desc.iso_subset, subset);
    }
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        moments[static_cast<std::size_t>(a) * dim + b].add(
            prefactor * left[static_cast<std::size_t>(a)] * right[static_cast<std::size_t>(b)]);
      }
  }

  OperatorEstimate est;
  est.mean_matrix = SquareMatrix(dim);
  est.stderr_matrix = SquareMatrix(dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const auto& m = moments[static_cast<std::size_t>(a) * dim + b];
      est.mean_matrix(a, b) = static_cast<double>(desc.dim) * m.mean;
      est.stderr_matrix(a, b) = static_cast<double>(desc.dim) * m.standard_error();
    }
  est.n_samples = n_samples;
  est.seed = seed;
  return est;
}

double o2_quadrature(const CoefficientSpec& spec, int n_nodes) {
  if (spec.n != 2) throw InvalidOrder("o2_quadrature: only defined for order 2");
  if (n_nodes < 8) throw std::invalid_argument("o2_quadrature: need at least 8 nodes");
  const ToleranceConfig tol{};
  const KTypeDescriptor desc = lowest_ktype(spec.r, spec.n);

  // Trapezoid over a full period == uniform node average on each component.
  double rotation_sum = 0.0;
  double reflection_sum = 0.0;
  for (int j = 0; j < n_nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_nodes;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const SquareMatrix rot = SquareMatrix::from_rows({{c, -s}, {s, c}});
    const SquareMatrix refl = SquareMatrix::from_rows({{c, s}, {s, -c}});
    rotation_sum += char_integrand(desc, spec.nu, spec.x, rot, tol);
    reflection_sum += char_integrand(desc, spec.nu, spec.x, refl, tol);
  }
  const double average = 0.5 * (rotation_sum + reflection_sum) / n_nodes;
  return static_cast<double>(desc.dim) * average;
}

WeylInvarianceReport weyl_invariance_check(const MCharacter& delta, const ACharacter& nu,
                                           const SquareMatrix& x, long long n_samples,
                                           std::uint64_t seed) {
  const int n = delta.size();
  if (nu.size() != n || x.order() != n) {
    throw DimensionMismatch("weyl_invariance_check: inconsistent orders");
  }

  WeylInvarianceReport report;

  // reference evaluation: the pair rewritten in normal form
  const NormalForm nf = normal_form(delta);
  const auto [delta_norm, nu_norm] = weyl_act(nf.sigma.inverse(), delta, nu);
  report.entries.push_back({"normal " + one_line_notation(nf.sigma), delta_norm, nu_norm,
                            estimate_for_descriptor(ktype_for_character(delta_norm), nu_norm, x,
                                                    n_samples, seed)});

  std::vector<WeylElement> elements;
  if (n <= 4) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      elements.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    CounterRng rng(seed, 0x5196E1ull);
    for (int s = 0; s < 24; ++s) {
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
      }
      elements.emplace_back(std::move(p));
    }
  }

  for (const WeylElement& sigma : elements) {
    const auto [d, v] = weyl_act(sigma, delta, nu);
    report.entries.push_back({one_line_notation(sigma), d, v,
                              estimate_for_descriptor(ktype_for_character(d), v, x, n_samples,
                                                      seed)});
  }

  report.pass = true;
  double worst_margin = -1.0;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
      const MCEstimate& a = report.entries[i].estimate;
      const MCEstimate& b = report.entries[j].estimate;
      const double diff = std::abs(a.mean - b.mean);
      // floor at numerical noise so exactly-deterministic estimates (zero
      // variance) are not failed on rounding
      const double floor = 1e-12 * std::max({1.0, std::abs(a.mean), std::abs(b.mean)});
      const double bound = std::max(3.0 * std::hypot(a.stderr_, b.stderr_), floor);
      if (diff > bound) report.pass = false;
      report.max_abs_difference = std::max(report.max_abs_difference, diff);
      if (diff - bound > worst_margin) {
        worst_margin = diff - bound;
        report.max_allowed = bound;
      }
    }
  }
  return report;
}

PositivityScan positivity_scan(int n, int trials, long long n_samples, std::uint64_t seed) {
  if (n < 1 || trials < 1) throw std::invalid_argument("positivity_scan: bad arguments");
  PositivityScan scan;
  scan.all_pass = true;
  for (int trial = 0; trial < trials; ++trial) {
    const SquareMatrix x = exp_p0_sample(n, derive_seed(seed, static_cast<std::uint64_t>(trial), 1));
    CounterRng nu_rng(derive_seed(seed, static_cast<std::uint64_t>(trial), 2), 0);
    std::vector<double> exponents(static_cast<std::size_t>(n));
    for (double& e : exponents) e = nu_rng.uniform(-1.0, 1.0);
    const ACharacter nu{exponents};

    for (int r = 0; r <= n; ++r) {
      const CoefficientSpec spec(n, r, nu, x);
      const std::uint64_t row_seed =
          derive_seed(seed, static_cast<std::uint64_t>(trial), 256 + static_cast<std::uint64_t>(r));
      ScanRow row;
      row.trial = trial;
      row.r = r;
      row.nu_exponents = exponents;
      row.estimate = psi_estimate(spec, n_samples, row_seed);
      row.pass = row.estimate.all_samples_positive && row.estimate.mean > 0.0;
      scan.all_pass = scan.all_pass && row.pass;
      scan.rows.push_back(std::move(row));
    }
  }
  return scan;
}

}  // namespace gln
