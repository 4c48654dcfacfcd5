#include "gln/reps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gln/errors.hpp"
#include "gln/linalg.hpp"

namespace gln {

MCharacter::MCharacter(std::vector<int> e) : eps(std::move(e)) {
  for (int v : eps) {
    if (v != 0 && v != 1) {
      throw DimensionMismatch("MCharacter: sign exponents must be 0 or 1");
    }
  }
}

MCharacter MCharacter::normal(int r, int n) {
  if (r < 0 || r > n) throw InvalidDegree("MCharacter::normal: r out of [0, n]");
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = 1;
  return MCharacter(std::move(e));
}

int MCharacter::ones_count() const {
  return static_cast<int>(std::count(eps.begin(), eps.end(), 1));
}

ACharacter::ACharacter(std::vector<double> e) : exponents(std::move(e)) {
  for (double v : exponents) {
    if (!std::isfinite(v)) throw DimensionMismatch("ACharacter: exponents must be finite");
  }
}

double ACharacter::value(std::span<const double> a) const {
  if (a.size() != exponents.size()) throw DimensionMismatch("ACharacter::value: length mismatch");
  double result = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw NonPositiveEntry("ACharacter::value: entries must be positive");
    result *= std::pow(a[i], exponents[i]);
  }
  return result;
}

WeylElement::WeylElement(std::vector<int> p) : perm(std::move(p)) {
  std::vector<bool> seen(perm.size(), false);
  for (int v : perm) {
    if (v < 0 || v >= static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(v)]) {
      throw DimensionMismatch("WeylElement: not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(std::move(p));
}

WeylElement WeylElement::inverse() const {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  }
  return WeylElement(std::move(inv));
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  if (size() != other.size()) throw DimensionMismatch("WeylElement::compose: sizes differ");
  std::vector<int> p(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    p[i] = perm[static_cast<std::size_t>(other.perm[i])];
  }
  return WeylElement(std::move(p));
}

SquareMatrix WeylElement::matrix() const {
  SquareMatrix m(size());
  for (int i = 0; i < size(); ++i) m(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return m;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    if (k == 0) break;
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

long long subset_rank(std::span<const int> subset, int n) {
  const int k = static_cast<int>(subset.size());
  long long rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < subset[static_cast<std::size_t>(i)]; ++v) {
      rank += binomial(n - 1 - v, k - 1 - i);
    }
    prev = subset[static_cast<std::size_t>(i)];
  }
  return rank;
}

NormalForm normal_form(const MCharacter& delta) {
  const int n = delta.size();
  const int r = delta.ones_count();
  std::vector<int> p(static_cast<std::size_t>(n));
  int next_one = 0;
  int next_zero = r;
  // slots 0..r-1 map onto the ones positions in order, the rest onto zeros
  for (int pos = 0; pos < n; ++pos) {
    if (delta.eps[static_cast<std::size_t>(pos)] == 1) {
      p[static_cast<std::size_t>(next_one++)] = pos;
    } else {
      p[static_cast<std::size_t>(next_zero++)] = pos;
    }
  }
  return {r, WeylElement(std::move(p))};
}

std::pair<MCharacter, ACharacter> weyl_act(const WeylElement& sigma, const MCharacter& delta,
                                           const ACharacter& nu) {
  const int n = sigma.size();
  if (delta.size() != n || nu.size() != n) {
    throw DimensionMismatch("weyl_act: inconsistent lengths");
  }
  std::vector<int> eps(static_cast<std::size_t>(n));
  std::vector<double> expo(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    eps[static_cast<std::size_t>(sigma.perm[static_cast<std::size_t>(i)])] =
        delta.eps[static_cast<std::size_t>(i)];
    expo[static_cast<std::size_t>(sigma.perm[static_cast<std::size_t>(i)])] =
        nu.exponents[static_cast<std::size_t>(i)];
  }
  return {MCharacter(std::move(eps)), ACharacter(std::move(expo))};
}

SquareMatrix compound(const SquareMatrix& a, int r) {
  const int n = a.order();
  if (r < 0 || r > n) throw InvalidDegree("compound: degree out of [0, n]");
  const auto subsets = subsets_lex(n, r);
  const int dim = static_cast<int>(subsets.size());
  SquareMatrix c(dim);
  for (int s = 0; s < dim; ++s)
    for (int t = 0; t < dim; ++t) {
      c(s, t) = submatrix_determinant(a, subsets[static_cast<std::size_t>(s)],
                                      subsets[static_cast<std::size_t>(t)]);
    }
  return c;
}

SquareMatrix ktype_operator(const SquareMatrix& k, const KTypeDescriptor& desc,
                            const ToleranceConfig& tol) {
  if (!is_orthogonal(k, tol.ortho_tol)) {
    throw NotOrthogonal("ktype_operator: input is not orthogonal");
  }
  SquareMatrix op = compound(k, desc.wedge_degree);
  if (desc.twisted) {
    const double det = determinant(k);
    for (double& v : op.entries()) v *= det;
  }
  return op;
}

std::vector<MCharacter> m_restriction(const KTypeDescriptor& desc) {
  const auto subsets = subsets_lex(desc.n, desc.wedge_degree);
  std::vector<MCharacter> out;
  out.reserve(subsets.size());
  for (const auto& subset : subsets) {
    std::vector<int> eps(static_cast<std::size_t>(desc.n), desc.twisted ? 1 : 0);
    for (int idx : subset) {
      eps[static_cast<std::size_t>(idx)] ^= 1;
    }
    out.emplace_back(std::move(eps));
  }
  return out;
}

double ktype_norm(const HighestWeight& lam, int n) {
  const int m = n / 2;
  if (static_cast<int>(lam.b.size()) != m) {
    throw InvalidWeight("ktype_norm: weight length must be floor(n/2)");
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (lam.b[static_cast<std::size_t>(i)] < lam.b[static_cast<std::size_t>(i + 1)]) {
      throw InvalidWeight("ktype_norm: weight must be weakly decreasing");
    }
  }
  if (n % 2 == 1) {
    for (long long v : lam.b) {
      if (v < 0) throw InvalidWeight("ktype_norm: odd-order weights are nonnegative");
    }
  } else if (m >= 2 &&
             lam.b[static_cast<std::size_t>(m - 2)] < std::llabs(lam.b[static_cast<std::size_t>(m - 1)])) {
    throw InvalidWeight("ktype_norm: last entry exceeds its predecessor in magnitude");
  }

  double sum = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double base = (n % 2 == 1) ? (2.0 * m - 2.0 * i + 1.0) : (2.0 * m - 2.0 * i);
    const double term = base + static_cast<double>(lam.b[static_cast<std::size_t>(i - 1)]);
    sum += term * term;
  }
  return std::sqrt(sum);
}

KTypeDescriptor lowest_ktype(int r, int n) {
  if (r < 0 || r > n) throw InvalidDegree("lowest_ktype: r out of [0, n]");
  KTypeDescriptor desc;
  desc.n = n;
  desc.r = r;
  desc.twisted = r > n / 2;
  desc.wedge_degree = desc.twisted ? n - r : r;
  desc.dim = binomial(n, desc.wedge_degree);
  if (desc.twisted) {
    for (int i = r; i < n; ++i) desc.iso_subset.push_back(i);
  } else {
    for (int i = 0; i < r; ++i) desc.iso_subset.push_back(i);
  }
  return desc;
}

KTypeDescriptor ktype_for_character(const MCharacter& delta) {
  const int n = delta.size();
  KTypeDescriptor desc = lowest_ktype(delta.ones_count(), n);
  desc.iso_subset.clear();
  // the basis vector with this character is indexed by the ones positions,
  // or by their complement once the determinant twist flips every sign
  for (int i = 0; i < n; ++i) {
    const bool keep = desc.twisted ? delta.eps[static_cast<std::size_t>(i)] == 0
                                   : delta.eps[static_cast<std::size_t>(i)] == 1;
    if (keep) desc.iso_subset.push_back(i);
  }
  return desc;
}

double iso_projection_trace(const SquareMatrix& k, const KTypeDescriptor& desc,
                            const ToleranceConfig& tol) {
  if (!is_orthogonal(k, tol.ortho_tol)) {
    throw NotOrthogonal("iso_projection_trace: input is not orthogonal");
  }
  // diagonal compound entry (S, S); the full operator is never materialized
  double value = submatrix_determinant(k, desc.iso_subset, desc.iso_subset);
  if (desc.twisted) value *= determinant(k);
  return value;
}

}  // namespace gln
