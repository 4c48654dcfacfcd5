#pragma once

#include <cstdint>
#include <vector>

#include "gln/matrix.hpp"
#include "gln/tolerances.hpp"

namespace gln {

/// Sign character of the diagonal {+-1}^n subgroup: delta(m) = prod_i
/// m_ii^eps_i with eps_i in {0,1}. The normal form with r leading ones is the
/// canonical orbit representative under coordinate permutations.
struct MCharacter {
  std::vector<int> eps;

  explicit MCharacter(std::vector<int> e);
  static MCharacter normal(int r, int n);  // (1,...,1,0,...,0) with r ones

  int size() const { return static_cast<int>(eps.size()); }
  int ones_count() const;
  bool operator==(const MCharacter& o) const { return eps == o.eps; }
};

/// Real character of the positive diagonal group: nu(a) = prod_i
/// a_i^exponents_i. Only real exponents are representable.
struct ACharacter {
  std::vector<double> exponents;

  explicit ACharacter(std::vector<double> e);

  int size() const { return static_cast<int>(exponents.size()); }
  /// nu(a) for a positive vector a. Throws NonPositiveEntry otherwise.
  double value(std::span<const double> a) const;
};

/// Permutation of {0,...,n-1}; perm[i] is the image of i. Realized in the
/// orthogonal group as the 0/1 matrix with entry (perm[i], i) = 1.
struct WeylElement {
  std::vector<int> perm;

  explicit WeylElement(std::vector<int> p);
  static WeylElement identity(int n);

  int size() const { return static_cast<int>(perm.size()); }
  WeylElement inverse() const;
  WeylElement compose(const WeylElement& other) const;  // this after other
  SquareMatrix matrix() const;
};

/// Which exterior-power K-type carries a given sign character, together with
/// the basis data needed to evaluate it: wedge degree, dimension, and the
/// index set of the isotypic basis vector (0-based).
struct KTypeDescriptor {
  int n = 0;
  int r = 0;                   // number of sign slots of the character
  bool twisted = false;        // true iff the determinant twist is present
  int wedge_degree = 0;        // r if untwisted, n - r if twisted
  long long dim = 1;           // binomial(n, wedge_degree)
  std::vector<int> iso_subset; // basis subset carrying the character
};

/// Weakly decreasing integer highest weight for the rank-floor(n/2) torus.
struct HighestWeight {
  std::vector<long long> b;
};

long long binomial(int n, int k);

/// All size-k subsets of {0..n-1} in lexicographic order on sorted tuples.
/// This ordering fixes the wedge basis globally.
std::vector<std::vector<int>> subsets_lex(int n, int k);

/// Position of a sorted size-k subset in subsets_lex(n, k).
long long subset_rank(std::span<const int> subset, int n);

/// Normal form of a sign character: r = number of ones, and the permutation
/// sigma with sigma . normal(r) = delta. Sigma is the unique permutation that
/// is increasing on the ones positions and on the zeros positions.
struct NormalForm {
  int r = 0;
  WeylElement sigma;
};
NormalForm normal_form(const MCharacter& delta);

/// Coordinate permutation action on the two character types:
/// eps'[sigma(i)] = eps[i] and exponents'[sigma(i)] = exponents[i].
std::pair<MCharacter, ACharacter> weyl_act(const WeylElement& sigma, const MCharacter& delta,
                                           const ACharacter& nu);

/// r-th compound matrix of A in the lexicographic subset basis: entry (S, T)
/// is the determinant of the submatrix of A with rows S and columns T. The
/// 0-th compound is the 1x1 matrix [1].
SquareMatrix compound(const SquareMatrix& a, int r);

/// Action of an orthogonal k on the wedge space named by desc: the plain
/// compound, multiplied by det(k) when the descriptor is twisted.
SquareMatrix ktype_operator(const SquareMatrix& k, const KTypeDescriptor& desc,
                            const ToleranceConfig& tol = {});

/// Characters of every wedge basis vector under the diagonal sign subgroup,
/// in basis order (indicator of the subset, flipped by the determinant
/// character when twisted).
std::vector<MCharacter> m_restriction(const KTypeDescriptor& desc);

/// Vogan-style norm of the highest weight for order n:
///   n = 2m+1: sqrt(sum_i (2m - 2i + 1 + b_i)^2),
///   n = 2m  : sqrt(sum_i (2m - 2i + b_i)^2),  (i = 1..m)
/// Throws InvalidWeight if b has the wrong length or violates dominance.
double ktype_norm(const HighestWeight& lam, int n);

/// The minimal-norm K-type containing the normal sign character with r ones:
/// the r-th wedge power for r <= floor(n/2), its determinant twist above.
KTypeDescriptor lowest_ktype(int r, int n);

/// Descriptor for an arbitrary sign character delta: same wedge space as
/// lowest_ktype(ones(delta), n) but with the isotypic subset matching delta
/// (its ones positions, complemented when twisted).
KTypeDescriptor ktype_for_character(const MCharacter& delta);

/// Diagonal entry of ktype_operator(k, desc) at the isotypic basis vector.
/// Untwisted this is the leading r x r minor of k when desc comes from the
/// normal character; twisted it is det(k) times the complementary minor.
double iso_projection_trace(const SquareMatrix& k, const KTypeDescriptor& desc,
                            const ToleranceConfig& tol = {});

}  // namespace gln
