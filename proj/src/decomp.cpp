#include "gln/decomp.hpp"

#include <cmath>
#include <utility>

#include "gln/errors.hpp"
#include "gln/rng.hpp"

namespace gln {

IwasawaFactors iwasawa(const SquareMatrix& g, const ToleranceConfig& tol) {
  auto [b, k] = gram_schmidt_rows_bottom_up(g, tol);
  const int n = g.order();

  std::vector<double> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = b(i, i);

  // n = b * diag(a)^-1, so column j of b is scaled by 1/a_j
  SquareMatrix unipotent(n);
  for (int i = 0; i < n; ++i) {
    unipotent(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) unipotent(i, j) = b(i, j) / a[static_cast<std::size_t>(j)];
  }
  return {std::move(unipotent), std::move(a), std::move(k)};
}

SquareMatrix kappa(const SquareMatrix& g, const ToleranceConfig& tol) {
  return gram_schmidt_rows_bottom_up(g, tol).k;
}

std::vector<double> h_projection(const SquareMatrix& g, const ToleranceConfig& tol) {
  const SquareMatrix b = gram_schmidt_rows_bottom_up(g, tol).b;
  std::vector<double> a(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i) a[static_cast<std::size_t>(i)] = b(i, i);
  return a;
}

double rho_power(std::span<const double> a) {
  const int n = static_cast<int>(a.size());
  double result = 1.0;
  for (int i = 1; i <= n; ++i) {
    const double ai = a[static_cast<std::size_t>(i - 1)];
    if (!(ai > 0.0)) throw NonPositiveEntry("rho_power: entries must be strictly positive");
    result *= std::pow(ai, 0.5 * (n - 2 * i + 1));
  }
  return result;
}

namespace {

// Inverse by Gauss-Jordan with partial pivoting; inputs are tiny and known to
// be far from singular when this runs.
SquareMatrix inverse(const SquareMatrix& a) {
  const int n = a.order();
  SquareMatrix w = a;
  SquareMatrix inv = SquareMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(w(row, col)) > std::abs(w(pivot, col))) pivot = row;
    }
    if (w(pivot, col) == 0.0) throw SingularInput("inverse: exactly singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(w(pivot, j), w(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const double d = w(col, col);
    for (int j = 0; j < n; ++j) {
      w(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = w(row, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        w(row, j) -= f * w(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double orthogonality_defect(const SquareMatrix& k) {
  const int n = k.order();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += k(i, c) * k(j, c);
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double frobenius(const SquareMatrix& a) {
  double acc = 0.0;
  for (double v : a.entries()) acc += v * v;
  return std::sqrt(acc);
}

// Scaled Newton iteration for the orthogonal polar factor of g. Forward
// accuracy ~ eps * cond(g), one power better than the eigensolver route,
// which matters only in the ill-conditioned tail.
SquareMatrix polar_orthogonal_newton(const SquareMatrix& g) {
  SquareMatrix x = g;
  for (int iter = 0; iter < 60; ++iter) {
    const double defect = orthogonality_defect(x);
    if (defect <= 1e-14) break;
    const SquareMatrix xinv = inverse(x);
    const double mu = defect > 1e-4 ? std::sqrt(frobenius(xinv) / frobenius(x)) : 1.0;
    const int n = x.order();
    SquareMatrix next(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next(i, j) = 0.5 * (mu * x(i, j) + xinv(j, i) / mu);
    x = std::move(next);
  }
  return x;
}

}  // namespace

CartanFactors cartan(const SquareMatrix& g, const ToleranceConfig& tol) {
  const int n = g.order();
  double row_norm_product = 1.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += g(i, j) * g(i, j);
    row_norm_product *= std::sqrt(s);
  }
  if (!(std::abs(determinant(g)) > tol.minor_tol * row_norm_product)) {
    throw SingularInput("cartan: matrix is singular at the working tolerance");
  }

  const SquareMatrix gram = multiply(transpose(g), g);
  SymmetricEigen eig = jacobi_sym_eig(gram, tol);
  for (double lam : eig.lambda) {
    if (!(lam > 0.0)) throw SingularInput("cartan: Gram matrix is not positive definite");
  }

  // p = Q sqrt(diag) Q^T, filled from the upper half so it is exactly symmetric
  std::vector<double> root(eig.lambda.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = std::sqrt(eig.lambda[i]);
  SquareMatrix p(n);
  SquareMatrix p_inv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      double acc_inv = 0.0;
      for (int l = 0; l < n; ++l) {
        const double q2 = eig.q(i, l) * eig.q(j, l);
        acc += root[static_cast<std::size_t>(l)] * q2;
        acc_inv += q2 / root[static_cast<std::size_t>(l)];
      }
      p(i, j) = p(j, i) = acc;
      p_inv(i, j) = p_inv(j, i) = acc_inv;
    }
  }

  SquareMatrix k = multiply(g, p_inv);
  if (!is_orthogonal(k, tol.ortho_tol)) {
    k = gram_schmidt_rows_bottom_up(k, tol).k;
  }

  // The eigensolver route loses ~cond(g)^2 digits in the product k*p. When
  // that shows, rebuild k by Newton polar iteration and let p absorb the
  // residual as the symmetric part of k^T g.
  const double budget = 1e-9 * std::max(1.0, max_abs(g));
  if (max_abs_diff(multiply(k, p), g) > budget) {
    k = polar_orthogonal_newton(g);
    const SquareMatrix h = multiply(transpose(k), g);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) p(i, j) = p(j, i) = 0.5 * (h(i, j) + h(j, i));
  }
  return {std::move(k), std::move(p)};
}

SquareMatrix exp_p0_sample(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionMismatch("exp_p0_sample: order must be >= 1");
  CounterRng rng(seed, 0x70305A3Dull);  // stream tag distinct from the Haar sampler
  SquareMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();

  constexpr double ridge = 1e-6;
  SquareMatrix s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l) acc += a(l, i) * a(l, j);
      s(i, j) = s(j, i) = acc;
    }
    s(i, i) += ridge;
  }
  return s;
}

}  // namespace gln
