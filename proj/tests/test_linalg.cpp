#include "gln/linalg.hpp"

#include <cmath>

#include "doctest.h"
#include "gln/errors.hpp"
#include "test_util.hpp"

using namespace gln;

TEST_CASE("minor sequence of a diagonal matrix is the prefix products") {
  const auto b = SquareMatrix::from_rows({{2, 0}, {0, 3}});
  const auto lead = minor_sequence(b, MinorDirection::Leading);
  CHECK(lead[0] == doctest::Approx(2.0));
  CHECK(lead[1] == doctest::Approx(6.0));
}

TEST_CASE("minor sequence of the identity") {
  const auto trail = minor_sequence(SquareMatrix::identity(3), MinorDirection::Trailing);
  for (double m : trail) CHECK(m == doctest::Approx(1.0));
}

TEST_CASE("minor sequence of the order-2 flip") {
  const auto b = SquareMatrix::from_rows({{0, 1}, {1, 0}});
  const auto lead = minor_sequence(b, MinorDirection::Leading);
  CHECK(lead[0] == 0.0);
  CHECK(lead[1] == doctest::Approx(-1.0));
}

TEST_CASE("full leading and trailing minors both equal the determinant") {
  for (int n = 1; n <= 8; ++n) {
    const auto b = testutil::random_matrix(n, 101, static_cast<std::uint64_t>(n));
    const double scale = std::pow(max_abs(b), n);
    const double lead = minor_sequence(b, MinorDirection::Leading).back();
    const double trail = minor_sequence(b, MinorDirection::Trailing).back();
    CHECK(std::abs(lead - trail) <= 1e-12 * std::max(1.0, scale));
    CHECK(std::abs(lead - determinant(b)) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("orthogonality test") {
  CHECK(is_orthogonal(SquareMatrix::identity(4), 1e-10));
  const double c = std::cos(0.7), s = std::sin(0.7);
  CHECK(is_orthogonal(SquareMatrix::from_rows({{c, -s}, {s, c}}), 1e-10));
  CHECK_FALSE(is_orthogonal(SquareMatrix::from_rows({{2, 0}, {0, 1}}), 1e-10));
}

TEST_CASE("row factorization leaves an upper triangular input alone") {
  const auto g = SquareMatrix::from_rows({{2, 1}, {0, 3}});
  const auto [b, k] = gram_schmidt_rows_bottom_up(g);
  CHECK(max_abs_diff(b, g) <= 1e-14);
  CHECK(max_abs_diff(k, SquareMatrix::identity(2)) <= 1e-14);
}

TEST_CASE("row factorization of an orthogonal input is trivial") {
  const auto g = SquareMatrix::from_rows({{0, 1}, {-1, 0}});
  const auto [b, k] = gram_schmidt_rows_bottom_up(g);
  CHECK(max_abs_diff(b, SquareMatrix::identity(2)) <= 1e-14);
  CHECK(max_abs_diff(k, g) <= 1e-14);
}

TEST_CASE("row factorization of the lower unipotent example") {
  const double rt2 = std::sqrt(2.0);
  const auto g = SquareMatrix::from_rows({{1, 0}, {1, 1}});
  const auto [b, k] = gram_schmidt_rows_bottom_up(g);
  CHECK(max_abs_diff(b, SquareMatrix::from_rows({{1 / rt2, 1 / rt2}, {0, rt2}})) <= 1e-14);
  CHECK(max_abs_diff(k, SquareMatrix::from_rows({{1 / rt2, -1 / rt2}, {1 / rt2, 1 / rt2}})) <=
        1e-14);
}

TEST_CASE("row factorization reconstructs random invertible matrices") {
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto g = testutil::random_invertible(
          n, 11, static_cast<std::uint64_t>(n) * 1000 + static_cast<std::uint64_t>(trial));
      const auto [b, k] = gram_schmidt_rows_bottom_up(g);
      CHECK(is_orthogonal(k, 1e-9));
      CHECK(max_abs_diff(multiply(b, k), g) <= 1e-10 * std::max(1.0, max_abs(g)));
      for (int i = 0; i < n; ++i) {
        CHECK(b(i, i) > 0.0);
        for (int j = 0; j < i; ++j) CHECK(b(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("row factorization rejects singular input") {
  CHECK_THROWS_AS(gram_schmidt_rows_bottom_up(SquareMatrix::from_rows({{1, 1}, {1, 1}})),
                  SingularInput);
  CHECK_THROWS_AS(gram_schmidt_rows_bottom_up(
                      SquareMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {5, 7, 9}})),
                  SingularInput);
}

TEST_CASE("eigensolver leaves a diagonal matrix in place") {
  const auto s = SquareMatrix::from_rows({{5, 0}, {0, 2}});
  const auto eig = jacobi_sym_eig(s);
  CHECK(eig.lambda[0] == doctest::Approx(5.0));
  CHECK(eig.lambda[1] == doctest::Approx(2.0));
  CHECK(is_orthogonal(eig.q, 1e-12));
}

TEST_CASE("eigensolver finds the hand eigenvalues of [[2,1],[1,2]]") {
  const auto eig = jacobi_sym_eig(SquareMatrix::from_rows({{2, 1}, {1, 2}}));
  const double lo = std::min(eig.lambda[0], eig.lambda[1]);
  const double hi = std::max(eig.lambda[0], eig.lambda[1]);
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(3.0));
}

TEST_CASE("eigensolver on the identity") {
  const auto eig = jacobi_sym_eig(SquareMatrix::identity(3));
  for (double lam : eig.lambda) CHECK(lam == doctest::Approx(1.0));
}

TEST_CASE("eigensolver reconstructs random symmetric matrices") {
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto s = testutil::random_symmetric(
          n, 23, static_cast<std::uint64_t>(n) * 1000 + static_cast<std::uint64_t>(trial));
      const auto eig = jacobi_sym_eig(s);
      CHECK(is_orthogonal(eig.q, 1e-12));
      SquareMatrix rebuilt(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) {
            acc += eig.q(i, l) * eig.lambda[static_cast<std::size_t>(l)] * eig.q(j, l);
          }
          rebuilt(i, j) = acc;
        }
      CHECK(max_abs_diff(rebuilt, s) <= 1e-10 * std::max(1.0, max_abs(s)));
    }
  }
}

TEST_CASE("eigensolver rejects asymmetric input") {
  CHECK_THROWS_AS(jacobi_sym_eig(SquareMatrix::from_rows({{1, 1}, {0, 1}})), NotSymmetric);
}

TEST_CASE("positive definite matrices have positive minors both ways") {
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = testutil::random_matrix(
          n, 37, static_cast<std::uint64_t>(n) * 100 + static_cast<std::uint64_t>(trial));
      SquareMatrix s(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += a(l, i) * a(l, j);
          s(i, j) = acc;
        }
        s(i, i) += 1e-6;
      }
      for (double m : minor_sequence(s, MinorDirection::Leading)) CHECK(m > 0.0);
      for (double m : minor_sequence(s, MinorDirection::Trailing)) CHECK(m > 0.0);
    }
  }
}

TEST_CASE("empty submatrix has determinant one") {
  const auto a = SquareMatrix::identity(3);
  CHECK(submatrix_determinant(a, {}, {}) == 1.0);
}
