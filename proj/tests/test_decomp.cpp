#include "gln/decomp.hpp"

#include <cmath>

#include "doctest.h"
#include "gln/eisenstein.hpp"
#include "gln/errors.hpp"
#include "test_util.hpp"

using namespace gln;

TEST_CASE("iwasawa factors of a positive diagonal matrix") {
  const auto f = iwasawa(SquareMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(max_abs_diff(f.n_part, SquareMatrix::identity(2)) <= 1e-15);
  CHECK(f.a_part[0] == doctest::Approx(2.0));
  CHECK(f.a_part[1] == doctest::Approx(3.0));
  CHECK(max_abs_diff(f.k_part, SquareMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("iwasawa factors of the lower unipotent example") {
  const double rt2 = std::sqrt(2.0);
  const auto f = iwasawa(SquareMatrix::from_rows({{1, 0}, {1, 1}}));
  CHECK(max_abs_diff(f.n_part, SquareMatrix::from_rows({{1, 0.5}, {0, 1}})) <= 1e-14);
  CHECK(f.a_part[0] == doctest::Approx(1 / rt2));
  CHECK(f.a_part[1] == doctest::Approx(rt2));
  CHECK(max_abs_diff(f.k_part, SquareMatrix::from_rows({{1 / rt2, -1 / rt2}, {1 / rt2, 1 / rt2}})) <=
        1e-14);
}

TEST_CASE("iwasawa of an orthogonal matrix is trivial") {
  for (int n = 1; n <= 5; ++n) {
    const auto k0 = haar_sample(n, 5150, static_cast<std::uint64_t>(n));
    const auto f = iwasawa(k0);
    CHECK(max_abs_diff(f.n_part, SquareMatrix::identity(n)) <= 1e-13);
    for (double a : f.a_part) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs_diff(f.k_part, k0) <= 1e-13);
  }
}

TEST_CASE("iwasawa output shapes and reconstruction on random input") {
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = testutil::random_invertible(
          n, 71, static_cast<std::uint64_t>(n) * 500 + static_cast<std::uint64_t>(trial));
      const auto f = iwasawa(g);
      for (int i = 0; i < n; ++i) {
        CHECK(f.n_part(i, i) == 1.0);
        for (int j = 0; j < i; ++j) CHECK(f.n_part(i, j) == 0.0);
        CHECK(f.a_part[static_cast<std::size_t>(i)] > 0.0);
      }
      CHECK(is_orthogonal(f.k_part, 1e-10));
      const auto rebuilt =
          multiply(f.n_part, multiply(SquareMatrix::diagonal(f.a_part), f.k_part));
      CHECK(max_abs_diff(rebuilt, g) <= 1e-10 * std::max(1.0, max_abs(g)));
    }
  }
}

TEST_CASE("kappa fixes the identity and recovers hand values") {
  CHECK(max_abs_diff(kappa(SquareMatrix::identity(3)), SquareMatrix::identity(3)) == 0.0);
  const double rt2 = std::sqrt(2.0);
  CHECK(max_abs_diff(kappa(SquareMatrix::from_rows({{1, 0}, {1, 1}})),
                     SquareMatrix::from_rows({{1 / rt2, -1 / rt2}, {1 / rt2, 1 / rt2}})) <= 1e-14);
}

TEST_CASE("kappa absorbs a positive diagonal on the left") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto k0 = haar_sample(2, 99, static_cast<std::uint64_t>(trial));
    const auto g = multiply(SquareMatrix::from_rows({{5, 0}, {0, 1}}), k0);
    CHECK(max_abs_diff(kappa(g), k0) <= 1e-12);
  }
}

TEST_CASE("kappa satisfies the right cocycle identity") {
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto g = testutil::random_invertible(
          n, 83, static_cast<std::uint64_t>(n) * 300 + static_cast<std::uint64_t>(trial));
      const auto k0 =
          haar_sample(n, 84, static_cast<std::uint64_t>(n) * 300 + static_cast<std::uint64_t>(trial));
      CHECK(max_abs_diff(kappa(multiply(g, k0)), multiply(kappa(g), k0)) <= 1e-9);
    }
  }
}

TEST_CASE("diagonal projection is right invariant under orthogonals") {
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto g = testutil::random_invertible(
          n, 85, static_cast<std::uint64_t>(n) * 300 + static_cast<std::uint64_t>(trial));
      const auto k0 =
          haar_sample(n, 86, static_cast<std::uint64_t>(n) * 300 + static_cast<std::uint64_t>(trial));
      const auto a = h_projection(g);
      const auto b = h_projection(multiply(g, k0));
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("sign conjugation commutes through the projection") {
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = testutil::random_invertible(
          n, 87, static_cast<std::uint64_t>(n) * 200 + static_cast<std::uint64_t>(trial));
      CounterRng rng(88, static_cast<std::uint64_t>(n) * 200 + static_cast<std::uint64_t>(trial));
      SquareMatrix m(n);
      for (int i = 0; i < n; ++i) m(i, i) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      const auto lhs = kappa(multiply(m, multiply(g, m)));
      const auto rhs = multiply(m, multiply(kappa(g), m));
      CHECK(max_abs_diff(lhs, rhs) <= 1e-9);
    }
  }
}

TEST_CASE("half-sum power evaluates the hand examples") {
  const std::vector<double> a1{4.0, 1.0};
  CHECK(rho_power(a1) == doctest::Approx(2.0));
  const std::vector<double> a2{2.0, 7.0, 0.5};
  CHECK(rho_power(a2) == doctest::Approx(4.0));
  const std::vector<double> a3{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(rho_power(a3) == 1.0);
  const std::vector<double> bad{1.0, -2.0};
  CHECK_THROWS_AS(rho_power(bad), NonPositiveEntry);
}

TEST_CASE("cartan factors of a positive definite matrix") {
  const auto p0 = exp_p0_sample(3, 17);
  const auto f = cartan(p0);
  CHECK(max_abs_diff(f.k_part, SquareMatrix::identity(3)) <= 1e-8);
  CHECK(max_abs_diff(f.p_part, p0) <= 1e-8 * std::max(1.0, max_abs(p0)));
}

TEST_CASE("cartan factors of an orthogonal matrix") {
  const auto k0 = haar_sample(4, 23, 0);
  const auto f = cartan(k0);
  CHECK(max_abs_diff(f.k_part, k0) <= 1e-8);
  CHECK(max_abs_diff(f.p_part, SquareMatrix::identity(4)) <= 1e-8);
}

TEST_CASE("cartan of the lower unipotent example") {
  const auto g = SquareMatrix::from_rows({{1, 0}, {1, 1}});
  const auto f = cartan(g);
  CHECK(is_orthogonal(f.k_part, 1e-10));
  CHECK(max_asymmetry(f.p_part) == 0.0);
  CHECK(max_abs_diff(multiply(f.k_part, f.p_part), g) <= 1e-12);
  // square of the positive factor must give back g^T g
  const auto gram = multiply(transpose(g), g);
  CHECK(max_abs_diff(multiply(f.p_part, f.p_part), gram) <= 1e-12);
  const auto eig = jacobi_sym_eig(f.p_part);
  for (double lam : eig.lambda) CHECK(lam > 0.0);
}

TEST_CASE("cartan reconstruction on random input") {
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = testutil::random_invertible(
          n, 91, static_cast<std::uint64_t>(n) * 400 + static_cast<std::uint64_t>(trial));
      const auto f = cartan(g);
      CHECK(is_orthogonal(f.k_part, 1e-10));
      CHECK(max_asymmetry(f.p_part) <= 1e-10 * std::max(1.0, max_abs(f.p_part)));
      CHECK(max_abs_diff(multiply(f.k_part, f.p_part), g) <= 1e-8 * std::max(1.0, max_abs(g)));
    }
  }
}

TEST_CASE("cartan rejects singular input") {
  CHECK_THROWS_AS(cartan(SquareMatrix::from_rows({{1, 1}, {1, 1}})), SingularInput);
}

TEST_CASE("positive definite sampler is exactly symmetric and well conditioned from below") {
  for (int n = 1; n <= 6; ++n) {
    const auto s = exp_p0_sample(n, 1234 + static_cast<std::uint64_t>(n));
    CHECK(max_asymmetry(s) == 0.0);
    const auto eig = jacobi_sym_eig(s);
    for (double lam : eig.lambda) CHECK(lam >= 1e-6 - 1e-12);
    for (double m : minor_sequence(s, MinorDirection::Leading)) CHECK(m > 0.0);
    for (double m : minor_sequence(s, MinorDirection::Trailing)) CHECK(m > 0.0);
  }
}

TEST_CASE("positive definite sampler is deterministic in the seed") {
  const auto a = exp_p0_sample(4, 555);
  const auto b = exp_p0_sample(4, 555);
  const auto c = exp_p0_sample(4, 556);
  CHECK(max_abs_diff(a, b) == 0.0);
  CHECK(max_abs_diff(a, c) > 0.0);
}
