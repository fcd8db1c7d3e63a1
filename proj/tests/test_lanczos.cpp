#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sanc/lanczos.hpp"
#include "test_helpers.hpp"

using namespace sanc;
using namespace sanc_test;

TEST_CASE("identity operator breaks down at j=1") {
  LinearOperator I;
  I.dim = 3;
  I.apply = [](const Vector& v) { return v; };
  const KrylovBasis basis = lanczos_expand(I, Vector{0.3, -1.2, 0.5}, 3);
  CHECK(basis.size() == 1);
  CHECK(basis.alphas[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(basis.breakdown);
}

TEST_CASE("eigenvector start vector breaks down at j=1") {
  const auto B = dense_operator(diag_matrix({1, 2, 3}));
  const KrylovBasis basis = lanczos_expand(B, Vector{1, 0, 0}, 3);
  CHECK(basis.size() == 1);
  CHECK(basis.alphas[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(basis.breakdown);
}

TEST_CASE("full Krylov space reproduces the spectrum of diag(1,2,3)") {
  const auto B = dense_operator(diag_matrix({1, 2, 3}));
  const double s = 1.0 / std::sqrt(3.0);
  const KrylovBasis basis = lanczos_expand(B, Vector{s, s, s}, 3);
  REQUIRE(basis.size() == 3);
  const TridiagEigen eig = tridiag_eigen(basis.alphas, basis.betas);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("zero start vector is rejected") {
  const auto B = dense_operator(diag_matrix({1, 2}));
  CHECK_THROWS_AS(lanczos_expand(B, Vector{0, 0}, 2), std::invalid_argument);
}

TEST_CASE("tridiag_eigen small cases") {
  SUBCASE("1x1") {
    const TridiagEigen e = tridiag_eigen(std::vector<double>{4.5}, std::vector<double>{});
    CHECK(e.values[0] == 4.5);
    CHECK(std::abs(e.vectors[0][0]) == 1.0);
  }
  SUBCASE("antisymmetric pair") {
    const TridiagEigen e = tridiag_eigen(std::vector<double>{0, 0}, std::vector<double>{1});
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("uniform 3x3: 2 + {-sqrt2, 0, sqrt2}") {
    const TridiagEigen e = tridiag_eigen(std::vector<double>{2, 2, 2}, std::vector<double>{1, 1});
    const double r2 = std::sqrt(2.0);
    CHECK(e.values[0] == doctest::Approx(2.0 - r2).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(2.0 + r2).epsilon(1e-12));
  }
}

TEST_CASE("tridiag_eigen eigenpairs satisfy T v = lambda v") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t j = 1 + gen() % 5;
    std::vector<double> a(j), b(j > 0 ? j - 1 : 0);
    for (double& x : a) x = u(gen);
    for (double& x : b) x = u(gen);
    const TridiagEigen e = tridiag_eigen(a, b);
    for (std::size_t k = 0; k < j; ++k) {
      for (std::size_t i = 0; i < j; ++i) {
        double tv = a[i] * e.vectors[k][i];
        if (i > 0) tv += b[i - 1] * e.vectors[k][i - 1];
        if (i + 1 < j) tv += b[i] * e.vectors[k][i + 1];
        CHECK(tv == doctest::Approx(e.values[k] * e.vectors[k][i]).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("ritz leftmost finds the negative eigenvalue") {
  const auto A = diag_matrix({-2, 1, 3});
  const auto B = dense_operator(A);
  const KrylovBasis basis = lanczos_expand(B, Vector{0.5, 0.4, 0.6}, 3);
  const RitzPair pair = ritz_leftmost(basis);
  CHECK(pair.value == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(std::abs(pair.vector[0]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(norm2(pair.vector) == doctest::Approx(1.0).epsilon(1e-12));
  // value matches v^T B v when refreshed against the operator
  CHECK(dot(pair.vector, B.apply(pair.vector)) == doctest::Approx(pair.value).epsilon(1e-8));
}

TEST_CASE("Ritz values interlace: leftmost never undershoots lambda_min") {
  const auto B = dense_operator(diag_matrix({1, 2, 3}));
  const double s = 1.0 / std::sqrt(3.0);
  const KrylovBasis basis = lanczos_expand(B, Vector{s, s, s}, 2);
  REQUIRE(basis.size() == 2);
  CHECK(ritz_leftmost(basis).value >= 1.0 - 1e-10);
}

TEST_CASE("orthonormality, tridiagonal relation, interlacing on random instances") {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 5 + gen() % 46;  // up to 50
    const auto A = random_symmetric(d, gen, 2.0);
    const auto B = dense_operator(A);
    const Vector g = random_vector(d, gen);
    const std::size_t j_max = 1 + gen() % 5;
    const KrylovBasis basis = lanczos_expand(B, g, j_max);
    const std::size_t j = basis.size();

    // Q^T Q = I
    for (std::size_t a = 0; a < j; ++a)
      for (std::size_t b = 0; b < j; ++b)
        CHECK(std::abs(dot(basis.Q[a], basis.Q[b]) - (a == b ? 1.0 : 0.0)) <= 1e-10);

    // ||Q^T B Q - T||_F <= 1e-8 * max(1, ||T||_F)
    double diff_f = 0.0, t_f = 0.0;
    for (std::size_t a = 0; a < j; ++a) {
      const Vector Bq = B.apply(basis.Q[a]);
      for (std::size_t b = 0; b < j; ++b) {
        double tab = 0.0;
        if (a == b) tab = basis.alphas[a];
        else if (a + 1 == b) tab = basis.betas[a];
        else if (b + 1 == a) tab = basis.betas[b];
        const double qbq = dot(basis.Q[b], Bq);
        diff_f += (qbq - tab) * (qbq - tab);
        t_f += tab * tab;
      }
    }
    CHECK(std::sqrt(diff_f) <= 1e-8 * std::max(1.0, std::sqrt(t_f)));

    // interlacing vs the dense oracle
    CHECK(ritz_leftmost(basis).value >= dense_lambda_min(A) - 1e-10);
  }
}

TEST_CASE("identical inputs produce bit-identical bases") {
  std::mt19937_64 gen(23);
  const auto A = random_symmetric(12, gen);
  const auto B = dense_operator(A);
  const Vector g = random_vector(12, gen);
  const KrylovBasis b1 = lanczos_expand(B, g, 5);
  const KrylovBasis b2 = lanczos_expand(B, g, 5);
  REQUIRE(b1.size() == b2.size());
  CHECK(b1.alphas == b2.alphas);
  CHECK(b1.betas == b2.betas);
  for (std::size_t k = 0; k < b1.size(); ++k) CHECK(b1.Q[k] == b2.Q[k]);
}
