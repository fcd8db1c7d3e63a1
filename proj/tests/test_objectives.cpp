#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sanc/finite_diff.hpp"
#include "sanc/objective.hpp"
#include "test_helpers.hpp"

using namespace sanc;
using namespace sanc_test;

namespace {

Dataset dense_dataset(std::size_t n, std::size_t d, double pos_label, double neg_label,
                      std::uint64_t seed) {
  Dataset ds;
  ds.dim = d;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Dataset::Row row;
    for (std::size_t k = 0; k < d; ++k) row.push_back({k, u(gen)});
    ds.rows.push_back(row);
    ds.labels.push_back(i % 2 == 0 ? pos_label : neg_label);
  }
  return ds;
}

}  // namespace

TEST_CASE("logistic objective anchors") {
  const Dataset ds = dense_dataset(10, 3, 1.0, 0.0, 5);
  const auto obj = logistic_nonconvex(ds, 1.0);
  CHECK(obj->num_examples() == 10);
  CHECK(obj->dim() == 3);

  SUBCASE("w = 0: every example costs log 2, regularizer vanishes") {
    const Vector w(3, 0.0);
    CHECK(obj->full_value(w) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("regularizer contributes lambda/2 per unit coordinate") {
    // Example with no features: only the regularizer term remains.
    Dataset empty;
    empty.dim = 2;
    empty.rows.push_back({});
    empty.labels.push_back(1.0);
    const auto reg = logistic_nonconvex(empty, 1.0);
    // label 1, z = 0 -> bce = log 2; Omega(1,0) = 1/2
    CHECK(reg->full_value(Vector{1.0, 0.0}) ==
          doctest::Approx(std::log(2.0) + 0.5).epsilon(1e-14));
    // Omega'(1) = 2*1/(1+1)^2 = 1/2, bce' at z=0 with no features = 0
    Vector g(2, 0.0);
    reg->grad_one_accum(Vector{1.0, 0.0}, 0, g);
    CHECK(g[0] == doctest::Approx(0.5 + 0.0).epsilon(1e-14));
    CHECK(g[1] == 0.0);
  }
  SUBCASE("extreme scores stay finite") {
    CHECK(std::isfinite(obj->full_value(Vector{1e4, -1e4, 1e4})));
    CHECK(std::isfinite(norm2(obj->full_gradient(Vector{1e4, -1e4, 1e4}))));
  }
  SUBCASE("labels outside {0,1} are rejected") {
    const Dataset bad = dense_dataset(4, 2, 1.0, -1.0, 9);
    CHECK_THROWS_AS(logistic_nonconvex(bad, 1.0), std::invalid_argument);
  }
}

TEST_CASE("nonconvex svm anchors") {
  const Dataset ds = dense_dataset(8, 3, 1.0, -1.0, 13);
  const auto obj = nonconvex_svm(ds, 0.2);

  SUBCASE("x = 0: tanh(0) = 0 so every f_i = 1") {
    CHECK(obj->full_value(Vector(3, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("labels outside {-1,+1} are rejected") {
    const Dataset bad = dense_dataset(4, 2, 1.0, 0.0, 9);
    CHECK_THROWS_AS(nonconvex_svm(bad, 0.2), std::invalid_argument);
  }
}

TEST_CASE("synthetic saddle anchors") {
  const auto obj = synthetic_saddle(4);
  CHECK(obj->num_examples() == 1);
  CHECK(obj->dim() == 4);

  const Vector origin(4, 0.0);
  CHECK(obj->full_value(origin) == 0.0);
  CHECK(norm2(obj->full_gradient(origin)) == 0.0);

  // Hessian at the origin is diag(-1, 1, 1, 1)
  Vector e1(4, 0.0);
  e1[0] = 1.0;
  CHECK(obj->full_hvp(origin, e1)[0] == doctest::Approx(-1.0).epsilon(1e-14));
  Vector e2(4, 0.0);
  e2[1] = 1.0;
  CHECK(obj->full_hvp(origin, e2)[1] == doctest::Approx(1.0).epsilon(1e-14));

  for (double w1 : {1.0, -1.0}) {
    Vector m(4, 0.0);
    m[0] = w1;
    CHECK(obj->full_value(m) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(norm2(obj->full_gradient(m)) <= 1e-14);
  }

  CHECK_THROWS_AS(synthetic_saddle(1), std::invalid_argument);
}

TEST_CASE("gradients and hvps match finite differences") {
  std::mt19937_64 gen(21);
  const Dataset ds_log = dense_dataset(12, 4, 1.0, 0.0, 33);
  const Dataset ds_svm = dense_dataset(12, 4, 1.0, -1.0, 34);
  const auto objs = {
      std::make_pair(logistic_nonconvex(ds_log, 0.7).release(), "logistic"),
      std::make_pair(nonconvex_svm(ds_svm, 0.3).release(), "svm"),
      std::make_pair(synthetic_saddle(4).release(), "saddle"),
  };
  for (const auto& [raw, name] : objs) {
    std::unique_ptr<Objective> obj(raw);
    CAPTURE(name);
    auto f = [&obj](const Vector& x) { return obj->full_value(x); };
    auto grad = [&obj](const Vector& x) { return obj->full_gradient(x); };
    for (int rep = 0; rep < 10; ++rep) {
      const Vector x = random_vector(4, gen);
      const Vector g = obj->full_gradient(x);
      const Vector g_fd = finite_diff_gradient(f, x);
      CHECK(norm2(sub(g, g_fd)) <= 1e-6 * std::max(1.0, norm2(g)));

      const Vector v = random_vector(4, gen);
      const Vector hv = obj->full_hvp(x, v);
      const Vector hv_fd = finite_diff_hvp(grad, x, v);
      CHECK(norm2(sub(hv, hv_fd)) <= 1e-6 * std::max(1.0, norm2(hv)));
    }
  }
}

TEST_CASE("hvp is symmetric in the probe vectors") {
  std::mt19937_64 gen(77);
  const Dataset ds = dense_dataset(10, 5, 1.0, 0.0, 55);
  const auto obj = logistic_nonconvex(ds, 1.0);
  const Vector x = random_vector(5, gen);
  for (int rep = 0; rep < 10; ++rep) {
    const Vector a = random_vector(5, gen);
    const Vector b = random_vector(5, gen);
    CHECK(dot(a, obj->full_hvp(x, b)) ==
          doctest::Approx(dot(b, obj->full_hvp(x, a))).epsilon(1e-9));
  }
}

TEST_CASE("full quantities equal the average of per-example terms") {
  const Dataset ds = dense_dataset(6, 3, 1.0, -1.0, 61);
  const auto obj = nonconvex_svm(ds, 0.4);
  const Vector x{0.2, -0.5, 0.8};
  double fsum = 0.0;
  Vector gsum(3, 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    fsum += obj->value_one(x, i);
    obj->grad_one_accum(x, i, gsum);
  }
  CHECK(obj->full_value(x) == doctest::Approx(fsum / 6.0).epsilon(1e-14));
  const Vector g = obj->full_gradient(x);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(g[k] == doctest::Approx(gsum[k] / 6.0).epsilon(1e-12));
}
