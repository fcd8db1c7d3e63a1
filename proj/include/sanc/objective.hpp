#pragma once

#include <memory>

#include "sanc/dataset.hpp"
#include "sanc/vec.hpp"

namespace sanc {

// Finite-sum objective f(x) = (1/n) sum_i f_i(x). Per-example accumulators
// add into `out` so batch estimators control summation order themselves.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t num_examples() const = 0;
  virtual std::size_t dim() const = 0;

  virtual double value_one(const Vector& x, std::size_t i) const = 0;
  virtual void grad_one_accum(const Vector& x, std::size_t i, Vector& out) const = 0;
  virtual void hvp_one_accum(const Vector& x, const Vector& v, std::size_t i,
                             Vector& out) const = 0;

  double full_value(const Vector& x) const;
  Vector full_gradient(const Vector& x) const;
  Vector full_hvp(const Vector& x, const Vector& v) const;
};

// Binary cross-entropy with sigmoid link, labels in {0,1}, plus the
// nonconvex regularizer lambda * sum_k w_k^2 / (1 + w_k^2) added to every
// per-example term so batch estimators stay unbiased for the full objective.
std::unique_ptr<Objective> logistic_nonconvex(const Dataset& ds, double lambda);

// f_i(x) = 1 - tanh(r_i x.q_i) + lambda ||x||^2, labels in {-1,+1}.
std::unique_ptr<Objective> nonconvex_svm(const Dataset& ds, double lambda);

// f(w) = w1^4/4 - w1^2/2 + (1/2) sum_{k>=2} w_k^2 as a single-example model.
// Strict saddle at the origin with Hessian diag(-1, 1, ..., 1); global
// minima at w1 = +-1 with value -1/4.
std::unique_ptr<Objective> synthetic_saddle(std::size_t d);

}  // namespace sanc
