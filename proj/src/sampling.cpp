#include "sanc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sanc {

std::size_t gradient_batch_size(const SamplingConstants& c) {
  if (c.L0 <= 0.0 || c.eps_g <= 0.0 || c.delta <= 0.0 || c.delta >= 1.0)
    throw std::invalid_argument("gradient_batch_size: invalid constants");
  const double root = 1.0 + 2.0 * std::sqrt(std::log(1.0 / c.delta));
  const double bound = 4.0 * c.L0 * c.L0 * root * root / (c.eps_g * c.eps_g);
  return static_cast<std::size_t>(std::ceil(bound));
}

std::size_t hessian_batch_size(const SamplingConstants& c, std::size_t d) {
  if (c.L1 <= 0.0 || c.eps_B <= 0.0 || c.delta <= 0.0 || c.delta >= 1.0 || d < 1)
    throw std::invalid_argument("hessian_batch_size: invalid constants");
  const double bound =
      16.0 * c.L1 * c.L1 * std::log(2.0 * static_cast<double>(d) / c.delta) / (c.eps_B * c.eps_B);
  return static_cast<std::size_t>(std::ceil(bound));
}

IndexSet sample_index_set(std::size_t n, std::size_t size, bool replacement, Rng& rng) {
  if (size < 1) throw std::invalid_argument("sample_index_set: size must be >= 1");
  IndexSet out;
  out.reserve(size);
  if (replacement) {
    for (std::size_t k = 0; k < size; ++k) out.push_back(rng.below(n));
  } else {
    if (size > n) throw std::invalid_argument("sample_index_set: size exceeds n without replacement");
    if (size == n) {
      out.resize(n);
      std::iota(out.begin(), out.end(), 0);
      return out;
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t j = k + rng.below(n - k);
      std::swap(pool[k], pool[j]);
      out.push_back(pool[k]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Batches sample_batches(std::size_t n, const BatchSpec& spec, Rng& rng_g, Rng& rng_B) {
  Batches b;
  b.S_g = sample_index_set(n, spec.size_g, spec.replacement, rng_g);
  b.S_B = sample_index_set(n, spec.size_B, spec.replacement, rng_B);
  return b;
}

double batch_value(const Objective& obj, const Vector& x, const IndexSet& S) {
  if (S.empty()) throw std::invalid_argument("batch_value: empty index set");
  double s = 0.0;
  for (std::size_t i : S) s += obj.value_one(x, i);
  return s / static_cast<double>(S.size());
}

Vector stochastic_gradient(const Objective& obj, const Vector& x, const IndexSet& S) {
  if (S.empty()) throw std::invalid_argument("stochastic_gradient: empty index set");
  Vector g(obj.dim(), 0.0);
  for (std::size_t i : S) obj.grad_one_accum(x, i, g);
  scale(g, 1.0 / static_cast<double>(S.size()));
  require_finite(g, "stochastic gradient");
  return g;
}

LinearOperator stochastic_hvp_operator(const Objective& obj, const Vector& x, IndexSet S) {
  if (S.empty()) throw std::invalid_argument("stochastic_hvp_operator: empty index set");
  LinearOperator op;
  op.dim = obj.dim();
  op.apply = [&obj, x, S = std::move(S)](const Vector& v) {
    Vector h(x.size(), 0.0);
    for (std::size_t i : S) obj.hvp_one_accum(x, v, i, h);
    scale(h, 1.0 / static_cast<double>(S.size()));
    return h;
  };
  return op;
}

}  // namespace sanc
