#pragma once

#include <cstdint>
#include <vector>

#include "sanc/objective.hpp"
#include "sanc/rng.hpp"
#include "sanc/vec.hpp"

namespace sanc {

struct BatchSpec {
  std::size_t size_g = 1;
  std::size_t size_B = 1;
  bool replacement = false;
  std::uint64_t seed = 0;
};

struct SamplingConstants {
  double L0 = 1.0;
  double L1 = 1.0;
  double L2 = 1.0;
  double delta = 0.1;
  double eps_g = 0.1;
  double eps_B = 0.1;
};

// |S_g| >= 4 L0^2 (1 + 2 sqrt(log(1/delta)))^2 / eps_g^2, rounded up.
std::size_t gradient_batch_size(const SamplingConstants& c);

// |S_B| >= 16 L1^2 log(2d/delta) / eps_B^2, rounded up.
std::size_t hessian_batch_size(const SamplingConstants& c, std::size_t d);

using IndexSet = std::vector<std::size_t>;

// One batch of `size` indices from [0, n), sorted. Without replacement uses a
// partial Fisher-Yates shuffle; with replacement draws independently.
IndexSet sample_index_set(std::size_t n, std::size_t size, bool replacement, Rng& rng);

struct Batches {
  IndexSet S_g;
  IndexSet S_B;
};

// S_g and S_B come from the two supplied (independent) substreams.
Batches sample_batches(std::size_t n, const BatchSpec& spec, Rng& rng_g, Rng& rng_B);

double batch_value(const Objective& obj, const Vector& x, const IndexSet& S);
Vector stochastic_gradient(const Objective& obj, const Vector& x, const IndexSet& S);

// Matrix-free averaged-Hessian operator over the batch. Each apply costs
// |S_B| per-example Hessian-vector products.
LinearOperator stochastic_hvp_operator(const Objective& obj, const Vector& x, IndexSet S);

}  // namespace sanc
