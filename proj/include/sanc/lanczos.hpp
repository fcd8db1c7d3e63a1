#pragma once

#include <vector>

#include "sanc/vec.hpp"

namespace sanc {

// Orthonormal Krylov basis of K_j(g, B) with the projected tridiagonal
// Q^T B Q = T. Column 0 is g/||g||. Immutable after construction.
struct KrylovBasis {
  std::vector<Vector> Q;       // j orthonormal columns, each length d
  std::vector<double> alphas;  // diagonal of T, length j
  std::vector<double> betas;   // off-diagonal of T, length j-1
  double gamma0 = 0.0;         // ||g||
  bool breakdown = false;

  std::size_t size() const { return Q.size(); }
  std::size_t dim() const { return Q.empty() ? 0 : Q.front().size(); }

  // Lift a reduced-space vector u (length j) back to R^d: s = Q u.
  Vector lift(std::span<const double> u) const;
};

// Lanczos with full reorthogonalization against all previous columns.
// Stops at j_max or at breakdown (beta < breakdown_tol, taken relative to
// ||g|| by the default argument convention of the caller). Exactly one
// operator application per step.
KrylovBasis lanczos_expand(const LinearOperator& B, const Vector& g, std::size_t j_max,
                           double breakdown_tol = -1.0);

struct TridiagEigen {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> vectors; // vectors[k] is the unit eigenvector of values[k]
};

// All eigenpairs of the symmetric tridiagonal (alphas, betas) via QL with
// implicit shifts. j is small here (<= 5 in practice) so cost is irrelevant.
TridiagEigen tridiag_eigen(std::span<const double> alphas, std::span<const double> betas);

struct RitzPair {
  double value = 0.0;  // leftmost eigenvalue of T
  Vector vector;       // Q * (its eigenvector), unit norm in R^d
};

RitzPair ritz_leftmost(const KrylovBasis& basis);

}  // namespace sanc
