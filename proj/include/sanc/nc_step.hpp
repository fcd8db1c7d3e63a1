#pragma once

#include "sanc/lanczos.hpp"
#include "sanc/vec.hpp"

namespace sanc {

struct CurvatureProbe {
  Vector v;               // unit vector, approximate leftmost eigenvector
  double curvature = 0.0; // v.Bv (Ritz value)
  double eps_prime = 0.0; // accuracy target max{eps, ||g||}/2 in effect
};

CurvatureProbe curvature_probe(const KrylovBasis& basis, const Vector& g, double eps);

enum class NcKind { negative_curvature, gradient };

struct NcDirection {
  Vector d;
  NcKind kind = NcKind::gradient;
};

// Update direction for an unsuccessful iteration: picks the branch with the
// larger expected-decrease surrogate. z is a Rademacher sign applied to the
// negative-curvature branch.
NcDirection nc_direction(const CurvatureProbe& probe, const Vector& g, double L1, double L2,
                         double eps, double eps_g, int z);

}  // namespace sanc
