#include "sanc/nc_step.hpp"

#include <cmath>
#include <stdexcept>

namespace sanc {

CurvatureProbe curvature_probe(const KrylovBasis& basis, const Vector& g, double eps) {
  const RitzPair ritz = ritz_leftmost(basis);
  CurvatureProbe probe;
  probe.v = ritz.vector;
  probe.curvature = ritz.value;
  probe.eps_prime = std::max(eps, norm2(g)) / 2.0;
  return probe;
}

NcDirection nc_direction(const CurvatureProbe& probe, const Vector& g, double L1, double L2,
                         double eps, double eps_g, int z) {
  if (L1 <= 0.0 || L2 <= 0.0) throw std::invalid_argument("nc_direction: L1, L2 must be positive");
  if (z != 1 && z != -1) throw std::invalid_argument("nc_direction: z must be +1 or -1");

  const double c = probe.curvature;
  const double gnorm = norm2(g);
  const double nc_surrogate =
      2.0 * std::pow(-c, 3) / (3.0 * L2 * L2) - eps * c * c / (6.0 * L2 * L2);
  const double grad_surrogate = gnorm * gnorm / (4.0 * L1) - eps_g * eps_g / L1;

  NcDirection out;
  if (nc_surrogate > grad_surrogate) {
    out.kind = NcKind::negative_curvature;
    out.d = scaled(probe.v, -2.0 * std::abs(c) / L2 * static_cast<double>(z));
  } else {
    out.kind = NcKind::gradient;
    out.d = scaled(g, -1.0 / L1);
  }
  return out;
}

}  // namespace sanc
