#include "sanc/finite_diff.hpp"

#include <cmath>
#include <stdexcept>

namespace sanc {

Vector finite_diff_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                            double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_diff_gradient: h must be positive");
  Vector g(x.size(), 0.0);
  Vector xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw std::domain_error("finite_diff_gradient: non-finite function value");
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Vector finite_diff_hvp(const std::function<Vector(const Vector&)>& grad, const Vector& x,
                       const Vector& v, double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_diff_hvp: h must be positive");
  if (norm2(v) == 0.0) throw std::invalid_argument("finite_diff_hvp: zero direction");
  Vector xp = x;
  axpy(h, v, xp);
  Vector gp = grad(xp);
  Vector xm = x;
  axpy(-h, v, xm);
  Vector gm = grad(xm);
  require_finite(gp, "finite_diff_hvp gradient");
  require_finite(gm, "finite_diff_hvp gradient");
  Vector out = sub(gp, gm);
  scale(out, 1.0 / (2.0 * h));
  return out;
}

}  // namespace sanc
