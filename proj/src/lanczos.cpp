#include "sanc/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sanc {

Vector KrylovBasis::lift(std::span<const double> u) const {
  if (u.size() != Q.size()) throw std::invalid_argument("KrylovBasis::lift: size mismatch");
  Vector s(dim(), 0.0);
  for (std::size_t k = 0; k < Q.size(); ++k) axpy(u[k], Q[k], s);
  return s;
}

KrylovBasis lanczos_expand(const LinearOperator& B, const Vector& g, std::size_t j_max,
                           double breakdown_tol) {
  const double gnorm = norm2(g);
  if (gnorm == 0.0) throw std::invalid_argument("lanczos_expand: zero start vector");
  if (j_max < 1) throw std::invalid_argument("lanczos_expand: j_max must be >= 1");
  require_finite(g, "lanczos start vector");
  if (breakdown_tol < 0.0) breakdown_tol = 1e-12 * gnorm;

  KrylovBasis basis;
  basis.gamma0 = gnorm;
  basis.Q.push_back(scaled(g, 1.0 / gnorm));

  for (std::size_t j = 0; j < j_max; ++j) {
    Vector w = B.apply(basis.Q[j]);
    require_finite(w, "operator application");
    const double alpha = dot(w, basis.Q[j]);
    basis.alphas.push_back(alpha);
    axpy(-alpha, basis.Q[j], w);
    if (j > 0) axpy(-basis.betas[j - 1], basis.Q[j - 1], w);
    // Full reorthogonalization; j stays tiny so the extra passes are free
    // and ghost eigenvalues cannot appear.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis.Q) axpy(-dot(w, q), q, w);
    const double beta = norm2(w);
    if (j + 1 == j_max) break;
    if (beta < breakdown_tol) {
      basis.breakdown = true;
      break;
    }
    basis.betas.push_back(beta);
    basis.Q.push_back(scaled(w, 1.0 / beta));
  }
  return basis;
}

// Symmetric tridiagonal QL with implicit shifts (tql2 lineage).
TridiagEigen tridiag_eigen(std::span<const double> alphas, std::span<const double> betas) {
  const std::size_t n = alphas.size();
  if (n == 0) throw std::invalid_argument("tridiag_eigen: empty matrix");
  if (betas.size() + 1 != n) throw std::invalid_argument("tridiag_eigen: size mismatch");
  require_finite(alphas, "tridiag diagonal");
  if (n > 1) require_finite(betas, "tridiag off-diagonal");

  std::vector<double> d(alphas.begin(), alphas.end());
  std::vector<double> e(n, 0.0);
  std::copy(betas.begin(), betas.end(), e.begin());
  // z: accumulated rotations, row-major n x n, starts at identity.
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 50) throw std::runtime_error("tridiag_eigen: QL failed to converge");
        double gshift = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(gshift, 1.0);
        gshift = d[m] - d[l] + e[l] / (gshift + std::copysign(r, gshift));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, gshift);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = gshift / r;
          double g2 = d[i + 1] - p;
          r = (d[i] - g2) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g2 + p;
          gshift = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            f = z[k * n + i + 1];
            z[k * n + i + 1] = s * z[k * n + i] + c * f;
            z[k * n + i] = c * z[k * n + i] - s * f;
          }
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = gshift;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagEigen out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = d[src];
    auto& v = out.vectors[k];
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = z[i * n + src];
      nrm += v[i] * v[i];
    }
    nrm = std::sqrt(nrm);
    // Fix the sign so output is deterministic across equivalent inputs.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    const double sgn = v[imax] < 0.0 ? -1.0 : 1.0;
    for (double& x : v) x *= sgn / nrm;
  }
  return out;
}

RitzPair ritz_leftmost(const KrylovBasis& basis) {
  if (basis.size() == 0) throw std::invalid_argument("ritz_leftmost: empty basis");
  const TridiagEigen eig = tridiag_eigen(basis.alphas, basis.betas);
  RitzPair pair;
  pair.value = eig.values.front();
  pair.vector = basis.lift(eig.vectors.front());
  const double nrm = norm2(pair.vector);
  scale(pair.vector, 1.0 / nrm);
  return pair;
}

}  // namespace sanc
