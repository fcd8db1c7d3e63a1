#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sanc/lanczos.hpp"
#include "sanc/vec.hpp"

namespace sanc {

// Local cubic model m(s) = f0 + g.s + 0.5 s.Bs + (sigma/3)||s||^3.
struct CubicModel {
  double f0 = 0.0;
  Vector g;
  LinearOperator B;
  double sigma = 1.0;
};

double eval_model(const CubicModel& m, const Vector& s);

// Best point along -g under the cubic model: s_c = -alpha_c * g with
// alpha_c the positive root of sigma||g||^3 a^2 + (g.Bg) a - ||g||^2 = 0.
Vector cauchy_point(const CubicModel& m);

struct TridiagCubicResult {
  std::vector<double> u;
  bool converged = false;
  bool hard_case = false;
  int iterations = 0;
};

// Global minimizer of  gamma0 u.e1 + 0.5 u.Tu + (sigma/3)||u||^3  for the
// symmetric tridiagonal T. Solved as a 1-D fixed point on r = ||u||:
// u(r) = -gamma0 (T + sigma r I)^{-1} e1 on r > max(0, -lmin(T))/sigma,
// safeguarded Newton/bisection on ||u(r)|| - r. The hard case (leftmost
// eigencomponent of e1 vanishes) adds an eigenvector component so that
// ||u|| = -lmin(T)/sigma.
TridiagCubicResult solve_tridiag_cubic(std::span<const double> alphas,
                                       std::span<const double> betas, double gamma0, double sigma,
                                       double tol = 1e-10, int max_iter = 100);

struct SubspaceSolution {
  std::vector<double> u;     // reduced coordinates, length j
  Vector s;                  // Q u
  double model_value = 0.0;  // m(s)
  double model_decrease = 0.0;
  bool used_cauchy_fallback = false;
};

// Minimize the cubic model over the Krylov subspace spanned by basis.
// Falls back to the Cauchy point if the reduced solver fails; the returned
// step always satisfies the Cauchy condition m(s) <= m(s_c).
SubspaceSolution minimize_over_krylov(const CubicModel& m, const KrylovBasis& basis,
                                      double tol = 1e-10);

struct StepConditions {
  double eq_residual = 0.0;   // g.s + s.Bs + sigma||s||^3
  double psd_value = 0.0;     // s.Bs + sigma||s||^3
};

StepConditions verify_step_conditions(const CubicModel& m, const Vector& s);

// Reduced-space model value: f0 + gamma0 u1 + 0.5 u.Tu + (sigma/3)||u||^3.
double reduced_model_value(std::span<const double> alphas, std::span<const double> betas,
                           double gamma0, double sigma, double f0, std::span<const double> u);

}  // namespace sanc
