#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sanc/objective.hpp"
#include "sanc/sampling.hpp"
#include "sanc/vec.hpp"

namespace sanc {

enum class OptimizerKind { sanc, scr, cr, ncd, sgd };

OptimizerKind optimizer_kind_from_string(const std::string& s);
std::string to_string(OptimizerKind k);

enum class StepKind { newton, negative_curvature, gradient };
enum class SuccessClass { very_successful, successful, unsuccessful };
enum class StopReason { converged, max_iter, error };

std::string to_string(StepKind k);
std::string to_string(SuccessClass c);
std::string to_string(StopReason r);

struct SancConfig {
  double gamma = 2.0;
  double eta1 = 0.2;
  double eta2 = 0.8;
  double sigma0 = 1.0;
  double L1 = 10.0;
  double L2 = 10.0;
  double eps = 1e-3;
  double eps_g = 0.01;
  double eps_B = 0.01;
  double eps_s = 1e-8;
  double eps_m = 2.220446049250313e-16;  // machine precision floor for sigma
  std::size_t j_max = 5;
  BatchSpec batch{0, 0, false, 0};  // size_g/size_B == 0 selects full batches
  std::size_t max_iter = 1000;
  std::uint64_t seed = 0;
  double sgd_step = 0.01;
  double cr_sigma = 5.0;
  bool estimate_f = false;  // estimate f(x), f(x+s) on a third batch of size |S_g|
  long oracle_budget = 0;   // 0 = unlimited

  void validate() const;  // throws std::invalid_argument on range violations
};

// Soft precondition checks (e.g. eps vs eps_g/eps_B); returned as messages,
// never fatal.
std::vector<std::string> config_warnings(const SancConfig& cfg);

// Diagnostic upper bound on sigma_t implied by the config constants.
double sigma_max_bound(const SancConfig& cfg);

struct IterationRecord {
  std::size_t t = 0;
  double f_value = 0.0;
  double grad_norm = 0.0;
  double sigma = 0.0;
  std::optional<double> rho;        // absent when the denominator is guarded
  StepKind step_kind = StepKind::newton;
  SuccessClass success_class = SuccessClass::successful;
  std::optional<double> ritz_value; // absent for first-order methods
  double step_norm = 0.0;
  long oracle_calls_cum = 0;
};

struct Trace {
  std::vector<IterationRecord> records;
  Vector final_x;
  StopReason stop_reason = StopReason::max_iter;
  long oracle_calls = 0;
};

// rho = (f_x - f_xs) / (f_x - model_value); nullopt (classified unsuccessful)
// when the predicted decrease is below the floating-point guard.
std::optional<double> rho_value(double f_x, double f_xs, double model_value);

double sigma_update(double sigma, const std::optional<double>& rho, double grad_norm,
                    const SancConfig& cfg);

Trace run(OptimizerKind kind, const Objective& obj, const SancConfig& cfg, const Vector& x0);

}  // namespace sanc
