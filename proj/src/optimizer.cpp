#include "sanc/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "sanc/cubic.hpp"
#include "sanc/nc_step.hpp"
#include "sanc/rng.hpp"

namespace sanc {

OptimizerKind optimizer_kind_from_string(const std::string& s) {
  if (s == "sanc") return OptimizerKind::sanc;
  if (s == "scr") return OptimizerKind::scr;
  if (s == "cr") return OptimizerKind::cr;
  if (s == "ncd") return OptimizerKind::ncd;
  if (s == "sgd") return OptimizerKind::sgd;
  throw std::invalid_argument("unknown optimizer kind: " + s);
}

std::string to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::sanc: return "sanc";
    case OptimizerKind::scr: return "scr";
    case OptimizerKind::cr: return "cr";
    case OptimizerKind::ncd: return "ncd";
    case OptimizerKind::sgd: return "sgd";
  }
  return "?";
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::newton: return "newton";
    case StepKind::negative_curvature: return "negative_curvature";
    case StepKind::gradient: return "gradient";
  }
  return "?";
}

std::string to_string(SuccessClass c) {
  switch (c) {
    case SuccessClass::very_successful: return "very_successful";
    case SuccessClass::successful: return "successful";
    case SuccessClass::unsuccessful: return "unsuccessful";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::max_iter: return "max_iter";
    case StopReason::error: return "error";
  }
  return "?";
}

void SancConfig::validate() const {
  if (gamma <= 1.0) throw std::invalid_argument("gamma > 1 required");
  if (!(eta1 > 0.0 && eta1 < eta2 && eta2 < 1.0))
    throw std::invalid_argument("0 < eta1 < eta2 < 1 required");
  if (sigma0 <= 0.0) throw std::invalid_argument("sigma0 > 0 required");
  if (L1 <= 0.0 || L2 <= 0.0) throw std::invalid_argument("L1, L2 > 0 required");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps in (0,1) required");
  if (eps_g <= 0.0 || eps_B <= 0.0) throw std::invalid_argument("eps_g, eps_B > 0 required");
  if (eps_s <= 0.0) throw std::invalid_argument("eps_s > 0 required");
  if (eps_m <= 0.0) throw std::invalid_argument("eps_m > 0 required");
  if (j_max < 1) throw std::invalid_argument("j_max >= 1 required");
  if (max_iter < 1) throw std::invalid_argument("max_iter >= 1 required");
  if (sgd_step <= 0.0) throw std::invalid_argument("sgd_step > 0 required");
  if (cr_sigma <= 0.0) throw std::invalid_argument("cr_sigma > 0 required");
  if (oracle_budget < 0) throw std::invalid_argument("oracle_budget >= 0 required");
}

std::vector<std::string> config_warnings(const SancConfig& cfg) {
  std::vector<std::string> warnings;
  const double floor = std::max(3.0 * cfg.eps_g, 144.0 * cfg.eps_B * cfg.eps_B);
  if (cfg.eps <= floor)
    warnings.push_back("eps <= max{3 eps_g, 144 eps_B^2}: accuracy target below the "
                       "approximation-bound floor");
  return warnings;
}

double sigma_max_bound(const SancConfig& cfg) {
  return std::max(cfg.sigma0, cfg.gamma * (1.5 * cfg.L2 + 3.0 * (cfg.eps_g + 0.5 * cfg.eps_B) /
                                                             (cfg.eps_s * cfg.eps_s)));
}

std::optional<double> rho_value(double f_x, double f_xs, double model_value) {
  const double predicted = f_x - model_value;
  if (predicted <= 1e-15 * std::max(1.0, std::abs(f_x))) return std::nullopt;
  return (f_x - f_xs) / predicted;
}

double sigma_update(double sigma, const std::optional<double>& rho, double grad_norm,
                    const SancConfig& cfg) {
  if (rho && *rho > cfg.eta2) return std::max(std::min(sigma, grad_norm), cfg.eps_m);
  if (rho && *rho >= cfg.eta1) return sigma;
  return cfg.gamma * sigma;
}

namespace {

Vector random_unit_vector(std::size_t d, Rng& rng) {
  Vector v(d);
  for (double& e : v) e = 2.0 * rng.uniform() - 1.0;
  const double nrm = norm2(v);
  if (nrm == 0.0) { Vector e(d, 0.0); e[0] = 1.0; return e; }
  scale(v, 1.0 / nrm);
  return v;
}

struct LoopState {
  Vector x;
  double sigma;
  long oracle = 0;
};

}  // namespace

Trace run(OptimizerKind kind, const Objective& obj, const SancConfig& cfg, const Vector& x0) {
  cfg.validate();
  if (x0.size() != obj.dim()) throw std::invalid_argument("run: x0 dimension mismatch");
  require_finite(x0, "initial point");

  const std::size_t n = obj.num_examples();
  const std::size_t bg = cfg.batch.size_g == 0 ? n : std::min(cfg.batch.size_g, n);
  const std::size_t bB = cfg.batch.size_B == 0 ? n : std::min(cfg.batch.size_B, n);

  Rng rng_g = Rng::substream(cfg.seed, "batches-g");
  Rng rng_B = Rng::substream(cfg.seed, "batches-B");
  Rng rng_f = Rng::substream(cfg.seed, "batches-f");
  Rng rng_z = Rng::substream(cfg.seed, "rademacher");
  Rng rng_probe = Rng::substream(cfg.seed, "probe");

  LoopState st{x0, kind == OptimizerKind::cr ? cfg.cr_sigma : cfg.sigma0};
  Trace trace;

  const bool second_order = kind != OptimizerKind::sgd;
  const bool uses_rho =
      kind == OptimizerKind::sanc || kind == OptimizerKind::scr || kind == OptimizerKind::cr;

  for (std::size_t t = 0; t < cfg.max_iter; ++t) {
    if (cfg.oracle_budget > 0 && st.oracle >= cfg.oracle_budget) break;

    IndexSet S_g = sample_index_set(n, bg, cfg.batch.replacement, rng_g);
    const Vector g = stochastic_gradient(obj, st.x, S_g);
    st.oracle += static_cast<long>(bg);
    const double gnorm = norm2(g);

    IterationRecord rec;
    rec.t = t;
    rec.grad_norm = gnorm;
    rec.sigma = st.sigma;

    if (!second_order) {
      if (gnorm <= cfg.eps) {
        trace.stop_reason = StopReason::converged;
        break;
      }
      rec.f_value = obj.full_value(st.x);  // telemetry only, not charged
      rec.step_kind = StepKind::gradient;
      rec.success_class = SuccessClass::successful;
      rec.step_norm = cfg.sgd_step * gnorm;
      rec.oracle_calls_cum = st.oracle;
      axpy(-cfg.sgd_step, g, st.x);
      trace.records.push_back(rec);
      continue;
    }

    IndexSet S_B = sample_index_set(n, bB, cfg.batch.replacement, rng_B);
    const LinearOperator B_raw = stochastic_hvp_operator(obj, st.x, std::move(S_B));
    LinearOperator B;
    B.dim = B_raw.dim;
    long* oracle_ptr = &st.oracle;
    const long apply_cost = static_cast<long>(bB);
    B.apply = [&B_raw, oracle_ptr, apply_cost](const Vector& v) {
      *oracle_ptr += apply_cost;
      return B_raw.apply(v);
    };

    // Krylov space from g, or from a seeded random probe when the gradient
    // vanishes (no Newton step exists but curvature can still be probed).
    const bool have_newton = gnorm > 0.0;
    const Vector start = have_newton ? g : random_unit_vector(obj.dim(), rng_probe);
    const KrylovBasis basis = lanczos_expand(B, start, cfg.j_max);
    const RitzPair ritz = ritz_leftmost(basis);
    rec.ritz_value = ritz.value;

    if (gnorm <= cfg.eps && ritz.value >= -cfg.eps) {
      trace.stop_reason = StopReason::converged;
      break;
    }

    double f_x = 0.0, f_xs = 0.0;
    SubspaceSolution sol;
    std::optional<double> rho;
    if (uses_rho) {
      IndexSet S_f;
      if (cfg.estimate_f) S_f = sample_index_set(n, bg, cfg.batch.replacement, rng_f);
      f_x = cfg.estimate_f ? batch_value(obj, st.x, S_f) : obj.full_value(st.x);
      st.oracle += static_cast<long>(cfg.estimate_f ? bg : n);
      if (have_newton) {
        CubicModel model{f_x, g, B, st.sigma};
        sol = minimize_over_krylov(model, basis);
        Vector xs = st.x;
        axpy(1.0, sol.s, xs);
        f_xs = cfg.estimate_f ? batch_value(obj, xs, S_f) : obj.full_value(xs);
        st.oracle += static_cast<long>(cfg.estimate_f ? bg : n);
        rho = rho_value(f_x, f_xs, sol.model_value);
      } else {
        sol.s.assign(obj.dim(), 0.0);
        sol.model_value = f_x;  // zero predicted decrease -> guarded
      }
      rec.f_value = f_x;
      rec.rho = rho;
      rec.success_class = (rho && *rho > cfg.eta2)    ? SuccessClass::very_successful
                          : (rho && *rho >= cfg.eta1) ? SuccessClass::successful
                                                      : SuccessClass::unsuccessful;
    } else {
      rec.f_value = obj.full_value(st.x);  // telemetry only (ncd)
      rec.success_class = SuccessClass::successful;
    }

    bool stationary_stop = false;
    switch (kind) {
      case OptimizerKind::cr: {
        // Fixed sigma, always accept.
        rec.step_kind = StepKind::newton;
        rec.step_norm = norm2(sol.s);
        axpy(1.0, sol.s, st.x);
        break;
      }
      case OptimizerKind::scr: {
        rec.step_kind = StepKind::newton;
        if (rec.success_class != SuccessClass::unsuccessful) {
          rec.step_norm = norm2(sol.s);
          axpy(1.0, sol.s, st.x);
        } else {
          rec.step_norm = 0.0;  // iterate frozen
        }
        st.sigma = sigma_update(st.sigma, rho, gnorm, cfg);
        break;
      }
      case OptimizerKind::sanc: {
        if (rec.success_class != SuccessClass::unsuccessful) {
          rec.step_kind = StepKind::newton;
          rec.step_norm = norm2(sol.s);
          axpy(1.0, sol.s, st.x);
        } else {
          CurvatureProbe probe{ritz.vector, ritz.value, std::max(cfg.eps, gnorm) / 2.0};
          const int z = rng_z.rademacher();
          const NcDirection dir =
              nc_direction(probe, g, cfg.L1, cfg.L2, cfg.eps, cfg.eps_g, z);
          rec.step_kind = dir.kind == NcKind::negative_curvature
                              ? StepKind::negative_curvature
                              : StepKind::gradient;
          rec.step_norm = norm2(dir.d);
          axpy(1.0, dir.d, st.x);
          if (rec.step_norm == 0.0 && norm2(sol.s) <= cfg.eps_s) stationary_stop = true;
        }
        st.sigma = sigma_update(st.sigma, rho, gnorm, cfg);
        break;
      }
      case OptimizerKind::ncd: {
        CurvatureProbe probe{ritz.vector, ritz.value, std::max(cfg.eps, gnorm) / 2.0};
        const int z = rng_z.rademacher();
        const NcDirection dir = nc_direction(probe, g, cfg.L1, cfg.L2, cfg.eps, cfg.eps_g, z);
        rec.step_kind = dir.kind == NcKind::negative_curvature ? StepKind::negative_curvature
                                                               : StepKind::gradient;
        rec.step_norm = norm2(dir.d);
        axpy(1.0, dir.d, st.x);
        if (rec.step_norm == 0.0) stationary_stop = true;
        break;
      }
      case OptimizerKind::sgd:
        break;  // handled above
    }

    require_finite(st.x, "iterate");
    rec.oracle_calls_cum = st.oracle;
    trace.records.push_back(rec);
    if (stationary_stop) {
      trace.stop_reason = StopReason::converged;
      break;
    }
  }

  trace.final_x = st.x;
  trace.oracle_calls = st.oracle;
  return trace;
}

}  // namespace sanc
