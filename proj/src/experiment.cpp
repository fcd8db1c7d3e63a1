#include "sanc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sanc/dataset.hpp"
#include "sanc/objective.hpp"

namespace sanc {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double require_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ConfigError(key + ": expected a number");
  return j.at(key).get<double>();
}

ObjectiveKind objective_from_string(const std::string& s) {
  if (s == "logistic_nonconvex") return ObjectiveKind::logistic_nonconvex;
  if (s == "nonconvex_svm") return ObjectiveKind::nonconvex_svm;
  if (s == "synthetic_saddle") return ObjectiveKind::synthetic_saddle;
  throw ConfigError("objective: unknown kind '" + s + "'");
}

// Scale each feature column by 1/max|value| so entries land in [-1, 1].
Dataset unit_range_scale(const Dataset& ds) {
  std::vector<double> colmax(ds.dim, 0.0);
  for (const auto& row : ds.rows)
    for (const auto& [index, value] : row) colmax[index] = std::max(colmax[index], std::abs(value));
  Dataset out = ds;
  for (auto& row : out.rows)
    for (auto& [index, value] : row)
      if (colmax[index] > 0.0) value /= colmax[index];
  return out;
}

}  // namespace

ExperimentConfig validate_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  static const std::set<std::string> known = {
      "dataset",   "objective", "saddle_dim", "lambda",   "optimizers", "seeds",
      "budget",    "out_dir",   "gamma",      "eta1",     "eta2",       "sigma0",
      "L1",        "L2",        "eps",        "eps_g",    "eps_B",      "eps_s",
      "j_max",     "batch_g",   "batch_B",    "max_iter", "sgd_step",   "cr_sigma",
      "estimate_f", "init",     "dim_override", "scale_features", "workers"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key: " + key);

  ExperimentConfig cfg;
  if (j.contains("objective")) cfg.objective = objective_from_string(j.at("objective").get<std::string>());
  if (j.contains("dataset")) cfg.dataset_path = j.at("dataset").get<std::string>();
  if (cfg.objective != ObjectiveKind::synthetic_saddle && cfg.dataset_path.empty())
    throw ConfigError("dataset: required for dataset-backed objectives");
  if (j.contains("saddle_dim")) cfg.saddle_dim = j.at("saddle_dim").get<std::size_t>();
  if (j.contains("lambda")) cfg.lambda = require_number(j, "lambda");

  if (!j.contains("optimizers") || !j.at("optimizers").is_array() || j.at("optimizers").empty())
    throw ConfigError("optimizers: a non-empty array is required");
  for (const auto& o : j.at("optimizers")) {
    try {
      cfg.optimizers.push_back(optimizer_kind_from_string(o.get<std::string>()));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("optimizers: ") + e.what());
    }
  }

  if (!j.contains("seeds") || !j.at("seeds").is_array() || j.at("seeds").empty())
    throw ConfigError("seeds: a non-empty array is required");
  for (const auto& s : j.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());

  if (j.contains("budget")) cfg.budget = j.at("budget").get<long>();
  if (cfg.budget < 0) throw ConfigError("budget: must be >= 0");
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

  SancConfig& b = cfg.base;
  if (j.contains("gamma")) b.gamma = require_number(j, "gamma");
  if (j.contains("eta1")) b.eta1 = require_number(j, "eta1");
  if (j.contains("eta2")) b.eta2 = require_number(j, "eta2");
  if (j.contains("sigma0")) b.sigma0 = require_number(j, "sigma0");
  if (j.contains("L1")) b.L1 = require_number(j, "L1");
  if (j.contains("L2")) b.L2 = require_number(j, "L2");
  if (j.contains("eps")) b.eps = require_number(j, "eps");
  if (j.contains("eps_g")) b.eps_g = require_number(j, "eps_g");
  if (j.contains("eps_B")) b.eps_B = require_number(j, "eps_B");
  if (j.contains("eps_s")) b.eps_s = require_number(j, "eps_s");
  if (j.contains("j_max")) b.j_max = j.at("j_max").get<std::size_t>();
  if (j.contains("max_iter")) b.max_iter = j.at("max_iter").get<std::size_t>();
  if (j.contains("sgd_step")) b.sgd_step = require_number(j, "sgd_step");
  if (j.contains("cr_sigma")) b.cr_sigma = require_number(j, "cr_sigma");
  if (j.contains("estimate_f")) b.estimate_f = j.at("estimate_f").get<bool>();
  if (j.contains("batch_g")) cfg.batch_g = j.at("batch_g").get<long>();
  if (j.contains("batch_B")) cfg.batch_B = j.at("batch_B").get<long>();
  if (j.contains("dim_override")) cfg.dim_override = j.at("dim_override").get<std::size_t>();
  if (j.contains("scale_features")) cfg.scale_features = j.at("scale_features").get<bool>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (cfg.workers < 1) throw ConfigError("workers: must be >= 1");
  if (j.contains("init")) {
    const std::string s = j.at("init").get<std::string>();
    if (s == "ones")
      cfg.init = InitKind::ones;
    else if (s == "zeros")
      cfg.init = InitKind::zeros;
    else
      throw ConfigError("init: expected 'ones' or 'zeros'");
  }

  try {
    b.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(b.eta1 < b.eta2)) throw ConfigError("eta1 < eta2 required");
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return validate_config(ss.str());
}

void write_trace_csv_body(std::ostream& out, const Trace& trace) {
  out << "t,f_value,grad_norm,sigma,rho,step_kind,success_class,ritz_value,step_norm,"
         "oracle_calls_cum\n";
  for (const IterationRecord& r : trace.records) {
    out << r.t << ',' << fmt(r.f_value) << ',' << fmt(r.grad_norm) << ',' << fmt(r.sigma) << ',';
    if (r.rho) out << fmt(*r.rho);
    out << ',' << to_string(r.step_kind) << ',' << to_string(r.success_class) << ',';
    if (r.ritz_value) out << fmt(*r.ritz_value);
    out << ',' << fmt(r.step_norm) << ',' << r.oracle_calls_cum << '\n';
  }
}

namespace {

std::unique_ptr<Objective> build_objective(const ExperimentConfig& cfg) {
  if (cfg.objective == ObjectiveKind::synthetic_saddle) return synthetic_saddle(cfg.saddle_dim);
  Dataset ds = parse_libsvm_file(cfg.dataset_path, cfg.dim_override);
  if (cfg.scale_features) ds = unit_range_scale(ds);
  if (cfg.objective == ObjectiveKind::logistic_nonconvex)
    return logistic_nonconvex(map_labels(ds, LabelScheme::zero_one), cfg.lambda);
  return nonconvex_svm(map_labels(ds, LabelScheme::plus_minus), cfg.lambda);
}

Vector initial_point(const ExperimentConfig& cfg, std::size_t d) {
  return Vector(d, cfg.init == InitKind::ones ? 1.0 : 0.0);
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Piecewise-linear loss value at a given cumulative oracle-call count,
// clamped to the endpoints of the recorded trajectory.
double interpolate_loss(const Trace& trace, double calls) {
  const auto& rs = trace.records;
  if (rs.empty()) return std::nan("");
  if (calls <= rs.front().oracle_calls_cum) return rs.front().f_value;
  if (calls >= rs.back().oracle_calls_cum) return rs.back().f_value;
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double c0 = static_cast<double>(rs[i - 1].oracle_calls_cum);
    const double c1 = static_cast<double>(rs[i].oracle_calls_cum);
    if (calls <= c1) {
      const double w = c1 == c0 ? 1.0 : (calls - c0) / (c1 - c0);
      return rs[i - 1].f_value + w * (rs[i].f_value - rs[i - 1].f_value);
    }
  }
  return rs.back().f_value;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto obj = build_objective(cfg);
  const std::size_t n = obj->num_examples();

  SancConfig base = cfg.base;
  base.oracle_budget = cfg.budget;
  base.batch.size_g =
      cfg.batch_g >= 0 ? static_cast<std::size_t>(cfg.batch_g)
                       : (cfg.objective == ObjectiveKind::synthetic_saddle
                              ? 0
                              : (n + 19) / 20);  // default protocol: ceil(n/20)
  base.batch.size_B = cfg.batch_B >= 0 ? static_cast<std::size_t>(cfg.batch_B) : base.batch.size_g;

  std::filesystem::create_directories(cfg.out_dir);

  struct Job {
    OptimizerKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (OptimizerKind k : cfg.optimizers)
    for (std::uint64_t s : cfg.seeds) jobs.push_back({k, s});

  std::vector<Trace> traces(jobs.size());
  std::vector<double> wall_times(jobs.size(), 0.0);
  const Vector x0 = initial_point(cfg, obj->dim());

  auto run_job = [&](std::size_t i) {
    SancConfig rc = base;
    rc.seed = jobs[i].seed;
    const auto t0 = std::chrono::steady_clock::now();
    traces[i] = run(jobs[i].kind, *obj, rc, x0);
    wall_times[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (cfg.workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::size_t next = 0;
    while (next < jobs.size()) {
      std::vector<std::future<void>> wave;
      for (int w = 0; w < cfg.workers && next < jobs.size(); ++w, ++next)
        wave.push_back(std::async(std::launch::async, run_job, next));
      for (auto& f : wave) f.get();
    }
  }

  ExperimentResult result;
  const std::string stamp = timestamp_utc();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto path = cfg.out_dir / ("trace_" + to_string(jobs[i].kind) + "_seed" +
                                     std::to_string(jobs[i].seed) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
    out << "# generated: " << stamp << "\n";
    out << "# optimizer: " << to_string(jobs[i].kind) << " seed: " << jobs[i].seed << "\n";
    out << "# cost model: one oracle call = one per-example function, gradient, or "
           "Hessian-vector-product evaluation\n";
    out << "# feature_scaling: " << (cfg.scale_features ? "unit_range" : "none") << "\n";
    write_trace_csv_body(out, traces[i]);
    result.trace_files.push_back(path);

    RunSummary rs;
    rs.optimizer = jobs[i].kind;
    rs.seed = jobs[i].seed;
    rs.final_loss = obj->full_value(traces[i].final_x);
    rs.iterations = traces[i].records.size();
    rs.oracle_calls = traces[i].oracle_calls;
    rs.unsuccessful_iterations = static_cast<std::size_t>(
        std::count_if(traces[i].records.begin(), traces[i].records.end(),
                      [](const IterationRecord& r) {
                        return r.success_class == SuccessClass::unsuccessful;
                      }));
    rs.wall_time_s = wall_times[i];
    result.runs.push_back(rs);
  }

  // runs.csv: one line per (optimizer, seed).
  {
    std::ofstream out(cfg.out_dir / "runs.csv", std::ios::binary);
    out << "optimizer,seed,final_loss,iterations,oracle_calls,unsuccessful_iterations,"
           "wall_time_s\n";
    for (const RunSummary& r : result.runs)
      out << to_string(r.optimizer) << ',' << r.seed << ',' << fmt(r.final_loss) << ','
          << r.iterations << ',' << r.oracle_calls << ',' << r.unsuccessful_iterations << ','
          << fmt(r.wall_time_s) << '\n';
  }

  // summary.csv: per-optimizer mean loss over seeds on a shared call grid
  // capped at the smallest final call count across all runs.
  long grid_max = 0;
  bool first = true;
  for (const Trace& t : traces) {
    if (t.records.empty()) continue;
    const long last = t.records.back().oracle_calls_cum;
    grid_max = first ? last : std::min(grid_max, last);
    first = false;
  }
  const std::size_t grid_points = 101;
  result.summary_file = cfg.out_dir / "summary.csv";
  std::ofstream out(result.summary_file, std::ios::binary);
  out << "optimizer,oracle_calls,mean_loss\n";
  for (OptimizerKind k : cfg.optimizers) {
    for (std::size_t p = 0; p < grid_points; ++p) {
      const double calls = grid_max * static_cast<double>(p) / (grid_points - 1);
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].kind != k || traces[i].records.empty()) continue;
        sum += interpolate_loss(traces[i], calls);
        ++cnt;
      }
      if (cnt == 0) continue;
      out << to_string(k) << ',' << fmt(calls) << ',' << fmt(sum / cnt) << '\n';
    }
  }
  return result;
}

}  // namespace sanc
