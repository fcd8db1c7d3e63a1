#include "sanc/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace sanc {

double Objective::full_value(const Vector& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < num_examples(); ++i) s += value_one(x, i);
  return s / static_cast<double>(num_examples());
}

Vector Objective::full_gradient(const Vector& x) const {
  Vector g(dim(), 0.0);
  for (std::size_t i = 0; i < num_examples(); ++i) grad_one_accum(x, i, g);
  scale(g, 1.0 / static_cast<double>(num_examples()));
  return g;
}

Vector Objective::full_hvp(const Vector& x, const Vector& v) const {
  Vector h(dim(), 0.0);
  for (std::size_t i = 0; i < num_examples(); ++i) hvp_one_accum(x, v, i, h);
  scale(h, 1.0 / static_cast<double>(num_examples()));
  return h;
}

namespace {

double sparse_dot(const Vector& x, const Dataset::Row& row) {
  double s = 0.0;
  for (const auto& [index, value] : row) s += x[index] * value;
  return s;
}

double sigmoid(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

class LogisticNonconvex final : public Objective {
 public:
  LogisticNonconvex(const Dataset& ds, double lambda) : ds_(ds), lambda_(lambda) {
    for (double y : ds_.labels)
      if (y != 0.0 && y != 1.0)
        throw std::invalid_argument("logistic_nonconvex: labels must be in {0,1}");
  }

  std::size_t num_examples() const override { return ds_.size(); }
  std::size_t dim() const override { return ds_.dim; }

  double value_one(const Vector& x, std::size_t i) const override {
    const double z = sparse_dot(x, ds_.rows[i]);
    const double y = ds_.labels[i];
    // -[y log s(z) + (1-y) log(1-s(z))] in the overflow-safe form.
    const double loss = std::max(z, 0.0) - y * z + std::log1p(std::exp(-std::abs(z)));
    double omega = 0.0;
    for (double w : x) omega += w * w / (1.0 + w * w);
    return loss + lambda_ * omega;
  }

  void grad_one_accum(const Vector& x, std::size_t i, Vector& out) const override {
    const double z = sparse_dot(x, ds_.rows[i]);
    const double coef = sigmoid(z) - ds_.labels[i];
    for (const auto& [index, value] : ds_.rows[i]) out[index] += coef * value;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double t = 1.0 + x[k] * x[k];
      out[k] += lambda_ * 2.0 * x[k] / (t * t);
    }
  }

  void hvp_one_accum(const Vector& x, const Vector& v, std::size_t i, Vector& out) const override {
    const double z = sparse_dot(x, ds_.rows[i]);
    const double s = sigmoid(z);
    const double coef = s * (1.0 - s) * sparse_dot(v, ds_.rows[i]);
    for (const auto& [index, value] : ds_.rows[i]) out[index] += coef * value;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double t = 1.0 + x[k] * x[k];
      out[k] += lambda_ * (2.0 - 6.0 * x[k] * x[k]) / (t * t * t) * v[k];
    }
  }

 private:
  Dataset ds_;
  double lambda_;
};

class NonconvexSvm final : public Objective {
 public:
  NonconvexSvm(const Dataset& ds, double lambda) : ds_(ds), lambda_(lambda) {
    for (double y : ds_.labels)
      if (y != -1.0 && y != 1.0)
        throw std::invalid_argument("nonconvex_svm: labels must be in {-1,+1}");
  }

  std::size_t num_examples() const override { return ds_.size(); }
  std::size_t dim() const override { return ds_.dim; }

  double value_one(const Vector& x, std::size_t i) const override {
    const double m = ds_.labels[i] * sparse_dot(x, ds_.rows[i]);
    return 1.0 - std::tanh(m) + lambda_ * dot(x, x);
  }

  void grad_one_accum(const Vector& x, std::size_t i, Vector& out) const override {
    const double r = ds_.labels[i];
    const double m = r * sparse_dot(x, ds_.rows[i]);
    const double th = std::tanh(m);
    const double coef = -(1.0 - th * th) * r;
    for (const auto& [index, value] : ds_.rows[i]) out[index] += coef * value;
    axpy(2.0 * lambda_, x, out);
  }

  void hvp_one_accum(const Vector& x, const Vector& v, std::size_t i, Vector& out) const override {
    const double r = ds_.labels[i];
    const double m = r * sparse_dot(x, ds_.rows[i]);
    const double th = std::tanh(m);
    // d^2/dm^2 (1 - tanh m) = 2 tanh(m) sech^2(m); r^2 = 1.
    const double coef = 2.0 * th * (1.0 - th * th) * sparse_dot(v, ds_.rows[i]);
    for (const auto& [index, value] : ds_.rows[i]) out[index] += coef * value;
    axpy(2.0 * lambda_, v, out);
  }

 private:
  Dataset ds_;
  double lambda_;
};

class SyntheticSaddle final : public Objective {
 public:
  explicit SyntheticSaddle(std::size_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("synthetic_saddle: d must be >= 2");
  }

  std::size_t num_examples() const override { return 1; }
  std::size_t dim() const override { return d_; }

  double value_one(const Vector& x, std::size_t) const override {
    double f = 0.25 * std::pow(x[0], 4) - 0.5 * x[0] * x[0];
    for (std::size_t k = 1; k < d_; ++k) f += 0.5 * x[k] * x[k];
    return f;
  }

  void grad_one_accum(const Vector& x, std::size_t, Vector& out) const override {
    out[0] += x[0] * x[0] * x[0] - x[0];
    for (std::size_t k = 1; k < d_; ++k) out[k] += x[k];
  }

  void hvp_one_accum(const Vector& x, const Vector& v, std::size_t, Vector& out) const override {
    out[0] += (3.0 * x[0] * x[0] - 1.0) * v[0];
    for (std::size_t k = 1; k < d_; ++k) out[k] += v[k];
  }

 private:
  std::size_t d_;
};

}  // namespace

std::unique_ptr<Objective> logistic_nonconvex(const Dataset& ds, double lambda) {
  return std::make_unique<LogisticNonconvex>(ds, lambda);
}

std::unique_ptr<Objective> nonconvex_svm(const Dataset& ds, double lambda) {
  return std::make_unique<NonconvexSvm>(ds, lambda);
}

std::unique_ptr<Objective> synthetic_saddle(std::size_t d) {
  return std::make_unique<SyntheticSaddle>(d);
}

}  // namespace sanc
