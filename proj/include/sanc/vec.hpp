#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sanc {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, Vector& y);
void scale(Vector& v, double alpha);
Vector scaled(std::span<const double> v, double alpha);
Vector add(std::span<const double> a, std::span<const double> b);
Vector sub(std::span<const double> a, std::span<const double> b);

bool all_finite(std::span<const double> v);

// Throws std::domain_error if v contains NaN/Inf. Non-finite values are a
// hard error anywhere they could enter algorithm state.
void require_finite(std::span<const double> v, const char* what);

// Matrix-free symmetric operator; only operator-vector products are exposed.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<Vector(const Vector&)> apply;

  Vector operator()(const Vector& v) const { return apply(v); }
};

}  // namespace sanc
