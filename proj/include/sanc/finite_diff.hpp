#pragma once

#include <functional>

#include "sanc/vec.hpp"

namespace sanc {

// Central-difference oracles. h defaults to 1e-5, which on 64-bit floats
// balances truncation against cancellation for the problem scales used here.

Vector finite_diff_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                            double h = 1e-5);

// Directional second derivative oracle: approximates H(x)*v from two gradient
// evaluations.
Vector finite_diff_hvp(const std::function<Vector(const Vector&)>& grad, const Vector& x,
                       const Vector& v, double h = 1e-5);

}  // namespace sanc
