#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "straincast/errors.hpp"
#include "straincast/linalg.hpp"

namespace straincast {

// Central-difference gradient of a scalar function over a parameter vector.
// Test oracle for the analytic backward passes; knows nothing about networks.
inline Vector finite_diff_gradient(const std::function<double(const Vector&)>& f,
                                   const Vector& at, double h) {
    if (!(h > 0.0)) throw_usage("finite_diff_gradient: step size must be > 0");
    Vector x = at;
    Vector grad(at.size(), 0.0);
    for (std::size_t i = 0; i < at.size(); ++i) {
        const double xi = x[i];
        x[i] = xi + h;
        const double fp = f(x);
        x[i] = xi - h;
        const double fm = f(x);
        x[i] = xi;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw_numeric("finite_diff_gradient: non-finite function value at coordinate " +
                          std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace straincast
