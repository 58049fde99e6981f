#pragma once

#include <cstddef>

#include "straincast/linalg.hpp"

namespace straincast {

struct EvalResult {
    double rmse = 0.0;              // same unit as the inputs (microstrain)
    double accuracy_percent = 0.0;  // <= 100; negative when ||error|| > ||target||
    std::size_t n = 0;
};

// sqrt(mean((target - pred)^2))
double rmse(const Vector& pred, const Vector& target);

// (1 - ||target - pred||_2 / ||target||_2) * 100. Rejects zero-norm targets.
// Not clamped: values below zero mean the error outweighs the signal.
double accuracy_percent(const Vector& pred, const Vector& target);

EvalResult evaluate(const Vector& pred, const Vector& target);

}  // namespace straincast
