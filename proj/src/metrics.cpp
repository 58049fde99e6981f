#include "straincast/metrics.hpp"

#include <cmath>
#include <string>

#include "straincast/errors.hpp"

namespace straincast {

namespace {

void check_lengths(const Vector& pred, const Vector& target, const char* op) {
    if (pred.empty() || pred.size() != target.size()) {
        throw_data(std::string(op) + ": need equal non-empty lengths, got " +
                   std::to_string(pred.size()) + " and " + std::to_string(target.size()));
    }
}

}  // namespace

double rmse(const Vector& pred, const Vector& target) {
    check_lengths(pred, target, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = target[i] - pred[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(pred.size()));
}

double accuracy_percent(const Vector& pred, const Vector& target) {
    check_lengths(pred, target, "accuracy_percent");
    double err_sq = 0.0, tgt_sq = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = target[i] - pred[i];
        err_sq += e * e;
        tgt_sq += target[i] * target[i];
    }
    if (tgt_sq == 0.0) {
        throw_data("accuracy_percent: target has zero L2 norm, the ratio is undefined");
    }
    return (1.0 - std::sqrt(err_sq) / std::sqrt(tgt_sq)) * 100.0;
}

EvalResult evaluate(const Vector& pred, const Vector& target) {
    return EvalResult{rmse(pred, target), accuracy_percent(pred, target), pred.size()};
}

}  // namespace straincast
