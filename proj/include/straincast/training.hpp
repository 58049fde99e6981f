#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "straincast/dataset.hpp"
#include "straincast/lstm.hpp"

namespace straincast {

struct TrainConfig {
    double learning_rate = 1e-3;
    int epochs = 200;
    int batch_size = 32;
    double clip_norm = 5.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int early_stop_patience = 20;  // epochs without validation improvement
    std::uint64_t seed = 42;

    void validate() const;
    bool operator==(const TrainConfig&) const = default;
};

// Mean of squared differences; rejects empty or mismatched inputs.
double mse_loss(const Vector& pred, const Vector& target);

struct GradientResult {
    double loss = 0.0;
    NetworkParams grads;  // shape-congruent with the network parameters
};

// Exact backpropagation through time over a minibatch. The gradient is the
// mean of the per-sample gradients, so the learning rate is batch-size
// independent. Rejects non-finite losses with a diagnostic.
GradientResult bptt_gradients(const NetworkParams& net, const std::vector<Sample>& batch);

double global_norm(const NetworkParams& grads);

// Scales every entry by max_norm/g when the global L2 norm g exceeds
// max_norm; otherwise returns the input unchanged. Idempotent.
NetworkParams clip_global_norm(NetworkParams grads, double max_norm);

struct AdamState {
    long step = 0;
    NetworkParams m, v;

    static AdamState init(const NetworkConfig& cfg);
};

// Adaptive-moment update with bias correction.
void optimizer_step(AdamState& state, NetworkParams& params, const NetworkParams& grads,
                    const TrainConfig& cfg);

struct EpochRecord {
    int epoch = 0;          // 1-based, contiguous
    double train_loss = 0;  // epoch-mean minibatch MSE (normalized units)
    double val_rmse = 0;    // RMSE over the validation set (normalized units)
    double wall_ms = 0;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    int best_epoch = 0;
    double best_val_rmse = 0.0;
    NetworkConfig net_config;
    TrainConfig train_config;
    std::uint64_t seed = 0;
};

// Seeded-shuffle minibatch loop: bptt -> clip -> optimizer step, tracking
// validation RMSE each epoch. Returns the parameters of the best validation
// epoch, not the last one. Deterministic under a fixed seed.
std::pair<NetworkParams, TrainReport> train(const NetworkConfig& cfg, const TrainConfig& tcfg,
                                            const std::vector<Sample>& train_set,
                                            const std::vector<Sample>& val_set);

}  // namespace straincast
