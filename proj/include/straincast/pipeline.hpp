#pragma once

#include <string>
#include <vector>

#include "straincast/dataset.hpp"
#include "straincast/metrics.hpp"
#include "straincast/model_store.hpp"
#include "straincast/training.hpp"

namespace straincast {

// in_run: fit normalization and train on the whole crossing and evaluate on
// the same windows. holdout: chronological split; normalization statistics
// come from the training prefix only.
enum class Protocol { in_run, holdout };

Protocol protocol_from_string(const std::string& s);
const char* to_string(Protocol p);

struct TrainPipelineOptions {
    NetworkConfig net;
    TrainConfig tcfg;
    std::string source_channel;
    std::string target_channel;
    Protocol protocol = Protocol::in_run;
    double train_ratio = 0.8;  // holdout only
};

struct TrainOutcome {
    ModelArtifact artifact;
    TrainReport report;
    EvalResult final_eval;  // denormalized (microstrain), on the protocol's eval windows
};

TrainOutcome train_on_series(const RunSeries& run, const TrainPipelineOptions& opt);

// One row per window: time of the window's last sample, denormalized
// prediction, and the raw target value when the run carries that channel.
struct PredictionTable {
    double dt = 0.0;
    int window = 0;
    std::vector<double> time_s;
    std::vector<double> predicted;
    std::vector<double> target;  // empty when the target channel is absent

    bool has_target() const { return !target.empty(); }
    std::size_t size() const { return predicted.size(); }
};

PredictionTable predict_series(const ModelArtifact& artifact, const RunSeries& run);

// Deterministic apart from the recorded wall-clock per epoch.
std::string train_report_json(const TrainOutcome& outcome);

}  // namespace straincast
