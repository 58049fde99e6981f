#include "straincast/pipeline.hpp"

#include <cmath>

#include <json.hpp>

#include "internal_io.hpp"
#include "straincast/errors.hpp"

namespace straincast {

Protocol protocol_from_string(const std::string& s) {
    if (s == "in-run") return Protocol::in_run;
    if (s == "holdout") return Protocol::holdout;
    throw_usage("unknown protocol '" + s + "' (expected in-run or holdout)");
}

const char* to_string(Protocol p) { return p == Protocol::in_run ? "in-run" : "holdout"; }

TrainOutcome train_on_series(const RunSeries& run, const TrainPipelineOptions& opt) {
    opt.net.validate();
    opt.tcfg.validate();
    if (opt.source_channel.empty() || opt.target_channel.empty()) {
        throw_usage("training needs a source and a target channel");
    }
    const Vector& source = run.channel(opt.source_channel);
    const Vector& target = run.channel(opt.target_channel);

    // Normalization statistics come from the training prefix only under
    // holdout, from the whole crossing under in-run.
    std::size_t stats_prefix = 0;
    if (opt.protocol == Protocol::holdout) {
        if (!(opt.train_ratio > 0 && opt.train_ratio < 1)) {
            throw_usage("holdout train ratio must lie in (0,1)");
        }
        stats_prefix = static_cast<std::size_t>(
            std::ceil(opt.train_ratio * static_cast<double>(run.length())));
    }
    std::vector<std::string> norm_channels = {opt.source_channel};
    if (opt.target_channel != opt.source_channel) norm_channels.push_back(opt.target_channel);
    const NormStats norm = fit_normalizer(run, norm_channels, stats_prefix);

    WindowedDataset ds = make_windows(norm.normalize(opt.source_channel, source),
                                      norm.normalize(opt.target_channel, target), opt.net.window);
    ds.source_label = opt.source_channel;
    ds.target_label = opt.target_channel;

    std::vector<Sample> train_set, val_set;
    std::size_t eval_begin = 0;  // first sample index of the evaluation windows
    if (opt.protocol == Protocol::holdout) {
        auto [tr, va] = split_chronological(ds, opt.train_ratio);
        train_set = std::move(tr.samples);
        val_set = std::move(va.samples);
        eval_begin = train_set.size();
    } else {
        // In-run: train and evaluate on the same crossing; the validation
        // set used for checkpoint selection is the training set itself.
        train_set = ds.samples;
        val_set = std::move(ds.samples);
    }

    auto [params, report] = train(opt.net, opt.tcfg, train_set, val_set);

    TrainOutcome outcome;
    outcome.artifact.params = std::move(params);
    outcome.artifact.train_config = opt.tcfg;
    outcome.artifact.norm = norm;
    outcome.artifact.seed = opt.tcfg.seed;
    outcome.artifact.source_channel = opt.source_channel;
    outcome.artifact.target_channel = opt.target_channel;
    outcome.artifact.created_unix = artifact_timestamp();
    outcome.report = std::move(report);

    // Final figures of merit in microstrain, on the protocol's eval windows.
    const PredictionTable table = predict_series(outcome.artifact, run);
    Vector pred(table.predicted.begin() + static_cast<std::ptrdiff_t>(eval_begin),
                table.predicted.end());
    Vector tgt(table.target.begin() + static_cast<std::ptrdiff_t>(eval_begin),
               table.target.end());
    outcome.final_eval = evaluate(pred, tgt);
    return outcome;
}

PredictionTable predict_series(const ModelArtifact& artifact, const RunSeries& run) {
    const NetworkConfig& cfg = artifact.params.config;
    const Vector& source = run.channel(artifact.source_channel);
    if (source.size() < static_cast<std::size_t>(cfg.window)) {
        throw_data("predict: series has " + std::to_string(source.size()) +
                   " samples, shorter than the model window " + std::to_string(cfg.window));
    }

    const Vector norm_source = artifact.norm.normalize(artifact.source_channel, source);
    // Window targets are unused here; reuse the source as a placeholder.
    WindowedDataset ds = make_windows(norm_source, norm_source, cfg.window);

    PredictionTable table;
    table.dt = run.dt;
    table.window = cfg.window;
    table.predicted.reserve(ds.samples.size());
    table.time_s.reserve(ds.samples.size());
    for (std::size_t k = 0; k < ds.samples.size(); ++k) {
        const double pred_norm = forward_window(artifact.params, ds.samples[k].window);
        table.predicted.push_back(
            artifact.norm.denormalize(artifact.target_channel, pred_norm));
        table.time_s.push_back(static_cast<double>(k + static_cast<std::size_t>(cfg.window) - 1) *
                               run.dt);
    }
    if (run.has_channel(artifact.target_channel)) {
        const Vector& target = run.channel(artifact.target_channel);
        table.target.assign(target.begin() + (cfg.window - 1), target.end());
    }
    return table;
}

std::string train_report_json(const TrainOutcome& outcome) {
    using ordered_json = nlohmann::ordered_json;
    const TrainReport& r = outcome.report;

    ordered_json doc;
    doc["seed"] = r.seed;
    doc["network"] = {{"lstm_hidden", r.net_config.lstm_hidden},
                      {"dense_hidden", r.net_config.dense_hidden},
                      {"window", r.net_config.window},
                      {"peephole", to_string(r.net_config.peephole)},
                      {"output_gate_cell", to_string(r.net_config.output_gate_cell)},
                      {"input_size", r.net_config.input_size}};
    doc["training"] = {{"learning_rate", r.train_config.learning_rate},
                       {"epochs", r.train_config.epochs},
                       {"batch_size", r.train_config.batch_size},
                       {"clip_norm", r.train_config.clip_norm},
                       {"beta1", r.train_config.beta1},
                       {"beta2", r.train_config.beta2},
                       {"epsilon", r.train_config.epsilon},
                       {"early_stop_patience", r.train_config.early_stop_patience},
                       {"seed", r.train_config.seed}};
    doc["source_channel"] = outcome.artifact.source_channel;
    doc["target_channel"] = outcome.artifact.target_channel;
    doc["best_epoch"] = r.best_epoch;
    doc["best_val_rmse"] = r.best_val_rmse;
    doc["final"] = {{"rmse_microstrain", outcome.final_eval.rmse},
                    {"accuracy_percent", outcome.final_eval.accuracy_percent},
                    {"n", outcome.final_eval.n}};
    ordered_json epochs = ordered_json::array();
    for (const EpochRecord& e : r.epochs) {
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"val_rmse", e.val_rmse},
                          {"wall_ms", e.wall_ms}});
    }
    doc["epochs"] = std::move(epochs);
    return doc.dump(2) + "\n";
}

}  // namespace straincast
