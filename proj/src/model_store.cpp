#include "straincast/model_store.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "internal_io.hpp"
#include "straincast/errors.hpp"

namespace straincast {

using ordered_json = nlohmann::ordered_json;

std::int64_t artifact_timestamp() {
    // Reproducible by default: wall clock only when SOURCE_DATE_EPOCH asks for it.
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) return v;
    }
    return 0;
}

namespace {

ordered_json tensor_to_json(const ConstTensorView& t) {
    ordered_json entry;
    if (t.is_matrix) {
        entry["shape"] = {t.rows, t.cols};
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < t.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < t.cols; ++c) row.push_back(t.data[r * t.cols + c]);
            rows.push_back(std::move(row));
        }
        entry["values"] = std::move(rows);
    } else {
        entry["shape"] = {t.len};
        ordered_json vals = ordered_json::array();
        for (std::size_t i = 0; i < t.len; ++i) vals.push_back(t.data[i]);
        entry["values"] = std::move(vals);
    }
    return entry;
}

void tensor_from_json(const ordered_json& entry, const TensorView& t, const std::string& where) {
    if (!entry.is_object() || !entry.contains("shape") || !entry.contains("values")) {
        throw_data(where + ": expected an object with 'shape' and 'values'");
    }
    const auto& shape = entry["shape"];
    const auto& values = entry["values"];
    if (t.is_matrix) {
        if (!shape.is_array() || shape.size() != 2 || shape[0].get<std::size_t>() != t.rows ||
            shape[1].get<std::size_t>() != t.cols) {
            throw_data(where + ": shape " + shape.dump() + " does not match expected [" +
                       std::to_string(t.rows) + "," + std::to_string(t.cols) + "]");
        }
        if (!values.is_array() || values.size() != t.rows) {
            throw_data(where + ": expected " + std::to_string(t.rows) + " rows");
        }
        for (std::size_t r = 0; r < t.rows; ++r) {
            const auto& row = values[r];
            if (!row.is_array() || row.size() != t.cols) {
                throw_data(where + ": row " + std::to_string(r) + " does not have " +
                           std::to_string(t.cols) + " columns");
            }
            for (std::size_t c = 0; c < t.cols; ++c) {
                if (!row[c].is_number()) {
                    throw_data(where + ": entry (" + std::to_string(r) + "," +
                               std::to_string(c) + ") is not a number");
                }
                t.data[r * t.cols + c] = row[c].get<double>();
            }
        }
    } else {
        if (!shape.is_array() || shape.size() != 1 || shape[0].get<std::size_t>() != t.len) {
            throw_data(where + ": shape " + shape.dump() + " does not match expected [" +
                       std::to_string(t.len) + "]");
        }
        if (!values.is_array() || values.size() != t.len) {
            throw_data(where + ": expected " + std::to_string(t.len) + " values");
        }
        for (std::size_t i = 0; i < t.len; ++i) {
            if (!values[i].is_number()) {
                throw_data(where + ": entry " + std::to_string(i) + " is not a number");
            }
            t.data[i] = values[i].get<double>();
        }
    }
    for (std::size_t i = 0; i < t.len; ++i) {
        if (!std::isfinite(t.data[i])) {
            throw_data(where + ": non-finite value at flat index " + std::to_string(i));
        }
    }
}

}  // namespace

void save_model(const ModelArtifact& artifact, const std::string& path) {
    for (const auto& t : tensor_views(artifact.params)) {
        for (std::size_t i = 0; i < t.len; ++i) {
            if (!std::isfinite(t.data[i])) {
                throw_data("save_model: parameter " + t.name + " contains a non-finite value");
            }
        }
    }

    ordered_json doc;
    doc["format_version"] = artifact.format_version;
    doc["created_unix"] = artifact.created_unix;
    doc["seed"] = artifact.seed;
    doc["source_channel"] = artifact.source_channel;
    doc["target_channel"] = artifact.target_channel;

    const NetworkConfig& net = artifact.params.config;
    doc["network"] = {{"lstm_hidden", net.lstm_hidden},
                      {"dense_hidden", net.dense_hidden},
                      {"window", net.window},
                      {"peephole", to_string(net.peephole)},
                      {"output_gate_cell", to_string(net.output_gate_cell)},
                      {"input_size", net.input_size}};

    const TrainConfig& tc = artifact.train_config;
    doc["training"] = {{"learning_rate", tc.learning_rate},
                       {"epochs", tc.epochs},
                       {"batch_size", tc.batch_size},
                       {"clip_norm", tc.clip_norm},
                       {"beta1", tc.beta1},
                       {"beta2", tc.beta2},
                       {"epsilon", tc.epsilon},
                       {"early_stop_patience", tc.early_stop_patience},
                       {"seed", tc.seed}};

    ordered_json norm;
    for (const auto& [label, st] : artifact.norm.per_channel) {
        norm[label] = {{"mean", st.mean}, {"stddev", st.stddev}};
    }
    doc["normalization"] = std::move(norm);

    ordered_json tensors;
    for (const auto& t : tensor_views(artifact.params)) tensors[t.name] = tensor_to_json(t);
    doc["parameters"] = std::move(tensors);

    write_file_atomic(path, doc.dump(2) + "\n");
}

ModelArtifact load_model(const std::string& path) {
    const std::string text = read_file(path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_data("model '" + path + "': invalid JSON: " + e.what());
    }

    auto require = [&](const char* key) -> const ordered_json& {
        if (!doc.contains(key)) throw_data("model '" + path + "': missing field '" + key + "'");
        return doc[key];
    };

    ModelArtifact artifact;
    try {
        artifact.format_version = require("format_version").get<int>();
        if (artifact.format_version != kModelFormatVersion) {
            throw_data("model '" + path + "': unknown format_version " +
                       std::to_string(artifact.format_version) + " (expected " +
                       std::to_string(kModelFormatVersion) + ")");
        }
        artifact.created_unix = require("created_unix").get<std::int64_t>();
        artifact.seed = require("seed").get<std::uint64_t>();
        artifact.source_channel = require("source_channel").get<std::string>();
        artifact.target_channel = require("target_channel").get<std::string>();

        const auto& net = require("network");
        NetworkConfig cfg;
        cfg.lstm_hidden = net.at("lstm_hidden").get<std::vector<int>>();
        cfg.dense_hidden = net.at("dense_hidden").get<int>();
        cfg.window = net.at("window").get<int>();
        cfg.peephole = peephole_mode_from_string(net.at("peephole").get<std::string>());
        cfg.output_gate_cell =
            output_gate_cell_from_string(net.at("output_gate_cell").get<std::string>());
        cfg.input_size = net.at("input_size").get<int>();
        cfg.validate();

        const auto& tr = require("training");
        artifact.train_config.learning_rate = tr.at("learning_rate").get<double>();
        artifact.train_config.epochs = tr.at("epochs").get<int>();
        artifact.train_config.batch_size = tr.at("batch_size").get<int>();
        artifact.train_config.clip_norm = tr.at("clip_norm").get<double>();
        artifact.train_config.beta1 = tr.at("beta1").get<double>();
        artifact.train_config.beta2 = tr.at("beta2").get<double>();
        artifact.train_config.epsilon = tr.at("epsilon").get<double>();
        artifact.train_config.early_stop_patience = tr.at("early_stop_patience").get<int>();
        artifact.train_config.seed = tr.at("seed").get<std::uint64_t>();

        const auto& norm = require("normalization");
        for (const auto& [label, st] : norm.items()) {
            ChannelStats cs{st.at("mean").get<double>(), st.at("stddev").get<double>()};
            if (!std::isfinite(cs.mean) || !std::isfinite(cs.stddev) || !(cs.stddev > 0)) {
                throw_data("model '" + path + "': normalization." + label +
                           ": mean/stddev invalid");
            }
            artifact.norm.per_channel[label] = cs;
        }

        artifact.params = NetworkParams::zeros(cfg);
        const auto& tensors = require("parameters");
        std::size_t consumed = 0;
        for (auto& view : tensor_views(artifact.params)) {
            if (!tensors.contains(view.name)) {
                throw_data("model '" + path + "': missing tensor '" + view.name + "'");
            }
            tensor_from_json(tensors[view.name], view,
                             "model '" + path + "': parameters." + view.name);
            ++consumed;
        }
        if (tensors.size() != consumed) {
            for (const auto& [name, _] : tensors.items()) {
                bool known = false;
                for (const auto& view : tensor_views(artifact.params)) {
                    if (view.name == name) {
                        known = true;
                        break;
                    }
                }
                if (!known) throw_data("model '" + path + "': unexpected tensor '" + name + "'");
            }
        }
    } catch (const Error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw_data("model '" + path + "': malformed field: " + e.what());
    }
    return artifact;
}

}  // namespace straincast
