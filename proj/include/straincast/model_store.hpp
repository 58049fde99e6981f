#pragma once

#include <cstdint>
#include <string>

#include "straincast/dataset.hpp"
#include "straincast/lstm.hpp"
#include "straincast/training.hpp"

namespace straincast {

inline constexpr int kModelFormatVersion = 1;

// Everything needed to reproduce predictions bit-exactly on the same
// platform: weights, architecture, normalization statistics and the seed.
struct ModelArtifact {
    int format_version = kModelFormatVersion;
    NetworkParams params;  // params.config carries the architecture
    TrainConfig train_config;
    NormStats norm;
    std::uint64_t seed = 0;
    std::string source_channel;
    std::string target_channel;
    // Reproducible-builds convention: taken from $SOURCE_DATE_EPOCH when the
    // artifact is created, else 0, so identical runs write identical bytes.
    std::int64_t created_unix = 0;
};

// JSON with fixed key order and round-trip-exact decimals; written
// atomically (temp file + rename). Two saves of one artifact are
// byte-identical.
void save_model(const ModelArtifact& artifact, const std::string& path);

// Fully validated on load: version, tensor shapes against the config,
// finiteness. Errors name the offending field.
ModelArtifact load_model(const std::string& path);

std::int64_t artifact_timestamp();  // $SOURCE_DATE_EPOCH or 0

}  // namespace straincast
