#pragma once

#include <string>
#include <vector>

#include "straincast/lstm.hpp"

namespace straincast {

// The five named experiment cases. Source is always loc1; the target
// channel, speed, train kind and network shape vary per case.
struct ExperimentPreset {
    std::string name;
    std::string source_channel;
    std::string target_channel;
    double speed_kmph = 0.0;
    std::string train_kind;  // test | passenger
    NetworkConfig net;
};

const std::vector<ExperimentPreset>& experiment_presets();

// nullptr when the name is unknown.
const ExperimentPreset* find_preset(const std::string& name);

std::string preset_names_joined();

}  // namespace straincast
