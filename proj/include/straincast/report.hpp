#pragma once

#include <string>

#include "straincast/pipeline.hpp"

namespace straincast {

// Predictions CSV: index,time_s,predicted_microstrain[,target_microstrain].
void save_predictions_csv(const PredictionTable& t, const std::string& path);
PredictionTable load_predictions_csv(const std::string& path);

// Standalone SVG line chart, target vs predicted over time; exactly two
// polyline elements; byte-deterministic for a given table.
void write_report_svg(const PredictionTable& t, const std::string& path);

// Tidy companion CSV: time_s,target_microstrain,predicted_microstrain.
void write_report_csv(const PredictionTable& t, const std::string& path);

}  // namespace straincast
