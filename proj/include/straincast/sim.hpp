#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "straincast/dataset.hpp"

namespace straincast {

struct Axle {
    double offset_m = 0.0;  // distance behind the first axle
    double load_kn = 0.0;
};

struct TrainSpec {
    std::string name;
    std::vector<Axle> axles;       // offsets strictly increasing from 0
    std::size_t engine_axles = 0;  // leading axles that belong to the engine

    double length_m() const { return axles.empty() ? 0.0 : axles.back().offset_m; }
    void validate() const;
};

enum class InfluenceShape { chord_triangular, diagonal_bilinear };

// Piecewise-linear influence line for one instrumented member: strain
// ordinate per unit load as the load moves across the span. Zero at both
// ends, continuous everywhere.
struct MemberModel {
    std::string label;
    InfluenceShape shape = InfluenceShape::chord_triangular;
    double apex_frac = 0.5;  // chord: peak +1 at apex_frac * span
    // diagonal: (pos_frac*span, +pos_peak) then (neg_frac*span, -neg_peak)
    double pos_frac = 0.30, pos_peak = 1.0;
    double neg_frac = 0.75, neg_peak = 0.7;
    double scale = 1.0;  // microstrain per kN at unit ordinate
};

struct SimConfig {
    double span_m = 45.72;
    double dt_s = 0.025;
    double speed_kmph = 50.0;
    double noise_sigma = -1.0;  // microstrain; negative = auto (2% of clean peak)
    std::uint64_t seed = 0;

    void validate() const;
};

double influence_ordinate(const MemberModel& member, double x_m, double span_m);

// The five default members: loc1-loc3 share the chord family (similar,
// highly correlated histories); loc4/loc5 are sign-reversing diagonals with
// visibly different patterns.
std::vector<MemberModel> default_members();

// "test": engine plus wagons with near-uniform axle loads (CoV <= 0.1).
// "passenger": engine axles at least 1.8x the wagon axles, so channels show
// the early strain peak of a heavy engine entering the span first.
TrainSpec preset_train(const std::string& kind);

// Influence-line superposition of all axles at v = speed/3.6, sampled every
// dt with floor((span + train_length)/(v dt)) + 1 points, plus seeded
// Gaussian noise per sample. Channels are emitted in member order.
RunSeries simulate_run(const TrainSpec& train, const std::vector<MemberModel>& members,
                       const SimConfig& cfg);

}  // namespace straincast
