#include "straincast/sim.hpp"

#include <algorithm>
#include <cmath>

#include "internal_io.hpp"
#include "straincast/errors.hpp"
#include "straincast/rng.hpp"

namespace straincast {

void TrainSpec::validate() const {
    if (axles.empty()) throw_usage("train spec '" + name + "': needs at least one axle");
    if (axles.front().offset_m != 0.0) {
        throw_usage("train spec '" + name + "': first axle offset must be 0");
    }
    for (std::size_t i = 0; i < axles.size(); ++i) {
        if (!(axles[i].load_kn > 0)) {
            throw_usage("train spec '" + name + "': axle loads must be > 0");
        }
        if (i > 0 && !(axles[i].offset_m > axles[i - 1].offset_m)) {
            throw_usage("train spec '" + name + "': axle offsets must be strictly increasing");
        }
    }
    if (engine_axles > axles.size()) {
        throw_usage("train spec '" + name + "': engine axle count exceeds axle count");
    }
}

void SimConfig::validate() const {
    if (!(span_m > 0)) throw_usage("simulation: span must be > 0");
    if (!(dt_s > 0)) throw_usage("simulation: dt must be > 0");
    if (!(speed_kmph > 0)) throw_usage("simulation: speed must be > 0");
}

double influence_ordinate(const MemberModel& member, double x_m, double span_m) {
    if (x_m <= 0.0 || x_m >= span_m) return 0.0;
    if (member.shape == InfluenceShape::chord_triangular) {
        const double apex = member.apex_frac * span_m;
        if (x_m <= apex) return x_m / apex;
        return (span_m - x_m) / (span_m - apex);
    }
    // diagonal: (0,0) -> (x1,+p1) -> (x2,-p2) -> (span,0), sign-reversing
    const double x1 = member.pos_frac * span_m;
    const double x2 = member.neg_frac * span_m;
    const double p1 = member.pos_peak;
    const double p2 = -member.neg_peak;
    if (x_m <= x1) return p1 * (x_m / x1);
    if (x_m <= x2) return p1 + (p2 - p1) * (x_m - x1) / (x2 - x1);
    return p2 * (span_m - x_m) / (span_m - x2);
}

std::vector<MemberModel> default_members() {
    std::vector<MemberModel> m(5);
    m[0] = {"loc1", InfluenceShape::chord_triangular, 0.50, 0, 0, 0, 0, 0.120};
    m[1] = {"loc2", InfluenceShape::chord_triangular, 0.45, 0, 0, 0, 0, 0.100};
    m[2] = {"loc3", InfluenceShape::chord_triangular, 0.55, 0, 0, 0, 0, 0.095};
    m[3] = {"loc4", InfluenceShape::diagonal_bilinear, 0, 0.30, 1.00, 0.75, 0.70, 0.300};
    m[4] = {"loc5", InfluenceShape::diagonal_bilinear, 0, 0.22, 0.55, 0.70, 1.00, 0.330};
    return m;
}

namespace {

// Two three-axle bogies, typical broad-gauge diesel locomotive footprint.
void push_engine(TrainSpec& spec, double load_kn) {
    const double bogie[] = {0.0, 1.9, 3.8, 10.4, 12.3, 14.2};
    for (double off : bogie) spec.axles.push_back({off, load_kn});
    spec.engine_axles = 6;
}

}  // namespace

TrainSpec preset_train(const std::string& kind) {
    TrainSpec spec;
    spec.name = kind;
    if (kind == "test") {
        // Near-uniform axle loads: loaded freight rake behind the engine.
        push_engine(spec, 210.0);
        const double engine_length = 17.5;
        const double wagon_pitch = 11.7;
        const double local[] = {1.5, 3.5, 8.2, 10.2};
        for (int w = 0; w < 6; ++w) {
            for (double off : local) {
                spec.axles.push_back({engine_length + w * wagon_pitch + off, 195.0});
            }
        }
    } else if (kind == "passenger") {
        // Engine axles much heavier than the coach axles.
        push_engine(spec, 205.0);
        const double engine_length = 17.5;
        const double coach_pitch = 23.6;
        const double local[] = {3.3, 5.3, 18.3, 20.3};
        for (int w = 0; w < 5; ++w) {
            for (double off : local) {
                spec.axles.push_back({engine_length + w * coach_pitch + off, 105.0});
            }
        }
    } else {
        throw_usage("unknown train kind '" + kind + "' (expected test or passenger)");
    }
    spec.validate();
    return spec;
}

RunSeries simulate_run(const TrainSpec& train, const std::vector<MemberModel>& members,
                       const SimConfig& cfg) {
    train.validate();
    cfg.validate();
    if (members.empty()) throw_usage("simulate_run: needs at least one member");

    const double v = cfg.speed_kmph * 1000.0 / 3600.0;
    const double travel = cfg.span_m + train.length_m();
    const auto count =
        static_cast<std::size_t>(std::floor(travel / (v * cfg.dt_s))) + 1;

    // Clean superposition first; the auto noise level needs the clean peak.
    std::vector<Vector> clean(members.size(), Vector(count, 0.0));
    double peak = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
        for (std::size_t k = 0; k < count; ++k) {
            const double front = v * (static_cast<double>(k) * cfg.dt_s);
            double strain = 0.0;
            for (const Axle& axle : train.axles) {
                strain += axle.load_kn * members[m].scale *
                          influence_ordinate(members[m], front - axle.offset_m, cfg.span_m);
            }
            clean[m][k] = strain;
            peak = std::max(peak, std::abs(strain));
        }
    }

    const double sigma = cfg.noise_sigma < 0 ? 0.02 * peak : cfg.noise_sigma;

    RunSeries run;
    run.dt = cfg.dt_s;
    run.meta.train_kind = train.name;
    run.meta.speed_kmph = cfg.speed_kmph;
    run.meta.source = "influence-line simulator (synthetic magnitudes); seed=" +
                      std::to_string(cfg.seed) + "; noise_sigma=" + format_double(sigma);

    Prng rng(cfg.seed);
    for (std::size_t m = 0; m < members.size(); ++m) {
        run.labels.push_back(members[m].label);
        Vector ch = std::move(clean[m]);
        if (sigma > 0) {
            for (double& x : ch) x += rng.normal(0.0, sigma);
        }
        run.channels.push_back(std::move(ch));
    }
    return run;
}

}  // namespace straincast
