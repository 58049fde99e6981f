#include "straincast/straincast.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "straincast/dataset.hpp"
#include "straincast/errors.hpp"
#include "straincast/model_store.hpp"
#include "straincast/pipeline.hpp"
#include "straincast/presets.hpp"
#include "straincast/report.hpp"
#include "straincast/sim.hpp"

using namespace straincast;

struct sc_series {
    RunSeries run;
};
struct sc_model {
    ModelArtifact artifact;
};
struct sc_predictions {
    PredictionTable table;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
sc_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return SC_OK;
    } catch (const Error& e) {
        set_error(e.what());
        switch (e.kind()) {
            case ErrorKind::usage: return SC_ERR_USAGE;
            case ErrorKind::data: return SC_ERR_DATA;
            case ErrorKind::numeric: return SC_ERR_NUMERIC;
        }
        return SC_ERR_DATA;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return SC_ERR_DATA;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SC_ERR_DATA;
    }
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "1.0.0"; }

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_string_free(char* s) { delete[] s; }

void sc_sim_options_init(sc_sim_options* opt) {
    if (!opt) return;
    opt->train_kind = "test";
    opt->speed_kmph = 50.0;
    opt->span_m = 0.0;
    opt->dt_s = 0.0;
    opt->noise_sigma = -1.0;
    opt->seed = 0;
}

sc_status sc_simulate(const sc_sim_options* opt, sc_series** out) {
    return guarded([&] {
        if (!opt || !out) throw_usage("sc_simulate: null argument");
        SimConfig cfg;
        if (opt->span_m > 0) cfg.span_m = opt->span_m;
        if (opt->dt_s > 0) cfg.dt_s = opt->dt_s;
        cfg.speed_kmph = opt->speed_kmph;
        cfg.noise_sigma = opt->noise_sigma;
        cfg.seed = opt->seed;
        const TrainSpec spec = preset_train(opt->train_kind ? opt->train_kind : "test");
        auto* s = new sc_series{simulate_run(spec, default_members(), cfg)};
        *out = s;
    });
}

sc_status sc_series_load(const char* path, double dt_override, sc_series** out) {
    return guarded([&] {
        if (!path || !out) throw_usage("sc_series_load: null argument");
        *out = new sc_series{load_csv(path, dt_override)};
    });
}

sc_status sc_series_save(const sc_series* s, const char* path) {
    return guarded([&] {
        if (!s || !path) throw_usage("sc_series_save: null argument");
        save_csv(s->run, path);
    });
}

size_t sc_series_length(const sc_series* s) { return s ? s->run.length() : 0; }

double sc_series_dt(const sc_series* s) { return s ? s->run.dt : 0.0; }

size_t sc_series_channel_count(const sc_series* s) { return s ? s->run.labels.size() : 0; }

const char* sc_series_channel_name(const sc_series* s, size_t index) {
    if (!s || index >= s->run.labels.size()) return nullptr;
    return s->run.labels[index].c_str();
}

sc_status sc_series_channel_range(const sc_series* s, const char* name, double* min_out,
                                  double* max_out) {
    return guarded([&] {
        if (!s || !name) throw_usage("sc_series_channel_range: null argument");
        const Vector& ch = s->run.channel(name);
        const auto [lo, hi] = std::minmax_element(ch.begin(), ch.end());
        if (min_out) *min_out = *lo;
        if (max_out) *max_out = *hi;
    });
}

void sc_series_free(sc_series* s) { delete s; }

void sc_train_options_init(sc_train_options* opt) {
    if (!opt) return;
    std::memset(opt, 0, sizeof(*opt));
}

sc_status sc_train(const sc_series* data, const sc_train_options* opt, sc_model** out_model,
                   char** out_report_json) {
    return guarded([&] {
        if (!data || !opt || !out_model) throw_usage("sc_train: null argument");

        TrainPipelineOptions pipe;
        if (opt->preset && opt->preset[0] != '\0') {
            const ExperimentPreset* preset = find_preset(opt->preset);
            if (!preset) {
                throw_usage("unknown preset '" + std::string(opt->preset) +
                            "'; available presets: " + preset_names_joined());
            }
            pipe.net = preset->net;
            pipe.source_channel = preset->source_channel;
            pipe.target_channel = preset->target_channel;
        }
        if (opt->source_channel) pipe.source_channel = opt->source_channel;
        if (opt->target_channel) pipe.target_channel = opt->target_channel;
        if (pipe.source_channel.empty() || pipe.target_channel.empty()) {
            throw_usage("training needs --preset or explicit source and target channels");
        }
        if (opt->hidden && opt->hidden_count > 0) {
            pipe.net.lstm_hidden.assign(opt->hidden, opt->hidden + opt->hidden_count);
        }
        if (opt->dense_hidden > 0) pipe.net.dense_hidden = opt->dense_hidden;
        if (opt->window > 0) pipe.net.window = opt->window;
        if (opt->peephole) pipe.net.peephole = peephole_mode_from_string(opt->peephole);
        if (opt->output_gate_cell) {
            pipe.net.output_gate_cell = output_gate_cell_from_string(opt->output_gate_cell);
        }
        if (opt->learning_rate > 0) pipe.tcfg.learning_rate = opt->learning_rate;
        if (opt->epochs > 0) pipe.tcfg.epochs = opt->epochs;
        if (opt->batch_size > 0) pipe.tcfg.batch_size = opt->batch_size;
        if (opt->clip_norm > 0) pipe.tcfg.clip_norm = opt->clip_norm;
        if (opt->patience > 0) pipe.tcfg.early_stop_patience = opt->patience;
        if (opt->protocol) pipe.protocol = protocol_from_string(opt->protocol);
        if (opt->train_ratio > 0) pipe.train_ratio = opt->train_ratio;
        pipe.tcfg.seed = opt->seed;

        TrainOutcome outcome = train_on_series(data->run, pipe);
        if (out_report_json) {
            const std::string json = train_report_json(outcome);
            char* buf = new char[json.size() + 1];
            std::memcpy(buf, json.c_str(), json.size() + 1);
            *out_report_json = buf;
        }
        *out_model = new sc_model{std::move(outcome.artifact)};
    });
}

sc_status sc_model_save(const sc_model* m, const char* path) {
    return guarded([&] {
        if (!m || !path) throw_usage("sc_model_save: null argument");
        save_model(m->artifact, path);
    });
}

sc_status sc_model_load(const char* path, sc_model** out) {
    return guarded([&] {
        if (!path || !out) throw_usage("sc_model_load: null argument");
        *out = new sc_model{load_model(path)};
    });
}

const char* sc_model_source_channel(const sc_model* m) {
    return m ? m->artifact.source_channel.c_str() : nullptr;
}

const char* sc_model_target_channel(const sc_model* m) {
    return m ? m->artifact.target_channel.c_str() : nullptr;
}

int sc_model_window(const sc_model* m) { return m ? m->artifact.params.config.window : 0; }

void sc_model_free(sc_model* m) { delete m; }

sc_status sc_predict(const sc_model* m, const sc_series* data, sc_predictions** out) {
    return guarded([&] {
        if (!m || !data || !out) throw_usage("sc_predict: null argument");
        *out = new sc_predictions{predict_series(m->artifact, data->run)};
    });
}

size_t sc_predictions_count(const sc_predictions* p) { return p ? p->table.size() : 0; }

int sc_predictions_has_target(const sc_predictions* p) {
    return p && p->table.has_target() ? 1 : 0;
}

sc_status sc_predictions_row(const sc_predictions* p, size_t index, double* time_s,
                             double* predicted, double* target) {
    return guarded([&] {
        if (!p) throw_usage("sc_predictions_row: null argument");
        if (index >= p->table.size()) {
            throw_usage("sc_predictions_row: index " + std::to_string(index) +
                        " out of range (count " + std::to_string(p->table.size()) + ")");
        }
        if (time_s) *time_s = p->table.time_s[index];
        if (predicted) *predicted = p->table.predicted[index];
        if (target) *target = p->table.has_target() ? p->table.target[index] : 0.0;
    });
}

sc_status sc_predictions_save(const sc_predictions* p, const char* path) {
    return guarded([&] {
        if (!p || !path) throw_usage("sc_predictions_save: null argument");
        save_predictions_csv(p->table, path);
    });
}

sc_status sc_predictions_load(const char* path, sc_predictions** out) {
    return guarded([&] {
        if (!path || !out) throw_usage("sc_predictions_load: null argument");
        *out = new sc_predictions{load_predictions_csv(path)};
    });
}

void sc_predictions_free(sc_predictions* p) { delete p; }

sc_status sc_evaluate(const sc_predictions* p, double* rmse_out, double* accuracy_out,
                      size_t* n_out) {
    return guarded([&] {
        if (!p) throw_usage("sc_evaluate: null argument");
        if (!p->table.has_target()) {
            throw_data("evaluate: predictions carry no target column");
        }
        const EvalResult r = evaluate(p->table.predicted, p->table.target);
        if (rmse_out) *rmse_out = r.rmse;
        if (accuracy_out) *accuracy_out = r.accuracy_percent;
        if (n_out) *n_out = r.n;
    });
}

sc_status sc_report(const sc_predictions* p, const char* svg_path, const char* csv_path) {
    return guarded([&] {
        if (!p || !svg_path) throw_usage("sc_report: null argument");
        write_report_svg(p->table, svg_path);
        if (csv_path) write_report_csv(p->table, csv_path);
    });
}

}  // extern "C"
