// straincast command line: simulate | train | predict | evaluate | report.
// Talks to the core exclusively through the C API in straincast.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "straincast/straincast.h"

namespace {

int fail(sc_status status) {
    std::fprintf(stderr, "error: %s\n", sc_last_error());
    return static_cast<int>(status);
}

uint64_t default_seed() {
    if (const char* env = std::getenv("STRAINCAST_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        std::fprintf(stderr, "warning: ignoring non-numeric STRAINCAST_SEED '%s'\n", env);
    }
    return 42;
}

void print_channel_summary(const sc_series* series) {
    std::printf("samples per channel: %zu (dt=%g s)\n", sc_series_length(series),
                sc_series_dt(series));
    for (size_t i = 0; i < sc_series_channel_count(series); ++i) {
        const char* name = sc_series_channel_name(series, i);
        double lo = 0, hi = 0;
        if (sc_series_channel_range(series, name, &lo, &hi) == SC_OK) {
            std::printf("  %-6s length=%zu min=%.3f max=%.3f\n", name,
                        sc_series_length(series), lo, hi);
        }
    }
}

struct SeriesGuard {
    sc_series* p = nullptr;
    ~SeriesGuard() { sc_series_free(p); }
};
struct ModelGuard {
    sc_model* p = nullptr;
    ~ModelGuard() { sc_model_free(p); }
};
struct PredGuard {
    sc_predictions* p = nullptr;
    ~PredGuard() { sc_predictions_free(p); }
};

int run_simulate(const std::string& kind, double speed, double span, double dt, double noise,
                 uint64_t seed, const std::string& out_path) {
    sc_sim_options opt;
    sc_sim_options_init(&opt);
    opt.train_kind = kind.c_str();
    opt.speed_kmph = speed;
    opt.span_m = span;
    opt.dt_s = dt;
    opt.noise_sigma = noise;
    opt.seed = seed;

    SeriesGuard series;
    if (sc_status st = sc_simulate(&opt, &series.p); st != SC_OK) return fail(st);
    if (sc_status st = sc_series_save(series.p, out_path.c_str()); st != SC_OK) return fail(st);
    std::printf("wrote %s\n", out_path.c_str());
    print_channel_summary(series.p);
    return 0;
}

int append_evaluation(const std::string& report_path, double rmse, double accuracy, size_t n) {
    nlohmann::ordered_json doc;
    {
        std::ifstream in(report_path);
        if (in) {
            try {
                in >> doc;
            } catch (const nlohmann::json::exception& e) {
                std::fprintf(stderr, "error: report '%s' is not valid JSON: %s\n",
                             report_path.c_str(), e.what());
                return 2;
            }
        }
    }
    if (!doc.is_object()) doc = nlohmann::ordered_json::object();
    doc["evaluations"].push_back(
        {{"rmse_microstrain", rmse}, {"accuracy_percent", accuracy}, {"n", n}});
    std::ofstream out(report_path);
    if (!out) {
        std::fprintf(stderr, "error: cannot write report '%s'\n", report_path.c_str());
        return 2;
    }
    out << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strain time-history simulation, LSTM training and prediction"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic train crossing CSV");
    std::string sim_kind = "test", sim_out;
    double sim_speed = 50.0, sim_span = 0.0, sim_dt = 0.0, sim_noise = -1.0;
    uint64_t sim_seed = default_seed();
    sim->add_option("--train", sim_kind, "train kind: test or passenger");
    sim->add_option("--speed", sim_speed, "crossing speed in km/h")->check(CLI::PositiveNumber);
    sim->add_option("--span", sim_span, "span length in m (default 45.72)");
    sim->add_option("--dt", sim_dt, "sampling period in s (default 0.025)");
    sim->add_option("--noise", sim_noise,
                    "noise sigma in microstrain; negative = 2% of clean peak");
    sim->add_option("--seed", sim_seed, "random seed");
    sim->add_option("--out", sim_out, "output CSV path")->required();

    // train
    auto* train = app.add_subcommand("train", "train a model on a crossing CSV");
    std::string tr_data, tr_out, tr_report, tr_preset, tr_source, tr_target;
    std::string tr_peephole, tr_ogc, tr_protocol;
    std::vector<int> tr_hidden;
    int tr_dense = 0, tr_window = 0, tr_epochs = 0, tr_batch = 0, tr_patience = 0;
    double tr_lr = 0.0, tr_clip = 0.0, tr_ratio = 0.0, tr_dt = 0.0;
    uint64_t tr_seed = default_seed();
    train->add_option("--data", tr_data, "input crossing CSV")->required();
    train->add_option("--preset", tr_preset, "experiment preset (case1..case4)");
    train->add_option("--source", tr_source, "source channel label");
    train->add_option("--target", tr_target, "target channel label");
    train->add_option("--hidden", tr_hidden, "LSTM layer widths, e.g. --hidden 80 60");
    train->add_option("--dense", tr_dense, "dense hidden width");
    train->add_option("--window", tr_window, "window size T");
    train->add_option("--peephole", tr_peephole, "peephole mode: full, diagonal or none");
    train->add_option("--output-gate-cell", tr_ogc, "output gate cell: previous or current");
    train->add_option("--lr", tr_lr, "learning rate");
    train->add_option("--epochs", tr_epochs, "epoch budget");
    train->add_option("--batch-size", tr_batch, "minibatch size");
    train->add_option("--clip-norm", tr_clip, "global gradient norm clip");
    train->add_option("--patience", tr_patience, "early stopping patience (epochs)");
    train->add_option("--protocol", tr_protocol, "evaluation protocol: in-run or holdout");
    train->add_option("--train-ratio", tr_ratio, "holdout training fraction (default 0.8)");
    train->add_option("--dt", tr_dt, "sampling period override in s");
    train->add_option("--seed", tr_seed, "random seed");
    train->add_option("--out", tr_out, "output model JSON path")->required();
    train->add_option("--report", tr_report, "output training report JSON path");

    // predict
    auto* predict = app.add_subcommand("predict", "predict the target channel from a CSV");
    std::string pr_model, pr_data, pr_out;
    double pr_dt = 0.0;
    predict->add_option("--model", pr_model, "model JSON path")->required();
    predict->add_option("--data", pr_data, "input crossing CSV")->required();
    predict->add_option("--dt", pr_dt, "sampling period override in s");
    predict->add_option("--out", pr_out, "output predictions CSV path")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "RMSE and L2 accuracy of predictions");
    std::string ev_pred, ev_model, ev_data, ev_report;
    double ev_dt = 0.0;
    evaluate->add_option("--pred", ev_pred, "predictions CSV with a target column");
    evaluate->add_option("--model", ev_model, "model JSON (with --data)");
    evaluate->add_option("--data", ev_data, "crossing CSV (with --model)");
    evaluate->add_option("--dt", ev_dt, "sampling period override in s");
    evaluate->add_option("--report", ev_report, "append the result to this JSON report");

    // report
    auto* report = app.add_subcommand("report", "target-vs-predicted chart (SVG + tidy CSV)");
    std::string rp_pred, rp_svg, rp_csv;
    report->add_option("--pred", rp_pred, "predictions CSV with a target column")->required();
    report->add_option("--out-svg", rp_svg, "output SVG path")->required();
    report->add_option("--out-csv", rp_csv, "output tidy CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the parse error
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    if (sim->parsed()) {
        return run_simulate(sim_kind, sim_speed, sim_span, sim_dt, sim_noise, sim_seed, sim_out);
    }

    if (train->parsed()) {
        SeriesGuard data;
        if (sc_status st = sc_series_load(tr_data.c_str(), tr_dt, &data.p); st != SC_OK) {
            return fail(st);
        }
        sc_train_options opt;
        sc_train_options_init(&opt);
        opt.preset = tr_preset.empty() ? nullptr : tr_preset.c_str();
        opt.source_channel = tr_source.empty() ? nullptr : tr_source.c_str();
        opt.target_channel = tr_target.empty() ? nullptr : tr_target.c_str();
        if (!tr_hidden.empty()) {
            opt.hidden = tr_hidden.data();
            opt.hidden_count = tr_hidden.size();
        }
        opt.dense_hidden = tr_dense;
        opt.window = tr_window;
        opt.peephole = tr_peephole.empty() ? nullptr : tr_peephole.c_str();
        opt.output_gate_cell = tr_ogc.empty() ? nullptr : tr_ogc.c_str();
        opt.learning_rate = tr_lr;
        opt.epochs = tr_epochs;
        opt.batch_size = tr_batch;
        opt.clip_norm = tr_clip;
        opt.patience = tr_patience;
        opt.protocol = tr_protocol.empty() ? nullptr : tr_protocol.c_str();
        opt.train_ratio = tr_ratio;
        opt.seed = tr_seed;

        ModelGuard model;
        char* report_json = nullptr;
        const sc_status st = sc_train(data.p, &opt, &model.p, &report_json);
        if (st != SC_OK) return fail(st);
        if (sc_status save_st = sc_model_save(model.p, tr_out.c_str()); save_st != SC_OK) {
            sc_string_free(report_json);
            return fail(save_st);
        }
        std::printf("wrote %s\n", tr_out.c_str());
        if (!tr_report.empty() && report_json) {
            std::ofstream out(tr_report);
            if (!out) {
                std::fprintf(stderr, "error: cannot write report '%s'\n", tr_report.c_str());
                sc_string_free(report_json);
                return 2;
            }
            out << report_json;
            std::printf("wrote %s\n", tr_report.c_str());
        }
        sc_string_free(report_json);
        return 0;
    }

    if (predict->parsed()) {
        ModelGuard model;
        if (sc_status st = sc_model_load(pr_model.c_str(), &model.p); st != SC_OK) {
            return fail(st);
        }
        SeriesGuard data;
        if (sc_status st = sc_series_load(pr_data.c_str(), pr_dt, &data.p); st != SC_OK) {
            return fail(st);
        }
        PredGuard pred;
        if (sc_status st = sc_predict(model.p, data.p, &pred.p); st != SC_OK) return fail(st);
        if (sc_status st = sc_predictions_save(pred.p, pr_out.c_str()); st != SC_OK) {
            return fail(st);
        }
        std::printf("wrote %s (%zu predictions, source=%s target=%s)\n", pr_out.c_str(),
                    sc_predictions_count(pred.p), sc_model_source_channel(model.p),
                    sc_model_target_channel(model.p));
        return 0;
    }

    if (evaluate->parsed()) {
        PredGuard pred;
        if (!ev_pred.empty()) {
            if (sc_status st = sc_predictions_load(ev_pred.c_str(), &pred.p); st != SC_OK) {
                return fail(st);
            }
        } else if (!ev_model.empty() && !ev_data.empty()) {
            ModelGuard model;
            if (sc_status st = sc_model_load(ev_model.c_str(), &model.p); st != SC_OK) {
                return fail(st);
            }
            SeriesGuard data;
            if (sc_status st = sc_series_load(ev_data.c_str(), ev_dt, &data.p); st != SC_OK) {
                return fail(st);
            }
            if (sc_status st = sc_predict(model.p, data.p, &pred.p); st != SC_OK) {
                return fail(st);
            }
        } else {
            std::fprintf(stderr, "error: evaluate needs --pred, or --model with --data\n");
            return 1;
        }
        double rmse = 0, accuracy = 0;
        size_t n = 0;
        if (sc_status st = sc_evaluate(pred.p, &rmse, &accuracy, &n); st != SC_OK) {
            return fail(st);
        }
        std::printf("RMSE=%.3f microstrain, Accuracy=%.3f%%\n", rmse, accuracy);
        if (!ev_report.empty()) return append_evaluation(ev_report, rmse, accuracy, n);
        return 0;
    }

    if (report->parsed()) {
        PredGuard pred;
        if (sc_status st = sc_predictions_load(rp_pred.c_str(), &pred.p); st != SC_OK) {
            return fail(st);
        }
        const char* csv = rp_csv.empty() ? nullptr : rp_csv.c_str();
        if (sc_status st = sc_report(pred.p, rp_svg.c_str(), csv); st != SC_OK) return fail(st);
        std::printf("wrote %s\n", rp_svg.c_str());
        if (csv) std::printf("wrote %s\n", rp_csv.c_str());
        return 0;
    }

    return 1;
}
