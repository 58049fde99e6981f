/* straincast C API: strain time-history simulation, LSTM training,
 * prediction, evaluation and report generation behind opaque handles.
 *
 * Every function that can fail returns an sc_status; on failure a
 * human-readable message is available from sc_last_error() on the same
 * thread. Status values match the CLI exit codes.
 */
#ifndef STRAINCAST_H
#define STRAINCAST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
    SC_OK = 0,
    SC_ERR_USAGE = 1,  /* bad arguments or options */
    SC_ERR_DATA = 2,   /* file, format or shape problems */
    SC_ERR_NUMERIC = 3 /* divergence or non-finite values */
} sc_status;

typedef struct sc_series sc_series;           /* one multi-channel crossing */
typedef struct sc_model sc_model;             /* trained network + normalization */
typedef struct sc_predictions sc_predictions; /* per-window prediction rows */

const char* sc_version(void);

/* Message for the most recent failure on this thread; empty string if none.
 * Valid until the next API call on the same thread. */
const char* sc_last_error(void);

/* Frees strings returned through char** out-parameters. */
void sc_string_free(char* s);

/* ---- simulation -------------------------------------------------------- */

typedef struct sc_sim_options {
    const char* train_kind; /* "test" or "passenger" */
    double speed_kmph;      /* must be > 0 */
    double span_m;          /* <= 0 selects the default 45.72 */
    double dt_s;            /* <= 0 selects the default 0.025 */
    double noise_sigma;     /* microstrain; < 0 = auto (2% of clean peak) */
    uint64_t seed;
} sc_sim_options;

void sc_sim_options_init(sc_sim_options* opt);
sc_status sc_simulate(const sc_sim_options* opt, sc_series** out);

/* ---- series ------------------------------------------------------------ */

/* dt_override > 0 supplies or replaces the file's `# dt=` metadata. */
sc_status sc_series_load(const char* path, double dt_override, sc_series** out);
sc_status sc_series_save(const sc_series* s, const char* path);

size_t sc_series_length(const sc_series* s);
double sc_series_dt(const sc_series* s);
size_t sc_series_channel_count(const sc_series* s);
const char* sc_series_channel_name(const sc_series* s, size_t index); /* NULL if out of range */
sc_status sc_series_channel_range(const sc_series* s, const char* name, double* min_out,
                                  double* max_out);
void sc_series_free(sc_series* s);

/* ---- training ----------------------------------------------------------- */

typedef struct sc_train_options {
    const char* preset; /* "case1","case2","case3a","case3b","case4" or NULL */
    /* Explicit architecture; each field overrides the preset when set. */
    const char* source_channel;
    const char* target_channel;
    const int* hidden; /* LSTM layer widths, outermost first */
    size_t hidden_count;
    int dense_hidden;             /* <= 0 keeps preset/default */
    int window;                   /* <= 0 keeps preset/default */
    const char* peephole;         /* "full" | "diagonal" | "none" */
    const char* output_gate_cell; /* "previous" | "current" */
    /* Optimization settings; non-positive fields keep the defaults. */
    double learning_rate;
    int epochs;
    int batch_size;
    double clip_norm;
    int patience;
    const char* protocol; /* "in-run" | "holdout" */
    double train_ratio;   /* holdout split fraction, (0,1) */
    uint64_t seed;
} sc_train_options;

void sc_train_options_init(sc_train_options* opt);

/* Trains on `data`; on success *out_model owns the trained model and, when
 * out_report_json is non-NULL, *out_report_json holds the training report
 * (free with sc_string_free). */
sc_status sc_train(const sc_series* data, const sc_train_options* opt, sc_model** out_model,
                   char** out_report_json);

/* ---- model persistence -------------------------------------------------- */

sc_status sc_model_save(const sc_model* m, const char* path);
sc_status sc_model_load(const char* path, sc_model** out);
const char* sc_model_source_channel(const sc_model* m);
const char* sc_model_target_channel(const sc_model* m);
int sc_model_window(const sc_model* m);
void sc_model_free(sc_model* m);

/* ---- prediction ---------------------------------------------------------- */

sc_status sc_predict(const sc_model* m, const sc_series* data, sc_predictions** out);

size_t sc_predictions_count(const sc_predictions* p);
int sc_predictions_has_target(const sc_predictions* p);
sc_status sc_predictions_row(const sc_predictions* p, size_t index, double* time_s,
                             double* predicted, double* target /* nullable */);
sc_status sc_predictions_save(const sc_predictions* p, const char* path);
sc_status sc_predictions_load(const char* path, sc_predictions** out);
void sc_predictions_free(sc_predictions* p);

/* ---- evaluation and reporting -------------------------------------------- */

/* Requires a target column; writes RMSE (microstrain), the L2 accuracy
 * percentage and the row count. */
sc_status sc_evaluate(const sc_predictions* p, double* rmse_out, double* accuracy_out,
                      size_t* n_out);

/* Emits the target-vs-predicted chart as SVG, plus the tidy data CSV when
 * csv_path is non-NULL. */
sc_status sc_report(const sc_predictions* p, const char* svg_path, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* STRAINCAST_H */
