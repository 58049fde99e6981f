#include "straincast/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "straincast/errors.hpp"
#include "straincast/metrics.hpp"

namespace straincast {

void TrainConfig::validate() const {
    if (!(learning_rate > 0)) throw_usage("train config: learning rate must be > 0");
    if (epochs < 1) throw_usage("train config: epochs must be >= 1");
    if (batch_size < 1) throw_usage("train config: batch size must be >= 1");
    if (!(clip_norm > 0)) throw_usage("train config: clip norm must be > 0");
    if (!(beta1 > 0 && beta1 < 1) || !(beta2 > 0 && beta2 < 1)) {
        throw_usage("train config: moment decays must lie in (0,1)");
    }
    if (!(epsilon > 0)) throw_usage("train config: epsilon must be > 0");
    if (early_stop_patience < 1) throw_usage("train config: patience must be >= 1");
}

double mse_loss(const Vector& pred, const Vector& target) {
    if (pred.empty() || pred.size() != target.size()) {
        throw_data("mse_loss: need equal non-empty lengths, got " + std::to_string(pred.size()) +
                   " and " + std::to_string(target.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

namespace {

// Backward pass for one recurrent layer over the whole window.
// dh_from_above[t] is the loss gradient flowing into this layer's h_t from
// the consumer above (dense head or next layer); dx_out[t] receives the
// gradient with respect to this layer's input at t.
void layer_backward(const LstmLayerParams& p, const NetworkConfig& cfg,
                    const std::vector<StepTrace>& steps,
                    const std::vector<const Vector*>& layer_inputs,
                    const std::vector<Vector>& dh_from_above, LstmLayerParams& g,
                    std::vector<Vector>& dx_out) {
    const auto T = steps.size();
    const auto h = static_cast<std::size_t>(p.hidden);
    const Vector zero_state(h, 0.0);
    const bool full = cfg.peephole == PeepholeMode::full_matrix;
    const bool diag = cfg.peephole == PeepholeMode::diagonal;

    Vector dh_carry(h, 0.0), dc_carry(h, 0.0);
    dx_out.assign(T, Vector());

    for (std::size_t t = T; t-- > 0;) {
        const StepTrace& s = steps[t];
        const Vector& x_t = *layer_inputs[t];
        const Vector& h_prev = t > 0 ? steps[t - 1].h : zero_state;
        const Vector& c_prev = t > 0 ? steps[t - 1].c : zero_state;

        Vector dh = dh_from_above[t];
        add_in_place(dh, dh_carry);
        Vector dc = dc_carry;

        // h_t = o_t * tanh(c_t)
        Vector d_ao(h);
        for (std::size_t k = 0; k < h; ++k) {
            const double d_o = dh[k] * s.tanh_c[k];
            dc[k] += dh[k] * s.o[k] * (1.0 - s.tanh_c[k] * s.tanh_c[k]);
            d_ao[k] = d_o * s.o[k] * (1.0 - s.o[k]);
        }

        add_outer(g.w_xo, d_ao, x_t);
        add_outer(g.w_ho, d_ao, h_prev);
        add_in_place(g.b_o, d_ao);
        Vector dh_prev = matvec_transposed(p.w_ho, d_ao);
        Vector dx = matvec_transposed(p.w_xo, d_ao);
        Vector dc_prev(h, 0.0);

        if (full || diag) {
            const bool sees_current = cfg.output_gate_cell == OutputGateCell::current;
            const Vector& c_seen = sees_current ? s.c : c_prev;
            if (full) {
                add_outer(g.p_o, d_ao, c_seen);
                Vector back = matvec_transposed(p.p_o, d_ao);
                add_in_place(sees_current ? dc : dc_prev, back);
            } else {
                for (std::size_t k = 0; k < h; ++k) {
                    g.d_o[k] += d_ao[k] * c_seen[k];
                    (sees_current ? dc : dc_prev)[k] += p.d_o[k] * d_ao[k];
                }
            }
        }

        // c_t = f_t * c_{t-1} + i_t * g_t
        Vector d_ai(h), d_af(h), d_ag(h);
        for (std::size_t k = 0; k < h; ++k) {
            const double d_i = dc[k] * s.g[k];
            const double d_f = dc[k] * c_prev[k];
            const double d_g = dc[k] * s.i[k];
            dc_prev[k] += dc[k] * s.f[k];
            d_ai[k] = d_i * s.i[k] * (1.0 - s.i[k]);
            d_af[k] = d_f * s.f[k] * (1.0 - s.f[k]);
            d_ag[k] = d_g * (1.0 - s.g[k] * s.g[k]);
        }

        add_outer(g.w_xc, d_ag, x_t);
        add_outer(g.w_hc, d_ag, h_prev);
        add_in_place(g.b_c, d_ag);
        add_outer(g.w_xi, d_ai, x_t);
        add_outer(g.w_hi, d_ai, h_prev);
        add_in_place(g.b_i, d_ai);
        add_outer(g.w_xf, d_af, x_t);
        add_outer(g.w_hf, d_af, h_prev);
        add_in_place(g.b_f, d_af);

        if (full) {
            add_outer(g.p_i, d_ai, c_prev);
            add_outer(g.p_f, d_af, c_prev);
            add_in_place(dc_prev, matvec_transposed(p.p_i, d_ai));
            add_in_place(dc_prev, matvec_transposed(p.p_f, d_af));
        } else if (diag) {
            for (std::size_t k = 0; k < h; ++k) {
                g.d_i[k] += d_ai[k] * c_prev[k];
                g.d_f[k] += d_af[k] * c_prev[k];
                dc_prev[k] += p.d_i[k] * d_ai[k] + p.d_f[k] * d_af[k];
            }
        }

        add_in_place(dh_prev, matvec_transposed(p.w_hi, d_ai));
        add_in_place(dh_prev, matvec_transposed(p.w_hf, d_af));
        add_in_place(dh_prev, matvec_transposed(p.w_hc, d_ag));
        add_in_place(dx, matvec_transposed(p.w_xi, d_ai));
        add_in_place(dx, matvec_transposed(p.w_xf, d_af));
        add_in_place(dx, matvec_transposed(p.w_xc, d_ag));

        dx_out[t] = std::move(dx);
        dh_carry = std::move(dh_prev);
        dc_carry = std::move(dc_prev);
    }
}

// Gradients of one sample, scaled by d_pred, accumulated into grads.
void backward_sample(const NetworkParams& net, const Vector& window, const ForwardTrace& trace,
                     double d_pred, NetworkParams& grads) {
    const auto T = static_cast<std::size_t>(net.config.window);
    const auto n_layers = net.layers.size();

    // Dense head: pred = W2 tanh(W1 h_T + b1) + b2
    const Vector& a1 = trace.dense_hidden_act;
    const auto dh_dense = a1.size();
    Vector d_z1(dh_dense);
    for (std::size_t j = 0; j < dh_dense; ++j) {
        grads.dense.w2(0, j) += d_pred * a1[j];
        d_z1[j] = net.dense.w2(0, j) * d_pred * (1.0 - a1[j] * a1[j]);
    }
    grads.dense.b2[0] += d_pred;
    const Vector& h_top = trace.layers.back().steps.back().h;
    add_outer(grads.dense.w1, d_z1, h_top);
    add_in_place(grads.dense.b1, d_z1);
    Vector dh_top = matvec_transposed(net.dense.w1, d_z1);

    // Per-timestep inputs of layer 0 are the window scalars.
    const auto in0 = static_cast<std::size_t>(net.config.input_size);
    std::vector<Vector> x0(T);
    for (std::size_t t = 0; t < T; ++t) {
        x0[t].assign(window.begin() + static_cast<std::ptrdiff_t>(t * in0),
                     window.begin() + static_cast<std::ptrdiff_t>((t + 1) * in0));
    }

    std::vector<Vector> dh_above(T);
    for (std::size_t k = n_layers; k-- > 0;) {
        const auto hk = static_cast<std::size_t>(net.layers[k].hidden);
        if (k == n_layers - 1) {
            for (std::size_t t = 0; t < T; ++t) dh_above[t].assign(hk, 0.0);
            dh_above[T - 1] = dh_top;
        }
        std::vector<const Vector*> inputs(T);
        for (std::size_t t = 0; t < T; ++t) {
            inputs[t] = k == 0 ? &x0[t] : &trace.layers[k - 1].steps[t].h;
        }
        std::vector<Vector> dx;
        layer_backward(net.layers[k], net.config, trace.layers[k].steps, inputs, dh_above,
                       grads.layers[k], dx);
        if (k > 0) dh_above = std::move(dx);  // feeds the layer below
    }
}

}  // namespace

GradientResult bptt_gradients(const NetworkParams& net, const std::vector<Sample>& batch) {
    if (batch.empty()) throw_data("bptt_gradients: batch must be non-empty");
    GradientResult result;
    result.grads = NetworkParams::zeros(net.config);

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    ForwardTrace trace;
    for (const Sample& s : batch) {
        const double pred = forward_window(net, s.window, &trace);
        const double err = pred - s.target;
        loss += err * err * inv_n;
        backward_sample(net, s.window, trace, 2.0 * err * inv_n, result.grads);
    }
    if (!std::isfinite(loss)) {
        throw_numeric("bptt_gradients: non-finite loss (parameter blow-up); loss=" +
                      std::to_string(loss));
    }
    result.loss = loss;
    return result;
}

double global_norm(const NetworkParams& grads) {
    double sq = 0.0;
    for (const auto& t : tensor_views(grads)) {
        for (std::size_t i = 0; i < t.len; ++i) sq += t.data[i] * t.data[i];
    }
    return std::sqrt(sq);
}

NetworkParams clip_global_norm(NetworkParams grads, double max_norm) {
    if (!(max_norm > 0)) throw_usage("clip_global_norm: max norm must be > 0");
    const double norm = global_norm(grads);
    if (norm > max_norm) {
        const double scale = max_norm / norm;
        for (auto& t : tensor_views(grads)) {
            for (std::size_t i = 0; i < t.len; ++i) t.data[i] *= scale;
        }
    }
    return grads;
}

AdamState AdamState::init(const NetworkConfig& cfg) {
    AdamState st;
    st.m = NetworkParams::zeros(cfg);
    st.v = NetworkParams::zeros(cfg);
    return st;
}

void optimizer_step(AdamState& state, NetworkParams& params, const NetworkParams& grads,
                    const TrainConfig& cfg) {
    state.step += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));

    auto pv = tensor_views(params);
    auto gv = tensor_views(static_cast<const NetworkParams&>(grads));
    auto mv = tensor_views(state.m);
    auto vv = tensor_views(state.v);
    for (std::size_t t = 0; t < pv.size(); ++t) {
        double* p = pv[t].data;
        const double* g = gv[t].data;
        double* m = mv[t].data;
        double* v = vv[t].data;
        for (std::size_t i = 0; i < pv[t].len; ++i) {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            p[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
    }
}

std::pair<NetworkParams, TrainReport> train(const NetworkConfig& cfg, const TrainConfig& tcfg,
                                            const std::vector<Sample>& train_set,
                                            const std::vector<Sample>& val_set) {
    cfg.validate();
    tcfg.validate();
    if (train_set.empty()) throw_data("train: training set must be non-empty");
    if (val_set.empty()) throw_data("train: validation set must be non-empty");
    for (const Sample& s : train_set) {
        if (s.window.size() != static_cast<std::size_t>(cfg.window) *
                                   static_cast<std::size_t>(cfg.input_size)) {
            throw_data("train: sample window length " + std::to_string(s.window.size()) +
                       " does not match configured window " + std::to_string(cfg.window));
        }
    }

    Prng rng(tcfg.seed);
    NetworkParams params = init_network(cfg, rng);

    std::vector<Vector> val_windows;
    Vector val_targets;
    val_windows.reserve(val_set.size());
    val_targets.reserve(val_set.size());
    for (const Sample& s : val_set) {
        val_windows.push_back(s.window);
        val_targets.push_back(s.target);
    }

    AdamState adam = AdamState::init(cfg);
    TrainReport report;
    report.net_config = cfg;
    report.train_config = tcfg;
    report.seed = tcfg.seed;

    NetworkParams best = params;
    double best_rmse = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    int epochs_since_best = 0;

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        shuffle_indices(rng, order);

        double epoch_loss = 0.0;
        std::size_t seen = 0;
        const auto bs = static_cast<std::size_t>(tcfg.batch_size);
        for (std::size_t start = 0; start < order.size(); start += bs) {
            const std::size_t end = std::min(order.size(), start + bs);
            std::vector<Sample> batch;
            batch.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) batch.push_back(train_set[order[i]]);
            GradientResult gr;
            try {
                gr = bptt_gradients(params, batch);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::numeric) {
                    throw_numeric("train: diverged at epoch " + std::to_string(epoch) +
                                  ", batch " + std::to_string(start / bs + 1) + ": " + e.what());
                }
                throw;
            }
            epoch_loss += gr.loss * static_cast<double>(batch.size());
            seen += batch.size();
            NetworkParams clipped = clip_global_norm(std::move(gr.grads), tcfg.clip_norm);
            optimizer_step(adam, params, clipped, tcfg);
        }
        epoch_loss /= static_cast<double>(seen);

        const double val_rmse = rmse(forward_batch(params, val_windows), val_targets);
        if (!std::isfinite(val_rmse)) {
            throw_numeric("train: non-finite validation RMSE at epoch " + std::to_string(epoch));
        }

        const auto t1 = std::chrono::steady_clock::now();
        const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.epochs.push_back(EpochRecord{epoch, epoch_loss, val_rmse, wall_ms});

        if (val_rmse < best_rmse) {
            best_rmse = val_rmse;
            best = params;
            best_epoch = epoch;
            epochs_since_best = 0;
        } else {
            epochs_since_best += 1;
            if (epochs_since_best >= tcfg.early_stop_patience) break;
        }
    }

    report.best_epoch = best_epoch;
    report.best_val_rmse = best_rmse;
    return {std::move(best), std::move(report)};
}

}  // namespace straincast
