#include "straincast/lstm.hpp"

#include <cmath>
#include <cstring>

#include "straincast/errors.hpp"

namespace straincast {

const char* to_string(PeepholeMode m) {
    switch (m) {
        case PeepholeMode::full_matrix: return "full";
        case PeepholeMode::diagonal: return "diagonal";
        case PeepholeMode::none: return "none";
    }
    return "full";
}

const char* to_string(OutputGateCell c) {
    return c == OutputGateCell::previous ? "previous" : "current";
}

PeepholeMode peephole_mode_from_string(const std::string& s) {
    if (s == "full" || s == "full-matrix") return PeepholeMode::full_matrix;
    if (s == "diagonal") return PeepholeMode::diagonal;
    if (s == "none") return PeepholeMode::none;
    throw_usage("unknown peephole mode '" + s + "' (expected full, diagonal or none)");
}

OutputGateCell output_gate_cell_from_string(const std::string& s) {
    if (s == "previous") return OutputGateCell::previous;
    if (s == "current") return OutputGateCell::current;
    throw_usage("unknown output gate cell '" + s + "' (expected previous or current)");
}

void NetworkConfig::validate() const {
    if (lstm_hidden.empty()) throw_usage("config: at least one LSTM layer is required");
    for (int h : lstm_hidden) {
        if (h < 1) throw_usage("config: LSTM hidden sizes must be >= 1");
    }
    if (dense_hidden < 1) throw_usage("config: dense hidden size must be >= 1");
    if (window < 1) throw_usage("config: window size must be >= 1");
    if (input_size < 1) throw_usage("config: input size must be >= 1");
}

CellState CellState::zero(int hidden) {
    return CellState{Vector(static_cast<std::size_t>(hidden), 0.0),
                     Vector(static_cast<std::size_t>(hidden), 0.0)};
}

namespace {

LstmLayerParams zero_layer(int input_size, int hidden, PeepholeMode mode) {
    LstmLayerParams p;
    p.input_size = input_size;
    p.hidden = hidden;
    const auto h = static_cast<std::size_t>(hidden);
    const auto in = static_cast<std::size_t>(input_size);
    p.w_xi = Matrix(h, in);
    p.w_hi = Matrix(h, h);
    p.w_xf = Matrix(h, in);
    p.w_hf = Matrix(h, h);
    p.w_xc = Matrix(h, in);
    p.w_hc = Matrix(h, h);
    p.w_xo = Matrix(h, in);
    p.w_ho = Matrix(h, h);
    if (mode == PeepholeMode::full_matrix) {
        p.p_i = Matrix(h, h);
        p.p_f = Matrix(h, h);
        p.p_o = Matrix(h, h);
    } else if (mode == PeepholeMode::diagonal) {
        p.d_i = Vector(h, 0.0);
        p.d_f = Vector(h, 0.0);
        p.d_o = Vector(h, 0.0);
    }
    p.b_i = Vector(h, 0.0);
    p.b_f = Vector(h, 0.0);
    p.b_c = Vector(h, 0.0);
    p.b_o = Vector(h, 0.0);
    return p;
}

template <typename View, typename Params>
std::vector<View> collect_views(Params& p) {
    std::vector<View> out;
    const PeepholeMode mode = p.config.peephole;
    auto mat = [&out](const std::string& name, auto& m) {
        out.push_back(View{name, m.data(), m.size(), m.rows(), m.cols(), true});
    };
    auto vec = [&out](const std::string& name, auto& v) {
        out.push_back(View{name, v.data(), v.size(), v.size(), 1, false});
    };
    for (std::size_t k = 0; k < p.layers.size(); ++k) {
        auto& L = p.layers[k];
        const std::string pre = "lstm" + std::to_string(k + 1) + ".";
        mat(pre + "W_xi", L.w_xi);
        mat(pre + "W_hi", L.w_hi);
        if (mode == PeepholeMode::full_matrix) mat(pre + "W_ci", L.p_i);
        if (mode == PeepholeMode::diagonal) vec(pre + "W_ci", L.d_i);
        vec(pre + "b_i", L.b_i);
        mat(pre + "W_xf", L.w_xf);
        mat(pre + "W_hf", L.w_hf);
        if (mode == PeepholeMode::full_matrix) mat(pre + "W_cf", L.p_f);
        if (mode == PeepholeMode::diagonal) vec(pre + "W_cf", L.d_f);
        vec(pre + "b_f", L.b_f);
        mat(pre + "W_xc", L.w_xc);
        mat(pre + "W_hc", L.w_hc);
        vec(pre + "b_c", L.b_c);
        mat(pre + "W_xo", L.w_xo);
        mat(pre + "W_ho", L.w_ho);
        if (mode == PeepholeMode::full_matrix) mat(pre + "W_co", L.p_o);
        if (mode == PeepholeMode::diagonal) vec(pre + "W_co", L.d_o);
        vec(pre + "b_o", L.b_o);
    }
    mat("dense.W1", p.dense.w1);
    vec("dense.b1", p.dense.b1);
    mat("dense.W2", p.dense.w2);
    vec("dense.b2", p.dense.b2);
    return out;
}

}  // namespace

NetworkParams NetworkParams::zeros(const NetworkConfig& cfg) {
    cfg.validate();
    NetworkParams p;
    p.config = cfg;
    int in = cfg.input_size;
    for (int h : cfg.lstm_hidden) {
        p.layers.push_back(zero_layer(in, h, cfg.peephole));
        in = h;
    }
    const auto dh = static_cast<std::size_t>(cfg.dense_hidden);
    const auto top = static_cast<std::size_t>(cfg.lstm_hidden.back());
    p.dense.w1 = Matrix(dh, top);
    p.dense.b1 = Vector(dh, 0.0);
    p.dense.w2 = Matrix(1, dh);
    p.dense.b2 = Vector(1, 0.0);
    return p;
}

std::vector<TensorView> tensor_views(NetworkParams& p) {
    return collect_views<TensorView>(p);
}

std::vector<ConstTensorView> tensor_views(const NetworkParams& p) {
    return collect_views<ConstTensorView>(p);
}

std::size_t NetworkParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto& t : tensor_views(*this)) n += t.len;
    return n;
}

Vector NetworkParams::flatten() const {
    Vector flat;
    flat.reserve(parameter_count());
    for (const auto& t : tensor_views(*this)) flat.insert(flat.end(), t.data, t.data + t.len);
    return flat;
}

void NetworkParams::unflatten(const Vector& flat) {
    if (flat.size() != parameter_count()) {
        throw_data("unflatten: expected " + std::to_string(parameter_count()) + " values, got " +
                   std::to_string(flat.size()));
    }
    std::size_t off = 0;
    for (auto& t : tensor_views(*this)) {
        std::memcpy(t.data, flat.data() + off, t.len * sizeof(double));
        off += t.len;
    }
}

NetworkParams init_network(const NetworkConfig& cfg, Prng& rng) {
    NetworkParams p = NetworkParams::zeros(cfg);
    for (auto& t : tensor_views(p)) {
        const bool is_weight = t.name.find(".W_") != std::string::npos ||
                               t.name.find(".W1") != std::string::npos ||
                               t.name.find(".W2") != std::string::npos;
        if (is_weight) {
            const double bound = 1.0 / std::sqrt(static_cast<double>(t.rows));
            for (std::size_t r = 0; r < t.rows; ++r) {
                for (std::size_t c = 0; c < t.cols; ++c) {
                    t.data[r * t.cols + c] = rng.uniform(-bound, bound);
                }
            }
        } else if (t.name.find(".b_f") != std::string::npos) {
            // Forget-gate bias at 1 keeps early memory from vanishing.
            for (std::size_t i = 0; i < t.len; ++i) t.data[i] = 1.0;
        }
        // other biases stay zero
    }
    return p;
}

CellState cell_step(const LstmLayerParams& p, const Vector& x, const CellState& prev,
                    const NetworkConfig& cfg, StepTrace* trace) {
    if (x.size() != static_cast<std::size_t>(p.input_size)) {
        throw_data("cell_step: input has length " + std::to_string(x.size()) + ", expected " +
                   std::to_string(p.input_size));
    }
    const auto h = static_cast<std::size_t>(p.hidden);
    if (prev.h.size() != h || prev.c.size() != h) {
        throw_data("cell_step: previous state has lengths " + std::to_string(prev.h.size()) +
                   "/" + std::to_string(prev.c.size()) + ", expected " + std::to_string(p.hidden));
    }

    auto peep = [&](const Matrix& full, const Vector& diag, const Vector& c, Vector& acc) {
        if (cfg.peephole == PeepholeMode::full_matrix) {
            add_in_place(acc, matvec(full, c));
        } else if (cfg.peephole == PeepholeMode::diagonal) {
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += diag[k] * c[k];
        }
    };

    Vector a_i = matvec(p.w_xi, x);
    add_in_place(a_i, matvec(p.w_hi, prev.h));
    peep(p.p_i, p.d_i, prev.c, a_i);
    add_in_place(a_i, p.b_i);
    const Vector gate_i = sigmoid(a_i);

    Vector a_f = matvec(p.w_xf, x);
    add_in_place(a_f, matvec(p.w_hf, prev.h));
    peep(p.p_f, p.d_f, prev.c, a_f);
    add_in_place(a_f, p.b_f);
    const Vector gate_f = sigmoid(a_f);

    Vector a_g = matvec(p.w_xc, x);
    add_in_place(a_g, matvec(p.w_hc, prev.h));
    add_in_place(a_g, p.b_c);
    const Vector cand = tanh_vec(a_g);

    Vector c_new(h);
    for (std::size_t k = 0; k < h; ++k) c_new[k] = gate_f[k] * prev.c[k] + gate_i[k] * cand[k];

    Vector a_o = matvec(p.w_xo, x);
    add_in_place(a_o, matvec(p.w_ho, prev.h));
    const Vector& c_for_o = cfg.output_gate_cell == OutputGateCell::previous ? prev.c : c_new;
    peep(p.p_o, p.d_o, c_for_o, a_o);
    add_in_place(a_o, p.b_o);
    const Vector gate_o = sigmoid(a_o);

    Vector tc = tanh_vec(c_new);
    Vector h_new(h);
    for (std::size_t k = 0; k < h; ++k) h_new[k] = gate_o[k] * tc[k];

    if (trace) {
        trace->i = gate_i;
        trace->f = gate_f;
        trace->o = gate_o;
        trace->g = cand;
        trace->c = c_new;
        trace->h = h_new;
        trace->tanh_c = std::move(tc);
    }
    return CellState{std::move(h_new), std::move(c_new)};
}

double forward_window(const NetworkParams& net, const Vector& window, ForwardTrace* trace) {
    const auto T = static_cast<std::size_t>(net.config.window);
    if (net.config.input_size == 1) {
        if (window.size() != T) {
            throw_data("forward_window: window has length " + std::to_string(window.size()) +
                       ", expected " + std::to_string(T));
        }
    } else if (window.size() != T * static_cast<std::size_t>(net.config.input_size)) {
        throw_data("forward_window: window has length " + std::to_string(window.size()) +
                   ", expected " + std::to_string(T * net.config.input_size));
    }

    if (trace) {
        trace->layers.assign(net.layers.size(), LayerTrace{});
        for (auto& lt : trace->layers) lt.steps.resize(T);
    }

    const auto in0 = static_cast<std::size_t>(net.config.input_size);
    std::vector<Vector> inputs(T);
    for (std::size_t t = 0; t < T; ++t) {
        inputs[t].assign(window.begin() + static_cast<std::ptrdiff_t>(t * in0),
                         window.begin() + static_cast<std::ptrdiff_t>((t + 1) * in0));
    }

    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const auto& L = net.layers[k];
        CellState state = CellState::zero(L.hidden);
        std::vector<Vector> outputs(T);
        for (std::size_t t = 0; t < T; ++t) {
            StepTrace* st = trace ? &trace->layers[k].steps[t] : nullptr;
            state = cell_step(L, inputs[t], state, net.config, st);
            outputs[t] = state.h;
        }
        inputs = std::move(outputs);
    }

    const Vector& h_top = inputs.back();
    Vector z1 = matvec(net.dense.w1, h_top);
    add_in_place(z1, net.dense.b1);
    const Vector a1 = tanh_vec(z1);
    const double pred = matvec(net.dense.w2, a1)[0] + net.dense.b2[0];

    if (trace) {
        trace->dense_hidden_act = a1;
        trace->prediction = pred;
    }
    return pred;
}

Vector forward_batch(const NetworkParams& net, const std::vector<Vector>& windows) {
    Vector out;
    out.reserve(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        try {
            out.push_back(forward_window(net, windows[i]));
        } catch (const Error& e) {
            throw Error(e.kind(), "window " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace straincast
