#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "straincast/linalg.hpp"
#include "straincast/rng.hpp"

namespace straincast {

// Gate peephole wiring: full weight matrices, per-unit diagonal weights, or none.
enum class PeepholeMode { full_matrix, diagonal, none };

// Which cell state the output gate observes: c_{t-1} (the formulation this
// tool follows) or c_t (the conventional peephole variant).
enum class OutputGateCell { previous, current };

const char* to_string(PeepholeMode m);
const char* to_string(OutputGateCell c);
PeepholeMode peephole_mode_from_string(const std::string& s);
OutputGateCell output_gate_cell_from_string(const std::string& s);

struct NetworkConfig {
    std::vector<int> lstm_hidden{20};  // one entry per recurrent layer
    int dense_hidden = 30;
    int window = 50;  // T: samples per input window
    PeepholeMode peephole = PeepholeMode::full_matrix;
    OutputGateCell output_gate_cell = OutputGateCell::previous;
    int input_size = 1;

    void validate() const;  // throws a usage error on bad sizes
    bool operator==(const NetworkConfig&) const = default;
};

// Weights of one recurrent layer. Peephole tensors are hidden x hidden
// matrices in full_matrix mode and per-unit vectors in diagonal mode.
struct LstmLayerParams {
    Matrix w_xi, w_hi, w_xf, w_hf, w_xc, w_hc, w_xo, w_ho;
    Matrix p_i, p_f, p_o;  // full-matrix peepholes
    Vector d_i, d_f, d_o;  // diagonal peepholes
    Vector b_i, b_f, b_c, b_o;
    int input_size = 0;
    int hidden = 0;
};

struct DenseParams {
    Matrix w1;  // dense_hidden x top-layer hidden
    Vector b1;  // dense_hidden
    Matrix w2;  // 1 x dense_hidden
    Vector b2;  // length 1
};

// A reference to one parameter tensor. The enumeration order produced by
// tensor_views() is fixed; initialization draws, optimizer state,
// flatten/unflatten and serialization all share it.
struct TensorView {
    std::string name;
    double* data = nullptr;
    std::size_t len = 0;
    std::size_t rows = 0, cols = 0;
    bool is_matrix = false;
};

struct ConstTensorView {
    std::string name;
    const double* data = nullptr;
    std::size_t len = 0;
    std::size_t rows = 0, cols = 0;
    bool is_matrix = false;
};

struct NetworkParams {
    NetworkConfig config;
    std::vector<LstmLayerParams> layers;
    DenseParams dense;

    std::size_t parameter_count() const;
    Vector flatten() const;
    void unflatten(const Vector& flat);

    // All tensors zero-filled, shaped for cfg.
    static NetworkParams zeros(const NetworkConfig& cfg);
};

std::vector<TensorView> tensor_views(NetworkParams& p);
std::vector<ConstTensorView> tensor_views(const NetworkParams& p);

struct CellState {
    Vector h, c;
    static CellState zero(int hidden);
};

// Per-timestep activations kept for the backward pass.
struct StepTrace {
    Vector i, f, o, g;  // gate outputs and candidate tanh
    Vector c, h, tanh_c;
};

struct LayerTrace {
    std::vector<StepTrace> steps;
};

struct ForwardTrace {
    std::vector<LayerTrace> layers;
    Vector dense_hidden_act;  // tanh(W1 h_T + b1)
    double prediction = 0.0;
};

// Uniform [-1/sqrt(H), +1/sqrt(H)] weights where H is the destination
// size (the tensor's row count); biases zero except forget-gate bias = 1.
NetworkParams init_network(const NetworkConfig& cfg, Prng& rng);

// One step of the gated cell. With output_gate_cell = previous the output
// gate peephole reads c_{t-1}; with current it reads the fresh c_t.
CellState cell_step(const LstmLayerParams& p, const Vector& x, const CellState& prev,
                    const NetworkConfig& cfg, StepTrace* trace = nullptr);

// Runs the stacked recurrence over one window (zero initial state per
// window) and applies the dense head to the final top-layer hidden state.
double forward_window(const NetworkParams& net, const Vector& window,
                      ForwardTrace* trace = nullptr);

Vector forward_batch(const NetworkParams& net, const std::vector<Vector>& windows);

}  // namespace straincast
