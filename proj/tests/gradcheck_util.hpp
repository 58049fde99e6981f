#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "straincast/gradcheck.hpp"
#include "straincast/training.hpp"

namespace straincast::test {

struct GradCheckOutcome {
    bool pass = true;
    double max_rel_err = 0.0;       // worst relative error above the absolute floor
    std::string worst_coordinate;   // tensor-flat index of the worst entry
};

// Compares analytic BPTT gradients against central differences over one
// random batch. Pass criterion per coordinate:
//   |analytic - numeric| <= max(abs_floor, rel_tol * max(|analytic|,|numeric|))
inline GradCheckOutcome check_network_gradients(const NetworkConfig& cfg, std::uint64_t seed,
                                                int batch_size, double h = 1e-5,
                                                double rel_tol = 1e-6,
                                                double abs_floor = 1e-10) {
    Prng rng(seed);
    const NetworkParams net = init_network(cfg, rng);

    std::vector<Sample> batch(static_cast<std::size_t>(batch_size));
    for (auto& s : batch) {
        s.window = prng_vector(rng, static_cast<std::size_t>(cfg.window) *
                                        static_cast<std::size_t>(cfg.input_size),
                               -1.0, 1.0);
        s.target = rng.uniform(-1.0, 1.0);
    }

    const Vector analytic = bptt_gradients(net, batch).grads.flatten();

    const auto loss_fn = [&](const Vector& flat) {
        NetworkParams p = NetworkParams::zeros(cfg);
        p.unflatten(flat);
        double loss = 0.0;
        for (const auto& s : batch) {
            const double d = forward_window(p, s.window) - s.target;
            loss += d * d;
        }
        return loss / static_cast<double>(batch.size());
    };
    const Vector numeric = finite_diff_gradient(loss_fn, net.flatten(), h);

    GradCheckOutcome out;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double err = std::abs(analytic[i] - numeric[i]);
        const double mag = std::max(std::abs(analytic[i]), std::abs(numeric[i]));
        if (err > std::max(abs_floor, rel_tol * mag)) out.pass = false;
        if (mag > 0 && err > abs_floor && err / mag > out.max_rel_err) {
            out.max_rel_err = err / mag;
            out.worst_coordinate = "flat[" + std::to_string(i) + "]";
        }
    }
    return out;
}

// The full randomized grid used by both the unit test (subset) and the
// acceptance suite (all of it): hidden {1,2,3} x layers {1,2} x T {1,2,5}
// x peephole modes x output-gate-cell modes.
inline std::vector<NetworkConfig> gradcheck_config_grid() {
    std::vector<NetworkConfig> grid;
    const PeepholeMode modes[] = {PeepholeMode::full_matrix, PeepholeMode::diagonal,
                                  PeepholeMode::none};
    const OutputGateCell cells[] = {OutputGateCell::previous, OutputGateCell::current};
    int dense_cycle = 0;
    for (int hidden : {1, 2, 3}) {
        for (int layers : {1, 2}) {
            for (int window : {1, 2, 5}) {
                for (PeepholeMode pm : modes) {
                    for (OutputGateCell oc : cells) {
                        NetworkConfig cfg;
                        cfg.lstm_hidden.assign(static_cast<std::size_t>(layers), hidden);
                        if (layers == 2) cfg.lstm_hidden[1] = std::max(1, hidden - 1);
                        cfg.dense_hidden = 2 + (dense_cycle++ % 3);
                        cfg.window = window;
                        cfg.peephole = pm;
                        cfg.output_gate_cell = oc;
                        grid.push_back(cfg);
                    }
                }
            }
        }
    }
    return grid;
}

}  // namespace straincast::test
