#pragma once

#include <cstdint>
#include <random>

#include "straincast/linalg.hpp"

namespace straincast {

// Seeded 64-bit generator: MT19937-64. The raw integer stream is fixed by
// the C++ standard and the [0,1) mapping below is explicit, so equal seeds
// give equal draws on every platform. Model artifacts record the seed, so
// the algorithm must never change.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi); rejects lo >= hi.
    double uniform(double lo, double hi);

    // Uniform integer in [0, n) via multiply-shift.
    std::size_t below(std::size_t n);

    // Gaussian via Box-Muller; std::normal_distribution streams are
    // implementation-defined, this one is not.
    double normal(double mean, double stddev);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Matrix of i.i.d. uniform draws in [lo, hi), consumed in row-major order.
Matrix prng_matrix(Prng& rng, std::size_t rows, std::size_t cols, double lo, double hi);
Vector prng_vector(Prng& rng, std::size_t len, double lo, double hi);

// Seeded Fisher-Yates; std::shuffle is implementation-defined.
void shuffle_indices(Prng& rng, std::vector<std::size_t>& idx);

}  // namespace straincast
