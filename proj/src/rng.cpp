#include "straincast/rng.hpp"

#include <cmath>
#include <string>

#include "straincast/errors.hpp"

namespace straincast {

double Prng::uniform(double lo, double hi) {
    if (!(lo < hi)) {
        throw_usage("uniform: lower bound " + std::to_string(lo) + " must be below upper bound " +
                    std::to_string(hi));
    }
    double r = lo + (hi - lo) * uniform01();
    if (r >= hi) r = std::nextafter(hi, lo);  // half-open even under rounding
    return r;
}

std::size_t Prng::below(std::size_t n) {
    if (n == 0) throw_usage("below: n must be > 0");
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n)) >> 64);
}

double Prng::normal(double mean, double stddev) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + stddev * spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return mean + stddev * radius * std::cos(angle);
}

Matrix prng_matrix(Prng& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
    if (!(lo < hi)) {
        throw_usage("prng_matrix: lower bound " + std::to_string(lo) +
                    " must be below upper bound " + std::to_string(hi));
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
    }
    return m;
}

Vector prng_vector(Prng& rng, std::size_t len, double lo, double hi) {
    if (!(lo < hi)) {
        throw_usage("prng_vector: lower bound " + std::to_string(lo) +
                    " must be below upper bound " + std::to_string(hi));
    }
    Vector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = rng.uniform(lo, hi);
    return v;
}

void shuffle_indices(Prng& rng, std::vector<std::size_t>& idx) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(idx[i - 1], idx[j]);
    }
}

}  // namespace straincast
