#include "straincast/linalg.hpp"

#include <cmath>
#include <string>

#include "straincast/errors.hpp"

namespace straincast {

Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector matvec(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) {
        throw_data("matvec: shape mismatch: matrix is " + std::to_string(m.rows()) + "x" +
                   std::to_string(m.cols()) + ", vector has length " + std::to_string(v.size()));
    }
    Vector out(m.rows(), 0.0);
    const double* row = m.data();
    for (std::size_t i = 0; i < m.rows(); ++i, row += m.cols()) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

Vector matvec_transposed(const Matrix& m, const Vector& v) {
    if (m.rows() != v.size()) {
        throw_data("matvec_transposed: shape mismatch: matrix is " + std::to_string(m.rows()) +
                   "x" + std::to_string(m.cols()) + ", vector has length " +
                   std::to_string(v.size()));
    }
    Vector out(m.cols(), 0.0);
    const double* row = m.data();
    for (std::size_t i = 0; i < m.rows(); ++i, row += m.cols()) {
        const double vi = v[i];
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[j] * vi;
    }
    return out;
}

void add_outer(Matrix& m, const Vector& u, const Vector& v) {
    if (m.rows() != u.size() || m.cols() != v.size()) {
        throw_data("add_outer: shape mismatch: matrix is " + std::to_string(m.rows()) + "x" +
                   std::to_string(m.cols()) + ", vectors have lengths " +
                   std::to_string(u.size()) + " and " + std::to_string(v.size()));
    }
    double* row = m.data();
    for (std::size_t i = 0; i < m.rows(); ++i, row += m.cols()) {
        const double ui = u[i];
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] += ui * v[j];
    }
}

void add_in_place(Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw_data("add_in_place: length mismatch: " + std::to_string(a.size()) + " vs " +
                   std::to_string(b.size()));
    }
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

Vector hadamard(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw_data("hadamard: length mismatch: " + std::to_string(a.size()) + " vs " +
                   std::to_string(b.size()));
    }
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Vector sigmoid(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = sigmoid(v[i]);
    return out;
}

Vector tanh_vec(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::tanh(v[i]);
    return out;
}

bool all_finite(const Vector& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

bool all_finite(const Matrix& m) { return all_finite(m.raw()); }

}  // namespace straincast
