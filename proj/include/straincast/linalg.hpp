#pragma once

#include <cstddef>
#include <vector>

namespace straincast {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Problem sizes here are desk-scale
// (hidden <= 80, window <= 60), so plain loops, no BLAS.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix identity(std::size_t n);

// result[i] = sum_j m(i,j) * v[j]
Vector matvec(const Matrix& m, const Vector& v);

// result[j] = sum_i m(i,j) * v[i]
Vector matvec_transposed(const Matrix& m, const Vector& v);

// m(i,j) += u[i] * v[j]
void add_outer(Matrix& m, const Vector& u, const Vector& v);

void add_in_place(Vector& a, const Vector& b);
Vector hadamard(const Vector& a, const Vector& b);

// Elementwise logistic function; output strictly inside (0,1).
Vector sigmoid(const Vector& v);
double sigmoid(double x);

// Elementwise hyperbolic tangent; output inside (-1,1).
Vector tanh_vec(const Vector& v);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace straincast
