#pragma once

#include <cstddef>
#include <vector>

#include "localinv/rational.hpp"

namespace localinv {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix scalar(std::size_t n, const Scalar& value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<Scalar>& data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);
Scalar trace(const Matrix& a);
/// Kronecker product, a outermost.
Matrix kron(const Matrix& a, const Matrix& b);
Scalar determinant(const Matrix& a);
/// Throws std::domain_error when a is singular.
Matrix inverse(const Matrix& a);

}  // namespace localinv
