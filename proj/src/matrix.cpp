#include "localinv/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace localinv {

Matrix Matrix::identity(std::size_t n) { return scalar(n, Scalar(1)); }

Matrix Matrix::scalar(std::size_t n, const Scalar& value) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = value;
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shapes differ");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    }
    return out;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    }
    return out;
}

Scalar trace(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("trace of a non-square matrix");
    Scalar out = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) out += a(i, i);
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

Scalar determinant(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = a;
    const std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            const Scalar f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix m = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m(pivot, c) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("matrix is singular");
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(c, j));
                std::swap(inv(pivot, j), inv(c, j));
            }
        }
        const Scalar p = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Scalar f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace localinv
