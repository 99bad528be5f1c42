#pragma once

// Dense row-major matrices over either scalar mode, plus the compositions the
// equivalence machinery needs: products, adjoints, Kronecker products and
// direct sums. State vectors are row vectors multiplied from the right.

#include "mlqfa/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa {

template <Scalar T>
using RowVector = std::vector<T>;

template <Scalar T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
        data_.assign(rows * cols, scalar_traits<T>::zero());
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
        if (data_.size() != rows * cols)
            throw std::invalid_argument("matrix expects " + std::to_string(rows * cols) + " entries, got " +
                                        std::to_string(data_.size()));
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    /// Row-major flattening.
    std::span<const T> flat() const noexcept { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul shape mismatch: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const T& ail = a(i, l);
            if (scalar_traits<T>::is_zero(ail, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

template <Scalar T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
    std::vector<T> out(m.flat().begin(), m.flat().end());
    for (auto& x : out) x = s * x;
    return {m.rows(), m.cols(), std::move(out)};
}

template <Scalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix add shape mismatch");
    std::vector<T> out(a.flat().begin(), a.flat().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.flat()[i];
    return {a.rows(), a.cols(), std::move(out)};
}

/// v · m for a row vector v.
template <Scalar T>
RowVector<T> operator*(const RowVector<T>& v, const Matrix<T>& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("row vector of length " + std::to_string(v.size()) + " times " +
                                    std::to_string(m.rows()) + "-row matrix");
    RowVector<T> out(m.cols(), scalar_traits<T>::zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (scalar_traits<T>::is_zero(v[i], 0.0)) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

template <Scalar T>
Matrix<T> conjugate(const Matrix<T>& m) {
    std::vector<T> out;
    out.reserve(m.flat().size());
    for (const auto& x : m.flat()) out.push_back(scalar_traits<T>::conj(x));
    return {m.rows(), m.cols(), std::move(out)};
}

template <Scalar T>
Matrix<T> transpose(const Matrix<T>& m) {
    Matrix<T> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& m) {
    return conjugate(transpose(m));
}

/// Kronecker product: block (i, j) of the result is a(i, j) · b.
template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T& aij = a(i, j);
            if (scalar_traits<T>::is_zero(aij, 0.0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return out;
}

/// Block-diagonal [[a, 0], [0, b]].
template <Scalar T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

template <Scalar T>
RowVector<T> direct_sum(const RowVector<T>& a, const RowVector<T>& b) {
    RowVector<T> out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// Largest entry modulus of (m†m − I). Float mode only needs this as a double.
template <Scalar T>
double unitarity_defect(const Matrix<T>& m) {
    if (!m.square()) throw std::invalid_argument("unitarity check needs a square matrix");
    const Matrix<T> g = adjoint(m) * m;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            T d = g(i, j);
            if (i == j) d -= scalar_traits<T>::one();
            worst = std::max(worst, scalar_traits<T>::magnitude(d));
        }
    return worst;
}

/// Exact mode ignores `tol` and demands m†m = I exactly.
template <Scalar T>
bool is_unitary(const Matrix<T>& m, double tol = 1e-9) {
    if (!m.square()) throw std::invalid_argument("unitarity check needs a square matrix");
    if constexpr (scalar_traits<T>::exact) {
        const Matrix<T> g = adjoint(m) * m;
        return g == Matrix<T>::identity(m.rows());
    } else {
        return unitarity_defect(m) <= tol;
    }
}

template <Scalar T>
real_t<T> squared_norm(std::span<const T> v) {
    real_t<T> s = 0;
    for (const auto& x : v) s += scalar_traits<T>::norm2(x);
    return s;
}

template <Scalar To, Scalar From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
    std::vector<To> out;
    out.reserve(m.flat().size());
    for (const auto& x : m.flat()) out.push_back(scalar_cast<To>(x));
    return {m.rows(), m.cols(), std::move(out)};
}

template <Scalar To, Scalar From>
RowVector<To> vector_cast(const RowVector<From>& v) {
    RowVector<To> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(scalar_cast<To>(x));
    return out;
}

}  // namespace mlqfa
