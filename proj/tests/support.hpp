#pragma once

#include "mlqfa/mlqfa.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testing {

using mlqfa::Complexd;
using mlqfa::GaussianRational;
using mlqfa::Matrix;
using mlqfa::Rational;
using GR = GaussianRational;

inline Rational q(const char* s) { return mlqfa::parse_rational(s); }

/// Exact real matrix from "p/q" strings, row-major.
inline Matrix<GR> exact(std::size_t rows, std::size_t cols, std::initializer_list<const char*> entries) {
    std::vector<GR> v;
    for (const char* e : entries) v.emplace_back(q(e));
    return Matrix<GR>(rows, cols, std::move(v));
}

inline Matrix<Complexd> floating(std::size_t rows, std::size_t cols, std::initializer_list<double> entries) {
    std::vector<Complexd> v(entries.begin(), entries.end());
    return Matrix<Complexd>(rows, cols, std::move(v));
}

/// Plain triple-loop product, written without Matrix::operator*.
template <class T>
Matrix<T> naive_product(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T s = mlqfa::scalar_traits<T>::zero();
            for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
            out(i, j) = s;
        }
    return out;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            T d = a(i, j);
            d -= b(i, j);
            worst = std::max(worst, mlqfa::scalar_traits<T>::magnitude(d));
        }
    return worst;
}

inline mlqfa::Word word(const mlqfa::Alphabet& a, const std::string& text) { return a.parse_word(text); }

/// All words of length <= max_len over `sigma` symbols, length-then-lex order.
inline std::vector<mlqfa::Word> all_words(std::size_t sigma, std::size_t max_len) {
    std::vector<mlqfa::Word> out;
    for (std::size_t len = 0; len <= max_len; ++len)
        for (auto& w : mlqfa::words_of_length(sigma, len)) out.push_back(std::move(w));
    return out;
}

}  // namespace testing
