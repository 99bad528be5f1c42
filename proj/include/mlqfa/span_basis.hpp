#pragma once

#include "mlqfa/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa {

/// Incrementally grown set of linearly independent vectors of a fixed
/// dimension, kept alongside a row-echelon copy for membership tests.
///
/// Exact mode eliminates exactly. Float mode treats a residual as zero when
/// its largest entry is at most `rel_tol` times the largest pivot seen so far
/// (or the candidate's own scale, whichever is larger).
template <Scalar T>
class SpanBasis {
public:
    explicit SpanBasis(std::size_t dim, double rel_tol = 1e-10) : dim_(dim), rel_tol_(rel_tol) {
        if (dim == 0) throw std::invalid_argument("span basis dimension must be positive");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool full() const noexcept { return elements_.size() == dim_; }
    const std::vector<std::vector<T>>& elements() const noexcept { return elements_; }

    /// Appends `v` and returns true iff it lies outside the current span.
    bool add(std::span<const T> v) {
        check_dim(v.size());
        auto residual = reduce(v);
        if (!residual) return false;
        max_pivot_ = std::max(max_pivot_, residual->pivot_magnitude);
        elements_.emplace_back(v.begin(), v.end());
        rows_.push_back(std::move(*residual));
        return true;
    }

    bool add(const Matrix<T>& m) { return add(m.flat()); }

    bool contains(std::span<const T> v) const {
        check_dim(v.size());
        return !reduce(v).has_value();
    }

    bool contains(const Matrix<T>& m) const { return contains(m.flat()); }

private:
    struct EchelonRow {
        std::size_t pivot;
        std::vector<T> coeffs;  // coeffs[pivot] == 1, zero at every earlier row's pivot
        double pivot_magnitude;
    };

    void check_dim(std::size_t n) const {
        if (n != dim_)
            throw std::invalid_argument("span basis of dimension " + std::to_string(dim_) +
                                        " given a vector of length " + std::to_string(n));
    }

    // Returns the normalized residual row if v is independent of the basis.
    std::optional<EchelonRow> reduce(std::span<const T> v) const {
        using tr = scalar_traits<T>;
        std::vector<T> r(v.begin(), v.end());
        double scale = 0.0;
        if constexpr (!tr::exact)
            for (const auto& x : r) scale = std::max(scale, tr::magnitude(x));

        for (const auto& row : rows_) {
            if (tr::is_zero(r[row.pivot], 0.0)) continue;
            const T f = r[row.pivot];
            for (std::size_t j = 0; j < dim_; ++j)
                if (!tr::is_zero(row.coeffs[j], 0.0)) r[j] -= f * row.coeffs[j];
            r[row.pivot] = tr::zero();
        }

        std::size_t pivot = dim_;
        if constexpr (tr::exact) {
            for (std::size_t j = 0; j < dim_; ++j)
                if (!tr::is_zero(r[j])) {
                    pivot = j;
                    break;
                }
            if (pivot == dim_) return std::nullopt;
        } else {
            double best = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) {
                const double m = tr::magnitude(r[j]);
                if (m > best) {
                    best = m;
                    pivot = j;
                }
            }
            const double ref = std::max(scale, max_pivot_);
            if (pivot == dim_ || best <= rel_tol_ * ref) return std::nullopt;
        }

        const double magnitude = tr::magnitude(r[pivot]);
        const T inv = tr::one() / r[pivot];
        for (auto& x : r)
            if (!tr::is_zero(x, 0.0)) x = x * inv;
        r[pivot] = tr::one();
        return EchelonRow{pivot, std::move(r), magnitude};
    }

    std::size_t dim_;
    double rel_tol_;
    double max_pivot_ = 0.0;
    std::vector<std::vector<T>> elements_;
    std::vector<EchelonRow> rows_;
};

/// Rank of a vector family by fresh Gaussian elimination; independent of
/// SpanBasis bookkeeping so it can re-verify a basis.
template <Scalar T>
std::size_t rank_of(const std::vector<std::vector<T>>& vectors, double rel_tol = 1e-10) {
    using tr = scalar_traits<T>;
    if (vectors.empty()) return 0;
    std::vector<std::vector<T>> a = vectors;
    const std::size_t cols = a.front().size();
    double scale = 0.0;
    if constexpr (!tr::exact)
        for (const auto& v : a)
            for (const auto& x : v) scale = std::max(scale, tr::magnitude(x));
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t best = a.size();
        double best_mag = 0.0;
        for (std::size_t r = rank; r < a.size(); ++r) {
            const double m = tr::magnitude(a[r][c]);
            const bool nonzero = tr::exact ? !tr::is_zero(a[r][c], 0.0) : m > rel_tol * scale;
            if (nonzero && m > best_mag) {
                best = r;
                best_mag = m;
            }
        }
        if (best == a.size()) continue;
        std::swap(a[rank], a[best]);
        const T inv = tr::one() / a[rank][c];
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (tr::is_zero(a[r][c], 0.0)) continue;
            const T f = a[r][c] * inv;
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace mlqfa
