#pragma once

// Multi-letter measure-once QFAs and measure-many 1-way QFAs.
//
// Row-vector convention throughout: the state after reading x is
// psi0 · mu_bar(x), and mu_bar(x) multiplies the per-window unitaries left to
// right in reading order.

#include "mlqfa/alphabet.hpp"
#include "mlqfa/dfa.hpp"
#include "mlqfa/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace mlqfa {

template <Scalar T>
struct MultiLetterQFA {
    std::vector<std::string> states;
    std::vector<std::size_t> accepting;  // sorted state indices
    RowVector<T> initial;
    Alphabet alphabet;
    std::size_t k = 1;
    std::map<Window, Matrix<T>> transitions;

    std::size_t size() const noexcept { return states.size(); }

    const Matrix<T>& transition(const Window& w) const {
        auto it = transitions.find(w);
        if (it == transitions.end())
            throw ValidationError("transitions", "no unitary for window \"" + alphabet.format(w) + "\"");
        return it->second;
    }
};

namespace detail {

inline void check_index_set(const std::vector<std::size_t>& set, std::size_t n, const std::string& field) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= n) throw ValidationError(field, "state index " + std::to_string(set[i]) + " out of range");
        if (i && set[i] <= set[i - 1]) throw ValidationError(field, "indices must be sorted and distinct");
    }
}

template <Scalar T>
void check_unit_vector(const RowVector<T>& v, std::size_t n, double tol) {
    if (v.size() != n)
        throw ValidationError("initial", "amplitude vector has " + std::to_string(v.size()) + " entries for " +
                                             std::to_string(n) + " states");
    const auto norm = squared_norm<T>(v);
    if constexpr (scalar_traits<T>::exact) {
        if (norm != 1) throw ValidationError("initial", "amplitude vector is not unit norm");
    } else {
        if (std::abs(norm - 1.0) > tol) throw ValidationError("initial", "amplitude vector is not unit norm");
    }
}

template <Scalar T>
real_t<T> accepting_mass(const RowVector<T>& v, const std::vector<std::size_t>& accepting) {
    real_t<T> p = 0;
    for (std::size_t q : accepting) p += scalar_traits<T>::norm2(v[q]);
    return p;
}

}  // namespace detail

/// Throws ValidationError naming the first violated invariant.
template <Scalar T>
void validate(const MultiLetterQFA<T>& a, double tol = 1e-9) {
    const std::size_t n = a.size();
    if (n == 0) throw ValidationError("states", "needs at least one state");
    if (a.k < 1) throw ValidationError("k", "window length must be at least 1");
    detail::check_index_set(a.accepting, n, "accepting");
    detail::check_unit_vector(a.initial, n, tol);
    for (const auto& w : reachable_windows(a.alphabet.size(), a.k))
        if (!a.transitions.count(w))
            throw ValidationError("transitions", "missing window \"" + a.alphabet.format(w) + "\"");
    for (const auto& [w, m] : a.transitions) {
        const std::string field = "transitions.\"" + a.alphabet.format(w) + "\"";
        if (w.size() != a.k) throw ValidationError(field, "window length differs from k");
        if (m.rows() != n || m.cols() != n) throw ValidationError(field, "matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        if (!is_unitary(m, tol)) throw ValidationError(field, "matrix is not unitary");
    }
}

/// Composed unitary for `x`; the identity for the empty word.
template <Scalar T>
Matrix<T> mu_bar(const MultiLetterQFA<T>& a, const Word& x) {
    Matrix<T> m = Matrix<T>::identity(a.size());
    for (std::size_t j = 1; j <= x.size(); ++j) m = m * a.transition(window_at(x, j, a.k));
    return m;
}

/// ‖ψ0 · mu_bar(x) restricted to accepting states‖².
template <Scalar T>
real_t<T> accept_probability(const MultiLetterQFA<T>& a, const Word& x) {
    RowVector<T> v = a.initial;
    for (std::size_t j = 1; j <= x.size(); ++j) v = v * a.transition(window_at(x, j, a.k));
    return detail::accepting_mass<T>(v, a.accepting);
}

template <Scalar T>
real_t<T> accept_probability(const MultiLetterQFA<T>& a, std::string_view x) {
    return accept_probability(a, a.alphabet.parse_word(x));
}

template <Scalar To, Scalar From>
MultiLetterQFA<To> qfa_cast(const MultiLetterQFA<From>& a) {
    MultiLetterQFA<To> out{a.states, a.accepting, vector_cast<To>(a.initial), a.alphabet, a.k, {}};
    for (const auto& [w, m] : a.transitions) out.transitions.emplace(w, matrix_cast<To>(m));
    return out;
}

/// Permutation-matrix realization of a k-letter GFA. Throws ValidationError
/// naming the offending window if some window's map is not a bijection.
template <Scalar T>
MultiLetterQFA<T> gfa_to_qfa(const KLetterDFA& d) {
    if (auto check = is_k_letter_gfa(d); !check)
        throw ValidationError("transitions.\"" + d.alphabet.format(*check.window) + "\"",
                              "states '" + d.states[check.first] + "' and '" + d.states[check.second] +
                                  "' share a target, so the window is not a permutation");
    MultiLetterQFA<T> out;
    out.states = d.states;
    out.alphabet = d.alphabet;
    out.k = d.k;
    for (State q = 0; q < d.size(); ++q)
        if (d.accepting[q]) out.accepting.push_back(q);
    out.initial.assign(d.size(), scalar_traits<T>::zero());
    out.initial[d.initial] = scalar_traits<T>::one();
    for (const auto& [window, map] : d.gamma) {
        Matrix<T> p(d.size(), d.size());
        // e_q · P = e_{γ(q)}
        for (State q = 0; q < d.size(); ++q) p(q, map[q]) = scalar_traits<T>::one();
        out.transitions.emplace(window, std::move(p));
    }
    return out;
}

/// Measure-many 1-way QFA. transitions[σ] for σ in the alphabet, and
/// transitions[|Σ|] for the end-marker "$".
template <Scalar T>
struct MMQFA {
    std::vector<std::string> states;
    std::vector<std::size_t> accepting;
    std::vector<std::size_t> rejecting;
    RowVector<T> initial;
    Alphabet alphabet;
    std::vector<Matrix<T>> transitions;

    std::size_t size() const noexcept { return states.size(); }
    const Matrix<T>& end_marker() const { return transitions.back(); }
};

template <Scalar T>
void validate(const MMQFA<T>& a, double tol = 1e-9) {
    const std::size_t n = a.size();
    if (n == 0) throw ValidationError("states", "needs at least one state");
    detail::check_index_set(a.accepting, n, "accepting");
    detail::check_index_set(a.rejecting, n, "rejecting");
    for (std::size_t q : a.accepting)
        if (std::binary_search(a.rejecting.begin(), a.rejecting.end(), q))
            throw ValidationError("rejecting", "state '" + a.states[q] + "' is both accepting and rejecting");
    detail::check_unit_vector(a.initial, n, tol);
    if (a.transitions.size() != a.alphabet.size() + 1)
        throw ValidationError("transitions", "need one unitary per symbol plus \"$\"");
    for (std::size_t s = 0; s < a.transitions.size(); ++s) {
        const std::string name = s == a.alphabet.size() ? std::string(kEndMarkName) : a.alphabet.name(static_cast<Symbol>(s));
        const auto& m = a.transitions[s];
        if (m.rows() != n || m.cols() != n) throw ValidationError("transitions." + name, "wrong matrix shape");
        if (!is_unitary(m, tol)) throw ValidationError("transitions." + name, "matrix is not unitary");
    }
}

template <Scalar T>
struct MMOutcome {
    real_t<T> accept = 0;
    real_t<T> reject = 0;
    real_t<T> residual = 0;  // non-halting mass left after "$"
};

/// Measure after every unitary (including the one for "$"); the unnormalized
/// non-halting component carries forward.
template <Scalar T>
MMOutcome<T> mm_run(const MMQFA<T>& a, const Word& x) {
    using tr = scalar_traits<T>;
    MMOutcome<T> out;
    RowVector<T> v = a.initial;
    auto apply = [&](const Matrix<T>& u) {
        v = v * u;
        for (std::size_t q : a.accepting) {
            out.accept += tr::norm2(v[q]);
            v[q] = tr::zero();
        }
        for (std::size_t q : a.rejecting) {
            out.reject += tr::norm2(v[q]);
            v[q] = tr::zero();
        }
    };
    for (Symbol s : x) {
        if (!a.alphabet.contains(s)) throw ValidationError("word", "symbol index " + std::to_string(s) + " not in alphabet");
        apply(a.transitions[static_cast<std::size_t>(s)]);
    }
    apply(a.end_marker());
    out.residual = squared_norm<T>(v);
    return out;
}

}  // namespace mlqfa
