#pragma once

// Equivalence of multi-letter QFAs.
//
// Unary alphabets get a decision procedure: both automata are folded into one
// block-diagonal system (C_i = A_i ⊕ B_i, η1 = ψ1 ⊕ 0, η2 = 0 ⊕ ψ2) and the
// acceptance probabilities of σ^m are compared for m = 0, 1, ... up to
// N = n^4 + k - 1 with n = n1 + n2, k = max(k1, k2). Past length N nothing new
// can happen because the tensor squares D(σ^m) = mu_bar ⊗ conj(mu_bar),
// m >= k, span a space of dimension at most n^4 and each one is the previous
// one times the fixed matrix C_k ⊗ conj(C_k). The span strategy tracks that
// space and stops as soon as one more D adds nothing.
//
// General alphabets only get bounded (t-)equivalence.

#include "mlqfa/qfa.hpp"
#include "mlqfa/span_basis.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa {

enum class Strategy { full_bound, span_early_stop };

inline Strategy parse_strategy(std::string_view s) {
    if (s == "full") return Strategy::full_bound;
    if (s == "span") return Strategy::span_early_stop;
    throw std::invalid_argument("unknown strategy '" + std::string(s) + "' (expected full|span)");
}

/// How much a verdict claims: an exact decision, a decision made with float
/// tolerances, or a statement about words up to a length bound only.
enum class VerdictKind { exact, within_tolerance, bounded };

inline std::string_view to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::exact: return "exact";
        case VerdictKind::within_tolerance: return "within_tolerance";
        case VerdictKind::bounded: return "bounded";
    }
    return "?";
}

struct EquivalenceOptions {
    Strategy strategy = Strategy::span_early_stop;
    double tol = 1e-9;       // probability comparison, float mode
    double span_tol = 1e-10; // span membership pivot threshold, float mode
};

template <Scalar T>
struct Mismatch {
    std::size_t length = 0;
    Word word;  // the differing word (σ^length for unary input)
    real_t<T> p1 = 0;
    real_t<T> p2 = 0;
};

template <Scalar T>
struct EquivalenceVerdict {
    bool equivalent = true;
    VerdictKind kind = VerdictKind::exact;
    std::size_t checked_up_to = 0;                   // longest length compared
    std::optional<std::size_t> stabilization_index;  // span strategy only
    std::optional<Mismatch<T>> witness;              // set iff !equivalent
    std::size_t bound = 0;                           // the length bound N (or t)
};

template <Scalar T>
struct CombinedSystem {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t k = 1;
    std::vector<Matrix<T>> steps;  // C_1 .. C_k
    RowVector<T> eta1;
    RowVector<T> eta2;
    std::vector<std::size_t> accepting;  // combined indices, automaton 2 shifted by n1

    std::size_t n() const noexcept { return n1 + n2; }
    /// The step unitary applied when reading the m-th letter (m >= 1).
    const Matrix<T>& step(std::size_t m) const { return steps[std::min(m, k) - 1]; }
    /// Length bound after which no new behaviour can appear.
    std::size_t length_bound() const {
        const std::size_t n2_ = n() * n();
        return n2_ * n2_ + k - 1;
    }
};

namespace detail {

/// A_i = μ(Λ^(k'-i) σ^i) for i <= k', repeated for i > k'.
template <Scalar T>
std::vector<Matrix<T>> unary_steps(const MultiLetterQFA<T>& a, std::size_t k) {
    std::vector<Matrix<T>> out;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t j = std::min(i, a.k);
        Window w(a.k, kBlank);
        for (std::size_t p = a.k - j; p < a.k; ++p) w[p] = 0;
        out.push_back(a.transition(w));
    }
    return out;
}

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) throw std::invalid_argument("automata are over different alphabets");
}

template <Scalar T>
bool probabilities_differ(const real_t<T>& p1, const real_t<T>& p2, double tol) {
    return !scalar_traits<T>::real_equal(p1, p2, tol);
}

}  // namespace detail

template <Scalar T>
CombinedSystem<T> combine_unary(const MultiLetterQFA<T>& a1, const MultiLetterQFA<T>& a2) {
    detail::require_same_alphabet(a1.alphabet, a2.alphabet);
    if (!a1.alphabet.unary())
        throw std::invalid_argument("the equivalence decision needs a unary alphabet; use bounded_equivalence");
    CombinedSystem<T> sys;
    sys.n1 = a1.size();
    sys.n2 = a2.size();
    sys.k = std::max(a1.k, a2.k);
    const auto s1 = detail::unary_steps(a1, sys.k);
    const auto s2 = detail::unary_steps(a2, sys.k);
    for (std::size_t i = 0; i < sys.k; ++i) sys.steps.push_back(direct_sum(s1[i], s2[i]));
    sys.eta1 = direct_sum(a1.initial, RowVector<T>(sys.n2, scalar_traits<T>::zero()));
    sys.eta2 = direct_sum(RowVector<T>(sys.n1, scalar_traits<T>::zero()), a2.initial);
    sys.accepting = a1.accepting;
    for (std::size_t q : a2.accepting) sys.accepting.push_back(sys.n1 + q);
    return sys;
}

/// Yields D_m = M_m ⊗ conj(M_m) for m = k, k+1, ... where M_m = C_1 ⋯ C_k^(m-k+1).
template <Scalar T>
class TensorSquareSequence {
public:
    explicit TensorSquareSequence(const CombinedSystem<T>& sys) : sys_(&sys), product_(Matrix<T>::identity(sys.n())) {
        for (std::size_t i = 0; i + 1 < sys.k; ++i) product_ = product_ * sys.steps[i];
    }

    /// Next tensor square, starting at m = k.
    Matrix<T> next() {
        product_ = product_ * sys_->steps.back();
        ++length_;
        return kron(product_, conjugate(product_));
    }

    /// Word length of the most recently returned D.
    std::size_t length() const noexcept { return sys_->k - 1 + length_; }

private:
    const CombinedSystem<T>* sys_;
    Matrix<T> product_;
    std::size_t length_ = 0;
};

template <Scalar T>
struct SpanClosure {
    SpanBasis<T> basis;
    std::size_t i0 = 0;     // dimension of the stabilized span
    std::size_t steps = 0;  // D matrices generated, including the first non-growing one
};

/// Adds D_k, D_(k+1), ... to a span until one addition does not grow it.
/// The first non-growth is final: every later D is the previous one times a
/// fixed matrix, so it stays inside the span.
template <Scalar T>
SpanClosure<T> span_closure(const CombinedSystem<T>& sys, double span_tol = 1e-10) {
    const std::size_t n2 = sys.n() * sys.n();
    SpanClosure<T> out{SpanBasis<T>(n2 * n2, span_tol)};
    TensorSquareSequence<T> seq(sys);
    while (true) {
        ++out.steps;
        if (!out.basis.add(seq.next())) break;
        if (out.basis.full()) {
            ++out.steps;  // anything further is trivially dependent
            break;
        }
    }
    out.i0 = out.basis.size();
    return out;
}

/// Decides equivalence of two QFAs over the same one-letter alphabet.
template <Scalar T>
EquivalenceVerdict<T> decide_equivalence_unary(const MultiLetterQFA<T>& a1, const MultiLetterQFA<T>& a2,
                                               const EquivalenceOptions& opt = {}) {
    const CombinedSystem<T> sys = combine_unary(a1, a2);
    const std::size_t bound = sys.length_bound();
    const bool track_span = opt.strategy == Strategy::span_early_stop;

    EquivalenceVerdict<T> verdict;
    verdict.kind = scalar_traits<T>::exact ? VerdictKind::exact : VerdictKind::within_tolerance;
    verdict.bound = bound;

    RowVector<T> v1 = sys.eta1;
    RowVector<T> v2 = sys.eta2;
    std::optional<SpanBasis<T>> basis;
    Matrix<T> product;
    if (track_span) {
        const std::size_t n2 = sys.n() * sys.n();
        basis.emplace(n2 * n2, opt.span_tol);
        product = Matrix<T>::identity(sys.n());
    }

    for (std::size_t m = 0; m <= bound; ++m) {
        if (m > 0) {
            const Matrix<T>& c = sys.step(m);
            v1 = v1 * c;
            v2 = v2 * c;
            if (track_span) product = product * c;
        }
        auto p1 = detail::accepting_mass<T>(v1, sys.accepting);
        auto p2 = detail::accepting_mass<T>(v2, sys.accepting);
        verdict.checked_up_to = m;
        if (detail::probabilities_differ<T>(p1, p2, opt.tol)) {
            verdict.equivalent = false;
            verdict.witness = Mismatch<T>{m, Word(m, 0), std::move(p1), std::move(p2)};
            return verdict;
        }
        if (track_span && m >= sys.k) {
            if (!basis->add(kron(product, conjugate(product)))) {
                verdict.stabilization_index = basis->size();
                return verdict;
            }
        }
    }
    if (track_span) verdict.stabilization_index = basis->size();
    return verdict;
}

/// t-equivalence over any alphabet: compares every word of length <= t in
/// length-then-lexicographic order, extending per-prefix state vectors.
template <Scalar T>
EquivalenceVerdict<T> bounded_equivalence(const MultiLetterQFA<T>& a1, const MultiLetterQFA<T>& a2, std::size_t t,
                                          const EquivalenceOptions& opt = {}) {
    detail::require_same_alphabet(a1.alphabet, a2.alphabet);
    const std::size_t sigma = a1.alphabet.size();

    struct Entry {
        Word word;
        RowVector<T> v1;
        RowVector<T> v2;
    };
    EquivalenceVerdict<T> verdict;
    verdict.kind = VerdictKind::bounded;
    verdict.bound = t;

    std::vector<Entry> level{{Word{}, a1.initial, a2.initial}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& e : level) {
            auto p1 = detail::accepting_mass<T>(e.v1, a1.accepting);
            auto p2 = detail::accepting_mass<T>(e.v2, a2.accepting);
            if (detail::probabilities_differ<T>(p1, p2, opt.tol)) {
                verdict.equivalent = false;
                verdict.checked_up_to = len;
                verdict.witness = Mismatch<T>{len, e.word, std::move(p1), std::move(p2)};
                return verdict;
            }
        }
        verdict.checked_up_to = len;
        if (len == t) break;
        std::vector<Entry> next;
        next.reserve(level.size() * sigma);
        for (const auto& e : level)
            for (std::size_t s = 0; s < sigma; ++s) {
                Word w = e.word;
                w.push_back(static_cast<Symbol>(s));
                const std::size_t j = w.size();
                RowVector<T> v1 = e.v1 * a1.transition(window_at(w, j, a1.k));
                RowVector<T> v2 = e.v2 * a2.transition(window_at(w, j, a2.k));
                next.push_back({std::move(w), std::move(v1), std::move(v2)});
            }
        level = std::move(next);
    }
    return verdict;
}

}  // namespace mlqfa
