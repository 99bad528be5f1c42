#pragma once

// Concrete automata used as fixtures, and seeded random generators.

#include "mlqfa/dfa.hpp"
#include "mlqfa/qfa.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa {

namespace detail {

inline std::vector<std::string> numbered(std::string_view prefix, std::size_t n, std::size_t first = 0) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(first + i));
    return out;
}

inline DFA table_dfa(std::vector<std::string> states, std::vector<std::string> symbols, std::vector<bool> accepting,
                     std::vector<State> delta) {
    DFA d{std::move(states), Alphabet(std::move(symbols)), 0, std::move(accepting), std::move(delta)};
    validate(d);
    return d;
}

}  // namespace detail

/// Minimal DFA of (a1 + ... + ak)* a1 a2 ... a(k-1): q_l means the longest
/// suffix matching a prefix of a1..a(k-1) has length l.
inline DFA build_lk_dfa(std::size_t k) {
    if (k < 2) throw std::invalid_argument("L_k needs k >= 2");
    std::vector<bool> accepting(k, false);
    accepting[k - 1] = true;
    std::vector<State> delta(k * k, 0);
    auto set = [&](State q, std::size_t letter, State to) { delta[q * k + (letter - 1)] = to; };
    // Letters are 1-based here (a1..ak); every unlisted move returns to q0.
    set(0, 1, 1);
    set(1, 1, 1);
    set(1, 2, 2 % k);
    for (State l = 2; l <= k - 1; ++l) {
        set(l, 1, 1);
        set(l, l + 1, (l + 1) % k);
    }
    return detail::table_dfa(detail::numbered("q", k), detail::numbered("a", k, 1), accepting, delta);
}

/// Named gallery DFAs:
///   "astar-bstar"     a*b*                                   (q0, q1 accepting; q2 dead)
///   "akv"             a's, then after the first b an odd number of a's
///   "abstarb"         (a+b)*b, states remember whether the last letter was b
///   "astar-b-aastar-a" a*b(aa)*a; reconstructed minimal DFA, not drawn in the source
inline DFA build_named_dfa(std::string_view id) {
    using detail::table_dfa;
    if (id == "astar-bstar")
        // delta rows: state x {a, b}
        return table_dfa({"q0", "q1", "q2"}, {"a", "b"}, {true, true, false}, {0, 1, 2, 1, 2, 2});
    if (id == "akv")
        return table_dfa({"q1", "q2", "q3"}, {"a", "b"}, {true, false, true}, {0, 1, 2, 1, 1, 2});
    if (id == "abstarb") return table_dfa({"s0", "s1"}, {"a", "b"}, {false, true}, {0, 1, 0, 1});
    if (id == "astar-b-aastar-a")
        return table_dfa({"s0", "s1", "s2", "dead"}, {"a", "b"}, {false, false, true, false},
                         {0, 1, 2, 3, 1, 3, 3, 3});
    throw std::invalid_argument("unknown gallery DFA '" + std::string(id) + "'");
}

/// 2-letter GFA for (a+b)*b: the state records whether the last letter was b,
/// so a window swaps the state exactly when its last letter differs from the
/// one before it (the blank counting as "not b").
inline KLetterDFA build_abstarb_kdfa() {
    KLetterDFA d;
    d.states = {"last-not-b", "last-b"};
    d.alphabet = Alphabet({"a", "b"});
    d.initial = 0;
    d.accepting = {false, true};
    d.k = 2;
    const std::vector<State> identity{0, 1}, swap{1, 0};
    const Symbol a = 0, b = 1;
    d.gamma[{kBlank, a}] = identity;
    d.gamma[{kBlank, b}] = swap;
    d.gamma[{a, a}] = identity;
    d.gamma[{b, b}] = identity;
    d.gamma[{a, b}] = swap;
    d.gamma[{b, a}] = swap;
    validate(d);
    return d;
}

template <Scalar T>
MultiLetterQFA<T> build_abstarb_qfa() {
    return gfa_to_qfa<T>(build_abstarb_kdfa());
}

/// Deterministic generator; bounded draws avoid implementation-defined
/// standard distributions so sequences match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool coin() { return engine_() & 1u; }

private:
    std::mt19937_64 engine_;
};

namespace detail {

template <Scalar T>
Matrix<T> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, p[i]) = scalar_traits<T>::one();
    return m;
}

// Unit-modulus scalar.
template <Scalar T>
T random_phase(Rng& rng) {
    if constexpr (scalar_traits<T>::exact) {
        static const std::array<std::pair<int, int>, 6> pool{{{5, 0}, {0, 5}, {-5, 0}, {0, -5}, {3, 4}, {3, -4}}};
        const auto [re, im] = pool[rng.below(pool.size())];
        return T(Rational(re, 5), Rational(im, 5));
    } else {
        const double phi = 2 * std::numbers::pi * rng.unit();
        return {std::cos(phi), std::sin(phi)};
    }
}

// Identity except for a 2x2 unitary block on rows/cols (i, j).
template <Scalar T>
Matrix<T> random_plane_rotation(Rng& rng, std::size_t n, std::size_t i, std::size_t j) {
    Matrix<T> m = Matrix<T>::identity(n);
    if constexpr (scalar_traits<T>::exact) {
        static const std::array<std::array<int, 3>, 4> triples{{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}}};
        auto [a, b, h] = triples[rng.below(triples.size())];
        if (rng.coin()) std::swap(a, b);
        if (rng.coin()) b = -b;
        const Rational c(a, h), s(b, h);
        if (rng.coin()) {
            m(i, i) = T(c);
            m(i, j) = T(s);
            m(j, i) = T(-s);
            m(j, j) = T(c);
        } else {  // [[c, i s], [i s, c]]
            m(i, i) = T(c);
            m(i, j) = T(0, s);
            m(j, i) = T(0, s);
            m(j, j) = T(c);
        }
    } else {
        const double theta = 2 * std::numbers::pi * rng.unit();
        const double phi = 2 * std::numbers::pi * rng.unit();
        const Complexd e(std::cos(phi), std::sin(phi));
        m(i, i) = std::cos(theta);
        m(i, j) = -e * std::sin(theta);
        m(j, i) = std::conj(e) * std::sin(theta);
        m(j, j) = std::cos(theta);
    }
    return m;
}

}  // namespace detail

/// Random n x n unitary: a permutation, several planar rotations, and a
/// diagonal of phases. Exact mode draws only rational-entry factors.
template <Scalar T>
Matrix<T> random_unitary(Rng& rng, std::size_t n) {
    Matrix<T> u = detail::random_permutation<T>(rng, n);
    if (n >= 2) {
        const std::size_t rotations = scalar_traits<T>::exact ? n - 1 : n * (n - 1) / 2 + 1;
        for (std::size_t r = 0; r < rotations; ++r) {
            const std::size_t i = rng.below(n);
            std::size_t j = rng.below(n - 1);
            if (j >= i) ++j;
            u = u * detail::random_plane_rotation<T>(rng, n, i, j);
        }
    }
    Matrix<T> phases(n, n);
    for (std::size_t i = 0; i < n; ++i) phases(i, i) = detail::random_phase<T>(rng);
    return u * phases;
}

/// Random unitary of finite order: R† · P · R with P a permutation times
/// fourth roots of unity. Its powers have bounded entries, which keeps exact
/// arithmetic on long unary words cheap.
template <Scalar T>
Matrix<T> random_finite_order_unitary(Rng& rng, std::size_t n) {
    const Matrix<T> r = random_unitary<T>(rng, n);
    Matrix<T> p = detail::random_permutation<T>(rng, n);
    static const std::array<std::pair<int, int>, 4> roots{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    for (std::size_t i = 0; i < n; ++i) {
        const auto [re, im] = roots[rng.below(roots.size())];
        for (std::size_t j = 0; j < n; ++j)
            if (!scalar_traits<T>::is_zero(p(i, j), 0)) p(i, j) = T(real_t<T>(re), real_t<T>(im));
    }
    return adjoint(r) * p * r;
}

enum class UnitaryFamily { general, finite_order };

template <Scalar T>
RowVector<T> random_unit_vector(Rng& rng, std::size_t n) {
    const Matrix<T> u = random_unitary<T>(rng, n);
    const auto r = u.row(0);
    return {r.begin(), r.end()};
}

inline Alphabet letters(std::size_t count) {
    static const std::string names = "abcdefghijklmnopqrstuvwxyz";
    if (count == 0 || count > names.size()) throw std::invalid_argument("alphabet size must be in 1..26");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(1, names[i]);
    return Alphabet(std::move(out));
}

/// Random k-letter QFA over symbols a, b, ...; same seed, same automaton.
/// With UnitaryFamily::finite_order the blank-free windows get finite-order
/// unitaries; padded windows are always drawn from the general family.
template <Scalar T>
MultiLetterQFA<T> random_qfa(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t alphabet_size,
                             UnitaryFamily family = UnitaryFamily::general) {
    if (n < 1 || k < 1 || alphabet_size < 1) throw std::invalid_argument("random_qfa needs n, k, alphabet size >= 1");
    Rng rng(seed);
    MultiLetterQFA<T> a;
    a.states = detail::numbered("q", n);
    a.alphabet = letters(alphabet_size);
    a.k = k;
    a.initial = random_unit_vector<T>(rng, n);
    for (std::size_t q = 0; q < n; ++q)
        if (rng.coin()) a.accepting.push_back(q);
    for (const auto& w : reachable_windows(alphabet_size, k)) {
        const bool full = w.front() != kBlank;
        a.transitions.emplace(w, full && family == UnitaryFamily::finite_order ? random_finite_order_unitary<T>(rng, n)
                                                                               : random_unitary<T>(rng, n));
    }
    return a;
}

template <Scalar T>
MMQFA<T> random_mmqfa(std::uint64_t seed, std::size_t n, std::size_t alphabet_size) {
    Rng rng(seed);
    MMQFA<T> a;
    a.states = detail::numbered("q", n);
    a.alphabet = letters(alphabet_size);
    a.initial = random_unit_vector<T>(rng, n);
    for (std::size_t q = 0; q < n; ++q) switch (rng.below(3)) {
            case 0: a.accepting.push_back(q); break;
            case 1: a.rejecting.push_back(q); break;
            default: break;
        }
    for (std::size_t s = 0; s <= alphabet_size; ++s) a.transitions.push_back(random_unitary<T>(rng, n));
    return a;
}

/// Random complete DFA (not necessarily minimal or connected).
inline DFA random_dfa(std::uint64_t seed, std::size_t n, std::size_t alphabet_size) {
    Rng rng(seed);
    DFA d;
    d.states = detail::numbered("q", n);
    d.alphabet = letters(alphabet_size);
    d.initial = 0;
    for (std::size_t q = 0; q < n; ++q) d.accepting.push_back(rng.coin());
    for (std::size_t i = 0; i < n * alphabet_size; ++i) d.delta.push_back(rng.below(n));
    return d;
}

// Behaviour-preserving rewrites, used to manufacture equivalent pairs.

/// Renames basis states by `perm` (old index i becomes perm[i]).
template <Scalar T>
MultiLetterQFA<T> relabel_states(const MultiLetterQFA<T>& a, const std::vector<std::size_t>& perm) {
    const std::size_t n = a.size();
    Matrix<T> p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = scalar_traits<T>::one();
    const Matrix<T> pt = transpose(p);
    MultiLetterQFA<T> out = a;
    out.initial = a.initial * p;
    out.accepting.clear();
    for (std::size_t q : a.accepting) out.accepting.push_back(perm[q]);
    std::sort(out.accepting.begin(), out.accepting.end());
    for (std::size_t i = 0; i < n; ++i) out.states[perm[i]] = a.states[i];
    for (auto& [w, m] : out.transitions) m = pt * a.transition(w) * p;
    return out;
}

/// Appends `extra` states that start with zero amplitude and only mix among
/// themselves; they never influence acceptance.
template <Scalar T>
MultiLetterQFA<T> pad_unreachable(const MultiLetterQFA<T>& a, std::size_t extra, std::uint64_t seed) {
    if (extra == 0) return a;
    Rng rng(seed);
    MultiLetterQFA<T> out = a;
    for (std::size_t i = 0; i < extra; ++i) {
        out.states.push_back("pad" + std::to_string(i));
        out.initial.push_back(scalar_traits<T>::zero());
        if (rng.coin()) out.accepting.push_back(a.size() + i);
    }
    for (auto& [w, m] : out.transitions) m = direct_sum(m, random_unitary<T>(rng, extra));
    return out;
}

/// Same automaton read with a (k+1)-letter window that ignores its oldest letter.
template <Scalar T>
MultiLetterQFA<T> lift_window(const MultiLetterQFA<T>& a) {
    MultiLetterQFA<T> out = a;
    out.k = a.k + 1;
    out.transitions.clear();
    for (const auto& w : reachable_windows(a.alphabet.size(), out.k)) {
        Window tail(w.begin() + 1, w.end());
        out.transitions.emplace(w, a.transition(tail));
    }
    return out;
}

}  // namespace mlqfa
