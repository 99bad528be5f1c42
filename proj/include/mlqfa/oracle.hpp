#pragma once

// Brute-force reference computations for differential testing. Nothing here
// reuses the main code paths beyond the Matrix/DFA value types: windows,
// products and searches are written out again from the definitions.

#include "mlqfa/dfa_analysis.hpp"
#include "mlqfa/qfa.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa::oracle {

namespace detail {

inline State run(const DFA& d, State q, const Word& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) q = d.delta[q * d.alphabet.size() + static_cast<std::size_t>(w[i])];
    return q;
}

inline bool next_word(Word& w, std::size_t sigma) {
    for (std::size_t pos = w.size(); pos > 0; --pos) {
        if (static_cast<std::size_t>(++w[pos - 1]) < sigma) return true;
        w[pos - 1] = 0;
    }
    return false;
}

}  // namespace detail

/// First C_k witness in (word, q1, q4) lexicographic order, found by checking
/// the definition on every length-k word and every pair of states.
inline std::optional<CkWitness> brute_ck(const DFA& d, std::size_t k) {
    if (k < 1) throw std::invalid_argument("brute_ck needs k >= 1");
    double words = 1;
    for (std::size_t i = 0; i < k; ++i) words *= static_cast<double>(d.alphabet.size());
    if (d.size() > 6 || words > 1000)
        throw std::invalid_argument("brute_ck is limited to 6 states and 1000 words; use detect_ck");
    const std::size_t sigma = d.alphabet.size();
    Word w(k, 0);
    do {
        for (State q1 = 0; q1 < d.size(); ++q1)
            for (State q4 = 0; q4 < d.size(); ++q4) {
                const State q2 = detail::run(d, q1, w, k - 1);
                const State q5 = detail::run(d, q4, w, k - 1);
                if (q2 == q5) continue;
                const State a = d.delta[q2 * sigma + static_cast<std::size_t>(w[k - 1])];
                const State b = d.delta[q5 * sigma + static_cast<std::size_t>(w[k - 1])];
                if (a == b) return CkWitness{q1, q2, a, q4, q5, w};
            }
    } while (detail::next_word(w, sigma));
    return std::nullopt;
}

template <Scalar T>
struct ProbabilityRow {
    Word word;
    real_t<T> probability;
};

/// Every word of length <= t in length-then-lexicographic order.
template <Scalar T>
using ProbabilityTable = std::vector<ProbabilityRow<T>>;

/// Recomputes ψ0 · μ(window 1) · ... · μ(window m) from scratch for each word.
template <Scalar T>
ProbabilityTable<T> probability_table(const MultiLetterQFA<T>& a, std::size_t t) {
    using tr = scalar_traits<T>;
    const std::size_t sigma = a.alphabet.size();
    double total = 0, level = 1;
    for (std::size_t len = 0; len <= t; ++len, level *= static_cast<double>(sigma)) total += level;
    if (total > 1e5) throw std::invalid_argument("probability_table limited to 100000 words");

    const std::size_t n = a.size();
    ProbabilityTable<T> table;
    for (std::size_t len = 0; len <= t; ++len) {
        Word w(len, 0);
        do {
            std::vector<T> v = a.initial;
            for (std::size_t j = 0; j < len; ++j) {
                Window win(a.k, kBlank);
                for (std::size_t p = 0; p < a.k; ++p) {
                    // position p of the window holds letter j - (k-1) + p when it exists
                    const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(j + p) - static_cast<std::ptrdiff_t>(a.k - 1);
                    if (src >= 0) win[p] = w[static_cast<std::size_t>(src)];
                }
                const auto it = a.transitions.find(win);
                if (it == a.transitions.end()) throw std::invalid_argument("missing window in oracle");
                const Matrix<T>& u = it->second;
                std::vector<T> out(n, tr::zero());
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) out[c] += v[r] * u(r, c);
                v = std::move(out);
            }
            real_t<T> p = 0;
            for (std::size_t q : a.accepting) p += tr::norm2(v[q]);
            table.push_back({w, p});
        } while (len > 0 && detail::next_word(w, sigma));
    }
    return table;
}

/// "word,probability" lines; words space-separated, the empty word as "".
template <Scalar T>
void write_csv(std::ostream& os, const ProbabilityTable<T>& table, const Alphabet& alphabet) {
    os << "word,probability\n";
    for (const auto& row : table) {
        os << '"' << alphabet.format(row.word) << "\",";
        if constexpr (scalar_traits<T>::exact)
            os << format_rational(row.probability);
        else
            os << row.probability;
        os << '\n';
    }
}

}  // namespace mlqfa::oracle
