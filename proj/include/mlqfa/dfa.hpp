#pragma once

// Classical automata: plain DFAs and k-letter DFAs whose transition depends on
// the last k letters read (blank-padded at the start).

#include "mlqfa/alphabet.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mlqfa {

struct DFA {
    std::vector<std::string> states;
    Alphabet alphabet;
    State initial = 0;
    std::vector<bool> accepting;  // per state
    std::vector<State> delta;     // delta[q * |Σ| + σ]

    std::size_t size() const noexcept { return states.size(); }
    State next(State q, Symbol s) const { return delta[q * alphabet.size() + static_cast<std::size_t>(s)]; }
    bool is_accepting(State q) const { return accepting[q]; }

    State state_index(const std::string& name) const {
        for (State q = 0; q < states.size(); ++q)
            if (states[q] == name) return q;
        throw ValidationError("states", "unknown state '" + name + "'");
    }

    friend bool operator==(const DFA&, const DFA&) = default;
};

inline void validate(const DFA& d) {
    if (d.states.empty()) throw ValidationError("states", "a DFA needs at least one state");
    std::set<std::string> seen;
    for (const auto& s : d.states)
        if (!seen.insert(s).second) throw ValidationError("states", "duplicate state '" + s + "'");
    if (d.alphabet.size() == 0) throw ValidationError("alphabet", "must contain at least one symbol");
    if (d.initial >= d.size()) throw ValidationError("initial", "not a state index");
    if (d.accepting.size() != d.size()) throw ValidationError("accepting", "size differs from state count");
    if (d.delta.size() != d.size() * d.alphabet.size())
        throw ValidationError("transitions", "transition table must be total over states x symbols");
    for (State t : d.delta)
        if (t >= d.size()) throw ValidationError("transitions", "target outside the state set");
}

/// Left fold of δ over `w` starting at `q`.
inline State dfa_run(const DFA& d, State q, const Word& w) {
    for (Symbol s : w) {
        if (!d.alphabet.contains(s)) throw ValidationError("word", "symbol index " + std::to_string(s) + " not in alphabet");
        q = d.next(q, s);
    }
    return q;
}

inline State dfa_run(const DFA& d, State q, std::string_view word) { return dfa_run(d, q, d.alphabet.parse_word(word)); }

inline bool dfa_accepts(const DFA& d, const Word& w) { return d.is_accepting(dfa_run(d, d.initial, w)); }

/// A k-letter DFA; gamma maps each readable window to a state map.
struct KLetterDFA {
    std::vector<std::string> states;
    Alphabet alphabet;
    State initial = 0;
    std::vector<bool> accepting;
    std::size_t k = 1;
    std::map<Window, std::vector<State>> gamma;

    std::size_t size() const noexcept { return states.size(); }

    const std::vector<State>& step(const Window& w) const {
        auto it = gamma.find(w);
        if (it == gamma.end()) throw ValidationError("transitions", "no transition for window \"" + alphabet.format(w) + "\"");
        return it->second;
    }
};

inline void validate(const KLetterDFA& d) {
    if (d.states.empty()) throw ValidationError("states", "needs at least one state");
    if (d.k < 1) throw ValidationError("k", "window length must be at least 1");
    if (d.initial >= d.size()) throw ValidationError("initial", "not a state index");
    if (d.accepting.size() != d.size()) throw ValidationError("accepting", "size differs from state count");
    for (const auto& w : reachable_windows(d.alphabet.size(), d.k)) {
        auto it = d.gamma.find(w);
        if (it == d.gamma.end())
            throw ValidationError("transitions", "missing window \"" + d.alphabet.format(w) + "\"");
        if (it->second.size() != d.size())
            throw ValidationError("transitions.\"" + d.alphabet.format(w) + "\"", "state map must cover every state");
        for (State t : it->second)
            if (t >= d.size()) throw ValidationError("transitions.\"" + d.alphabet.format(w) + "\"", "target outside the state set");
    }
}

inline State kdfa_run(const KLetterDFA& d, const Word& w) {
    State q = d.initial;
    for (std::size_t j = 1; j <= w.size(); ++j) q = d.step(window_at(w, j, d.k))[q];
    return q;
}

inline bool kdfa_accepts(const KLetterDFA& d, const Word& w) { return d.accepting[kdfa_run(d, w)]; }

/// A plain DFA is a 1-letter DFA.
inline KLetterDFA as_k_letter(const DFA& d) {
    KLetterDFA out{d.states, d.alphabet, d.initial, d.accepting, 1, {}};
    for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
        std::vector<State> map(d.size());
        for (State q = 0; q < d.size(); ++q) map[q] = d.next(q, static_cast<Symbol>(s));
        out.gamma.emplace(Window{static_cast<Symbol>(s)}, std::move(map));
    }
    return out;
}

struct GfaCheck {
    bool ok = true;
    // Set when !ok: a window whose state map sends two states to the same target.
    std::optional<Window> window;
    State first = 0;
    State second = 0;

    explicit operator bool() const noexcept { return ok; }
};

/// True iff every window's state map is a permutation.
inline GfaCheck is_k_letter_gfa(const KLetterDFA& d) {
    for (const auto& [window, map] : d.gamma) {
        std::vector<std::optional<State>> preimage(d.size());
        for (State q = 0; q < map.size(); ++q) {
            auto& slot = preimage[map[q]];
            if (slot) return GfaCheck{false, window, *slot, q};
            slot = q;
        }
    }
    return {};
}

}  // namespace mlqfa
