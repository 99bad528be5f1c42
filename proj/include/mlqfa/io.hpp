#pragma once

// JSON automaton documents and result serialization.
//
//   {"type": "dfa" | "kdfa" | "kqfa" | "mmqfa", "k": 2, "alphabet": ["a", "b"],
//    "states": ["q0", "q1"], "initial": ..., "accepting": [...], "transitions": {...}}
//
// dfa / kdfa: "initial" is a state name and transitions map a symbol (dfa) or
// a window such as "_ a" (kdfa) to an object {from-state: to-state}.
// kqfa: "initial" is an amplitude vector and transitions map windows to
// unitaries given as arrays of rows. mmqfa: transitions map each symbol and
// "$" to a unitary; "rejecting" lists the rejecting states.
//
// Scalars are either real shorthand or {"re": x, "im": y}. A string ("3/5",
// "-1") is an exact rational, a non-integer JSON number is a float; JSON
// integers fit both. A document that mixes strings and non-integer numbers is
// rejected.

#include "mlqfa/dfa_analysis.hpp"
#include "mlqfa/equivalence.hpp"
#include "mlqfa/qfa.hpp"

#include <json.hpp>

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mlqfa::io {

using json = nlohmann::ordered_json;

enum class DocType { dfa, kdfa, kqfa, mmqfa };

inline std::string_view to_string(DocType t) {
    switch (t) {
        case DocType::dfa: return "dfa";
        case DocType::kdfa: return "kdfa";
        case DocType::kqfa: return "kqfa";
        case DocType::mmqfa: return "mmqfa";
    }
    return "?";
}

inline json read_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("json", std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

inline const json& field(const json& doc, const std::string& name) {
    if (!doc.is_object()) throw ValidationError("document", "expected a JSON object");
    auto it = doc.find(name);
    if (it == doc.end()) throw ValidationError(name, "missing field");
    return *it;
}

inline std::vector<std::string> string_list(const json& doc, const std::string& name) {
    const json& v = field(doc, name);
    if (!v.is_array()) throw ValidationError(name, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ValidationError(name, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

inline std::map<std::string, State> state_index(const std::vector<std::string>& states) {
    if (states.empty()) throw ValidationError("states", "needs at least one state");
    std::map<std::string, State> idx;
    for (State q = 0; q < states.size(); ++q)
        if (!idx.emplace(states[q], q).second) throw ValidationError("states", "duplicate state '" + states[q] + "'");
    return idx;
}

inline State lookup(const std::map<std::string, State>& idx, const json& name, const std::string& where) {
    if (!name.is_string()) throw ValidationError(where, "expected a state name");
    auto it = idx.find(name.get<std::string>());
    if (it == idx.end()) throw ValidationError(where, "unknown state '" + name.get<std::string>() + "'");
    return it->second;
}

inline std::vector<std::size_t> state_set(const json& doc, const std::string& name,
                                          const std::map<std::string, State>& idx, bool required = true) {
    if (!required && !doc.contains(name)) return {};
    const json& v = field(doc, name);
    if (!v.is_array()) throw ValidationError(name, "expected an array of state names");
    std::vector<std::size_t> out;
    for (const auto& e : v) out.push_back(lookup(idx, e, name));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ValidationError(name, "state listed twice");
    return out;
}

inline std::vector<bool> state_flags(const std::vector<std::size_t>& set, std::size_t n) {
    std::vector<bool> out(n, false);
    for (std::size_t q : set) out[q] = true;
    return out;
}

inline std::size_t window_length(const json& doc) {
    const json& v = field(doc, "k");
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ValidationError("k", "expected an integer >= 1");
    return v.get<std::size_t>();
}

inline std::vector<State> state_map(const json& m, const std::map<std::string, State>& idx, const std::string& where) {
    if (!m.is_object()) throw ValidationError(where, "expected an object {from-state: to-state}");
    std::vector<std::optional<State>> partial(idx.size());
    for (const auto& [from, to] : m.items()) {
        const State q = lookup(idx, json(from), where);
        if (partial[q]) throw ValidationError(where, "state '" + from + "' listed twice");
        partial[q] = lookup(idx, to, where);
    }
    std::vector<State> out;
    for (const auto& [name, q] : idx)
        if (!partial[q]) throw ValidationError(where, "no transition from state '" + name + "'");
    for (const auto& t : partial) out.push_back(*t);
    return out;
}

enum class ScalarStyle { neutral, exact, floating };

inline ScalarStyle real_style(const json& v, const std::string& where) {
    if (v.is_string()) return ScalarStyle::exact;
    if (v.is_number_integer() || v.is_number_unsigned()) return ScalarStyle::neutral;
    if (v.is_number_float()) return ScalarStyle::floating;
    throw ValidationError(where, "expected a number or a rational string");
}

inline ScalarStyle combine(ScalarStyle a, ScalarStyle b, const std::string& where) {
    if (a == ScalarStyle::neutral) return b;
    if (b == ScalarStyle::neutral || a == b) return a;
    throw ValidationError(where, "mixes exact (string) and float (number) scalars");
}

inline ScalarStyle scalar_style(const json& v, const std::string& where) {
    if (v.is_object()) {
        ScalarStyle s = real_style(field(v, "re"), where + ".re");
        return combine(s, v.contains("im") ? real_style(v["im"], where + ".im") : ScalarStyle::neutral, where);
    }
    return real_style(v, where);
}

inline ScalarStyle tree_style(const json& v, const std::string& where) {
    if (v.is_array()) {
        ScalarStyle s = ScalarStyle::neutral;
        for (std::size_t i = 0; i < v.size(); ++i) s = combine(s, tree_style(v[i], where), where);
        return s;
    }
    return scalar_style(v, where);
}

template <Scalar T>
real_t<T> parse_real(const json& v, const std::string& where) {
    if constexpr (scalar_traits<T>::exact) {
        if (v.is_string()) {
            try {
                return parse_rational(v.get<std::string>());
            } catch (const std::exception& e) {
                throw ValidationError(where, e.what());
            }
        }
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw ValidationError(where, "float scalar in an exact-mode document");
    } else {
        if (v.is_string()) {
            try {
                return parse_rational(v.get<std::string>()).get_d();
            } catch (const std::exception& e) {
                throw ValidationError(where, e.what());
            }
        }
        if (v.is_number()) return v.get<double>();
        throw ValidationError(where, "expected a number");
    }
}

template <Scalar T>
T parse_scalar(const json& v, const std::string& where) {
    if (v.is_object()) {
        auto re = parse_real<T>(field(v, "re"), where + ".re");
        real_t<T> im = 0;
        if (v.contains("im")) im = parse_real<T>(v["im"], where + ".im");
        return T(re, im);
    }
    return T(parse_real<T>(v, where));
}

template <Scalar T>
RowVector<T> parse_vector(const json& v, const std::string& where) {
    if (!v.is_array()) throw ValidationError(where, "expected an array of scalars");
    RowVector<T> out;
    for (const auto& e : v) out.push_back(parse_scalar<T>(e, where));
    return out;
}

template <Scalar T>
Matrix<T> parse_matrix(const json& v, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n)
        throw ValidationError(where, "expected " + std::to_string(n) + " rows");
    Matrix<T> m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!v[r].is_array() || v[r].size() != n)
            throw ValidationError(where, "row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_scalar<T>(v[r][c], where);
    }
    return m;
}

inline void expect_type(const json& doc, DocType want) {
    const json& t = field(doc, "type");
    if (!t.is_string() || t.get<std::string>() != to_string(want))
        throw ValidationError("type", "expected \"" + std::string(to_string(want)) + "\"");
}

}  // namespace detail

inline DocType document_type(const json& doc) {
    const json& t = detail::field(doc, "type");
    if (t.is_string()) {
        const auto s = t.get<std::string>();
        if (s == "dfa") return DocType::dfa;
        if (s == "kdfa") return DocType::kdfa;
        if (s == "kqfa") return DocType::kqfa;
        if (s == "mmqfa") return DocType::mmqfa;
    }
    throw ValidationError("type", "expected one of dfa, kdfa, kqfa, mmqfa");
}

/// Scalar mode implied by a document's numbers: float if any non-integer
/// number appears, exact otherwise (classical automata are always exact).
inline Mode document_mode(const json& doc) {
    const DocType type = document_type(doc);
    if (type == DocType::dfa || type == DocType::kdfa) return Mode::exact;
    auto style = detail::tree_style(detail::field(doc, "initial"), "initial");
    const json& tr = detail::field(doc, "transitions");
    if (!tr.is_object()) throw ValidationError("transitions", "expected an object");
    for (const auto& [key, m] : tr.items())
        style = detail::combine(style, detail::tree_style(m, "transitions.\"" + key + "\""), "transitions.\"" + key + "\"");
    return style == detail::ScalarStyle::floating ? Mode::floating : Mode::exact;
}

inline DFA parse_dfa(const json& doc) {
    detail::expect_type(doc, DocType::dfa);
    DFA d;
    d.alphabet = Alphabet(detail::string_list(doc, "alphabet"));
    d.states = detail::string_list(doc, "states");
    const auto idx = detail::state_index(d.states);
    if (doc.contains("k") && detail::window_length(doc) != 1) throw ValidationError("k", "a plain DFA has k = 1");
    d.initial = detail::lookup(idx, detail::field(doc, "initial"), "initial");
    d.accepting = detail::state_flags(detail::state_set(doc, "accepting", idx), d.size());
    const json& tr = detail::field(doc, "transitions");
    if (!tr.is_object()) throw ValidationError("transitions", "expected an object keyed by symbol");
    d.delta.assign(d.size() * d.alphabet.size(), 0);
    std::vector<bool> seen(d.alphabet.size(), false);
    for (const auto& [sym, map] : tr.items()) {
        const std::string where = "transitions." + sym;
        Symbol s;
        try {
            s = d.alphabet.index(sym);
        } catch (const ValidationError&) {
            throw ValidationError(where, "symbol not in alphabet");
        }
        seen[static_cast<std::size_t>(s)] = true;
        const auto targets = detail::state_map(map, idx, where);
        for (State q = 0; q < d.size(); ++q) d.delta[q * d.alphabet.size() + static_cast<std::size_t>(s)] = targets[q];
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
        if (!seen[s]) throw ValidationError("transitions", "no transitions for symbol '" + d.alphabet.symbols()[s] + "'");
    validate(d);
    return d;
}

inline KLetterDFA parse_kdfa(const json& doc) {
    detail::expect_type(doc, DocType::kdfa);
    KLetterDFA d;
    d.alphabet = Alphabet(detail::string_list(doc, "alphabet"));
    d.states = detail::string_list(doc, "states");
    d.k = detail::window_length(doc);
    const auto idx = detail::state_index(d.states);
    d.initial = detail::lookup(idx, detail::field(doc, "initial"), "initial");
    d.accepting = detail::state_flags(detail::state_set(doc, "accepting", idx), d.size());
    const json& tr = detail::field(doc, "transitions");
    if (!tr.is_object()) throw ValidationError("transitions", "expected an object keyed by window");
    for (const auto& [key, map] : tr.items()) {
        const std::string where = "transitions.\"" + key + "\"";
        Window w;
        try {
            w = d.alphabet.parse_window(key, d.k);
        } catch (const ValidationError& e) {
            throw ValidationError(where, e.what());
        }
        if (!d.gamma.emplace(w, detail::state_map(map, idx, where)).second)
            throw ValidationError(where, "window listed twice");
    }
    validate(d);
    return d;
}

template <Scalar T>
MultiLetterQFA<T> parse_kqfa(const json& doc, double tol = 1e-9) {
    detail::expect_type(doc, DocType::kqfa);
    if constexpr (scalar_traits<T>::exact)
        if (document_mode(doc) == Mode::floating)
            throw ValidationError("mode", "document has float scalars and cannot be read in exact mode");
    MultiLetterQFA<T> a;
    a.alphabet = Alphabet(detail::string_list(doc, "alphabet"));
    a.states = detail::string_list(doc, "states");
    a.k = detail::window_length(doc);
    const auto idx = detail::state_index(a.states);
    a.initial = detail::parse_vector<T>(detail::field(doc, "initial"), "initial");
    a.accepting = detail::state_set(doc, "accepting", idx);
    const json& tr = detail::field(doc, "transitions");
    if (!tr.is_object()) throw ValidationError("transitions", "expected an object keyed by window");
    for (const auto& [key, m] : tr.items()) {
        const std::string where = "transitions.\"" + key + "\"";
        Window w;
        try {
            w = a.alphabet.parse_window(key, a.k);
        } catch (const ValidationError& e) {
            throw ValidationError(where, e.what());
        }
        if (!a.transitions.emplace(w, detail::parse_matrix<T>(m, a.size(), where)).second)
            throw ValidationError(where, "window listed twice");
    }
    validate(a, tol);
    return a;
}

template <Scalar T>
MMQFA<T> parse_mmqfa(const json& doc, double tol = 1e-9) {
    detail::expect_type(doc, DocType::mmqfa);
    if constexpr (scalar_traits<T>::exact)
        if (document_mode(doc) == Mode::floating)
            throw ValidationError("mode", "document has float scalars and cannot be read in exact mode");
    MMQFA<T> a;
    a.alphabet = Alphabet(detail::string_list(doc, "alphabet"));
    a.states = detail::string_list(doc, "states");
    const auto idx = detail::state_index(a.states);
    a.initial = detail::parse_vector<T>(detail::field(doc, "initial"), "initial");
    a.accepting = detail::state_set(doc, "accepting", idx);
    a.rejecting = detail::state_set(doc, "rejecting", idx, false);
    const json& tr = detail::field(doc, "transitions");
    if (!tr.is_object()) throw ValidationError("transitions", "expected an object keyed by symbol and \"$\"");
    std::vector<std::optional<Matrix<T>>> slots(a.alphabet.size() + 1);
    for (const auto& [key, m] : tr.items()) {
        const std::string where = "transitions." + key;
        std::size_t s = a.alphabet.size();
        if (key != kEndMarkName) {
            try {
                s = static_cast<std::size_t>(a.alphabet.index(key));
            } catch (const ValidationError&) {
                throw ValidationError(where, "symbol not in alphabet");
            }
        }
        slots[s] = detail::parse_matrix<T>(m, a.size(), where);
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!slots[s]) {
            const std::string name = s == a.alphabet.size() ? std::string(kEndMarkName) : a.alphabet.symbols()[s];
            throw ValidationError("transitions", "missing unitary for '" + name + "'");
        }
        a.transitions.push_back(std::move(*slots[s]));
    }
    validate(a, tol);
    return a;
}

// ---- output -----------------------------------------------------------------

template <Scalar T>
json real_json(const real_t<T>& r) {
    if constexpr (scalar_traits<T>::exact)
        return format_rational(r);
    else
        return r;
}

template <Scalar T>
json scalar_json(const T& z) {
    if constexpr (scalar_traits<T>::exact) {
        if (z.im == 0) return format_rational(z.re);
        return json{{"re", format_rational(z.re)}, {"im", format_rational(z.im)}};
    } else {
        if (z.imag() == 0) return z.real();
        return json{{"re", z.real()}, {"im", z.imag()}};
    }
}

template <Scalar T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline json names(const std::vector<std::string>& states, const std::vector<std::size_t>& set) {
    json out = json::array();
    for (std::size_t q : set) out.push_back(states[q]);
    return out;
}

inline json names(const std::vector<std::string>& states, const std::vector<bool>& flags) {
    json out = json::array();
    for (std::size_t q = 0; q < flags.size(); ++q)
        if (flags[q]) out.push_back(states[q]);
    return out;
}

inline json header(DocType t, const Alphabet& sigma, const std::vector<std::string>& states) {
    return json{{"type", to_string(t)}, {"alphabet", sigma.symbols()}, {"states", states}};
}

}  // namespace detail

inline json to_json(const DFA& d) {
    json doc = detail::header(DocType::dfa, d.alphabet, d.states);
    doc["initial"] = d.states[d.initial];
    doc["accepting"] = detail::names(d.states, d.accepting);
    json tr = json::object();
    for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
        json map = json::object();
        for (State q = 0; q < d.size(); ++q) map[d.states[q]] = d.states[d.next(q, static_cast<Symbol>(s))];
        tr[d.alphabet.symbols()[s]] = std::move(map);
    }
    doc["transitions"] = std::move(tr);
    return doc;
}

inline json to_json(const KLetterDFA& d) {
    json doc = detail::header(DocType::kdfa, d.alphabet, d.states);
    doc["k"] = d.k;
    doc["initial"] = d.states[d.initial];
    doc["accepting"] = detail::names(d.states, d.accepting);
    json tr = json::object();
    for (const auto& w : reachable_windows(d.alphabet.size(), d.k)) {
        const auto& targets = d.step(w);
        json map = json::object();
        for (State q = 0; q < d.size(); ++q) map[d.states[q]] = d.states[targets[q]];
        tr[d.alphabet.format(w)] = std::move(map);
    }
    doc["transitions"] = std::move(tr);
    return doc;
}

template <Scalar T>
json to_json(const MultiLetterQFA<T>& a) {
    json doc = detail::header(DocType::kqfa, a.alphabet, a.states);
    doc["k"] = a.k;
    json init = json::array();
    for (const auto& z : a.initial) init.push_back(scalar_json(z));
    doc["initial"] = std::move(init);
    doc["accepting"] = detail::names(a.states, a.accepting);
    json tr = json::object();
    for (const auto& w : reachable_windows(a.alphabet.size(), a.k)) tr[a.alphabet.format(w)] = matrix_json(a.transition(w));
    doc["transitions"] = std::move(tr);
    return doc;
}

template <Scalar T>
json to_json(const MMQFA<T>& a) {
    json doc = detail::header(DocType::mmqfa, a.alphabet, a.states);
    json init = json::array();
    for (const auto& z : a.initial) init.push_back(scalar_json(z));
    doc["initial"] = std::move(init);
    doc["accepting"] = detail::names(a.states, a.accepting);
    doc["rejecting"] = detail::names(a.states, a.rejecting);
    json tr = json::object();
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) tr[a.alphabet.symbols()[s]] = matrix_json(a.transitions[s]);
    tr[std::string(kEndMarkName)] = matrix_json(a.end_marker());
    doc["transitions"] = std::move(tr);
    return doc;
}

inline json to_json(const DFA& d, const CkWitness& c) {
    const auto& s = d.states;
    return json{{"q1", s[c.q1]}, {"q2", s[c.q2]}, {"q3", s[c.q3]},
                {"q4", s[c.q4]}, {"q5", s[c.q5]}, {"w", d.alphabet.format(c.w)}};
}

inline json to_json(const DFA& d, const DkWitness& w) { return json{{"ck", to_json(d, w.ck)}, {"m", w.m}}; }

inline json to_json(const DFA& d, const FWitness& f) {
    return json{{"q1", d.states[f.q1]}, {"q2", d.states[f.q2]}, {"t", d.alphabet.format(f.t)}, {"z", d.alphabet.format(f.z)}};
}

inline json to_json(const DFA& d, const ForbiddenWitness& f) {
    return json{{"p1", d.states[f.p1]}, {"p2", d.states[f.p2]}, {"x", d.alphabet.format(f.x)},
                {"w1", d.alphabet.format(f.w1)}, {"w2", d.alphabet.format(f.w2)}};
}

template <class W>
json optional_json(const DFA& d, const std::optional<W>& w) {
    return w ? to_json(d, *w) : json(nullptr);
}

inline json minimal_k_json(const MinimalK& k) { return k.infinite() ? json("infinite") : json(*k.value); }

inline json to_json(const ClassificationReport& r) {
    json per_k = json::object();
    for (const auto& [k, w] : r.per_k) per_k[std::to_string(k)] = optional_json(r.minimal, w);
    return json{{"minimalStates", r.minimal.size()},
                {"inputWasMinimal", r.input_was_minimal},
                {"minimalK", minimal_k_json(r.minimal_k)},
                {"hasF", r.has_f()},
                {"fWitness", optional_json(r.minimal, r.f)},
                {"perK", std::move(per_k)},
                {"forbidden", optional_json(r.minimal, r.forbidden)},
                {"mmOver79", r.mm_over_7_9}};
}

template <Scalar T>
json to_json(const EquivalenceVerdict<T>& v, const Alphabet& sigma) {
    json out{{"equivalent", v.equivalent}, {"kind", to_string(v.kind)}, {"checked_up_to", v.checked_up_to}, {"bound", v.bound}};
    if (v.stabilization_index) out["stabilization_index"] = *v.stabilization_index;
    if (v.witness)
        out["witness"] = json{{"length", v.witness->length},
                              {"word", sigma.format(v.witness->word)},
                              {"p1", real_json<T>(v.witness->p1)},
                              {"p2", real_json<T>(v.witness->p2)}};
    return out;
}

}  // namespace mlqfa::io
