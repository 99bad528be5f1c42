#pragma once

// Structural analysis of minimal DFAs: which k-letter QFA classes can accept
// the language, read off from constructions in the transition graph.
//
//   C_k        two distinct states, reached from distinct states by one word of
//              length k-1, merge on one more letter. Absent for the minimal
//              DFA iff the language is k-letter QFA acceptable.
//   D_k        a C_k whose merge target returns to the second source under
//              powers of the same word.
//   F          distinct q1, q2 fixed by a common non-empty word t and sent to
//              q2 by a common non-empty word z. Absent iff some multi-letter
//              QFA accepts the language.
//   forbidden  p1 != p2 with p1 -x-> p2 -x-> p2 and p2 neither all-accepting
//              nor all-rejecting.
//
// Most searches run on the pair graph: nodes are ordered pairs of distinct
// states, edges follow δ componentwise, and a letter that sends both
// components to one state is a merge event instead of an edge. Determinism
// means every path of pairs stays distinct until a merge, which is why the
// C_k search needs no q1 != q4 check of its own.
//
// Witness tie-breaking everywhere: shortest words, then lexicographic symbol
// order, then lowest state indices.

#include "mlqfa/dfa.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlqfa {

/// Drops unreachable states, merges indistinguishable ones (Moore partition
/// refinement) and numbers the result in BFS order from the initial state.
/// Each class keeps the name of its first member in that BFS order.
inline DFA minimize_dfa(const DFA& d) {
    const std::size_t sigma = d.alphabet.size();

    std::vector<State> order;
    std::vector<bool> seen(d.size(), false);
    order.push_back(d.initial);
    seen[d.initial] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t s = 0; s < sigma; ++s) {
            State t = d.next(order[i], static_cast<Symbol>(s));
            if (!seen[t]) {
                seen[t] = true;
                order.push_back(t);
            }
        }

    std::vector<std::size_t> cls(d.size(), 0);
    for (State q : order) cls[q] = d.is_accepting(q) ? 1 : 0;
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(d.size(), 0);
        for (State q : order) {
            std::vector<std::size_t> sig{cls[q]};
            for (std::size_t s = 0; s < sigma; ++s) sig.push_back(cls[d.next(q, static_cast<Symbol>(s))]);
            next[q] = ids.emplace(std::move(sig), ids.size()).first->second;
        }
        const bool stable = ids.size() == classes;
        classes = ids.size();
        cls = std::move(next);
        if (stable) break;
    }

    // Quotient numbered by BFS from the initial class.
    std::vector<std::optional<State>> renumber(classes);
    std::vector<State> reps;
    auto visit = [&](State q) {
        if (!renumber[cls[q]]) {
            renumber[cls[q]] = reps.size();
            reps.push_back(q);
        }
    };
    visit(d.initial);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t s = 0; s < sigma; ++s) visit(d.next(reps[i], static_cast<Symbol>(s)));

    DFA out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    for (State r : reps) {
        out.states.push_back(d.states[r]);
        out.accepting.push_back(d.is_accepting(r));
    }
    out.delta.resize(reps.size() * sigma);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t s = 0; s < sigma; ++s)
            out.delta[i * sigma + s] = *renumber[cls[d.next(reps[i], static_cast<Symbol>(s))]];
    return out;
}

inline bool is_minimal(const DFA& d) { return minimize_dfa(d).size() == d.size(); }

/// Ordered pairs of states with componentwise transitions.
class PairGraph {
public:
    using Node = std::size_t;

    struct Step {
        bool merged;  // both components reached the same state
        std::size_t target;  // merged ? that state : successor pair node
    };

    explicit PairGraph(const DFA& d) : dfa_(&d), n_(d.size()) {
        for (State p = 0; p < n_; ++p)
            for (State q = 0; q < n_; ++q)
                if (p != q) nodes_.push_back(node(p, q));
    }

    std::size_t states() const noexcept { return n_; }
    std::size_t symbols() const noexcept { return dfa_->alphabet.size(); }
    Node node(State p, State q) const noexcept { return p * n_ + q; }
    State first(Node v) const noexcept { return v / n_; }
    State second(Node v) const noexcept { return v % n_; }
    std::size_t id_space() const noexcept { return n_ * n_; }

    /// Distinct pairs in lexicographic (p, q) order.
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    Step step(Node v, Symbol s) const {
        const State a = dfa_->next(first(v), s);
        const State b = dfa_->next(second(v), s);
        return a == b ? Step{true, a} : Step{false, node(a, b)};
    }

    bool mergeable(Node v) const {
        for (std::size_t s = 0; s < symbols(); ++s)
            if (step(v, static_cast<Symbol>(s)).merged) return true;
        return false;
    }

    /// Length of the longest walk of pairs ending at each node; nullopt when
    /// unbounded (a cycle reaches the node). Indexed by node id.
    std::vector<std::optional<std::size_t>> incoming_depth() const;

private:
    const DFA* dfa_;
    std::size_t n_;
    std::vector<Node> nodes_;
};

inline std::vector<std::optional<std::size_t>> PairGraph::incoming_depth() const {
    const std::size_t ids = id_space();
    std::vector<std::vector<Node>> succ(ids), pred(ids);
    for (Node v : nodes_)
        for (std::size_t s = 0; s < symbols(); ++s)
            if (auto st = step(v, static_cast<Symbol>(s)); !st.merged) {
                succ[v].push_back(st.target);
                pred[st.target].push_back(v);
            }

    // Kosaraju, iteratively: finish order on succ, then components on pred.
    std::vector<char> done(ids, 0);
    std::vector<Node> finish;
    for (Node root : nodes_) {
        if (done[root]) continue;
        std::vector<std::pair<Node, std::size_t>> stack{{root, 0}};
        done[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < succ[v].size()) {
                Node u = succ[v][i++];
                if (!done[u]) {
                    done[u] = 1;
                    stack.emplace_back(u, 0);
                }
            } else {
                finish.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<std::optional<std::size_t>> comp(ids);
    std::vector<std::size_t> comp_size;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it]) continue;
        const std::size_t c = comp_size.size();
        comp_size.push_back(0);
        std::vector<Node> stack{*it};
        comp[*it] = c;
        while (!stack.empty()) {
            Node v = stack.back();
            stack.pop_back();
            ++comp_size[c];
            for (Node u : pred[v])
                if (!comp[u]) {
                    comp[u] = c;
                    stack.push_back(u);
                }
        }
    }

    std::vector<char> unbounded(ids, 0);
    std::deque<Node> queue;
    for (Node v : nodes_) {
        const bool self_loop = std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
        if (comp_size[*comp[v]] > 1 || self_loop) {
            unbounded[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        Node v = queue.front();
        queue.pop_front();
        for (Node u : succ[v])
            if (!unbounded[u]) {
                unbounded[u] = 1;
                queue.push_back(u);
            }
    }

    // Remaining nodes form a DAG whose ancestors are all bounded.
    std::vector<std::optional<std::size_t>> depth(ids);
    std::vector<std::size_t> indeg(ids, 0);
    for (Node v : nodes_)
        if (!unbounded[v])
            for (Node u : succ[v])
                if (!unbounded[u]) ++indeg[u];
    for (Node v : nodes_)
        if (!unbounded[v] && indeg[v] == 0) {
            depth[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        Node v = queue.front();
        queue.pop_front();
        for (Node u : succ[v]) {
            if (unbounded[u]) continue;
            depth[u] = std::max(depth[u].value_or(0), *depth[v] + 1);
            if (--indeg[u] == 0) queue.push_back(u);
        }
    }
    for (Node v : nodes_)
        if (unbounded[v]) depth[v] = std::nullopt;
    return depth;
}

struct CkWitness {
    State q1 = 0, q2 = 0, q3 = 0, q4 = 0, q5 = 0;
    Word w;  // |w| = k

    friend bool operator==(const CkWitness&, const CkWitness&) = default;
};

struct DkWitness {
    CkWitness ck;
    std::size_t m = 1;  // δ*(q3, w^(m-1)) = q4
};

struct FWitness {
    State q1 = 0, q2 = 0;
    Word t;
    Word z;
};

struct ForbiddenWitness {
    State p1 = 0, p2 = 0;
    Word x;
    Word w1;  // from p2 into an accepting state
    Word w2;  // from p2 into a rejecting state
};

/// Re-checks every defining equation of a C_k witness with dfa_run.
inline bool is_valid_ck(const DFA& d, const CkWitness& c, std::size_t k) {
    if (c.w.size() != k || k < 1) return false;
    for (State q : {c.q1, c.q2, c.q3, c.q4, c.q5})
        if (q >= d.size()) return false;
    for (Symbol s : c.w)
        if (!d.alphabet.contains(s)) return false;
    const Word prefix(c.w.begin(), c.w.end() - 1);
    const Symbol last = c.w.back();
    return c.q2 != c.q5 && dfa_run(d, c.q1, prefix) == c.q2 && dfa_run(d, c.q4, prefix) == c.q5 &&
           d.next(c.q2, last) == c.q3 && d.next(c.q5, last) == c.q3;
}

inline bool is_valid_dk(const DFA& d, const DkWitness& w) {
    if (w.m < 1 || !is_valid_ck(d, w.ck, w.ck.w.size())) return false;
    State q = w.ck.q3;
    for (std::size_t i = 0; i + 1 < w.m; ++i) q = dfa_run(d, q, w.ck.w);
    return q == w.ck.q4;
}

inline bool is_valid_f(const DFA& d, const FWitness& f) {
    if (f.q1 >= d.size() || f.q2 >= d.size() || f.q1 == f.q2 || f.t.empty() || f.z.empty()) return false;
    return dfa_run(d, f.q1, f.z) == f.q2 && dfa_run(d, f.q2, f.z) == f.q2 && dfa_run(d, f.q1, f.t) == f.q1 &&
           dfa_run(d, f.q2, f.t) == f.q2;
}

inline bool is_valid_forbidden(const DFA& d, const ForbiddenWitness& f) {
    if (f.p1 >= d.size() || f.p2 >= d.size() || f.p1 == f.p2) return false;
    return dfa_run(d, f.p1, f.x) == f.p2 && dfa_run(d, f.p2, f.x) == f.p2 &&
           d.is_accepting(dfa_run(d, f.p2, f.w1)) && !d.is_accepting(dfa_run(d, f.p2, f.w2));
}

/// Finds the lexicographically smallest C_k witness, if any.
inline std::optional<CkWitness> detect_ck(const DFA& d, std::size_t k) {
    if (k < 1) throw std::invalid_argument("C_k detection needs k >= 1");
    const PairGraph g(d);
    const std::size_t sigma = g.symbols();
    const auto depth = g.incoming_depth();

    bool exists = false;
    for (auto v : g.nodes())
        if (g.mergeable(v) && (!depth[v] || *depth[v] + 1 >= k)) exists = true;
    if (!exists) return std::nullopt;

    // can[r][v]: a walk of r pair-edges from v ends at a mergeable pair.
    std::vector<std::vector<char>> can(k, std::vector<char>(g.id_space(), 0));
    for (auto v : g.nodes()) can[0][v] = g.mergeable(v);
    for (std::size_t r = 1; r < k; ++r)
        for (auto v : g.nodes())
            for (std::size_t s = 0; s < sigma && !can[r][v]; ++s)
                if (auto st = g.step(v, static_cast<Symbol>(s)); !st.merged && can[r - 1][st.target]) can[r][v] = 1;

    // Greedy smallest prefix over the image of all distinct pairs.
    std::vector<char> current(g.id_space(), 0);
    for (auto v : g.nodes()) current[v] = 1;
    Word w;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const std::size_t remaining = k - 2 - i;
        bool chosen = false;
        for (std::size_t s = 0; s < sigma && !chosen; ++s) {
            std::vector<char> image(g.id_space(), 0);
            bool feasible = false;
            for (auto v : g.nodes()) {
                if (!current[v]) continue;
                if (auto st = g.step(v, static_cast<Symbol>(s)); !st.merged) {
                    image[st.target] = 1;
                    if (can[remaining][st.target]) feasible = true;
                }
            }
            if (feasible) {
                w.push_back(static_cast<Symbol>(s));
                current = std::move(image);
                chosen = true;
            }
        }
        if (!chosen) return std::nullopt;  // unreachable given `exists`
    }
    std::optional<Symbol> last;
    for (std::size_t s = 0; s < sigma && !last; ++s)
        for (auto v : g.nodes())
            if (current[v] && can[0][v] && g.step(v, static_cast<Symbol>(s)).merged) {
                last = static_cast<Symbol>(s);
                break;
            }
    if (!last) return std::nullopt;

    const Word prefix = w;
    w.push_back(*last);
    for (auto v : g.nodes()) {
        const State q1 = g.first(v), q4 = g.second(v);
        const State q2 = dfa_run(d, q1, prefix), q5 = dfa_run(d, q4, prefix);
        if (q2 == q5) continue;
        const State a = d.next(q2, *last), b = d.next(q5, *last);
        if (a == b) return CkWitness{q1, q2, a, q4, q5, w};
    }
    return std::nullopt;
}

/// Searches δ*(q3, w^(m-1)) = q4 for m-1 = 0..|Q| on the given witness, then
/// on every C_k witness of the same length (lexicographic word order, lowest
/// source pair first). The fallback enumerates |Σ|^k words and refuses when
/// that exceeds 2^20.
inline std::optional<DkWitness> ck_to_dk(const DFA& d, const CkWitness& c) {
    const std::size_t k = c.w.size();
    if (!is_valid_ck(d, c, k)) throw std::invalid_argument("ck_to_dk given an invalid C_k witness");

    auto orbit = [&](const CkWitness& w) -> std::optional<DkWitness> {
        State q = w.q3;
        for (std::size_t steps = 0; steps <= d.size(); ++steps) {
            if (q == w.q4) return DkWitness{w, steps + 1};
            q = dfa_run(d, q, w.w);
        }
        return std::nullopt;
    };
    if (auto dk = orbit(c)) return dk;

    double words = 1;
    for (std::size_t i = 0; i < k; ++i) words *= static_cast<double>(d.alphabet.size());
    if (words > double(1 << 20))
        throw std::runtime_error("D_k fallback search over " + std::to_string(k) + "-letter words is too large");

    for (const Word& w : words_of_length(d.alphabet.size(), k)) {
        const Word prefix(w.begin(), w.end() - 1);
        for (State q1 = 0; q1 < d.size(); ++q1)
            for (State q4 = 0; q4 < d.size(); ++q4) {
                if (q1 == q4) continue;
                CkWitness cand{q1, dfa_run(d, q1, prefix), 0, q4, dfa_run(d, q4, prefix), w};
                if (cand.q2 == cand.q5) continue;
                cand.q3 = d.next(cand.q2, w.back());
                if (d.next(cand.q5, w.back()) != cand.q3) continue;
                if (auto dk = orbit(cand)) return dk;
            }
    }
    return std::nullopt;
}

namespace detail {

// Shortest, then lexicographically smallest, word leading from `start` to a
// pair satisfying `target`. BFS visits each depth in lexicographic order of
// the words reaching it, so the first hit wins. With `non_empty` the start
// itself only counts when re-entered.
template <class Target>
std::optional<Word> pair_bfs(const DFA& d, State p, State q, Target target, bool non_empty) {
    const std::size_t n = d.size();
    const std::size_t start = p * n + q;
    if (!non_empty && target(p, q)) return Word{};
    std::vector<std::optional<std::pair<std::size_t, Symbol>>> parent(n * n);
    std::vector<char> seen(n * n, 0);
    seen[start] = 1;
    std::deque<std::size_t> queue{start};
    auto unwind = [&](std::size_t from, Symbol s) {
        Word w{s};
        for (std::size_t u = from; u != start; u = parent[u]->first) w.push_back(parent[u]->second);
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
            const Symbol sym = static_cast<Symbol>(s);
            const State a = d.next(v / n, sym), b = d.next(v % n, sym);
            const std::size_t u = a * n + b;
            if (target(a, b)) return unwind(v, sym);
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = {v, sym};
                queue.push_back(u);
            }
        }
    }
    return std::nullopt;
}

template <class Target>
std::optional<Word> state_bfs(const DFA& d, State from, Target target) {
    return pair_bfs(d, from, from, [&](State a, State) { return target(a); }, false);
}

}  // namespace detail

/// First distinct pair (q1, q2) in index order carrying an F-construction.
inline std::optional<FWitness> detect_f(const DFA& d) {
    for (State q1 = 0; q1 < d.size(); ++q1)
        for (State q2 = 0; q2 < d.size(); ++q2) {
            if (q1 == q2) continue;
            auto t = detail::pair_bfs(d, q1, q2, [&](State a, State b) { return a == q1 && b == q2; }, true);
            if (!t) continue;
            auto z = detail::pair_bfs(d, q1, q2, [&](State a, State b) { return a == q2 && b == q2; }, true);
            if (!z) continue;
            return FWitness{q1, q2, std::move(*t), std::move(*z)};
        }
    return std::nullopt;
}

/// First distinct pair (p1, p2) in index order carrying a forbidden construction.
inline std::optional<ForbiddenWitness> detect_forbidden(const DFA& d) {
    for (State p1 = 0; p1 < d.size(); ++p1)
        for (State p2 = 0; p2 < d.size(); ++p2) {
            if (p1 == p2) continue;
            auto x = detail::pair_bfs(d, p1, p2, [&](State a, State b) { return a == p2 && b == p2; }, true);
            if (!x) continue;
            auto w1 = detail::state_bfs(d, p2, [&](State s) { return d.is_accepting(s); });
            auto w2 = detail::state_bfs(d, p2, [&](State s) { return !d.is_accepting(s); });
            if (w1 && w2) return ForbiddenWitness{p1, p2, std::move(*x), std::move(*w1), std::move(*w2)};
        }
    return std::nullopt;
}

/// Smallest k with no C_k-construction, or infinite.
struct MinimalK {
    std::optional<std::size_t> value;  // nullopt: C_k exists for every k
    bool infinite() const noexcept { return !value; }
    friend bool operator==(const MinimalK&, const MinimalK&) = default;
};

/// C_k exists iff some mergeable pair has an incoming walk of k-1 pair edges,
/// so the answer is (longest such walk) + 2, or 1 when nothing merges.
/// `cap` bounds the answer; the default |Q|^2 + 1 always suffices.
inline MinimalK minimal_k(const DFA& d, std::optional<std::size_t> cap = std::nullopt) {
    const PairGraph g(d);
    const auto depth = g.incoming_depth();
    std::optional<std::size_t> longest;
    for (auto v : g.nodes()) {
        if (!g.mergeable(v)) continue;
        if (!depth[v]) return MinimalK{std::nullopt};
        longest = std::max(longest.value_or(0), *depth[v]);
    }
    const std::size_t k = longest ? *longest + 2 : 1;
    const std::size_t limit = cap.value_or(d.size() * d.size() + 1);
    if (k > limit)
        throw std::runtime_error("minimal k exceeds the cap of " + std::to_string(limit));
    return MinimalK{k};
}

struct ClassificationReport {
    DFA minimal;            // witnesses refer to this automaton's state indices
    bool input_was_minimal = true;
    MinimalK minimal_k;
    std::optional<FWitness> f;
    std::map<std::size_t, std::optional<CkWitness>> per_k;  // k = 1..maxK
    std::optional<ForbiddenWitness> forbidden;
    bool mm_over_7_9 = false;  // no C_1: MM-1QFA acceptable with probability above 7/9

    bool has_f() const noexcept { return f.has_value(); }
};

inline ClassificationReport classify(const DFA& d, std::size_t max_k) {
    if (max_k < 1) throw std::invalid_argument("max_k must be at least 1");
    ClassificationReport r;
    r.minimal = minimize_dfa(d);
    r.input_was_minimal = r.minimal.size() == d.size();
    const DFA& m = r.minimal;
    r.minimal_k = minimal_k(m);
    r.f = detect_f(m);
    for (std::size_t k = 1; k <= max_k; ++k) r.per_k.emplace(k, detect_ck(m, k));
    r.forbidden = detect_forbidden(m);
    r.mm_over_7_9 = !r.per_k.at(1).has_value();
    return r;
}

}  // namespace mlqfa
