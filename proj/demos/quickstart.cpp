// Classifies a few DFAs and decides equivalence of two unary QFAs.

#include "mlqfa/io.hpp"
#include "mlqfa/mlqfa.hpp"

#include <iostream>

using namespace mlqfa;

int main() {
    for (const DFA& d : {build_lk_dfa(3), build_named_dfa("astar-bstar"), build_named_dfa("abstarb")}) {
        const ClassificationReport r = classify(d, 3);
        std::cout << d.size() << "-state DFA: minimal k = ";
        if (r.minimal_k.infinite())
            std::cout << "infinite";
        else
            std::cout << *r.minimal_k.value;
        std::cout << ", F construction " << (r.has_f() ? "present" : "absent") << '\n';
    }

    // A 2-letter QFA and the same automaton with relabelled basis states.
    const auto a = random_qfa<GaussianRational>(4, 2, 2, 1, UnitaryFamily::finite_order);
    const auto b = relabel_states(a, {1, 0});
    const auto v = decide_equivalence_unary(a, b);
    std::cout << "relabelled pair: " << io::to_json(v, a.alphabet).dump() << '\n';

    auto c = a;
    c.accepting = a.accepting.empty() ? std::vector<std::size_t>{0} : std::vector<std::size_t>{};
    const auto w = decide_equivalence_unary(a, c);
    std::cout << "changed accepting set: " << io::to_json(w, a.alphabet).dump() << '\n';
    return v.equivalent && !w.equivalent ? 0 : 1;
}
