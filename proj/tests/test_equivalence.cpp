#include "instances.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace mlqfa;
using namespace testing;

namespace {

template <class T>
MultiLetterQFA<T> unary_k1(std::vector<std::vector<int>> u, std::vector<int> psi, std::vector<std::size_t> acc) {
    MultiLetterQFA<T> a;
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) a.states.push_back("q" + std::to_string(i));
    a.accepting = std::move(acc);
    for (int x : psi) a.initial.push_back(T(x));
    a.alphabet = Alphabet({"s"});
    a.k = 1;
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = T(u[i][j]);
    a.transitions.emplace(Window{0}, m);
    validate(a);
    return a;
}

template <class T>
CombinedSystem<T> constant_system(const Matrix<T>& c) {
    CombinedSystem<T> sys;
    sys.n1 = c.rows();
    sys.n2 = 0;
    sys.k = 1;
    sys.steps = {c};
    return sys;
}

// Brute force from the oracle: first length m <= t where the tables differ.
template <class T>
std::optional<std::size_t> first_difference(const MultiLetterQFA<T>& a1, const MultiLetterQFA<T>& a2, std::size_t t,
                                            double tol) {
    const auto t1 = oracle::probability_table(a1, t);
    const auto t2 = oracle::probability_table(a2, t);
    for (std::size_t i = 0; i < t1.size(); ++i)
        if (!scalar_traits<T>::real_equal(t1[i].probability, t2[i].probability, tol)) return t1[i].word.size();
    return std::nullopt;
}

}  // namespace

TEST_CASE("combined system blocks", "[equivalence][combine]") {
    const auto a1 = random_qfa<GR>(1, 2, 2, 1);
    const auto a2 = random_qfa<GR>(2, 3, 3, 1);
    const auto sys = combine_unary(a1, a2);
    CHECK(sys.n() == 5);
    CHECK(sys.k == 3);
    REQUIRE(sys.steps.size() == 3);
    for (const auto& c : sys.steps) CHECK(is_unitary(c, 0));
    // C_3 uses a1's full window again (k1 = 2 < 3).
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(sys.steps[2](i, j) == a1.transition({0, 0})(i, j));
            CHECK(sys.steps[0](i, j) == a1.transition({kBlank, 0})(i, j));
        }
    CHECK(sys.steps[1](2, 2) == a2.transition({kBlank, 0, 0})(0, 0));
    CHECK(squared_norm<GR>(sys.eta1) == 1);
    CHECK(squared_norm<GR>(sys.eta2) == 1);
    CHECK(sys.eta1[3] == GR(0));
    CHECK(sys.length_bound() == 625 + 3 - 1);
}

TEST_CASE("decision preconditions", "[equivalence]") {
    const auto unary = random_qfa<GR>(1, 2, 1, 1);
    const auto binary = random_qfa<GR>(1, 2, 1, 2);
    CHECK_THROWS_AS(decide_equivalence_unary(binary, binary), std::invalid_argument);
    CHECK_THROWS_AS(decide_equivalence_unary(unary, binary), std::invalid_argument);
    auto renamed = unary;
    renamed.alphabet = Alphabet({"t"});
    CHECK_THROWS_AS(decide_equivalence_unary(unary, renamed), std::invalid_argument);
    CHECK_THROWS_AS(bounded_equivalence(unary, binary, 3), std::invalid_argument);
}

TEST_CASE("an automaton is equivalent to itself", "[equivalence]") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto e = random_qfa<GR>(seed, 1 + seed % 3, 1 + seed % 3, 1, UnitaryFamily::finite_order);
        const auto f = random_qfa<Complexd>(seed, 1 + seed % 3, 1 + seed % 3, 1);
        for (auto s : {Strategy::full_bound, Strategy::span_early_stop}) {
            const auto ve = decide_equivalence_unary(e, e, {s});
            CHECK(ve.equivalent);
            CHECK(ve.kind == VerdictKind::exact);
            const auto vf = decide_equivalence_unary(f, f, {s});
            CHECK(vf.equivalent);
            CHECK(vf.kind == VerdictKind::within_tolerance);
        }
    }
}

TEST_CASE("one step separates identity from swap", "[equivalence]") {
    const auto a1 = unary_k1<GR>({{1}}, {1}, {0});
    const auto a2 = unary_k1<GR>({{0, 1}, {1, 0}}, {1, 0}, {0});
    for (auto s : {Strategy::full_bound, Strategy::span_early_stop}) {
        const auto v = decide_equivalence_unary(a1, a2, {s});
        REQUIRE_FALSE(v.equivalent);
        REQUIRE(v.witness);
        CHECK(v.witness->length == 1);
        CHECK(v.witness->word == Word{0});
        CHECK(v.witness->p1 == 1);
        CHECK(v.witness->p2 == 0);
        CHECK(v.checked_up_to == 1);
    }
}

TEST_CASE("unreachable padding keeps equivalence", "[equivalence]") {
    const auto a = random_qfa<GR>(21, 2, 2, 1, UnitaryFamily::finite_order);
    const auto b = pad_unreachable(a, 1, 5);
    for (auto s : {Strategy::full_bound, Strategy::span_early_stop}) {
        const auto v = decide_equivalence_unary(a, b, {s});
        CHECK(v.equivalent);
    }
    const auto full = decide_equivalence_unary(a, b, {Strategy::full_bound});
    CHECK(full.checked_up_to == 625 + 2 - 1);  // n = 2 + 3
    CHECK_FALSE(first_difference(a, b, full.bound, 0).has_value());
}

TEST_CASE("span_closure examples", "[equivalence][span]") {
    SECTION("identity steps span one element") {
        const auto r = span_closure(constant_system(Matrix<GR>::identity(2)));
        CHECK(r.basis.size() == 1);
        CHECK(r.i0 == 1);
    }
    SECTION("a swap alternates between two tensor squares") {
        const auto r = span_closure(constant_system(exact(2, 2, {"0", "1", "1", "0"})));
        CHECK(r.basis.size() == 2);
        CHECK(r.i0 == 2);
    }
    SECTION("random 2-state pairs stay under n^4") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto sys = combine_unary(random_qfa<Complexd>(seed, 2, 2, 1), random_qfa<Complexd>(seed + 50, 2, 1, 1));
            const auto r = span_closure(sys);
            CHECK(r.i0 <= 256);
            CHECK(r.i0 >= 1);
        }
    }
}

TEST_CASE("span growth never resumes after it stops", "[equivalence][span][property]") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto sys = combine_unary(random_qfa<GR>(seed, 1 + seed % 2, 1 + seed % 3, 1),
                                       random_qfa<GR>(seed + 99, 1 + (seed / 2) % 2, 1 + (seed / 3) % 3, 1));
        auto r = span_closure(sys);
        const std::size_t n = sys.n();
        CHECK(r.i0 <= n * n * n * n);
        TensorSquareSequence<GR> seq(sys);
        for (std::size_t i = 0; i < r.steps + n; ++i) CHECK(r.basis.contains(seq.next()));
    }
}

TEST_CASE("bounded_equivalence examples", "[equivalence][bounded]") {
    const auto a = random_qfa<GR>(8, 2, 2, 2);
    const auto v = bounded_equivalence(a, a, 5);
    CHECK(v.equivalent);
    CHECK(v.checked_up_to == 5);
    CHECK(v.kind == VerdictKind::bounded);

    auto perturbed = build_abstarb_qfa<GR>();
    auto& m = perturbed.transitions.at({0, 1});
    m = exact(2, 2, {"1", "0", "0", "1"});  // columns of the "a b" swap exchanged
    const auto original = build_abstarb_qfa<GR>();
    const auto w = bounded_equivalence(original, perturbed, 4);
    REQUIRE_FALSE(w.equivalent);
    REQUIRE(w.witness);
    CHECK(w.witness->length <= 3);
    CHECK(original.alphabet.format(w.witness->word) == "a b");
    CHECK(w.witness->p1 == 1);
    CHECK(w.witness->p2 == 0);
}

TEST_CASE("bounded and unary decisions agree past the bound", "[equivalence][bounded][property]") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto pair = make_unary_pair<Complexd>(seed, 2);
        const auto d = decide_equivalence_unary(pair.a1, pair.a2, {Strategy::full_bound});
        const auto b = bounded_equivalence(pair.a1, pair.a2, d.bound);
        CHECK(d.equivalent == b.equivalent);
        if (!d.equivalent) CHECK(d.witness->length == b.witness->length);
    }
}

TEST_CASE("strategies agree and the witness is the shortest difference", "[equivalence][property]") {
    auto run = [](auto tag, std::uint64_t seeds, std::size_t max_n, double tol) {
        using T = decltype(tag);
        for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
            const auto pair = make_unary_pair<T>(seed, max_n);
            INFO(pair.label << " seed " << seed);
            const auto full = decide_equivalence_unary(pair.a1, pair.a2, {Strategy::full_bound});
            const auto span = decide_equivalence_unary(pair.a1, pair.a2, {Strategy::span_early_stop});
            CHECK(full.equivalent == span.equivalent);
            CHECK(span.checked_up_to <= full.checked_up_to);
            const auto brute = first_difference(pair.a1, pair.a2, full.bound, tol);
            CHECK(brute.has_value() == !full.equivalent);
            if (brute) {
                CHECK(full.witness->length == *brute);
                CHECK(span.witness->length == *brute);
            }
            if (pair.label.rfind("equivalent", 0) == 0) CHECK(full.equivalent);
        }
    };
    run(Complexd{}, 30, 2, 1e-9);
    run(GR{}, 30, 2, 0);
}

TEST_CASE("scanning far past the bound never changes the verdict", "[equivalence][property]") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto pair = make_unary_pair<Complexd>(seed, 1);
        const auto v = decide_equivalence_unary(pair.a1, pair.a2, {Strategy::full_bound});
        const std::size_t n = pair.a1.size() + pair.a2.size();
        const auto longer = bounded_equivalence(pair.a1, pair.a2, v.bound + 2 * n * n * n * n);
        CHECK(longer.equivalent == v.equivalent);
    }
}
