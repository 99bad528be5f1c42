// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "instances.hpp"
#include "mlqfa/mlqfa.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mlqfa;

namespace {

constexpr double kFloatTol = 1e-9;
constexpr double kFloatSpanTol = 1e-10;
constexpr std::size_t kEquivPairsPerMode = 200;
constexpr std::size_t kFloatMaxStates = 3;
constexpr std::size_t kExactMaxStates = 2;
constexpr std::size_t kDetectorDfas = 200;
constexpr std::size_t kMmInstances = 100;
constexpr double kHierarchySeconds = 1.0;
constexpr double kEquivSeconds = 120.0;
constexpr double kGallerySeconds = 1.0;
constexpr double kFixtureSeconds = 1.0;
constexpr double kComplexityN4Seconds = 10.0;
constexpr double kComplexityMaxSlope = 8.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string failure;

    void require(bool ok, const std::string& what) {
        if (ok || !pass) {
            pass = pass && ok;
            return;
        }
        pass = false;
        failure = what;
    }
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << o.detail;
    if (!o.pass) std::cout << "; first failure: " << o.failure;
    std::cout << ")" << std::endl;
    if (!o.pass) ++failures;
}

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.failure = std::string("exception: ") + e.what();
    }
    report(id, name, o);
}

std::string fmt(double x, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

// ---- criterion 1

Outcome hierarchy() {
    Outcome o;
    const auto t0 = Clock::now();
    for (std::size_t k = 2; k <= 6; ++k) {
        const std::string tag = "A_" + std::to_string(k);
        const DFA a = build_lk_dfa(k);
        o.require(a.size() == k, tag + " state count");
        o.require(minimize_dfa(a) == a, tag + " not a minimization fixed point");
        const auto below = detect_ck(a, k - 1);
        o.require(below && is_valid_ck(a, *below, k - 1), tag + " missing or invalid C_(k-1) witness");
        o.require(!detect_ck(a, k), tag + " has a C_k witness");
        o.require(!detect_f(a), tag + " has an F witness");
    }
    const double s = seconds_since(t0);
    o.require(s < kHierarchySeconds, "runtime " + fmt(s) + " s");
    o.detail = "k=2..6, " + fmt(s) + " s";
    return o;
}

// ---- criteria 2, 3, 4

struct EquivStats {
    std::size_t pairs = 0, equivalent = 0, span_runs = 0, max_i0 = 0;
    Outcome agree, span_bound, strategies;
};

template <class T>
bool oracle_says_equal(const real_t<T>& a, const real_t<T>& b) {
    if constexpr (scalar_traits<T>::exact)
        return a == b;
    else
        return std::abs(a - b) <= kFloatTol;
}

template <class T>
void check_pair(const testing::UnaryPair<T>& pair, std::uint64_t seed, EquivStats& st) {
    const std::string tag = std::string(scalar_traits<T>::exact ? "exact" : "float") + " seed " +
                            std::to_string(seed) + " (" + pair.label + ")";
    const CombinedSystem<T> sys = combine_unary(pair.a1, pair.a2);
    const std::size_t bound = sys.length_bound();

    EquivalenceOptions span_opt{Strategy::span_early_stop, kFloatTol, kFloatSpanTol};
    EquivalenceOptions full_opt{Strategy::full_bound, kFloatTol, kFloatSpanTol};
    const auto span = decide_equivalence_unary(pair.a1, pair.a2, span_opt);
    const auto full = decide_equivalence_unary(pair.a1, pair.a2, full_opt);

    // Independent oracle: every word probability recomputed from scratch.
    const auto t1 = oracle::probability_table(pair.a1, bound);
    const auto t2 = oracle::probability_table(pair.a2, bound);
    std::optional<std::size_t> first_diff;
    for (std::size_t m = 0; m <= bound; ++m)
        if (!oracle_says_equal<T>(t1[m].probability, t2[m].probability)) {
            first_diff = m;
            break;
        }
    const bool equal = !first_diff;
    ++st.pairs;
    if (equal) ++st.equivalent;

    st.agree.require(span.equivalent == equal, tag + ": span verdict disagrees with oracle");
    st.agree.require(full.equivalent == equal, tag + ": full verdict disagrees with oracle");
    if (!equal) {
        st.agree.require(full.witness && full.witness->length == *first_diff,
                         tag + ": full witness is not the first differing length");
        st.agree.require(span.witness && span.witness->length == *first_diff,
                         tag + ": span witness is not the first differing length");
    }

    st.strategies.require(span.equivalent == full.equivalent, tag + ": strategies disagree");
    st.strategies.require(span.checked_up_to <= full.checked_up_to, tag + ": span scanned more lengths");
    if (!equal)
        st.strategies.require(span.witness && full.witness && span.witness->length == full.witness->length,
                              tag + ": strategies report different witness lengths");

    ++st.span_runs;
    const std::size_t n = sys.n();
    const std::size_t cap = n * n * n * n;
    const auto closure = span_closure(sys, kFloatSpanTol);
    st.span_bound.require(closure.i0 <= cap, tag + ": closure dimension above n^4");
    if (span.stabilization_index) {
        st.span_bound.require(*span.stabilization_index <= cap, tag + ": stabilization index above n^4");
        st.span_bound.require(closure.i0 == *span.stabilization_index,
                         tag + ": closure and decision disagree on the stabilized dimension");
    }
    st.max_i0 = std::max(st.max_i0, closure.i0);
    TensorSquareSequence<T> seq(sys);
    for (std::size_t i = 0; i < closure.steps; ++i) seq.next();
    for (std::size_t i = 0; i < n; ++i)
        st.span_bound.require(closure.basis.contains(seq.next()),
                         tag + ": span grew " + std::to_string(i + 1) + " steps after stabilizing");
}

EquivStats equivalence_runs(double& elapsed) {
    EquivStats st;
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < kEquivPairsPerMode; ++seed)
        check_pair(testing::make_unary_pair<Complexd>(seed, kFloatMaxStates), seed, st);
    for (std::uint64_t seed = 0; seed < kEquivPairsPerMode; ++seed)
        check_pair(testing::make_unary_pair<GaussianRational>(seed, kExactMaxStates), seed, st);
    elapsed = seconds_since(t0);
    return st;
}

// ---- criterion 5

Outcome gallery_qfa() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto a = build_abstarb_qfa<GaussianRational>();
    const Rational one(1), zero(0);
    o.require(accept_probability(a, Word{}) == zero, "epsilon");
    std::size_t count = 0;
    for (std::size_t len = 1; len <= 8; ++len) {
        Word w(len, 0);
        while (true) {
            ++count;
            const Rational want = w.back() == 1 ? one : zero;
            o.require(accept_probability(a, w) == want, "word " + a.alphabet.format(w));
            std::size_t pos = len;
            while (pos > 0 && w[pos - 1] == 1) w[--pos] = 0;
            if (pos == 0) break;
            w[pos - 1] = 1;
        }
    }
    const double s = seconds_since(t0);
    o.require(count == 510, "word count " + std::to_string(count));
    o.require(s < kGallerySeconds, "runtime " + fmt(s) + " s");
    o.detail = std::to_string(count) + " words + epsilon, " + fmt(s) + " s";
    return o;
}

// ---- criterion 6

Outcome fixtures() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto m = classify(build_named_dfa("astar-bstar"), 3);
    o.require(m.has_f() && is_valid_f(m.minimal, *m.f), "M: F witness");
    o.require(m.minimal_k.infinite(), "M: minimalK");

    const auto g = classify(build_named_dfa("akv"), 3);
    const bool g_expected = g.f && g.minimal.alphabet.format(g.f->t) == "a a" && g.minimal.alphabet.format(g.f->z) == "b";
    o.require(g.f && (g_expected || is_valid_f(g.minimal, *g.f)), "G: F witness");

    const auto last_b = classify(build_named_dfa("abstarb"), 3);
    o.require(last_b.minimal_k == MinimalK{2}, "(a+b)*b: minimalK");

    const DFA md = minimize_dfa(build_named_dfa("astar-bstar"));
    const auto forbidden = detect_forbidden(md);
    o.require(forbidden && is_valid_forbidden(md, *forbidden), "M: forbidden construction");
    o.require(!forbidden || detect_ck(md, 1).has_value(), "M: forbidden without C_1");

    const double s = seconds_since(t0);
    o.require(s < kFixtureSeconds, "runtime " + fmt(s) + " s");
    o.detail = std::string("G witness ") + (g_expected ? "t=a a, z=b" : "alternative") + ", " + fmt(s) + " s";
    return o;
}

// ---- criterion 7

Outcome detectors() {
    Outcome o;
    std::size_t dfas = 0, witnesses = 0, infinite = 0;
    for (std::uint64_t seed = 0; dfas < kDetectorDfas; ++seed) {
        Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const DFA d = minimize_dfa(random_dfa(seed, 1 + rng.below(4), 2));
        ++dfas;
        const std::string tag = "dfa seed " + std::to_string(seed);
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto fast = detect_ck(d, k);
            const auto slow = oracle::brute_ck(d, k);
            o.require(fast == slow, tag + " k=" + std::to_string(k));
            if (slow) ++witnesses;
        }
        const bool inf = minimal_k(d).infinite();
        if (inf) ++infinite;
        o.require(detect_f(d).has_value() == inf, tag + ": F witness vs infinite minimal k");
    }
    o.detail = std::to_string(dfas) + " DFAs, " + std::to_string(witnesses) + " C_k witnesses, " +
               std::to_string(infinite) + " with infinite minimal k";
    return o;
}

// ---- criterion 8

template <class T>
void mm_instances(Outcome& o, std::uint64_t salt) {
    for (std::uint64_t seed = 0; seed < kMmInstances; ++seed) {
        Rng rng(seed + salt);
        const std::size_t n = 1 + rng.below(4), sigma = 1 + rng.below(3);
        const auto a = random_mmqfa<T>(seed + salt, n, sigma);
        for (std::size_t trial = 0; trial < 4; ++trial) {
            Word x(rng.below(7));
            for (auto& s : x) s = static_cast<Symbol>(rng.below(sigma));
            const auto r = mm_run(a, x);
            const real_t<T> total = r.accept + r.reject + r.residual;
            bool ok;
            if constexpr (scalar_traits<T>::exact)
                ok = total == Rational(1);
            else
                ok = std::abs(total - 1.0) <= kFloatTol;
            o.require(ok, std::string(scalar_traits<T>::exact ? "exact" : "float") + " seed " + std::to_string(seed));
        }
    }
}

Outcome mm_normalization() {
    Outcome o;
    mm_instances<GaussianRational>(o, 0);
    mm_instances<Complexd>(o, 100000);
    o.detail = std::to_string(kMmInstances) + " exact + " + std::to_string(kMmInstances) + " float MMQFAs, 4 words each";
    return o;
}

// ---- criterion 9

double time_full_bound(std::size_t n) {
    const auto a = random_qfa<Complexd>(900 + n, n, 2, 1);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 1) % n;
    const auto b = relabel_states(a, perm);
    const EquivalenceOptions opt{Strategy::full_bound, kFloatTol, kFloatSpanTol};
    std::size_t reps = 0;
    const auto t0 = Clock::now();
    do {
        const auto v = decide_equivalence_unary(a, b, opt);
        if (!v.equivalent) throw std::runtime_error("relabelled pair judged inequivalent at n=" + std::to_string(n));
        ++reps;
    } while (seconds_since(t0) < 0.2);
    return seconds_since(t0) / static_cast<double>(reps);
}

Outcome complexity() {
    Outcome o;
    std::vector<double> xs, ys;
    std::ostringstream times;
    for (std::size_t n : {2, 4, 6, 8}) {
        const double s = time_full_bound(n);
        if (n == 4) o.require(s < kComplexityN4Seconds, "n=4 took " + fmt(s) + " s");
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(s));
        times << " n=" << n << ":" << fmt(s) << "s";
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    o.require(slope < kComplexityMaxSlope, "log-log slope " + fmt(slope));
    o.detail = "full bound, k=2," + times.str() + ", slope " + fmt(slope);
    return o;
}

}  // namespace

int main() {
    run(1, "language hierarchy on A_k", hierarchy);

    double equiv_seconds = 0;
    EquivStats st;
    try {
        st = equivalence_runs(equiv_seconds);
    } catch (const std::exception& e) {
        st.agree.require(false, std::string("exception: ") + e.what());
    }
    st.agree.require(equiv_seconds < kEquivSeconds, "runtime " + fmt(equiv_seconds) + " s");
    st.agree.detail = std::to_string(st.pairs) + " pairs (" + std::to_string(st.equivalent) + " equivalent), " +
                      fmt(equiv_seconds) + " s";
    report(2, "unary equivalence matches the exhaustive oracle", st.agree);
    st.span_bound.detail = std::to_string(st.span_runs) + " span runs, largest stabilized dimension " +
                      std::to_string(st.max_i0);
    report(3, "span stabilizes within n^4 and stays closed", st.span_bound);
    st.strategies.detail = std::to_string(st.pairs) + " pairs";
    report(4, "full-bound and span strategies agree", st.strategies);

    run(5, "2-letter QFA accepts (a+b)*b exactly", gallery_qfa);
    run(6, "classification fixtures", fixtures);
    run(7, "detectors match brute force", detectors);
    run(8, "MM-1QFA probabilities sum to one", mm_normalization);
    run(9, "equivalence runtime grows polynomially", complexity);

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
