#pragma once

// Seeded unary QFA pairs for differential equivalence testing. A third of the
// pairs are equivalent by construction (state relabelling, unreachable
// padding, window lifting), a third are near-misses that share a
// construction but differ in their accepting sets, and the rest are
// independent draws.

#include "mlqfa/gallery.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace testing {

template <class T>
struct UnaryPair {
    std::string label;
    mlqfa::MultiLetterQFA<T> a1;
    mlqfa::MultiLetterQFA<T> a2;
};

/// n1, n2 <= max_n and k <= 3. In exact mode the repeated window gets a
/// finite-order unitary so the oracle's per-word products stay small.
template <class T>
UnaryPair<T> make_unary_pair(std::uint64_t seed, std::size_t max_n) {
    using namespace mlqfa;
    Rng rng(seed * 7919 + 17);
    const auto family = scalar_traits<T>::exact ? UnitaryFamily::finite_order : UnitaryFamily::general;
    const std::size_t n1 = 1 + rng.below(max_n);
    const std::size_t k1 = 1 + rng.below(3);
    const auto base = random_qfa<T>(seed, n1, k1, 1, family);
    switch (seed % 3) {
        case 0: {  // equivalent rewrite
            auto other = base;
            std::string how;
            const std::size_t room = max_n - n1;
            const std::size_t pick = rng.below(3);
            if (pick == 1 && room > 0) {
                other = pad_unreachable(base, 1 + rng.below(room), seed + 1);
                how = "pad";
            } else if (pick == 2 && k1 < 3) {
                other = lift_window(base);
                how = "lift";
            } else {
                std::vector<std::size_t> perm(n1);
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                for (std::size_t i = n1; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
                other = relabel_states(base, perm);
                how = "relabel";
            }
            return {"equivalent/" + how, base, std::move(other)};
        }
        case 1: {  // same dynamics, different accepting set
            auto other = base;
            const std::size_t flip = rng.below(n1);
            auto& acc = other.accepting;
            if (auto it = std::find(acc.begin(), acc.end(), flip); it != acc.end())
                acc.erase(it);
            else
                acc.insert(std::upper_bound(acc.begin(), acc.end(), flip), flip);
            return {"accepting-flip", base, std::move(other)};
        }
        default: {
            const std::size_t n2 = 1 + rng.below(max_n);
            const std::size_t k2 = 1 + rng.below(3);
            return {"independent", base, random_qfa<T>(seed + 1000003, n2, k2, 1, family)};
        }
    }
}

}  // namespace testing
