#ifndef RSPACE_TESTS_ORACLES_HPP
#define RSPACE_TESTS_ORACLES_HPP

// Brute-force checks of the two dichotomy alternatives on Ellentuck stems.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rspace/ellentuck.hpp"

namespace rspace::checks {

inline bool in_family(const std::vector<EllentuckApprox>& f, const std::vector<std::uint32_t>& xs) {
    return std::find(f.begin(), f.end(), EllentuckApprox(xs)) != f.end();
}

// Brute force over subsets of b: no subset of size <= L is a member.
inline bool oracle_alt1(const std::vector<EllentuckApprox>& f, std::size_t bound, const EllentuckApprox& b) {
    const auto& xs = b.elements();
    if (xs.size() < bound) return false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
        std::vector<std::uint32_t> sub;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask >> i & 1) sub.push_back(xs[i]);
        if (sub.size() <= bound && in_family(f, sub)) return false;
    }
    return true;
}

// Brute force: every L-subset of b (or b itself when shorter) has a prefix in F.
inline bool oracle_alt2(const std::vector<EllentuckApprox>& f, std::size_t bound, const EllentuckApprox& b) {
    const auto& xs = b.elements();
    const std::size_t want = std::min(bound, xs.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
        std::vector<std::uint32_t> sub;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask >> i & 1) sub.push_back(xs[i]);
        if (sub.size() != want) continue;
        bool met = false;
        for (std::size_t k = 0; k <= sub.size() && !met; ++k)
            met = in_family(f, std::vector<std::uint32_t>(sub.begin(), sub.begin() + static_cast<long>(k)));
        if (!met) return false;
    }
    return true;
}

}  // namespace rspace::checks

#endif
