#ifndef RSPACE_TESTS_FORCING_LAWS_HPP
#define RSPACE_TESTS_FORCING_LAWS_HPP

// Truncated checks of the forcing monotonicity and witness properties.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rspace/forcing.hpp"

namespace rspace::checks {

struct ForcingLawTally {
    std::uint64_t checked = 0;
    std::uint64_t rejects_seen = 0;
    std::uint64_t witnesses = 0;
    std::uint64_t violations = 0;
    std::string first;

    void fail(std::string what) {
        if (violations++ == 0) first = std::move(what);
    }
};

/// Checks one (B, a) pair.  `reducts` are the truncated elements below B.
template <RamseySpace S>
void check_forcing_laws(const S& space, ForcingEngine<S>& engine, const Stem<S>& b,
                  const std::vector<typename S::approx_type>& reducts, const typename S::approx_type& a,
                  ForcingLawTally& tally) {
    if (!in_ar(space, a, b)) return;
    ++tally.checked;
    const std::string where = space.serialize(b.element()) + " a=" + space.serialize(a);
    const bool acc = engine.accepts(b, a).is(Verdict::accepts);
    const bool rej = engine.rejects(b, a).is(Verdict::rejects);
    if (acc && rej) tally.fail("accepts and rejects at " + where);

    if (acc || rej)
        for (const auto& c : reducts) {
            if (!in_ar(space, a, c)) continue;
            if (acc && engine.accepts(c, a).is(Verdict::refuted))
                tally.fail("(1) reduct " + space.serialize(c) + " refutes acceptance at " + where);
            if (rej && engine.rejects(Stem<S>(space, c), a).is(Verdict::refuted))
                tally.fail("(2) reduct " + space.serialize(c) + " refutes rejection at " + where);
        }

    const auto exts = extensions(space, a, b);
    if (acc)
        for (const auto& e : exts)
            if (!engine.accepts(b, e).is(Verdict::accepts))
                tally.fail("(4) extension " + space.serialize(e) + " not accepted at " + where);

    if (rej && !exts.empty()) {
        ++tally.rejects_seen;
        const auto w = engine.reject_witness(b, a);
        if (!w) {
            tally.fail("(5) no witness at " + where);
            return;
        }
        const std::size_t d = depth(space, b, a);
        const bool placed = space.leq(w->element(), b.element()) && w->length() >= d &&
                            approx(space, *w, d) == approx(space, b, d) && in_ar(space, a, *w);
        const auto wexts = placed ? extensions(space, a, *w) : decltype(exts){};
        const bool avoids = std::none_of(wexts.begin(), wexts.end(), [&](const auto& e) {
            return engine.accepts(b, e).is(Verdict::accepts);
        });
        if (!placed || wexts.empty() || !avoids)
            tally.fail("(5) bad witness " + space.serialize(w->element()) + " at " + where);
        else
            ++tally.witnesses;
    }
}

}  // namespace rspace::checks

#endif
