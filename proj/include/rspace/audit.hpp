#ifndef RSPACE_AUDIT_HPP
#define RSPACE_AUDIT_HPP

// Exhaustive bounded audit of the six axioms on a truncated space.
//
// Every check quantifies over the truncated universe (all reducts of the
// space's top element) and over approximations a in AR(A) with |a| and
// depth_A(a) inside the bounds.  Verdicts are bounded-pass or counterexample;
// an axiom is never reported as holding outright.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/error.hpp"

namespace rspace {

enum class AxiomStatus { bounded_pass, counterexample, not_run };

inline std::string_view to_string(AxiomStatus s) {
    switch (s) {
        case AxiomStatus::bounded_pass: return "bounded-pass";
        case AxiomStatus::counterexample: return "counterexample";
        case AxiomStatus::not_run: return "not-run";
    }
    return "?";
}

struct AxiomVerdict {
    std::string axiom;
    AxiomStatus status = AxiomStatus::not_run;
    std::uint64_t instances = 0;
    std::string witness;  // replayable description of the first counterexample
};

struct AuditBounds {
    std::size_t max_depth = 4;
    std::size_t max_len = 2;
    bool check_a6 = true;
    double ceiling = std::ldexp(1.0, 20);  // A6 subset instances
    double universe_ceiling = 1u << 14;    // stems in the truncated universe
};

struct AxiomReport {
    std::string space;
    AuditBounds bounds;
    std::vector<AxiomVerdict> verdicts;
    std::uint64_t depth_bound_checked = 0;
    std::uint64_t depth_bound_violations = 0;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (v.status == AxiomStatus::counterexample) return false;
        return true;
    }

    const AxiomVerdict& verdict(std::string_view axiom) const {
        for (const auto& v : verdicts)
            if (v.axiom == axiom) return v;
        throw invalid_argument_error("no verdict for " + std::string(axiom));
    }
};

namespace detail {

class VerdictSink {
public:
    explicit VerdictSink(std::string axiom) { v_.axiom = std::move(axiom); }

    void check(bool ok, const std::string& witness) {
        ++v_.instances;
        if (!ok && v_.status != AxiomStatus::counterexample) {
            v_.status = AxiomStatus::counterexample;
            v_.witness = witness;
        }
    }
    bool failed() const { return v_.status == AxiomStatus::counterexample; }

    AxiomVerdict finish() {
        if (v_.status == AxiomStatus::not_run && v_.instances > 0) v_.status = AxiomStatus::bounded_pass;
        return v_;
    }

private:
    AxiomVerdict v_;
};

template <RamseySpace S>
double universe_estimate(const S& space) {
    if constexpr (requires { space.universe_estimate(); }) {
        return space.universe_estimate();
    } else {
        return static_cast<double>(space.reducts(space.top()).size());
    }
}

}  // namespace detail

template <RamseySpace S>
AxiomReport audit_axioms(const S& space, const AuditBounds& bounds = {}) {
    using A = typename S::approx_type;
    const double universe_size = detail::universe_estimate(space);
    if (universe_size > bounds.universe_ceiling)
        throw ceiling_exceeded_error("axiom audit universe", universe_size, bounds.universe_ceiling);

    const Stem<S> top(space, space.top());
    if (bounds.check_a6) {
        const double a6 = universe_size * std::ldexp(1.0, static_cast<int>(extensions(space, space.empty(), top).size()));
        if (a6 > bounds.ceiling) throw ceiling_exceeded_error("A6 audit", a6, bounds.ceiling);
    }
    const auto universe = reduct_stems(space, top);
    auto ser = [&](const A& a) { return space.serialize(a); };

    AxiomReport report;
    report.space = std::string(space.name());
    report.bounds = bounds;

    // A1: r_0(A) is the empty approximation.
    {
        detail::VerdictSink sink("A1");
        for (const auto& u : universe)
            sink.check(approx(space, u, 0) == space.empty(),
                       "r_0(" + ser(u.element()) + ") = " + ser(approx(space, u, 0)));
        report.verdicts.push_back(sink.finish());
    }

    // A2: distinct elements have distinct approximation sequences.
    {
        detail::VerdictSink sink("A2");
        std::map<std::vector<A>, A> seen;
        for (const auto& u : universe) {
            auto [it, fresh] = seen.emplace(u.chain(), u.element());
            sink.check(fresh || it->second == u.element(),
                       ser(u.element()) + " and " + ser(it->second) + " share every approximation");
        }
        report.verdicts.push_back(sink.finish());
    }

    // A3: r_n(A) = r_m(B) forces n = m and equal earlier approximations.
    {
        detail::VerdictSink sink("A3");
        std::map<A, std::pair<std::size_t, std::vector<A>>> seen;
        for (const auto& u : universe) {
            for (std::size_t n = 0; n <= u.length(); ++n) {
                std::vector<A> prefix(u.chain().begin(), u.chain().begin() + static_cast<std::ptrdiff_t>(n));
                auto [it, fresh] = seen.emplace(u.chain()[n], std::make_pair(n, prefix));
                sink.check(fresh || (it->second.first == n && it->second.second == prefix),
                           "r_" + std::to_string(n) + "(" + ser(u.element()) + ") = " + ser(u.chain()[n]) +
                               " also occurs as approximation " + std::to_string(it->second.first));
                sink.check(space.length(u.chain()[n]) == n,
                           "length of r_" + std::to_string(n) + "(" + ser(u.element()) + ") differs from " +
                               std::to_string(n));
            }
        }
        report.verdicts.push_back(sink.finish());
    }

    // A4: <=_fin is a quasi order with finite down-sets that recovers <=.
    std::set<A> all_approx;
    for (const auto& u : universe) all_approx.insert(u.chain().begin(), u.chain().end());
    {
        detail::VerdictSink sink("A4");
        for (const auto& a : all_approx) {
            sink.check(space.fin_leq(a, a), "not reflexive at " + ser(a));
            const auto below = space.fin_below(a);
            const std::set<A> below_set(below.begin(), below.end());
            sink.check(below_set.count(a) && below_set.count(space.empty()),
                       "fin_below(" + ser(a) + ") misses itself or the empty approximation");
            for (const auto& b : below) {
                sink.check(space.fin_leq(b, a), ser(b) + " listed below " + ser(a) + " but not <=_fin");
                for (const auto& c : space.fin_below(b))
                    sink.check(space.fin_leq(c, a), "transitivity fails: " + ser(c) + " <= " + ser(b) + " <= " + ser(a));
            }
            for (const auto& b : all_approx)
                if (space.fin_leq(b, a))
                    sink.check(below_set.count(b) > 0, ser(b) + " <=_fin " + ser(a) + " missing from fin_below");
        }
        for (const auto& u : universe)
            for (const auto& v : universe) {
                bool via_fin = true;
                for (std::size_t n = 0; n <= u.length() && via_fin; ++n) {
                    bool any = false;
                    for (std::size_t m = 0; m <= v.length() && !any; ++m) any = space.fin_leq(u.chain()[n], v.chain()[m]);
                    via_fin = any;
                }
                sink.check(space.leq(u.element(), v.element()) == via_fin,
                           "A4(i) disagrees on " + ser(u.element()) + " <= " + ser(v.element()));
            }
        report.verdicts.push_back(sink.finish());
    }

    // Depth, depth bound, A5, A6 over (A, a) pairs.
    detail::VerdictSink depth_sink("depth");
    detail::VerdictSink a5i("A5(i)");
    detail::VerdictSink a5ii("A5(ii)");
    detail::VerdictSink a6("A6");
    for (const auto& u : universe) {
        const auto levels = ar_levels(space, u.element(), bounds.max_len);
        for (const auto& level : levels) {
            for (const auto& a : level) {
                const std::size_t d = depth(space, u, a);
                const std::string where = "a=" + ser(a) + " A=" + ser(u.element());
                ++report.depth_bound_checked;
                if (space.length(a) > d) ++report.depth_bound_violations;
                depth_sink.check(space.length(a) <= d, "depth bound fails: " + where);
                depth_sink.check(space.fin_leq(a, u.chain()[d]) && (d == 0 || !space.fin_leq(a, u.chain()[d - 1])),
                                 "depth not minimal: " + where);
                if (d > bounds.max_depth) continue;

                const auto base = neighborhood_at(space, d, u);
                for (const auto& b : base)
                    a5i.check(in_ar(space, a, b), "[a,B] empty for B=" + ser(b.element()) + ", " + where);

                for (const auto& b : neighborhood(space, a, u)) {
                    bool found = false;
                    for (auto it = base.rbegin(); it != base.rend() && !found; ++it) {
                        if (it->length() < b.length()) continue;
                        bool inside = true;
                        for (const auto& c : neighborhood(space, a, it->element()))
                            if (!space.leq(c, b.element())) {
                                inside = false;
                                break;
                            }
                        found = inside;
                    }
                    a5ii.check(found, "no A' in [depth,A] with [a,A'] inside [a,B] for B=" + ser(b.element()) + ", " + where);
                }

                if (!bounds.check_a6) continue;
                const auto exts = extensions(space, a, u);
                if (exts.empty()) {
                    a6.check(true, "");  // r_{|a|+1}[a,A] is empty: every O is trivially homogeneous
                    continue;
                }
                if (exts.size() > 30) throw ceiling_exceeded_error("A6 audit", std::ldexp(1.0, static_cast<int>(exts.size())), bounds.ceiling);
                std::vector<std::uint64_t> masks;
                for (const auto& b : base) {
                    std::uint64_t mask = 0;
                    if (in_ar(space, a, b))
                        for (const auto& e : extensions(space, a, b))
                            mask |= std::uint64_t{1} << static_cast<std::size_t>(std::lower_bound(exts.begin(), exts.end(), e) - exts.begin());
                    if (mask) masks.push_back(mask);
                }
                const std::uint64_t subsets = std::uint64_t{1} << exts.size();
                for (std::uint64_t o = 0; o < subsets; ++o) {
                    bool ok = false;
                    for (auto m : masks)
                        if ((m & ~o) == 0 || (m & o) == 0) {
                            ok = true;
                            break;
                        }
                    a6.check(ok, "no homogeneous B for O-mask " + std::to_string(o) + ", " + where);
                }
            }
        }
    }
    report.verdicts.push_back(depth_sink.finish());
    report.verdicts.push_back(a5i.finish());
    report.verdicts.push_back(a5ii.finish());
    report.verdicts.push_back(a6.finish());
    return report;
}

inline std::string to_text(const AxiomReport& r) {
    std::ostringstream out;
    out << "audit " << r.space << " max_depth=" << r.bounds.max_depth << " max_len=" << r.bounds.max_len << '\n';
    for (const auto& v : r.verdicts) {
        out << v.axiom << ' ' << to_string(v.status) << " instances=" << v.instances;
        if (!v.witness.empty()) out << " witness: " << v.witness;
        out << '\n';
    }
    out << "depth_bound checked=" << r.depth_bound_checked << " violations=" << r.depth_bound_violations << '\n';
    return out.str();
}

}  // namespace rspace

#endif
