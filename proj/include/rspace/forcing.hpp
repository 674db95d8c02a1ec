#ifndef RSPACE_FORCING_HPP
#define RSPACE_FORCING_HPP

// Combinatorial forcing on finite truncations: accepts / rejects / decides
// relative to a length-bounded front family, fusion of refining sequences,
// and the Galvin dichotomy search with replayable certificates.
//
// Truncated semantics.  A chain through a below B is a path a = b_0, b_1, ...
// where b_{i+1} is a one-step extension of b_i inside B.  A chain is
// satisfied once it meets F (prefixes of a count), refuted once it reaches
// the front bound L without meeting F, and exhausted when it stops inside
// the truncation before either happens.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/error.hpp"

namespace rspace {

/// A finite family F of approximations with a declared length bound L.
template <RamseySpace S>
class FrontFamily {
public:
    using approx_type = typename S::approx_type;

    FrontFamily(const S& space, std::vector<approx_type> members, std::size_t length_bound)
        : length_bound_(length_bound) {
        const Stem<S> top(space, space.top());
        for (const auto& m : members) {
            if (space.length(m) > length_bound)
                throw invalid_argument_error("member " + space.serialize(m) + " is longer than the bound " +
                                             std::to_string(length_bound));
            bool inside = false;
            for (const auto& r : top.chain())
                if (space.fin_leq(m, r)) {
                    inside = true;
                    break;
                }
            if (!inside) throw invalid_argument_error("member " + space.serialize(m) + " lies outside the truncation");
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        members_ = std::move(members);
    }

    /// Bound defaults to the longest member.
    FrontFamily(const S& space, std::vector<approx_type> members)
        : FrontFamily(space, members, max_length(space, members)) {}

    const std::vector<approx_type>& members() const noexcept { return members_; }
    std::size_t length_bound() const noexcept { return length_bound_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(const approx_type& a) const { return std::binary_search(members_.begin(), members_.end(), a); }

private:
    static std::size_t max_length(const S& space, const std::vector<approx_type>& members) {
        std::size_t l = 0;
        for (const auto& m : members) l = std::max(l, space.length(m));
        return l;
    }

    std::vector<approx_type> members_;
    std::size_t length_bound_ = 0;
};

enum class Verdict { accepts, rejects, refuted, undecided };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::accepts: return "accepts";
        case Verdict::rejects: return "rejects";
        case Verdict::refuted: return "refuted";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

/// `refuted` is the definite negation of the question asked: for accepts it
/// means some chain avoids F up to L, for rejects that some reduct accepts.
struct ForcingVerdict {
    Verdict verdict = Verdict::undecided;
    std::size_t horizon = 0;
    std::string diagnostic;

    bool is(Verdict v) const noexcept { return verdict == v; }
};

/// Memoized forcing queries for one (space, family, horizon).  Not thread safe;
/// use one engine per thread.
template <RamseySpace S>
class ForcingEngine {
public:
    using approx_type = typename S::approx_type;

    ForcingEngine(const S& space, const FrontFamily<S>& family, std::size_t horizon)
        : space_(space), family_(family), horizon_(horizon) {}

    const S& space() const noexcept { return space_; }
    const FrontFamily<S>& family() const noexcept { return family_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t limit() const noexcept { return std::min(family_.length_bound(), horizon_); }

    ForcingVerdict accepts(const Stem<S>& b, const approx_type& a) { return accepts(b.element(), a); }

    ForcingVerdict accepts(const approx_type& element, const approx_type& a) {
        precondition(element, a);
        auto key = std::make_pair(element, a);
        if (auto it = accept_memo_.find(key); it != accept_memo_.end()) return it->second;
        ForcingVerdict out{Verdict::accepts, horizon_, {}};
        bool hit = false;
        for (std::size_t i = 0; i <= space_.length(a) && !hit; ++i) hit = family_.contains(space_.cut(a, i));
        if (!hit) out = walk(element, a);
        accept_memo_.emplace(std::move(key), out);
        return out;
    }

    ForcingVerdict rejects(const Stem<S>& b, const approx_type& a) {
        precondition(b.element(), a);
        auto key = std::make_pair(b.element(), a);
        if (auto it = reject_memo_.find(key); it != reject_memo_.end()) return it->second;
        const std::size_t d = depth(space_, b, a);
        std::size_t adequate = 0;
        ForcingVerdict out{Verdict::undecided, horizon_,
                           "no reduct in [" + std::to_string(d) + ", B] carries a chain through " + space_.serialize(a) +
                               " up to length " + std::to_string(limit())};
        for (const auto& c : neighborhood(space_, approx(space_, b, d), b.element())) {
            if (!in_ar(space_, a, c)) continue;
            const auto v = accepts(c, a);
            if (v.is(Verdict::accepts)) {
                out = {Verdict::refuted, horizon_, space_.serialize(c) + " accepts " + space_.serialize(a)};
                adequate = 0;
                break;
            }
            if (v.is(Verdict::refuted)) ++adequate;
        }
        if (adequate > 0) out = {Verdict::rejects, horizon_, {}};
        reject_memo_.emplace(std::move(key), out);
        return out;
    }

    ForcingVerdict decide(const Stem<S>& b, const approx_type& a) {
        auto va = accepts(b, a);
        if (va.is(Verdict::accepts)) return va;
        auto vr = rejects(b, a);
        if (vr.is(Verdict::rejects)) return vr;
        return {Verdict::undecided, horizon_,
                vr.is(Verdict::refuted) ? "B does not accept but " + vr.diagnostic : va.diagnostic};
    }

    /// Some B' in [depth_B(a), B] deciding a (largest length, then canonical order).
    std::optional<Stem<S>> decider(const Stem<S>& b, const approx_type& a) {
        precondition(b.element(), a);
        const std::size_t d = depth(space_, b, a);
        auto hood = by_length_desc(neighborhood(space_, approx(space_, b, d), b.element()));
        for (const auto& c : hood) {
            if (!in_ar(space_, a, c)) continue;
            const Stem<S> cs(space_, c);
            const auto v = decide(cs, a);
            if (v.is(Verdict::accepts) || v.is(Verdict::rejects)) return cs;
        }
        return std::nullopt;
    }

    /// B' in [depth_B(a), B] none of whose one-step extensions of a is accepted
    /// by B.  Nonempty extension sets are preferred; the largest such B' is
    /// returned.  nullopt if none exists in the truncation.
    std::optional<Stem<S>> reject_witness(const Stem<S>& b, const approx_type& a) {
        precondition(b.element(), a);
        const std::size_t d = depth(space_, b, a);
        auto accepted = [&](const approx_type& e) { return accepts(b.element(), e).is(Verdict::accepts); };
        if constexpr (requires { space_.refine_avoiding(b.element(), d, a, accepted); }) {
            if (auto c = space_.refine_avoiding(b.element(), d, a, accepted)) return Stem<S>(space_, std::move(*c));
            return std::nullopt;
        } else {
            std::optional<Stem<S>> vacuous;
            for (const auto& c : by_length_desc(neighborhood(space_, approx(space_, b, d), b.element()))) {
                if (!in_ar(space_, a, c)) continue;
                const auto exts = extensions(space_, a, c);
                if (std::none_of(exts.begin(), exts.end(), accepted)) {
                    if (!exts.empty()) return Stem<S>(space_, c);
                    if (!vacuous) vacuous.emplace(space_, c);
                }
            }
            return vacuous;
        }
    }

    std::size_t memo_size() const noexcept { return accept_memo_.size() + reject_memo_.size(); }

private:
    void precondition(const approx_type& element, const approx_type& a) const {
        if (horizon_ < space_.length(a))
            throw invalid_argument_error("horizon " + std::to_string(horizon_) + " below |a| = " +
                                         std::to_string(space_.length(a)));
        if (!in_ar(space_, a, element))
            throw empty_neighborhood_error("empty neighborhood [" + space_.serialize(a) + ", " +
                                           space_.serialize(element) + "]");
    }

    ForcingVerdict walk(const approx_type& element, const approx_type& b) {
        if (family_.contains(b)) return {Verdict::accepts, horizon_, {}};
        if (space_.length(b) >= limit()) {
            if (family_.length_bound() <= horizon_)
                return {Verdict::refuted, horizon_,
                        "chain " + space_.serialize(b) + " reaches length " + std::to_string(limit()) +
                            " without meeting F"};
            return {Verdict::undecided, horizon_, "horizon reached at " + space_.serialize(b)};
        }
        const auto exts = extensions(space_, b, element);
        if (exts.empty()) return {Verdict::undecided, horizon_, "chain exhausted at " + space_.serialize(b)};
        std::optional<ForcingVerdict> pending;
        for (const auto& e : exts) {
            auto v = walk(element, e);
            if (v.is(Verdict::refuted)) return v;
            if (v.is(Verdict::undecided) && !pending) pending = std::move(v);
        }
        if (pending) return *pending;
        return {Verdict::accepts, horizon_, {}};
    }

    std::vector<approx_type> by_length_desc(std::vector<approx_type> xs) const {
        std::stable_sort(xs.begin(), xs.end(), [&](const approx_type& x, const approx_type& y) {
            return space_.length(x) > space_.length(y);
        });
        return xs;
    }

    const S& space_;
    const FrontFamily<S>& family_;
    std::size_t horizon_;
    std::map<std::pair<approx_type, approx_type>, ForcingVerdict> accept_memo_;
    std::map<std::pair<approx_type, approx_type>, ForcingVerdict> reject_memo_;
};

template <RamseySpace S>
ForcingVerdict accepts(const S& space, const Stem<S>& b, const typename S::approx_type& a, const FrontFamily<S>& f,
                       std::size_t horizon) {
    return ForcingEngine<S>(space, f, horizon).accepts(b, a);
}

template <RamseySpace S>
ForcingVerdict rejects(const S& space, const Stem<S>& b, const typename S::approx_type& a, const FrontFamily<S>& f,
                       std::size_t horizon) {
    return ForcingEngine<S>(space, f, horizon).rejects(b, a);
}

template <RamseySpace S>
ForcingVerdict decide(const S& space, const Stem<S>& b, const typename S::approx_type& a, const FrontFamily<S>& f,
                      std::size_t horizon) {
    return ForcingEngine<S>(space, f, horizon).decide(b, a);
}

/// Diagonal stem of a refining sequence B_n in [n-1, B_{n-1}], n = 1..levels.
/// `step(n, previous)` returns B_n or nullopt.  r_n of the result equals r_n(B_n).
template <RamseySpace S, class Step>
Stem<S> fusion(const S& space, const Stem<S>& b0, Step&& step, std::size_t levels) {
    Stem<S> current = b0;
    for (std::size_t n = 1; n <= levels; ++n) {
        std::optional<Stem<S>> next = step(n, current);
        if (!next) throw fusion_exhausted_error(n);
        if (!space.leq(next->element(), current.element()) || next->length() < n - 1 ||
            approx(space, *next, n - 1) != approx(space, current, n - 1))
            throw invalid_argument_error("fusion step " + std::to_string(n) + " left [" + std::to_string(n - 1) +
                                         ", B]");
        if (next->length() < n) throw fusion_exhausted_error(n);
        current = std::move(*next);
    }
    return current;
}

enum class Alternative { alt1, alt2, inconclusive };

inline std::string_view to_string(Alternative a) {
    switch (a) {
        case Alternative::alt1: return "alt1";
        case Alternative::alt2: return "alt2";
        case Alternative::inconclusive: return "inconclusive";
    }
    return "?";
}

struct GalvinParams {
    std::size_t horizon = 8;
    double ceiling = std::ldexp(1.0, 16);  // reduct enumeration
};

template <RamseySpace S>
struct DichotomyResult {
    using approx_type = typename S::approx_type;

    Alternative outcome = Alternative::inconclusive;
    std::optional<Stem<S>> stem;
    std::vector<std::pair<approx_type, std::size_t>> hits;  // Alt2: chain prefix in F and its length
    std::string diagnostic;
};

namespace detail {

/// Leaves of the accepting tree below B from the empty approximation.
template <RamseySpace S>
void collect_hits(const S& space, const FrontFamily<S>& f, const typename S::approx_type& element,
                  const typename S::approx_type& b, std::vector<std::pair<typename S::approx_type, std::size_t>>& out) {
    if (f.contains(b)) {
        out.emplace_back(b, space.length(b));
        return;
    }
    for (const auto& e : extensions(space, b, element)) collect_hits(space, f, element, e, out);
}

template <RamseySpace S>
std::optional<typename S::approx_type> refine_generic(const S& space, const typename S::approx_type& element,
                                                      std::size_t d, const typename S::approx_type& a,
                                                      const std::function<bool(const typename S::approx_type&)>& bad) {
    auto hood = neighborhood(space, space.cut(element, d), element);
    std::stable_sort(hood.begin(), hood.end(), [&](const auto& x, const auto& y) {
        return space.length(x) > space.length(y);
    });
    for (auto& c : hood) {
        if (!in_ar(space, a, c)) continue;
        const auto exts = extensions(space, a, c);
        if (std::none_of(exts.begin(), exts.end(), bad)) return std::move(c);
    }
    return std::nullopt;
}

}  // namespace detail

/// Galvin dichotomy on a truncation: B <= A with AR(B) and F disjoint (Alt1),
/// or B <= A every maximal chain of which meets F (Alt2).
template <RamseySpace S>
DichotomyResult<S> galvin_search(const S& space, const Stem<S>& a_stem, const FrontFamily<S>& f,
                                 const GalvinParams& params = {}) {
    using A = typename S::approx_type;
    const std::size_t bound = f.length_bound();
    if (bound > params.horizon)
        throw invalid_argument_error("front bound " + std::to_string(bound) + " exceeds horizon " +
                                     std::to_string(params.horizon));
    constexpr bool has_refine = requires(const A& x, std::function<bool(const A&)> g) {
        space.refine_avoiding(x, std::size_t{0}, x, g);
    };
    double estimate = 0;
    if constexpr (requires { space.universe_estimate(); }) estimate = space.universe_estimate();
    if (!has_refine && estimate > params.ceiling)
        throw ceiling_exceeded_error("galvin reduct enumeration", estimate, params.ceiling);

    ForcingEngine<S> engine(space, f, params.horizon);
    DichotomyResult<S> result;
    auto alt2 = [&](const Stem<S>& b) {
        result.outcome = Alternative::alt2;
        result.stem = b;
        detail::collect_hits(space, f, b.element(), space.empty(), result.hits);
        return result;
    };
    if (engine.accepts(a_stem, space.empty()).is(Verdict::accepts)) return alt2(a_stem);

    // Rejecting construction: level by level, in order of depth, shrink C so
    // that no one-step extension of a is accepted by C.
    A c = a_stem.element();
    std::string blocking;
    for (std::size_t n = 0; n < bound && blocking.empty(); ++n) {
        const Stem<S> snapshot(space, c);
        std::vector<std::pair<std::size_t, A>> level;
        for (auto& x : ar_level(space, c, n)) level.emplace_back(depth(space, snapshot, x), std::move(x));
        std::sort(level.begin(), level.end());
        for (const auto& [d0, x] : level) {
            if (!in_ar(space, x, c)) continue;
            const Stem<S> cs(space, c);
            const std::size_t d = depth(space, cs, x);
            std::function<bool(const A&)> bad = [&](const A& e) { return engine.accepts(c, e).is(Verdict::accepts); };
            const auto exts = extensions(space, x, c);
            if (std::none_of(exts.begin(), exts.end(), bad)) continue;
            std::optional<A> next;
            if constexpr (has_refine) {
                next = space.refine_avoiding(c, d, x, bad);
            } else {
                next = detail::refine_generic(space, c, d, x, bad);
            }
            if (!next) {
                blocking = space.serialize(x);
                break;
            }
            c = std::move(*next);
        }
    }

    const Stem<S> candidate(space, c);
    if (blocking.empty()) {
        bool clean = candidate.length() >= bound;
        std::string offender;
        if (!clean) {
            offender = "stem " + space.serialize(c) + " is shorter than the front bound " + std::to_string(bound);
        } else {
            for (const auto& m : f.members())
                if (in_ar(space, m, c)) {
                    clean = false;
                    offender = "approximation " + space.serialize(m) + " of " + space.serialize(c) + " lies in F";
                    break;
                }
        }
        if (clean) {
            result.outcome = Alternative::alt1;
            result.stem = candidate;
            return result;
        }
        blocking = offender;
    } else {
        blocking = "no reduct avoids accepted extensions of " + blocking;
    }

    // Fall back to an accepting reduct of A.
    if (estimate > params.ceiling) {
        result.diagnostic = blocking + "; accepting-reduct search skipped (estimate " + std::to_string(estimate) +
                            " above ceiling)";
        return result;
    }
    auto reducts = space.reducts(a_stem.element());
    std::stable_sort(reducts.begin(), reducts.end(),
                     [&](const A& x, const A& y) { return space.length(x) > space.length(y); });
    for (const auto& r : reducts)
        if (engine.accepts(r, space.empty()).is(Verdict::accepts)) return alt2(Stem<S>(space, r));
    result.diagnostic = blocking + "; no reduct accepts the empty approximation";
    return result;
}

/// Structured text certificate for a dichotomy result.
template <RamseySpace S>
std::string galvin_certificate(const S& space, const FrontFamily<S>& f, const DichotomyResult<S>& r,
                               const std::string& space_descriptor) {
    std::ostringstream out;
    out << "certificate galvin\n";
    out << "space " << space_descriptor << '\n';
    out << "family_bound " << f.length_bound() << '\n';
    out << "family_size " << f.size() << '\n';
    out << "outcome " << to_string(r.outcome) << '\n';
    if (r.stem) out << "stem " << space.serialize(r.stem->element()) << '\n';
    for (const auto& [c, n] : r.hits) out << "chain " << space.serialize(c) << ' ' << n << '\n';
    if (!r.diagnostic.empty()) out << "diagnostic " << r.diagnostic << '\n';
    return out.str();
}

struct ReplayResult {
    bool ok = false;
    std::string reason;
};

namespace detail {

template <RamseySpace S>
bool covers(const S& space, const typename S::approx_type& element, const std::set<typename S::approx_type>& hits,
            const typename S::approx_type& b) {
    if (hits.count(b)) return true;
    const auto exts = extensions(space, b, element);
    if (exts.empty()) return false;
    for (const auto& e : exts)
        if (!covers(space, element, hits, e)) return false;
    return true;
}

}  // namespace detail

/// Alt1 property of B checked from scratch: long enough and AR(B) avoids F.
template <RamseySpace S>
ReplayResult check_alt1(const S& space, const FrontFamily<S>& f, const typename S::approx_type& b) {
    if (space.length(b) < f.length_bound()) return {false, "stem shorter than the front bound"};
    for (const auto& m : f.members())
        if (in_ar(space, m, b)) return {false, space.serialize(m) + " is an approximation of the stem"};
    return {true, {}};
}

/// Alt2 property of B: every maximal chain from the empty approximation meets F.
template <RamseySpace S>
ReplayResult check_alt2(const S& space, const FrontFamily<S>& f, const typename S::approx_type& b) {
    std::set<typename S::approx_type> hits(f.members().begin(), f.members().end());
    if (!detail::covers(space, b, hits, space.empty())) return {false, "some maximal chain avoids F"};
    return {true, {}};
}

/// Replays a certificate against A and F without the search engine.
template <RamseySpace S>
ReplayResult replay_galvin_certificate(const S& space, const Stem<S>& a_stem, const FrontFamily<S>& f,
                                       const std::string& text) {
    using A = typename S::approx_type;
    std::istringstream in(text);
    std::string line, outcome;
    std::optional<A> stem;
    std::vector<std::pair<A, std::size_t>> hits;
    std::size_t bound = 0;
    bool header = false, has_bound = false;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto sp = line.find(' ');
            const std::string key = line.substr(0, sp);
            const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
            if (key == "certificate") {
                header = rest == "galvin";
            } else if (key == "outcome") {
                outcome = rest;
            } else if (key == "family_bound") {
                bound = std::stoul(rest);
                has_bound = true;
            } else if (key == "stem") {
                stem = space.parse(rest);
            } else if (key == "chain") {
                const auto last = rest.rfind(' ');
                if (last == std::string::npos) return {false, "malformed chain line"};
                hits.emplace_back(space.parse(rest.substr(0, last)), std::stoul(rest.substr(last + 1)));
            }
        }
    } catch (const std::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
    if (!header) return {false, "not a galvin certificate"};
    if (!has_bound || bound != f.length_bound()) return {false, "front bound mismatch"};
    if (!stem) return {false, "no stem"};
    if (!space.is_element(*stem) || !space.leq(*stem, a_stem.element())) return {false, "stem is not below A"};
    if (outcome == "alt1") {
        if (!hits.empty()) return {false, "alt1 certificate lists chains"};
        return check_alt1(space, f, *stem);
    }
    if (outcome == "alt2") {
        std::set<A> hit_set;
        for (const auto& [c, n] : hits) {
            if (n > space.length(c) || !f.contains(space.cut(c, n))) return {false, "chain " + space.serialize(c) + " misses F"};
            if (!in_ar(space, c, *stem)) return {false, "chain " + space.serialize(c) + " is not below the stem"};
            hit_set.insert(space.cut(c, n));
        }
        if (!detail::covers(space, *stem, hit_set, space.empty())) return {false, "listed chains do not cover the stem"};
        return {true, {}};
    }
    return {false, "outcome " + outcome + " carries no proof"};
}

}  // namespace rspace

#endif
