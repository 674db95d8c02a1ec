#ifndef RSPACE_RAMSEY_HPP
#define RSPACE_RAMSEY_HPP

// Finite Ramsey witnesses as hypergraph coloring problems, the abstract
// Ramsey reduction through the Galvin dichotomy, and the encoding of dual
// (partition) colorings as classical ones.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/ellentuck.hpp"
#include "rspace/error.hpp"
#include "rspace/forcing.hpp"
#include "rspace/gf.hpp"
#include "rspace/hypergraph.hpp"
#include "rspace/matrix_space.hpp"
#include "rspace/partition_space.hpp"

namespace rspace {

/// A total s-coloring of an explicit domain of approximations.
template <RamseySpace S>
class Coloring {
public:
    using approx_type = typename S::approx_type;

    Coloring(std::vector<approx_type> domain, std::vector<unsigned> colors, unsigned s)
        : domain_(std::move(domain)), colors_(std::move(colors)), s_(s) {
        if (domain_.size() != colors_.size()) throw invalid_argument_error("coloring is not total on its domain");
        for (auto c : colors_)
            if (c >= s_) throw invalid_argument_error("color " + std::to_string(c) + " outside " + std::to_string(s_));
        std::vector<std::size_t> order(domain_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return domain_[x] < domain_[y]; });
        std::vector<approx_type> d;
        std::vector<unsigned> c;
        for (auto i : order) {
            if (!d.empty() && d.back() == domain_[i]) throw invalid_argument_error("coloring lists an item twice");
            d.push_back(domain_[i]);
            c.push_back(colors_[i]);
        }
        domain_ = std::move(d);
        colors_ = std::move(c);
    }

    /// Colors every item of `domain` with f.
    template <class F>
    static Coloring from_function(std::vector<approx_type> domain, unsigned s, F&& f) {
        std::vector<unsigned> colors;
        for (const auto& a : domain) colors.push_back(static_cast<unsigned>(f(a)));
        return Coloring(std::move(domain), std::move(colors), s);
    }

    unsigned colors() const noexcept { return s_; }
    const std::vector<approx_type>& domain() const noexcept { return domain_; }

    unsigned operator()(const approx_type& a) const {
        auto it = std::lower_bound(domain_.begin(), domain_.end(), a);
        if (it == domain_.end() || !(*it == a)) throw out_of_range_error("item outside the coloring's domain");
        return colors_[static_cast<std::size_t>(it - domain_.begin())];
    }

private:
    std::vector<approx_type> domain_;
    std::vector<unsigned> colors_;
    unsigned s_;
};

enum class WitnessOutcome { found, lower_bound, exhausted };

inline std::string_view to_string(WitnessOutcome o) {
    switch (o) {
        case WitnessOutcome::found: return "found";
        case WitnessOutcome::lower_bound: return "lower_bound";
        case WitnessOutcome::exhausted: return "exhausted";
    }
    return "?";
}

/// Found: `value` is the least size where every coloring has a monochromatic
/// configuration.  LowerBound: a bad coloring exists at size `value`, so the
/// answer exceeds it.  The attached bad coloring lives at size `bad_size`.
struct WitnessResult {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> instance;
    SearchMode mode = SearchMode::exhaustive;
    WitnessOutcome outcome = WitnessOutcome::exhausted;
    std::size_t value = 0;
    std::optional<std::size_t> bad_size;
    std::vector<std::string> bad_items;
    std::vector<std::uint8_t> bad_colors;
    std::uint64_t checked = 0;
    double seconds = 0;
    std::string diagnostic;

    std::string param(std::string_view key) const {
        for (const auto& [k, v] : instance)
            if (k == key) return v;
        return {};
    }
};

struct RamseyOptions {
    SearchMode mode = SearchMode::exhaustive;
    SearchLimits limits;
};

/// One size level: item names in canonical order and the configurations.
struct RamseyInstance {
    std::vector<std::string> items;
    Hypergraph graph;
};

namespace detail {

/// Iterates sizes first..bound; `build(m)` returns nullopt where no
/// configuration of the target shape exists yet.
template <class Build>
WitnessResult run_levels(WitnessResult result, std::size_t first, std::size_t bound, unsigned s,
                         const RamseyOptions& options, Build&& build) {
    const auto start = std::chrono::steady_clock::now();
    result.mode = options.mode;
    std::optional<std::size_t> last_tried;
    bool decided = false;
    for (std::size_t m = first; m <= bound && !decided; ++m) {
        std::optional<RamseyInstance> inst = build(m);
        if (!inst) continue;
        if (inst->graph.edges.empty()) continue;
        const auto search = find_bad_coloring(inst->graph, s, options.mode, options.limits);
        result.checked += search.checked;
        if (search.budget_hit) {
            result.outcome = WitnessOutcome::exhausted;
            result.value = m;
            result.diagnostic = "backtracking budget exhausted at size " + std::to_string(m);
            result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }
        last_tried = m;
        if (search.bad) {
            result.bad_size = m;
            result.bad_items = inst->items;
            result.bad_colors = *search.bad;
            continue;
        }
        result.outcome = WitnessOutcome::found;
        result.value = m;
        decided = true;
    }
    if (!decided) {
        if (result.bad_size && options.mode == SearchMode::backtracking) {
            result.outcome = WitnessOutcome::lower_bound;
            result.value = *result.bad_size;
        } else {
            result.outcome = WitnessOutcome::exhausted;
            result.value = bound;
            result.diagnostic = last_tried ? "no witness up to size " + std::to_string(bound)
                                           : "no configuration of the target shape up to size " + std::to_string(bound);
        }
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

template <class Item, class Contains>
RamseyInstance make_instance(const std::vector<Item>& vertices, const std::vector<Item>& targets, Contains&& contains,
                             const std::function<std::string(const Item&)>& name) {
    RamseyInstance inst;
    inst.graph.vertices = vertices.size();
    for (const auto& v : vertices) inst.items.push_back(name(v));
    for (const auto& t : targets) {
        std::vector<std::uint32_t> edge;
        for (std::uint32_t i = 0; i < vertices.size(); ++i)
            if (contains(vertices[i], t)) edge.push_back(i);
        inst.graph.edges.push_back(std::move(edge));
    }
    return inst;
}

template <RamseySpace S>
WitnessResult finite_search(const S& space, std::size_t k, std::size_t n, unsigned s, std::size_t bound,
                            const RamseyOptions& options, WitnessResult shell,
                            const std::function<std::string(const typename S::approx_type&, std::size_t)>& name) {
    using A = typename S::approx_type;
    if (k > n) throw invalid_argument_error("k must not exceed n");
    if (s < 1) throw invalid_argument_error("at least one color is required");
    const Stem<S> top(space, space.top());
    const auto levels = ar_levels(space, top.element(), n);
    std::vector<std::pair<std::size_t, A>> small, large;
    if (levels.size() > n) {
        for (const auto& a : levels[k]) small.emplace_back(depth(space, top, a), a);
        for (const auto& b : levels[n]) large.emplace_back(depth(space, top, b), b);
    }
    const std::size_t reach = std::min(bound, top.length());
    auto result = run_levels(std::move(shell), 0, reach, s, options, [&](std::size_t m) -> std::optional<RamseyInstance> {
        std::vector<A> vs, ts;
        for (const auto& [d, a] : small)
            if (d == m) vs.push_back(a);
        for (const auto& [d, b] : large)
            if (d == m) ts.push_back(b);
        if (ts.empty()) return std::nullopt;
        return make_instance<A>(vs, ts, [&](const A& a, const A& b) { return space.fin_leq(a, b); },
                                [&](const A& a) { return name(a, m); });
    });
    if (result.outcome == WitnessOutcome::exhausted && bound > top.length())
        result.diagnostic += "; truncation reaches depth " + std::to_string(top.length()) + " only";
    return result;
}

}  // namespace detail

/// Least m such that every s-coloring of AR_k^m(A) admits b in AR_n^m(A) with
/// AR_k^m(A,b) monochromatic, A the top element of the truncation.
template <RamseySpace S>
WitnessResult finite_ramsey_witness(const S& space, std::size_t k, std::size_t n, unsigned s, std::size_t bound,
                                    const RamseyOptions& options = {}) {
    WitnessResult shell;
    shell.kind = "finite";
    shell.instance = {{"space", std::string(space.name())}, {"k", std::to_string(k)}, {"n", std::to_string(n)},
                      {"s", std::to_string(s)}, {"bound", std::to_string(bound)}};
    if constexpr (std::is_same_v<S, EllentuckSpace>) shell.instance.insert(shell.instance.begin() + 1, {"ground", std::to_string(space.ground())});
    if constexpr (std::is_same_v<S, MatrixSpace>) {
        shell.instance.insert(shell.instance.begin() + 1, {"q", std::to_string(space.q())});
        shell.instance.insert(shell.instance.begin() + 2, {"cols", std::to_string(space.cols())});
    }
    if constexpr (std::is_same_v<S, PartitionSpace>) shell.instance.insert(shell.instance.begin() + 1, {"domain", std::to_string(space.domain())});
    return detail::finite_search(space, k, n, s, bound, options, std::move(shell),
                                 [&](const typename S::approx_type& a, std::size_t) { return space.serialize(a); });
}

/// Least M <= bound such that every s-coloring of M^[k] has a monochromatic
/// H^[k] with H in M^[n], computed through Ellentuck's space with k+1, n+1.
inline WitnessResult classical_ramsey_number(std::size_t k, std::size_t n, unsigned s, std::size_t bound,
                                             const RamseyOptions& options = {}) {
    if (k < 1) throw invalid_argument_error("k must be at least 1");
    if (bound + 1 > 64) throw invalid_argument_error("bound above 63 is not supported");
    const EllentuckSpace space(static_cast<std::uint32_t>(bound + 1));
    WitnessResult shell;
    shell.kind = "classical";
    shell.instance = {{"k", std::to_string(k)}, {"n", std::to_string(n)}, {"s", std::to_string(s)},
                      {"bound", std::to_string(bound)}};
    auto drop_top = [](const EllentuckApprox& a, std::size_t) {
        return to_string(EllentuckApprox(std::vector<std::uint32_t>(a.elements().begin(), a.elements().end() - 1)));
    };
    auto r = detail::finite_search(space, k + 1, n + 1, s, bound + 1, options, std::move(shell), drop_top);
    if (r.bad_size) *r.bad_size -= 1;
    if (r.outcome == WitnessOutcome::exhausted) {
        r.value = bound;
        r.diagnostic = r.bad_size ? "no witness up to " + std::to_string(bound) : "no n-set fits below " + std::to_string(bound);
    } else {
        r.value -= 1;
    }
    return r;
}

/// Graham-Leeb-Rothschild: least m such that every s-coloring of the k-dim
/// subspaces of GF(q)^m has an n-dim subspace whose k-dim subspaces share a color.
inline WitnessResult glr_witness(std::uint32_t q, std::size_t k, std::size_t n, unsigned s, std::size_t bound,
                                 const RamseyOptions& options = {}) {
    require_prime(q);
    if (k > n) throw invalid_argument_error("k must not exceed n");
    WitnessResult shell;
    shell.kind = "glr";
    shell.instance = {{"q", std::to_string(q)}, {"k", std::to_string(k)}, {"n", std::to_string(n)},
                      {"s", std::to_string(s)}, {"bound", std::to_string(bound)}};
    return detail::run_levels(std::move(shell), n, bound, s, options, [&](std::size_t m) -> std::optional<RamseyInstance> {
        const auto vs = enumerate_rre(k, m, q);
        const auto ts = enumerate_rre(n, m, q);
        return detail::make_instance<EchelonMatrix>(
            vs, ts, [](const EchelonMatrix& a, const EchelonMatrix& b) { return subspace_leq(a, b); },
            [](const EchelonMatrix& a) { return to_string(a); });
    });
}

/// Graham-Rothschild for parameter sets: least n such that every s-coloring
/// of (n)^k admits t in (n)^m with (t)^k monochromatic.
inline WitnessResult gr_paramset_witness(std::size_t k, std::size_t m, unsigned s, std::size_t bound,
                                         const RamseyOptions& options = {}) {
    if (k > m) throw invalid_argument_error("k must not exceed m");
    WitnessResult shell;
    shell.kind = "paramset";
    shell.instance = {{"k", std::to_string(k)}, {"m", std::to_string(m)}, {"s", std::to_string(s)},
                      {"bound", std::to_string(bound)}};
    return detail::run_levels(std::move(shell), m, bound, s, options, [&](std::size_t n) -> std::optional<RamseyInstance> {
        const auto vs = enumerate_partitions(n, k);
        const auto ts = enumerate_partitions(n, m);
        RamseyInstance inst;
        inst.graph.vertices = vs.size();
        for (const auto& v : vs) inst.items.push_back(to_string(v));
        for (const auto& t : ts) {
            std::vector<std::uint32_t> edge;
            for (const auto& c : coarsenings(t, k))
                edge.push_back(static_cast<std::uint32_t>(std::lower_bound(vs.begin(), vs.end(), c) - vs.begin()));
            std::sort(edge.begin(), edge.end());
            inst.graph.edges.push_back(std::move(edge));
        }
        return inst;
    });
}

/// Block minima of t with 0 removed.
inline EllentuckApprox dual_to_classical_encoding(const PartitionApprox& t) {
    std::vector<std::uint32_t> minima;
    for (const auto& block : t.blocks())
        if (block.front() != 0) minima.push_back(block.front());
    return EllentuckApprox(std::move(minima));
}

/// d(t) = c(encoding of t).
inline std::function<unsigned(const PartitionApprox&)> pull_back_coloring(std::function<unsigned(const EllentuckApprox&)> c) {
    return [c = std::move(c)](const PartitionApprox& t) { return c(dual_to_classical_encoding(t)); };
}

template <RamseySpace S>
struct AbsRamseyResult {
    std::optional<Stem<S>> stem;
    unsigned color = 0;
    std::vector<std::string> steps;  // one line per dichotomy applied
    std::string diagnostic;
};

/// B <= A with AR_k(B) monochromatic for c, one dichotomy per color class.
template <RamseySpace S>
AbsRamseyResult<S> abs_ramsey_reduce(const S& space, const Stem<S>& a_stem, std::size_t k,
                                     const std::function<unsigned(const typename S::approx_type&)>& c, unsigned s,
                                     const GalvinParams& params = {}) {
    if (s < 1) throw invalid_argument_error("at least one color is required");
    if (k < 1) throw invalid_argument_error("k must be at least 1");
    AbsRamseyResult<S> out;
    if (s == 1) {
        out.stem = a_stem;
        return out;
    }
    if (a_stem.length() < k) {
        out.diagnostic = "stem of length " + std::to_string(a_stem.length()) + " has no approximation of length " +
                         std::to_string(k);
        return out;
    }
    Stem<S> current = a_stem;
    for (unsigned lo = 0; lo + 1 < s; ++lo) {
        std::vector<typename S::approx_type> members;
        for (auto& a : ar_level(space, current.element(), k)) {
            const unsigned col = c(a);
            if (col >= s) throw invalid_argument_error("color outside range for " + space.serialize(a));
            if (col == lo) members.push_back(std::move(a));
        }
        const FrontFamily<S> f(space, std::move(members), k);
        const auto r = galvin_search(space, current, f, params);
        out.steps.push_back("color " + std::to_string(lo) + ": " + std::string(to_string(r.outcome)));
        if (r.outcome == Alternative::inconclusive) {
            out.diagnostic = "color " + std::to_string(lo) + ": " + r.diagnostic;
            return out;
        }
        current = *r.stem;
        if (r.outcome == Alternative::alt2) {
            out.stem = current;
            out.color = lo;
            return out;
        }
    }
    out.stem = current;
    out.color = s - 1;
    return out;
}

/// Structured text certificate; wall time is left out so reruns compare equal.
inline std::string ramsey_certificate(const WitnessResult& r) {
    std::ostringstream out;
    out << "certificate ramsey/" << r.kind << '\n';
    out << "instance";
    for (const auto& [k, v] : r.instance) out << ' ' << k << '=' << v;
    out << '\n';
    out << "mode " << to_string(r.mode) << '\n';
    out << "outcome " << to_string(r.outcome) << '\n';
    out << "value " << r.value << '\n';
    out << "checked " << r.checked << '\n';
    if (r.bad_size) {
        out << "bad_size " << *r.bad_size << '\n';
        for (std::size_t i = 0; i < r.bad_items.size(); ++i)
            out << "color " << r.bad_items[i] << ' ' << static_cast<unsigned>(r.bad_colors[i]) << '\n';
    }
    if (!r.diagnostic.empty()) out << "diagnostic " << r.diagnostic << '\n';
    return out.str();
}

}  // namespace rspace

#endif
