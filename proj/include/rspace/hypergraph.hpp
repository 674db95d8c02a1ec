#ifndef RSPACE_HYPERGRAPH_HPP
#define RSPACE_HYPERGRAPH_HPP

// Search for an s-coloring of a hypergraph's vertices with no monochromatic
// edge.  Colorings are ordered lexicographically with vertex 0 most
// significant; both modes report the first bad coloring in that order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "rspace/error.hpp"

namespace rspace {

struct Hypergraph {
    std::size_t vertices = 0;
    std::vector<std::vector<std::uint32_t>> edges;  // sorted vertex indices
};

enum class SearchMode { exhaustive, backtracking };

inline std::string_view to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "backtracking"; }

inline SearchMode parse_search_mode(std::string_view text) {
    if (text == "exhaustive") return SearchMode::exhaustive;
    if (text == "backtracking") return SearchMode::backtracking;
    throw invalid_argument_error("unknown search mode " + std::string(text));
}

inline constexpr double exhaustive_hard_ceiling = 33554432.0;  // 2^25 colorings

struct SearchLimits {
    double ceiling = exhaustive_hard_ceiling;  // exhaustive: colorings
    std::uint64_t node_budget = std::uint64_t{1} << 32;  // backtracking: nodes
    unsigned jobs = 1;
};

struct ColoringSearch {
    std::optional<std::vector<std::uint8_t>> bad;  // first coloring without a monochromatic edge
    std::uint64_t checked = 0;                     // colorings (exhaustive) or nodes (backtracking)
    bool budget_hit = false;
};

namespace detail {

inline double coloring_count(std::size_t vertices, unsigned s) {
    return std::pow(static_cast<double>(s), static_cast<double>(vertices));
}

/// First bad coloring with index in [lo, hi), or nullopt.
inline std::optional<std::uint64_t> scan_range(const std::vector<std::uint64_t>& edge_masks, std::size_t vertices,
                                               unsigned s, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return std::nullopt;
    std::vector<std::uint8_t> digit(vertices, 0);
    std::uint64_t rest = lo;
    for (std::size_t v = vertices; v-- > 0;) {
        digit[v] = static_cast<std::uint8_t>(rest % s);
        rest /= s;
    }
    std::vector<std::uint64_t> color_mask(s, 0);
    for (std::size_t v = 0; v < vertices; ++v) color_mask[digit[v]] |= std::uint64_t{1} << v;
    for (std::uint64_t index = lo; index < hi; ++index) {
        bool bad = true;
        for (auto e : edge_masks) {
            for (unsigned c = 0; c < s; ++c)
                if ((e & ~color_mask[c]) == 0) {
                    bad = false;
                    break;
                }
            if (!bad) break;
        }
        if (bad) return index;
        // Odometer step, last vertex least significant.
        for (std::size_t v = vertices; v-- > 0;) {
            color_mask[digit[v]] &= ~(std::uint64_t{1} << v);
            digit[v] = static_cast<std::uint8_t>(digit[v] + 1u == s ? 0u : digit[v] + 1u);
            color_mask[digit[v]] |= std::uint64_t{1} << v;
            if (digit[v] != 0) break;
        }
    }
    return std::nullopt;
}

inline std::vector<std::uint8_t> decode(std::uint64_t index, std::size_t vertices, unsigned s) {
    std::vector<std::uint8_t> digit(vertices, 0);
    for (std::size_t v = vertices; v-- > 0;) {
        digit[v] = static_cast<std::uint8_t>(index % s);
        index /= s;
    }
    return digit;
}

class Backtracker {
public:
    Backtracker(const Hypergraph& h, unsigned s, std::uint64_t budget)
        : h_(h), s_(s), budget_(budget), color_(h.vertices, 0), closing_(h.vertices) {
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            if (!h.edges[e].empty()) closing_[h.edges[e].back()].push_back(e);
    }

    ColoringSearch run() {
        ColoringSearch out;
        if (place(0, 0)) out.bad = color_;
        out.checked = nodes_;
        out.budget_hit = exhausted_;
        return out;
    }

private:
    bool place(std::size_t v, unsigned used) {
        if (v == h_.vertices) return true;
        const unsigned top = std::min(s_, used + 1);  // colors are interchangeable
        for (unsigned c = 0; c < top; ++c) {
            if (++nodes_ > budget_) {
                exhausted_ = true;
                return false;
            }
            color_[v] = static_cast<std::uint8_t>(c);
            bool ok = true;
            for (auto e : closing_[v]) {
                const auto& edge = h_.edges[e];
                if (std::all_of(edge.begin(), edge.end(), [&](std::uint32_t u) { return color_[u] == c; })) {
                    ok = false;
                    break;
                }
            }
            if (ok && place(v + 1, std::max(used, c + 1))) return true;
            if (exhausted_) return false;
        }
        return false;
    }

    const Hypergraph& h_;
    unsigned s_;
    std::uint64_t budget_;
    std::vector<std::uint8_t> color_;
    std::vector<std::vector<std::size_t>> closing_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace detail

/// Looks for an s-coloring with no monochromatic edge.
inline ColoringSearch find_bad_coloring(const Hypergraph& h, unsigned s, SearchMode mode, const SearchLimits& limits = {}) {
    if (s < 1) throw invalid_argument_error("at least one color is required");
    for (const auto& e : h.edges)
        for (auto v : e)
            if (v >= h.vertices) throw invalid_argument_error("edge refers to a missing vertex");
    if (mode == SearchMode::backtracking) return detail::Backtracker(h, s, limits.node_budget).run();

    const double total = detail::coloring_count(h.vertices, s);
    const double ceiling = std::min(limits.ceiling, exhaustive_hard_ceiling);
    if (total > ceiling)
        throw ceiling_exceeded_error("exhaustive coloring search (use backtracking mode)", total, ceiling);
    if (s == 1) {
        ColoringSearch single;
        single.checked = 1;
        if (h.edges.empty()) single.bad = std::vector<std::uint8_t>(h.vertices, 0);
        return single;
    }
    std::vector<std::uint64_t> masks;
    for (const auto& e : h.edges) {
        std::uint64_t m = 0;
        for (auto v : e) m |= std::uint64_t{1} << v;
        masks.push_back(m);
    }
    const auto count = static_cast<std::uint64_t>(total);
    const unsigned jobs = std::max(1u, std::min<unsigned>(limits.jobs, static_cast<unsigned>(std::min<std::uint64_t>(count, 64))));
    std::vector<std::optional<std::uint64_t>> first(jobs);
    if (jobs == 1) {
        first[0] = detail::scan_range(masks, h.vertices, s, 0, count);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&, j] {
                first[j] = detail::scan_range(masks, h.vertices, s, count * j / jobs, count * (j + 1) / jobs);
            });
        for (auto& t : pool) t.join();
    }
    ColoringSearch out;
    out.checked = count;
    for (const auto& f : first)
        if (f) {
            out.bad = detail::decode(*f, h.vertices, s);
            out.checked = *f + 1;
            break;
        }
    return out;
}

}  // namespace rspace

#endif
