#ifndef RSPACE_VERIFY_HPP
#define RSPACE_VERIFY_HPP

// Independent replay of Ramsey witness certificates.  Instances are rebuilt
// from first principles (bitmask subsets, vector-set closures, recursive
// set partitions) and colorings are re-examined by a plain depth-first
// search that shares no code with the hypergraph solver.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/forcing.hpp"
#include "rspace/matrix_space.hpp"
#include "rspace/partition_space.hpp"
#include "rspace/ramsey.hpp"

namespace rspace {

namespace verify_detail {

using Key = std::vector<std::vector<std::uint32_t>>;

struct Instance {
    std::vector<Key> vertices;
    std::vector<std::vector<std::size_t>> edges;
};

struct Parsed {
    std::string kind;
    std::map<std::string, std::string> params;
    std::string outcome;
    std::optional<std::size_t> value, bad_size;
    std::vector<std::pair<std::string, unsigned>> colors;
};

inline std::optional<Parsed> parse(const std::string& text, std::string& why) {
    Parsed p;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto sp = line.find(' ');
            const std::string key = line.substr(0, sp);
            const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
            if (key == "certificate") {
                if (rest.rfind("ramsey/", 0) != 0) break;
                p.kind = rest.substr(7);
                header = true;
            } else if (key == "instance") {
                std::istringstream fields(rest);
                std::string f;
                while (fields >> f) {
                    const auto eq = f.find('=');
                    if (eq == std::string::npos) throw parse_error("bad instance field " + f);
                    p.params[f.substr(0, eq)] = f.substr(eq + 1);
                }
            } else if (key == "outcome") {
                p.outcome = rest;
            } else if (key == "value") {
                p.value = std::stoul(rest);
            } else if (key == "bad_size") {
                p.bad_size = std::stoul(rest);
            } else if (key == "color") {
                const auto last = rest.rfind(' ');
                if (last == std::string::npos) throw parse_error("bad color line");
                const std::string c = rest.substr(last + 1);
                if (c.empty() || c.find_first_not_of("0123456789") != std::string::npos) throw parse_error("bad color " + c);
                p.colors.emplace_back(rest.substr(0, last), static_cast<unsigned>(std::stoul(c)));
            }
        }
    } catch (const std::exception& e) {
        why = std::string("malformed certificate: ") + e.what();
        return std::nullopt;
    }
    if (!header) {
        why = "not a ramsey certificate";
        return std::nullopt;
    }
    if (!p.value) {
        why = "certificate has no value";
        return std::nullopt;
    }
    return p;
}

inline std::size_t param(const Parsed& p, const std::string& key) {
    auto it = p.params.find(key);
    if (it == p.params.end()) throw parse_error("instance lacks " + key);
    return std::stoul(it->second);
}

/// Naturals appearing in a text, in order; structure is checked by the caller.
inline std::vector<std::uint32_t> numbers(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::optional<std::uint32_t> cur;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            cur = (cur ? *cur * 10 : 0) + static_cast<std::uint32_t>(ch - '0');
        } else if (cur) {
            out.push_back(*cur);
            cur.reset();
        }
    }
    if (cur) out.push_back(*cur);
    return out;
}

inline std::vector<std::uint32_t> bits(std::uint64_t mask) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < 64; ++i)
        if (mask >> i & 1u) out.push_back(i);
    return out;
}

/// Subsets of [0, ground) of size r as sorted lists, lexicographic.
inline std::vector<std::vector<std::uint32_t>> subsets_of_size(std::uint32_t ground, std::size_t r) {
    std::vector<std::vector<std::uint32_t>> out;
    if (ground >= 63) throw invalid_argument_error("ground too large for the checker");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask)
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) == r) out.push_back(bits(mask));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool subset(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

inline Instance classical(std::size_t k, std::size_t n, std::uint32_t size) {
    Instance inst;
    for (auto& v : subsets_of_size(size, k)) inst.vertices.push_back({v});
    for (const auto& h : subsets_of_size(size, n)) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < inst.vertices.size(); ++i)
            if (subset(inst.vertices[i][0], h)) e.push_back(i);
        inst.edges.push_back(std::move(e));
    }
    return inst;
}

/// AR_i^m of Ellentuck's space: i-subsets of m containing m-1.
inline Instance ellentuck_finite(std::size_t k, std::size_t n, std::uint32_t m) {
    Instance inst;
    if (m == 0) return inst;
    auto with_top = [&](std::size_t i) {
        std::vector<std::vector<std::uint32_t>> out;
        for (auto& x : subsets_of_size(m, i))
            if (!x.empty() && x.back() == m - 1) out.push_back(std::move(x));
        return out;
    };
    for (auto& v : with_top(k)) inst.vertices.push_back({v});
    for (const auto& b : with_top(n)) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < inst.vertices.size(); ++i)
            if (subset(inst.vertices[i][0], b)) e.push_back(i);
        inst.edges.push_back(std::move(e));
    }
    return inst;
}

/// Vectors of GF(q)^m are integers in base q; coordinate i has weight q^i.
inline std::uint32_t add_vec(std::uint32_t x, std::uint32_t y, std::uint32_t q, std::size_t m) {
    std::uint32_t out = 0, place = 1;
    for (std::size_t i = 0; i < m; ++i, place *= q) out += ((x / place % q + y / place % q) % q) * place;
    return out;
}

inline std::uint32_t scale_vec(std::uint32_t x, std::uint32_t c, std::uint32_t q, std::size_t m) {
    std::uint32_t out = 0, place = 1;
    for (std::size_t i = 0; i < m; ++i, place *= q) out += (x / place % q * c % q) * place;
    return out;
}

inline std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& gens, std::uint32_t q, std::size_t m) {
    std::set<std::uint32_t> span{0};
    for (auto g : gens) {
        std::set<std::uint32_t> next;
        for (auto x : span)
            for (std::uint32_t c = 0; c < q; ++c) next.insert(add_vec(x, scale_vec(g, c, q, m), q, m));
        span = std::move(next);
    }
    return {span.begin(), span.end()};
}

inline std::vector<std::vector<std::uint32_t>> all_subspaces(std::uint32_t q, std::size_t m, std::size_t dim) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < m; ++i) count *= q;
    std::uint64_t target = 1, tuples = 1;
    for (std::size_t i = 0; i < dim; ++i) target *= q, tuples *= count;
    if (tuples > (std::uint64_t{1} << 22)) throw invalid_argument_error("subspace instance too large for the checker");
    std::set<std::vector<std::uint32_t>> found;
    std::vector<std::uint32_t> gens(dim, 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rest = t;
        for (std::size_t i = 0; i < dim; ++i, rest /= count) gens[i] = static_cast<std::uint32_t>(rest % count);
        auto span = closure(gens, q, m);
        if (span.size() == target) found.insert(std::move(span));
    }
    return {found.begin(), found.end()};
}

inline Instance glr(std::uint32_t q, std::size_t k, std::size_t n, std::size_t m) {
    Instance inst;
    for (auto& v : all_subspaces(q, m, k)) inst.vertices.push_back({v});
    for (const auto& w : all_subspaces(q, m, n)) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < inst.vertices.size(); ++i)
            if (subset(inst.vertices[i][0], w)) e.push_back(i);
        inst.edges.push_back(std::move(e));
    }
    return inst;
}

/// Set partitions of [0, n) as lists of blocks (blocks in order of minima).
inline void grow_partitions(std::uint32_t i, std::uint32_t n, Key& blocks, std::vector<Key>& out) {
    if (i == n) {
        out.push_back(blocks);
        return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b].push_back(i);
        grow_partitions(i + 1, n, blocks, out);
        blocks[b].pop_back();
    }
    blocks.push_back({i});
    grow_partitions(i + 1, n, blocks, out);
    blocks.pop_back();
}

inline std::vector<Key> partitions_with_blocks(std::uint32_t n, std::size_t k) {
    std::vector<Key> all, out;
    Key blocks;
    grow_partitions(0, n, blocks, all);
    for (auto& p : all)
        if (p.size() == k) out.push_back(std::move(p));
    return out;
}

/// x coarser than y: every block of y lies inside a block of x.
inline bool coarser(const Key& x, const Key& y) {
    for (const auto& b : y) {
        bool inside = false;
        for (const auto& c : x)
            if (subset(b, c)) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

inline Instance paramset(std::size_t k, std::size_t m, std::uint32_t n) {
    Instance inst;
    inst.vertices = partitions_with_blocks(n, k);
    for (const auto& t : partitions_with_blocks(n, m)) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < inst.vertices.size(); ++i)
            if (coarser(inst.vertices[i], t)) e.push_back(i);
        inst.edges.push_back(std::move(e));
    }
    return inst;
}

/// Keys named by certificate items.
inline std::optional<Key> item_key(const std::string& kind, const Parsed& p, const std::string& item) {
    if (kind == "classical" || kind == "finite-ellentuck") {
        if (item.size() < 2 || item.front() != '{' || item.back() != '}') return std::nullopt;
        auto xs = numbers(item);
        if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return std::nullopt;
        return Key{xs};
    }
    if (kind == "glr") {
        const auto q = static_cast<std::uint32_t>(param(p, "q"));
        if (item.rfind("q=" + std::to_string(q), 0) != 0) return std::nullopt;
        std::vector<std::string> rows;
        std::size_t pos = item.find(';');
        while (pos != std::string::npos) {
            const auto next = item.find(';', pos + 1);
            rows.push_back(item.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1));
            pos = next;
        }
        if (rows.empty()) return std::nullopt;
        const std::size_t m = rows[0].size();
        std::vector<std::uint32_t> gens;
        for (const auto& r : rows) {
            if (r.size() != m) return std::nullopt;
            std::uint32_t v = 0, place = 1;
            for (std::size_t c = 0; c < m; ++c, place *= q) {
                const auto d = static_cast<std::uint32_t>(r[c] - '0');
                if (d >= q) return std::nullopt;
                v += d * place;
            }
            gens.push_back(v);
        }
        auto span = closure(gens, q, m);
        return Key{span};
    }
    if (kind == "paramset") {
        Key blocks;
        std::size_t pos = 0;
        while ((pos = item.find('{', pos)) != std::string::npos) {
            const auto end = item.find('}', pos);
            if (end == std::string::npos) return std::nullopt;
            blocks.push_back(numbers(item.substr(pos, end - pos + 1)));
            pos = end + 1;
        }
        return blocks;
    }
    return std::nullopt;
}

/// True when some s-coloring leaves every edge non-monochromatic.
inline bool bad_coloring_exists(const Instance& inst, unsigned s) {
    const std::size_t v = inst.vertices.size();
    std::vector<std::vector<std::size_t>> finishing(v);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        if (inst.edges[e].empty()) continue;
        finishing[*std::max_element(inst.edges[e].begin(), inst.edges[e].end())].push_back(e);
    }
    std::vector<unsigned> color(v, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == v) return true;
        for (unsigned c = 0; c < s; ++c) {
            color[i] = c;
            bool fine = true;
            for (auto e : finishing[i]) {
                bool mono = true;
                for (auto u : inst.edges[e]) mono = mono && color[u] == c;
                if (mono) {
                    fine = false;
                    break;
                }
            }
            if (fine && go(i + 1)) return true;
        }
        return false;
    };
    for (const auto& e : inst.edges)
        if (e.empty()) return false;  // an empty configuration is monochromatic
    return go(0);
}

inline bool coloring_is_bad(const Instance& inst, const std::vector<unsigned>& color) {
    for (const auto& e : inst.edges) {
        if (e.empty()) return false;
        bool mono = true;
        for (auto u : e) mono = mono && color[u] == color[e.front()];
        if (mono) return false;
    }
    return true;
}

}  // namespace verify_detail

/// Replays a Ramsey certificate without the search engine.
inline ReplayResult verify_witness(const std::string& certificate) {
    using namespace verify_detail;
    std::string why;
    auto parsed = parse(certificate, why);
    if (!parsed) return {false, why};
    const Parsed& p = *parsed;
    try {
        std::string kind = p.kind;
        if (kind == "finite") {
            auto it = p.params.find("space");
            if (it == p.params.end() || it->second != "ellentuck")
                return {false, "the independent checker covers the ellentuck finite shape only"};
            kind = "finite-ellentuck";
        }
        const std::size_t s = param(p, "s");
        if (s < 1) return {false, "no colors"};
        auto build = [&](std::size_t size) -> Instance {
            if (kind == "classical") return classical(param(p, "k"), param(p, "n"), static_cast<std::uint32_t>(size));
            if (kind == "finite-ellentuck") {
                if (size > param(p, "ground")) throw invalid_argument_error("size beyond the ground set");
                return ellentuck_finite(param(p, "k"), param(p, "n"), static_cast<std::uint32_t>(size));
            }
            if (kind == "glr")
                return glr(static_cast<std::uint32_t>(param(p, "q")), param(p, "k"), param(p, "n"), size);
            if (kind == "paramset") return paramset(param(p, "k"), param(p, "m"), static_cast<std::uint32_t>(size));
            throw invalid_argument_error("unknown certificate kind " + p.kind);
        };

        // The attached bad coloring, if any, must be total and avoid every configuration.
        std::optional<std::size_t> bad_at;
        if (p.bad_size) {
            const Instance inst = build(*p.bad_size);
            if (inst.edges.empty()) return {false, "bad coloring at a size without configurations"};
            std::map<Key, std::size_t> index;
            for (std::size_t i = 0; i < inst.vertices.size(); ++i) index[inst.vertices[i]] = i;
            std::vector<unsigned> color(inst.vertices.size(), 0);
            std::vector<bool> seen(inst.vertices.size(), false);
            for (const auto& [item, c] : p.colors) {
                auto key = item_key(kind, p, item);
                if (!key) return {false, "unreadable item " + item};
                auto it = index.find(*key);
                if (it == index.end()) return {false, "item " + item + " is not in the domain"};
                if (seen[it->second]) return {false, "item " + item + " colored twice"};
                if (c >= s) return {false, "color out of range for " + item};
                seen[it->second] = true;
                color[it->second] = c;
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end()) return {false, "coloring is not total"};
            if (!coloring_is_bad(inst, color)) return {false, "coloring has a monochromatic configuration"};
            bad_at = *p.bad_size;
        } else if (!p.colors.empty()) {
            return {false, "colors listed without a size"};
        }

        const std::size_t value = *p.value;
        if (p.outcome == "found") {
            const Instance inst = build(value);
            if (inst.edges.empty()) return {false, "no configuration at the claimed size"};
            if (bad_coloring_exists(inst, static_cast<unsigned>(s))) return {false, "a bad coloring exists at the claimed size"};
            if (value > 0) {
                const Instance below = build(value - 1);
                if (!below.edges.empty() && bad_at != value - 1)
                    return {false, "minimality at size " + std::to_string(value - 1) + " is not certified"};
            }
            return {true, {}};
        }
        if (p.outcome == "lower_bound") {
            if (bad_at != value) return {false, "lower bound without a bad coloring at its size"};
            return {true, {}};
        }
        if (p.outcome == "exhausted") return {true, {}};
        return {false, "unknown outcome " + p.outcome};
    } catch (const std::exception& e) {
        return {false, std::string("replay failed: ") + e.what()};
    }
}

inline ReplayResult verify_witness(const WitnessResult& r) { return verify_witness(ramsey_certificate(r)); }

}  // namespace rspace

#endif
