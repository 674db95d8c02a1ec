#ifndef RSPACE_PARTITION_SPACE_HPP
#define RSPACE_PARTITION_SPACE_HPP

// The dual space of infinite partitions of N into min-ordered blocks, ordered
// by coarsening.  r_n(X) cuts the first n blocks at min(X_n).  A truncated
// element is a partition of {0, ..., domain-1}; its last approximation is
// the element itself (the next block minimum lies at or beyond the domain).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/ellentuck.hpp"
#include "rspace/error.hpp"

namespace rspace {

/// Partition of {0, ..., t-1}, stored as its restricted-growth labelling:
/// label[i] is the index of the block containing i, blocks ordered by minima.
class PartitionApprox {
public:
    PartitionApprox() = default;

    static PartitionApprox from_labels(std::vector<std::uint32_t> labels) {
        std::uint32_t next = 0;
        for (auto l : labels) {
            if (l > next) throw invalid_argument_error("labels are not a restricted growth string");
            if (l == next) ++next;
        }
        PartitionApprox p;
        p.labels_ = std::move(labels);
        p.blocks_ = next;
        return p;
    }

    static PartitionApprox from_blocks(const std::vector<std::vector<std::uint32_t>>& blocks) {
        std::size_t total = 0;
        for (const auto& b : blocks) total += b.size();
        std::vector<std::int64_t> label(total, -1);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (blocks[i].empty()) throw invalid_argument_error("empty block");
            for (auto x : blocks[i]) {
                if (x >= total || label[x] != -1) throw invalid_argument_error("blocks do not partition an initial segment");
                label[x] = static_cast<std::int64_t>(i);
            }
        }
        std::vector<std::uint32_t> labels(label.begin(), label.end());
        auto p = from_labels(std::move(labels));
        // from_labels accepts only min-ordered input, so block order is preserved.
        return p;
    }

    std::size_t domain() const noexcept { return labels_.size(); }
    std::size_t block_count() const noexcept { return blocks_; }
    const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

    std::vector<std::vector<std::uint32_t>> blocks() const {
        std::vector<std::vector<std::uint32_t>> out(blocks_);
        for (std::uint32_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
        return out;
    }

    /// Restriction to {0, ..., d-1}; still min-ordered.
    PartitionApprox restrict_to(std::size_t d) const {
        return from_labels(std::vector<std::uint32_t>(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(d)));
    }

    friend bool operator==(const PartitionApprox& a, const PartitionApprox& b) { return a.labels_ == b.labels_; }
    friend auto operator<=>(const PartitionApprox& a, const PartitionApprox& b) {
        if (a.labels_.size() != b.labels_.size()) return a.labels_.size() <=> b.labels_.size();
        return a.labels_ <=> b.labels_;
    }

private:
    std::vector<std::uint32_t> labels_;
    std::size_t blocks_ = 0;
};

inline std::string to_string(const PartitionApprox& p) {
    std::string out = "(";
    const auto blocks = p.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += ',';
        out += to_string(EllentuckApprox(blocks[i]));
    }
    return out + ")";
}

inline PartitionApprox parse_partition(std::string_view text) {
    if (text.empty() || text.front() != '(' || text.back() != ')')
        throw parse_error("partition must be parenthesized: \"" + std::string(text) + "\"");
    std::vector<std::vector<std::uint32_t>> blocks;
    std::size_t pos = 1;
    const std::size_t end = text.size() - 1;
    while (pos < end) {
        if (!blocks.empty()) {
            if (text[pos] != ',') throw parse_error("expected ',' between blocks in \"" + std::string(text) + "\"");
            ++pos;
        }
        blocks.push_back(detail::parse_braced_naturals(text.substr(0, end), pos));
        for (std::size_t i = 1; i < blocks.back().size(); ++i)
            if (blocks.back()[i - 1] >= blocks.back()[i]) throw parse_error("block not increasing in \"" + std::string(text) + "\"");
    }
    try {
        auto p = PartitionApprox::from_blocks(blocks);
        if (to_string(p) != text) throw parse_error("non-canonical partition text \"" + std::string(text) + "\"");
        return p;
    } catch (const invalid_argument_error& e) {
        throw parse_error(std::string(e.what()) + " in \"" + std::string(text) + "\"");
    }
}

/// Every block of y lies inside a block of x (same domain).
inline bool part_coarser(const PartitionApprox& x, const PartitionApprox& y) {
    if (x.domain() != y.domain()) throw invalid_argument_error("coarseness across different domains");
    // y-label -> x-label must be a function.
    std::vector<std::int64_t> image(y.block_count(), -1);
    for (std::size_t i = 0; i < y.domain(); ++i) {
        auto& slot = image[y.labels()[i]];
        if (slot == -1) slot = x.labels()[i];
        else if (slot != x.labels()[i]) return false;
    }
    return true;
}

namespace detail {

/// Visits every restricted growth string of length n with exactly k labels,
/// in lexicographic order.
template <class Visit>
void for_each_rgs(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n || (n > 0 && k == 0)) return;
    std::vector<std::uint32_t> s(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t used) -> void {
        if (n - i < k - used) return;  // not enough positions left to open new blocks
        if (i == n) {
            if (used == k) visit(s);
            return;
        }
        const std::uint32_t limit = std::min<std::uint32_t>(used, static_cast<std::uint32_t>(k) - 1);
        for (std::uint32_t c = 0; c <= limit; ++c) {
            s[i] = c;
            self(self, i + 1, used + (c == used ? 1u : 0u));
        }
    };
    rec(rec, 0, 0);
}

inline double stirling2_estimate(std::size_t n, std::size_t k) {
    std::vector<double> row(k + 1, 0.0);
    row[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) row[j] = static_cast<double>(j) * row[j] + row[j - 1];
        row[0] = 0.0;
    }
    return row[k];
}

}  // namespace detail

/// All min-ordered k-block partitions of {0, ..., n-1}: the set (n)^k.
inline std::vector<PartitionApprox> enumerate_partitions(std::size_t n, std::size_t k,
                                                         double ceiling = 1u << 22) {
    if (k > n) throw invalid_argument_error("more blocks than points");
    const double estimate = detail::stirling2_estimate(n, k);
    if (estimate > ceiling) throw ceiling_exceeded_error("partition enumeration", estimate, ceiling);
    std::vector<PartitionApprox> out;
    detail::for_each_rgs(n, k, [&](const std::vector<std::uint32_t>& s) { out.push_back(PartitionApprox::from_labels(s)); });
    return out;
}

/// All k-block partitions coarser than t: the set (t)^k.
inline std::vector<PartitionApprox> coarsenings(const PartitionApprox& t, std::size_t k) {
    if (k > t.block_count()) throw invalid_argument_error("more blocks requested than t has");
    std::vector<PartitionApprox> out;
    detail::for_each_rgs(t.block_count(), k, [&](const std::vector<std::uint32_t>& group) {
        std::vector<std::uint32_t> labels(t.domain());
        for (std::size_t i = 0; i < t.domain(); ++i) labels[i] = group[t.labels()[i]];
        out.push_back(PartitionApprox::from_labels(std::move(labels)));
    });
    std::sort(out.begin(), out.end());
    return out;
}

class PartitionSpace {
public:
    using approx_type = PartitionApprox;

    explicit PartitionSpace(std::size_t domain) : domain_(domain) {
        if (domain < 1) throw invalid_argument_error("partition domain must be at least 1");
        if (domain > 12) throw invalid_argument_error("partition domain above 12 is not supported");
    }

    std::size_t domain() const noexcept { return domain_; }
    double universe_estimate() const {
        double total = 0;
        for (std::size_t k = 1; k <= domain_; ++k) total += detail::stirling2_estimate(domain_, k);
        return total;
    }
    std::string_view name() const noexcept { return "partition"; }
    approx_type empty() const { return {}; }
    std::size_t length(const approx_type& a) const { return a.block_count(); }

    /// Blocks 0..n-1 intersected with {0, ..., min(X_n)-1}.
    approx_type cut(const approx_type& a, std::size_t n) const {
        if (n > a.block_count())
            throw out_of_range_error("block " + std::to_string(n) + " not materialized in " + to_string(a));
        if (n == a.block_count()) return a;
        const auto& l = a.labels();
        const auto first = std::find(l.begin(), l.end(), static_cast<std::uint32_t>(n));
        return a.restrict_to(static_cast<std::size_t>(first - l.begin()));
    }

    /// dom(s) <= dom(t) and s coarser than t restricted to dom(s).
    bool fin_leq(const approx_type& s, const approx_type& t) const {
        return s.domain() <= t.domain() && part_coarser(s, t.restrict_to(s.domain()));
    }

    std::vector<approx_type> fin_below(const approx_type& t) const {
        std::vector<approx_type> out;
        for (std::size_t d = 0; d <= t.domain(); ++d) {
            const auto r = t.restrict_to(d);
            for (std::size_t k = (d == 0 ? 0 : 1); k <= r.block_count(); ++k)
                for (auto& s : coarsenings(r, k)) out.push_back(std::move(s));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool leq(const approx_type& x, const approx_type& y) const { return part_coarser(x, y); }

    approx_type top() const {
        std::vector<std::uint32_t> labels(domain_);
        for (std::size_t i = 0; i < domain_; ++i) labels[i] = static_cast<std::uint32_t>(i);
        return approx_type::from_labels(std::move(labels));
    }

    bool is_element(const approx_type& a) const { return a.domain() == domain_; }

    std::vector<approx_type> reducts(const approx_type& a) const {
        std::vector<approx_type> out;
        for (std::size_t k = 1; k <= a.block_count(); ++k)
            for (auto& x : coarsenings(a, k)) out.push_back(std::move(x));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string serialize(const approx_type& a) const { return to_string(a); }
    approx_type parse(std::string_view text) const { return parse_partition(text); }

private:
    std::size_t domain_;
};

static_assert(RamseySpace<PartitionSpace>);

inline PartitionApprox part_rn(const PartitionSpace& space, const Stem<PartitionSpace>& stem, std::size_t n) {
    return approx(space, stem, n);
}

}  // namespace rspace

#endif
