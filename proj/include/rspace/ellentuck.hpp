#ifndef RSPACE_ELLENTUCK_HPP
#define RSPACE_ELLENTUCK_HPP

// Ellentuck's space: infinite sets of naturals under inclusion, r_n(A) the
// first n elements.  Truncated to subsets of {0, ..., ground-1}.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/error.hpp"

namespace rspace {

/// Strictly increasing finite set of naturals.
class EllentuckApprox {
public:
    EllentuckApprox() = default;
    EllentuckApprox(std::initializer_list<std::uint32_t> xs) : EllentuckApprox(std::vector<std::uint32_t>(xs)) {}
    explicit EllentuckApprox(std::vector<std::uint32_t> xs) : elements_(std::move(xs)) {
        for (std::size_t i = 1; i < elements_.size(); ++i)
            if (elements_[i - 1] >= elements_[i]) throw invalid_argument_error("set elements must strictly increase");
    }

    const std::vector<std::uint32_t>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    std::uint32_t max() const { return elements_.back(); }

    bool contains(std::uint32_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }
    bool subset_of(const EllentuckApprox& other) const {
        return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
    }

    friend bool operator==(const EllentuckApprox&, const EllentuckApprox&) = default;
    friend auto operator<=>(const EllentuckApprox&, const EllentuckApprox&) = default;

private:
    std::vector<std::uint32_t> elements_;
};

inline std::string to_string(const EllentuckApprox& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a.elements()[i]);
    }
    return out + "}";
}

namespace detail {

/// Parses "{1,2,3}" style lists of naturals starting at text[pos]; advances pos.
inline std::vector<std::uint32_t> parse_braced_naturals(std::string_view text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '{') throw parse_error("expected '{' in \"" + std::string(text) + "\"");
    ++pos;
    std::vector<std::uint32_t> out;
    if (pos < text.size() && text[pos] == '}') return ++pos, out;
    while (true) {
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc() || ptr == text.data() + pos)
            throw parse_error("expected a natural in \"" + std::string(text) + "\"");
        pos = static_cast<std::size_t>(ptr - text.data());
        out.push_back(v);
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < text.size() && text[pos] == '}') return ++pos, out;
        throw parse_error("unterminated set in \"" + std::string(text) + "\"");
    }
}

}  // namespace detail

class EllentuckSpace {
public:
    using approx_type = EllentuckApprox;

    explicit EllentuckSpace(std::uint32_t ground) : ground_(ground) {
        if (ground < 1) throw invalid_argument_error("ground bound must be at least 1");
        if (ground > 64) throw invalid_argument_error("ground bound above 64 is not supported");
    }

    std::uint32_t ground() const noexcept { return ground_; }
    double universe_estimate() const { return std::ldexp(1.0, static_cast<int>(ground_)); }
    std::string_view name() const noexcept { return "ellentuck"; }
    approx_type empty() const { return {}; }
    std::size_t length(const approx_type& a) const { return a.size(); }

    approx_type cut(const approx_type& a, std::size_t n) const {
        if (n > a.size()) throw out_of_range_error("cannot take " + std::to_string(n) + " elements of " + to_string(a));
        return approx_type(std::vector<std::uint32_t>(a.elements().begin(), a.elements().begin() + n));
    }

    bool fin_leq(const approx_type& a, const approx_type& b) const { return a.subset_of(b); }

    std::vector<approx_type> fin_below(const approx_type& a) const { return subsets(a.elements()); }

    bool leq(const approx_type& a, const approx_type& b) const { return a.subset_of(b); }

    approx_type top() const {
        std::vector<std::uint32_t> all(ground_);
        for (std::uint32_t i = 0; i < ground_; ++i) all[i] = i;
        return approx_type(std::move(all));
    }

    bool is_element(const approx_type& a) const { return a.empty() || a.max() < ground_; }

    std::vector<approx_type> reducts(const approx_type& a) const { return subsets(a.elements()); }

    bool in_ar(const approx_type& a, const approx_type& element) const { return a.subset_of(element); }

    std::vector<approx_type> neighborhood(const approx_type& a, const approx_type& element) const {
        if (!a.subset_of(element)) return {};
        auto tail = tail_above(a, element);
        std::vector<approx_type> out;
        for (const auto& t : subsets(tail)) {
            std::vector<std::uint32_t> xs = a.elements();
            xs.insert(xs.end(), t.elements().begin(), t.elements().end());
            out.emplace_back(std::move(xs));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<approx_type> extensions(const approx_type& a, const approx_type& element) const {
        std::vector<approx_type> out;
        for (std::uint32_t x : tail_above(a, element)) {
            std::vector<std::uint32_t> xs = a.elements();
            xs.push_back(x);
            out.emplace_back(std::move(xs));
        }
        return out;
    }

    /// Largest C in [d, A] whose one-step extensions of `a` avoid `forbidden`.
    /// `a` must have depth d in A, so every tail element of C extends `a`.
    template <class Forbidden>
    std::optional<approx_type> refine_avoiding(const approx_type& element, std::size_t d, const approx_type& a,
                                               Forbidden&& forbidden) const {
        auto xs = cut(element, d).elements();
        for (std::uint32_t x : tail_above(cut(element, d), element)) {
            std::vector<std::uint32_t> ext = a.elements();
            ext.push_back(x);
            if (!forbidden(approx_type(std::move(ext)))) xs.push_back(x);
        }
        return approx_type(std::move(xs));
    }

    std::string serialize(const approx_type& a) const { return to_string(a); }

    approx_type parse(std::string_view text) const {
        std::size_t pos = 0;
        auto xs = detail::parse_braced_naturals(text, pos);
        if (pos != text.size()) throw parse_error("trailing characters in \"" + std::string(text) + "\"");
        return approx_type(std::move(xs));
    }

private:
    static std::vector<std::uint32_t> tail_above(const approx_type& a, const approx_type& element) {
        std::vector<std::uint32_t> tail;
        for (std::uint32_t x : element.elements())
            if (a.empty() || x > a.max()) tail.push_back(x);
        return tail;
    }

    static std::vector<approx_type> subsets(const std::vector<std::uint32_t>& base) {
        if (base.size() > 24) throw ceiling_exceeded_error("subset enumeration", std::ldexp(1.0, static_cast<int>(base.size())), std::ldexp(1.0, 24));
        std::vector<approx_type> out;
        const std::uint64_t count = std::uint64_t{1} << base.size();
        out.reserve(count);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            std::vector<std::uint32_t> xs;
            for (std::size_t i = 0; i < base.size(); ++i)
                if (mask >> i & 1u) xs.push_back(base[i]);
            out.emplace_back(std::move(xs));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint32_t ground_;
};

static_assert(RamseySpace<EllentuckSpace>);

inline EllentuckSpace ell_space(std::uint32_t ground_bound) { return EllentuckSpace(ground_bound); }

}  // namespace rspace

#endif
