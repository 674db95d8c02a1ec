#ifndef RSPACE_CORE_HPP
#define RSPACE_CORE_HPP

// The abstract (R, <=, r) contract on finite truncations.
//
// A truncated element of a space is identified with its top approximation:
// the chain r_0(A), ..., r_N(A) is recovered by `cut`.  Every space exposes
// the same handful of primitives (see `RamseySpace`) and the generic
// algorithms below are written against those primitives only.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rspace/error.hpp"

namespace rspace {

template <class S>
concept RamseySpace = requires(const S& s, const typename S::approx_type& a, std::size_t n, std::string_view text) {
    typename S::approx_type;
    { s.name() } -> std::convertible_to<std::string_view>;
    { s.empty() } -> std::same_as<typename S::approx_type>;
    { s.length(a) } -> std::same_as<std::size_t>;
    { s.cut(a, n) } -> std::same_as<typename S::approx_type>;
    { s.fin_leq(a, a) } -> std::same_as<bool>;
    { s.fin_below(a) } -> std::same_as<std::vector<typename S::approx_type>>;
    { s.leq(a, a) } -> std::same_as<bool>;
    { s.top() } -> std::same_as<typename S::approx_type>;
    { s.is_element(a) } -> std::same_as<bool>;
    { s.reducts(a) } -> std::same_as<std::vector<typename S::approx_type>>;
    { s.serialize(a) } -> std::same_as<std::string>;
    { s.parse(text) } -> std::same_as<typename S::approx_type>;
    { a < a } -> std::convertible_to<bool>;
    { a == a } -> std::convertible_to<bool>;
};

/// A truncated element together with its chain of approximations.
template <RamseySpace S>
class Stem {
public:
    using approx_type = typename S::approx_type;

    Stem(const S& space, approx_type element) : element_(std::move(element)) {
        if (!space.is_element(element_))
            throw invalid_argument_error("not an element of the truncated universe: " + space.serialize(element_));
        const std::size_t n = space.length(element_);
        chain_.reserve(n + 1);
        for (std::size_t i = 0; i <= n; ++i) chain_.push_back(space.cut(element_, i));
    }

    const approx_type& element() const noexcept { return element_; }
    const std::vector<approx_type>& chain() const noexcept { return chain_; }
    std::size_t length() const noexcept { return chain_.size() - 1; }

    friend bool operator==(const Stem& a, const Stem& b) { return a.element_ == b.element_; }
    friend bool operator<(const Stem& a, const Stem& b) { return a.element_ < b.element_; }

private:
    approx_type element_;
    std::vector<approx_type> chain_;
};

/// r_n(A).
template <RamseySpace S>
typename S::approx_type approx(const S&, const Stem<S>& stem, std::size_t n) {
    if (n > stem.length())
        throw out_of_range_error("approximation " + std::to_string(n) + " beyond stem length " +
                                 std::to_string(stem.length()));
    return stem.chain()[n];
}

template <RamseySpace S>
std::size_t length(const S& space, const typename S::approx_type& a) {
    return space.length(a);
}

/// All truncated elements B <= A, canonical order.
template <RamseySpace S>
std::vector<Stem<S>> reduct_stems(const S& space, const Stem<S>& stem) {
    std::vector<Stem<S>> out;
    for (auto& e : space.reducts(stem.element())) out.emplace_back(space, std::move(e));
    return out;
}

/// Reducts C <= A with a = r_|a|(C), i.e. the truncated neighborhood [a,A].
template <RamseySpace S>
std::vector<typename S::approx_type> neighborhood(const S& space, const typename S::approx_type& a,
                                                  const typename S::approx_type& element) {
    if constexpr (requires { space.neighborhood(a, element); }) {
        return space.neighborhood(a, element);
    } else {
        const std::size_t n = space.length(a);
        std::vector<typename S::approx_type> out;
        for (auto& c : space.reducts(element))
            if (space.length(c) >= n && space.cut(c, n) == a) out.push_back(std::move(c));
        return out;
    }
}

template <RamseySpace S>
std::vector<Stem<S>> neighborhood(const S& space, const typename S::approx_type& a, const Stem<S>& stem) {
    std::vector<Stem<S>> out;
    for (auto& e : neighborhood(space, a, stem.element())) out.emplace_back(space, std::move(e));
    return out;
}

/// a in AR(A): [a,A] is nonempty inside the truncation.
template <RamseySpace S>
bool in_ar(const S& space, const typename S::approx_type& a, const typename S::approx_type& element) {
    if constexpr (requires { space.in_ar(a, element); }) {
        return space.in_ar(a, element);
    } else {
        return !neighborhood(space, a, element).empty();
    }
}

template <RamseySpace S>
bool in_ar(const S& space, const typename S::approx_type& a, const Stem<S>& stem) {
    return in_ar(space, a, stem.element());
}

/// [n,A] = [r_n(A), A].
template <RamseySpace S>
std::vector<Stem<S>> neighborhood_at(const S& space, std::size_t n, const Stem<S>& stem) {
    return neighborhood(space, approx(space, stem, n), stem);
}

/// r_{|a|+1}[a,A] inside the truncation, sorted.  Throws if [a,A] is empty.
template <RamseySpace S>
std::vector<typename S::approx_type> extensions(const S& space, const typename S::approx_type& a,
                                                const typename S::approx_type& element) {
    if constexpr (requires { space.extensions(a, element); }) {
        if (!in_ar(space, a, element))
            throw empty_neighborhood_error("empty neighborhood [" + space.serialize(a) + ", " +
                                           space.serialize(element) + "]");
        return space.extensions(a, element);
    } else {
        auto hood = neighborhood(space, a, element);
        if (hood.empty())
            throw empty_neighborhood_error("empty neighborhood [" + space.serialize(a) + ", " +
                                           space.serialize(element) + "]");
        const std::size_t n = space.length(a) + 1;
        std::set<typename S::approx_type> seen;
        for (const auto& c : hood)
            if (space.length(c) >= n) seen.insert(space.cut(c, n));
        return {seen.begin(), seen.end()};
    }
}

template <RamseySpace S>
std::vector<typename S::approx_type> extensions(const S& space, const typename S::approx_type& a,
                                                const Stem<S>& stem) {
    return extensions(space, a, stem.element());
}

/// depth_A(a) = min{n : a <=_fin r_n(A)}.
template <RamseySpace S>
std::size_t depth(const S& space, const Stem<S>& stem, const typename S::approx_type& a) {
    for (std::size_t n = 0; n <= stem.length(); ++n)
        if (space.fin_leq(a, stem.chain()[n])) return n;
    throw not_in_space_error(space.serialize(a) + " is not below any approximation of " +
                             space.serialize(stem.element()));
}

template <RamseySpace S>
bool fin_leq(const S& space, const typename S::approx_type& a, const typename S::approx_type& b) {
    return space.fin_leq(a, b);
}

template <RamseySpace S>
std::vector<typename S::approx_type> fin_below(const S& space, const typename S::approx_type& a) {
    return space.fin_below(a);
}

/// AR_len(A): length-`len` approximations reachable below A, grown level by level.
template <RamseySpace S>
std::vector<typename S::approx_type> ar_level(const S& space, const typename S::approx_type& element,
                                              std::size_t len) {
    std::vector<typename S::approx_type> level{space.empty()};
    for (std::size_t i = 0; i < len && !level.empty(); ++i) {
        std::set<typename S::approx_type> next;
        for (const auto& a : level)
            for (auto& b : extensions(space, a, element)) next.insert(std::move(b));
        level.assign(next.begin(), next.end());
    }
    return level;
}

/// AR(A) up to length `max_len`, grouped by length.
template <RamseySpace S>
std::vector<std::vector<typename S::approx_type>> ar_levels(const S& space, const typename S::approx_type& element,
                                                            std::size_t max_len) {
    std::vector<std::vector<typename S::approx_type>> out{{space.empty()}};
    while (out.size() <= max_len) {
        std::set<typename S::approx_type> next;
        for (const auto& a : out.back())
            for (auto& b : extensions(space, a, element)) next.insert(std::move(b));
        if (next.empty()) break;
        out.emplace_back(next.begin(), next.end());
    }
    return out;
}

}  // namespace rspace

#endif
