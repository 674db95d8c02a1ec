#ifndef RSPACE_ERROR_HPP
#define RSPACE_ERROR_HPP

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rspace {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An approximation index or row beyond what a stem materializes.
class out_of_range_error : public error {
public:
    using error::error;
};

/// Two values that live in different spaces (or over different fields).
class space_mismatch_error : public error {
public:
    using error::error;
};

/// Input that violates a documented precondition.
class invalid_argument_error : public error {
public:
    using error::error;
};

/// An approximation that is not below any chain member of the stem.
class not_in_space_error : public error {
public:
    using error::error;
};

/// The neighborhood [a,A] is empty inside the truncation.
class empty_neighborhood_error : public error {
public:
    using error::error;
};

/// Text that does not parse under the canonical serialization.
class parse_error : public error {
public:
    using error::error;
};

/// Work estimate above the configured ceiling; carries the estimate.
class ceiling_exceeded_error : public error {
public:
    ceiling_exceeded_error(const std::string& what, double estimate, double ceiling)
        : error(what + " (estimated " + format(estimate) + " instances, ceiling " + format(ceiling) + ")"),
          estimate_(estimate),
          ceiling_(ceiling) {}

    double estimate() const noexcept { return estimate_; }
    double ceiling() const noexcept { return ceiling_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    double estimate_;
    double ceiling_;
};

/// A fusion step could not produce a refinement at some level.
class fusion_exhausted_error : public error {
public:
    explicit fusion_exhausted_error(std::size_t level)
        : error("fusion exhausted at level " + std::to_string(level)), level_(level) {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

}  // namespace rspace

#endif
