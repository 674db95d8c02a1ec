#ifndef RSPACE_GF_HPP
#define RSPACE_GF_HPP

// Prime-field arithmetic and reduced row-echelon linear algebra.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rspace/error.hpp"

namespace rspace {

inline bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

inline void require_prime(std::uint32_t q) {
    if (!is_prime(q)) throw invalid_argument_error("field order " + std::to_string(q) + " is not prime");
}

/// Residue modulo a prime.
class FieldElement {
public:
    FieldElement(std::uint32_t value, std::uint32_t modulus) : value_(value % modulus), modulus_(modulus) {}

    std::uint32_t value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return modulus_; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.check(b);
        return {(a.value_ + b.value_) % a.modulus_, a.modulus_};
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        a.check(b);
        return {(a.value_ + a.modulus_ - b.value_) % a.modulus_, a.modulus_};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.check(b);
        return {static_cast<std::uint32_t>((std::uint64_t{a.value_} * b.value_) % a.modulus_), a.modulus_};
    }

    FieldElement inverse() const {
        if (value_ == 0) throw invalid_argument_error("zero has no inverse");
        // Fermat: x^(q-2).
        std::uint64_t result = 1, base = value_;
        for (std::uint32_t e = modulus_ - 2; e > 0; e >>= 1) {
            if (e & 1u) result = result * base % modulus_;
            base = base * base % modulus_;
        }
        return {static_cast<std::uint32_t>(result), modulus_};
    }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    void check(const FieldElement& other) const {
        if (modulus_ != other.modulus_) throw space_mismatch_error("field elements over different moduli");
    }

    std::uint32_t value_;
    std::uint32_t modulus_;
};

namespace detail {

inline std::uint8_t mod_inverse(std::uint8_t x, std::uint32_t q) {
    return static_cast<std::uint8_t>(FieldElement(x, q).inverse().value());
}

}  // namespace detail

/// Dense row-major matrix over GF(q).  Entries are stored as residues.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
        : q_(q), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
        require_prime(q);
    }
    FqMatrix(std::uint32_t q, std::size_t cols, const std::vector<std::vector<std::uint32_t>>& rows)
        : FqMatrix(q, rows.size(), cols) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw invalid_argument_error("ragged matrix rows");
            for (std::size_t c = 0; c < cols; ++c) set(r, c, rows[r][c] % q);
        }
    }

    std::uint32_t q() const noexcept { return q_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint32_t v) {
        entries_[r * cols_ + c] = static_cast<std::uint8_t>(v % q_);
    }

    std::span<const std::uint8_t> row(std::size_t r) const {
        return {entries_.data() + r * cols_, cols_};
    }
    std::span<std::uint8_t> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

    /// Leading rows and columns as a new matrix.
    FqMatrix block(std::size_t rows, std::size_t cols) const {
        FqMatrix out(q_, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) out.set(r, c, at(r, c));
        return out;
    }

    const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
    friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;

private:
    std::uint32_t q_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> entries_;
};

/// Full-row-rank matrix in reduced row-echelon form.  Rank equals row count.
class EchelonMatrix {
public:
    EchelonMatrix() = default;

    /// Validates that `m` is already reduced echelon with no zero rows.
    static EchelonMatrix from_reduced(FqMatrix m) {
        EchelonMatrix e;
        e.pivots_.reserve(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::size_t p = 0;
            while (p < m.cols() && m.at(r, p) == 0) ++p;
            if (p == m.cols()) throw invalid_argument_error("zero row in echelon matrix");
            if (m.at(r, p) != 1) throw invalid_argument_error("pivot entry is not 1");
            if (!e.pivots_.empty() && p <= e.pivots_.back())
                throw invalid_argument_error("pivots not strictly increasing");
            for (std::size_t o = 0; o < m.rows(); ++o)
                if (o != r && m.at(o, p) != 0) throw invalid_argument_error("pivot column not cleared");
            e.pivots_.push_back(p);
        }
        e.body_ = std::move(m);
        return e;
    }

    std::uint32_t q() const noexcept { return body_.q(); }
    std::size_t rows() const noexcept { return body_.rows(); }
    std::size_t cols() const noexcept { return body_.cols(); }
    std::size_t rank() const noexcept { return body_.rows(); }
    const FqMatrix& body() const noexcept { return body_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    std::span<const std::uint8_t> row(std::size_t r) const { return body_.row(r); }

    friend bool operator==(const EchelonMatrix& a, const EchelonMatrix& b) { return a.body_ == b.body_; }
    friend auto operator<=>(const EchelonMatrix& a, const EchelonMatrix& b) { return a.body_ <=> b.body_; }

private:
    FqMatrix body_;
    std::vector<std::size_t> pivots_;
};

/// Gauss-Jordan elimination; zero rows are dropped.
inline EchelonMatrix rref(FqMatrix m) {
    const std::uint32_t q = m.q();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t pivot = lead;
        while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != lead) {
            auto a = m.row(pivot), b = m.row(lead);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        const std::uint8_t inv = detail::mod_inverse(m.at(lead, c), q);
        for (auto& x : m.row(lead)) x = static_cast<std::uint8_t>(x * inv % q);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m.at(r, c) == 0) continue;
            const std::uint32_t f = m.at(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.set(r, j, (m.at(r, j) + q * q - f * m.at(lead, j)) % q);
        }
        ++lead;
    }
    return EchelonMatrix::from_reduced(m.block(lead, m.cols()));
}

/// Residue left after cancelling `v` against the pivots of `m`.
inline std::vector<std::uint8_t> reduce_against(std::span<const std::uint8_t> v, const EchelonMatrix& m) {
    if (v.size() != m.cols()) throw invalid_argument_error("vector length does not match matrix columns");
    const std::uint32_t q = m.q();
    std::vector<std::uint8_t> rest(v.begin(), v.end());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const std::uint32_t f = rest[m.pivots()[r]];
        if (f == 0) continue;
        auto row = m.row(r);
        for (std::size_t j = 0; j < rest.size(); ++j)
            rest[j] = static_cast<std::uint8_t>((rest[j] + q * q - f * row[j]) % q);
    }
    return rest;
}

inline bool in_span(std::span<const std::uint8_t> v, const EchelonMatrix& m) {
    auto rest = reduce_against(v, m);
    return std::all_of(rest.begin(), rest.end(), [](std::uint8_t x) { return x == 0; });
}

inline bool in_span(const std::vector<FieldElement>& v, const EchelonMatrix& m) {
    std::vector<std::uint8_t> raw;
    raw.reserve(v.size());
    for (const auto& x : v) {
        if (x.modulus() != m.q()) throw space_mismatch_error("vector and matrix over different fields");
        raw.push_back(static_cast<std::uint8_t>(x.value()));
    }
    return in_span(std::span<const std::uint8_t>(raw), m);
}

/// Row space of `a` contained in row space of `b`.
inline bool subspace_leq(const EchelonMatrix& a, const EchelonMatrix& b) {
    if (a.cols() != b.cols()) throw invalid_argument_error("subspace comparison across different widths");
    if (a.q() != b.q()) throw space_mismatch_error("subspaces over different fields");
    if (a.rank() > b.rank()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (!in_span(a.row(r), b)) return false;
    return true;
}

/// Number of k-dimensional subspaces of GF(q)^m.
inline std::uint64_t gaussian_binomial(std::uint64_t m, std::uint64_t k, std::uint64_t q) {
    if (k > m) return 0;
    // Multiply numerator and denominator factor by factor; every partial
    // product is itself a Gaussian binomial, so the division stays exact.
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t j = 0; j < m - i; ++j) num *= q;
        for (std::uint64_t j = 0; j < i + 1; ++j) den *= q;
        result = result * (num - 1) / (den - 1);
    }
    return result;
}

inline constexpr double default_enumeration_ceiling = 1u << 22;

/// All rank-k reduced echelon matrices with m columns over GF(q), sorted.
inline std::vector<EchelonMatrix> enumerate_rre(std::size_t k, std::size_t m, std::uint32_t q,
                                                double ceiling = default_enumeration_ceiling) {
    require_prime(q);
    if (k > m) throw invalid_argument_error("rank exceeds column count");
    const double estimate = static_cast<double>(gaussian_binomial(m, k, q));
    if (estimate > ceiling) throw ceiling_exceeded_error("echelon enumeration", estimate, ceiling);

    std::vector<EchelonMatrix> out;
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;

    while (true) {
        // Free cells: right of a row's pivot, outside every pivot column.
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = pivots[r] + 1; c < m; ++c)
                if (!std::binary_search(pivots.begin(), pivots.end(), c)) free.emplace_back(r, c);
        std::vector<std::uint32_t> digits(free.size(), 0);
        while (true) {
            FqMatrix mat(q, k, m);
            for (std::size_t r = 0; r < k; ++r) mat.set(r, pivots[r], 1);
            for (std::size_t i = 0; i < free.size(); ++i) mat.set(free[i].first, free[i].second, digits[i]);
            out.push_back(EchelonMatrix::from_reduced(std::move(mat)));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        // Next pivot combination.
        std::size_t i = k;
        while (i > 0 && pivots[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rspace

#endif
