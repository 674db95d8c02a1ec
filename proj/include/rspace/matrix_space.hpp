#ifndef RSPACE_MATRIX_SPACE_HPP
#define RSPACE_MATRIX_SPACE_HPP

// Row-reduced echelon N x N matrices over GF(q), ordered by row-space
// inclusion, truncated to the first `cols` columns.  A truncated element is
// an RREF matrix of exactly `cols` columns; an approximation of length n is an
// n-row RREF matrix cut just before the pivot of row n.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rspace/core.hpp"
#include "rspace/error.hpp"
#include "rspace/gf.hpp"

namespace rspace {

using MatrixApprox = EchelonMatrix;

inline EchelonMatrix zero_rank(std::uint32_t q, std::size_t cols) {
    return EchelonMatrix::from_reduced(FqMatrix(q, 0, cols));
}

/// Canonical text: "q=2;10;01".  A rank-0 matrix of width w > 0 is "q=2;w=4".
inline std::string to_string(const EchelonMatrix& m) {
    std::string out = "q=" + std::to_string(m.q());
    if (m.rows() == 0) {
        if (m.cols() > 0) out += ";w=" + std::to_string(m.cols());
        return out;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += ';';
        for (auto x : m.row(r)) out += static_cast<char>('0' + x);
    }
    return out;
}

inline EchelonMatrix parse_echelon(std::string_view text) {
    if (text.substr(0, 2) != "q=") throw parse_error("matrix text must start with q=");
    std::vector<std::string_view> parts;
    std::size_t start = 2;
    while (true) {
        auto semi = text.find(';', start);
        parts.push_back(text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    std::uint32_t q = 0;
    for (char ch : parts[0]) {
        if (ch < '0' || ch > '9') throw parse_error("bad field order in \"" + std::string(text) + "\"");
        q = q * 10 + static_cast<std::uint32_t>(ch - '0');
    }
    if (parts[0].empty() || !is_prime(q) || q > 10)
        throw parse_error("field order must be a prime below 10 in \"" + std::string(text) + "\"");
    if (parts.size() == 1) return zero_rank(q, 0);
    if (parts.size() == 2 && parts[1].substr(0, 2) == "w=") {
        std::size_t w = 0;
        for (char ch : parts[1].substr(2)) {
            if (ch < '0' || ch > '9') throw parse_error("bad width in \"" + std::string(text) + "\"");
            w = w * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (w == 0) throw parse_error("zero width must be written without w=");
        return zero_rank(q, w);
    }
    const std::size_t cols = parts[1].size();
    FqMatrix m(q, parts.size() - 1, cols);
    for (std::size_t r = 1; r < parts.size(); ++r) {
        if (parts[r].size() != cols || cols == 0) throw parse_error("ragged matrix rows in \"" + std::string(text) + "\"");
        for (std::size_t c = 0; c < cols; ++c) {
            const char ch = parts[r][c];
            if (ch < '0' || static_cast<std::uint32_t>(ch - '0') >= q)
                throw parse_error("entry outside GF(" + std::to_string(q) + ") in \"" + std::string(text) + "\"");
            m.set(r - 1, c, static_cast<std::uint32_t>(ch - '0'));
        }
    }
    try {
        return EchelonMatrix::from_reduced(std::move(m));
    } catch (const invalid_argument_error& e) {
        throw parse_error(std::string("not reduced echelon: ") + e.what());
    }
}

class MatrixSpace {
public:
    using approx_type = MatrixApprox;

    MatrixSpace(std::uint32_t q, std::size_t cols) : q_(q), cols_(cols) {
        require_prime(q);
        if (q > 7) throw invalid_argument_error("field order above 7 is not supported by the text format");
        if (cols < 1) throw invalid_argument_error("at least one column is required");
    }

    std::uint32_t q() const noexcept { return q_; }
    std::size_t cols() const noexcept { return cols_; }
    double universe_estimate() const {
        double total = 0;
        for (std::size_t k = 0; k <= cols_; ++k) total += static_cast<double>(gaussian_binomial(cols_, k, q_));
        return total;
    }
    std::string_view name() const noexcept { return "matrix"; }

    approx_type empty() const { return zero_rank(q_, 0); }
    std::size_t length(const approx_type& a) const { return a.rows(); }

    approx_type cut(const approx_type& a, std::size_t n) const {
        if (n > a.rows())
            throw out_of_range_error("row " + std::to_string(n) + " not materialized in " + to_string(a));
        if (n == 0) return empty();
        if (n == a.rows()) return a;
        return EchelonMatrix::from_reduced(a.body().block(n, a.pivots()[n]));
    }

    /// cols(a) <= cols(b) and each row of a lies in the span of b's rows cut to cols(a).
    bool fin_leq(const approx_type& a, const approx_type& b) const {
        check(a);
        check(b);
        if (a.cols() > b.cols()) return false;
        if (a.rows() == 0) return true;
        const auto trunc = rref(b.body().block(b.rows(), a.cols()));
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (!in_span(a.row(r), trunc)) return false;
        return true;
    }

    std::vector<approx_type> fin_below(const approx_type& a) const {
        check(a);
        std::vector<approx_type> out{empty()};
        for (std::size_t w = 1; w <= a.cols(); ++w) {
            const auto trunc = rref(a.body().block(a.rows(), w));
            for (std::size_t k = 1; k <= trunc.rank(); ++k)
                for (auto& m : enumerate_rre(k, w, q_))
                    if (subspace_leq(m, trunc)) out.push_back(std::move(m));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool leq(const approx_type& a, const approx_type& b) const {
        check(a);
        check(b);
        return subspace_leq(a, b);
    }

    approx_type top() const {
        FqMatrix id(q_, cols_, cols_);
        for (std::size_t i = 0; i < cols_; ++i) id.set(i, i, 1);
        return EchelonMatrix::from_reduced(std::move(id));
    }

    bool is_element(const approx_type& a) const { return a.q() == q_ && a.cols() == cols_; }

    /// Every RREF matrix of full width whose row space lies in that of `a`.
    std::vector<approx_type> reducts(const approx_type& a) const {
        check(a);
        if (a.cols() != cols_) throw invalid_argument_error("reducts of a non-element " + to_string(a));
        std::vector<approx_type> out;
        for (std::size_t k = 0; k <= a.rank(); ++k)
            for (auto& m : enumerate_rre(k, cols_, q_))
                if (subspace_leq(m, a)) out.push_back(std::move(m));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string serialize(const approx_type& a) const { return to_string(a); }

    approx_type parse(std::string_view text) const {
        auto m = parse_echelon(text);
        if (m.q() != q_) throw parse_error("field order mismatch in \"" + std::string(text) + "\"");
        return m;
    }

private:
    void check(const approx_type& a) const {
        if (a.q() != q_) throw space_mismatch_error("matrix over GF(" + std::to_string(a.q()) + ") in GF(" +
                                                    std::to_string(q_) + ") space");
    }

    std::uint32_t q_;
    std::size_t cols_;
};

static_assert(RamseySpace<MatrixSpace>);

/// p_n(A): pivot column of row n.
inline std::size_t mat_pn(const Stem<MatrixSpace>& stem, std::size_t n) {
    const auto& m = stem.element();
    if (n >= m.rows()) throw out_of_range_error("row " + std::to_string(n) + " absent from stem");
    return m.pivots()[n];
}

/// r_n(A): rows 0..n-1 restricted to columns 0..p_n(A)-1.
inline MatrixApprox mat_rn(const MatrixSpace& space, const Stem<MatrixSpace>& stem, std::size_t n) {
    return approx(space, stem, n);
}

/// A finite-dimensional subspace given by its RREF basis.
struct SubspaceApprox {
    EchelonMatrix basis;
};

enum class Tri { yes, no, inconclusive };

inline std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "true";
        case Tri::no: return "false";
        case Tri::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Whether W is an initial segment of some subspace of the stem's row space.
/// Widths beyond the truncation cannot be decided.
inline Tri subspace_initial_segment(const MatrixSpace& space, const SubspaceApprox& w, const Stem<MatrixSpace>& v) {
    const auto& basis = w.basis;
    if (basis.q() != space.q()) throw space_mismatch_error("subspace and stem over different fields");
    if (basis.rank() == 0) return Tri::yes;
    if (basis.cols() > space.cols()) return Tri::inconclusive;
    for (const auto& b : space.reducts(v.element()))
        if (b.rank() >= basis.rank() && space.cut(b, basis.rank()) == basis) return Tri::yes;
    return Tri::no;
}

}  // namespace rspace

#endif
