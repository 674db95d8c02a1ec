#include <gtest/gtest.h>

#include <set>

#include "rspace/gf.hpp"

using namespace rspace;

namespace {

FqMatrix mat(std::uint32_t q, std::vector<std::vector<std::uint32_t>> rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    return FqMatrix(q, cols, rows);
}

// All vectors of GF(q)^m in odometer order.
std::vector<std::vector<std::uint8_t>> all_vectors(std::uint32_t q, std::size_t m) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> v(m, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < m && ++v[i] == q) v[i++] = 0;
        if (i == m) break;
    }
    return out;
}

// Span oracle: try every coefficient combination of the given rows.
bool brute_in_span(const std::vector<std::uint8_t>& v, const FqMatrix& rows) {
    const std::uint32_t q = rows.q();
    for (const auto& coeff : all_vectors(q, rows.rows())) {
        std::vector<std::uint8_t> acc(rows.cols(), 0);
        for (std::size_t r = 0; r < rows.rows(); ++r)
            for (std::size_t c = 0; c < rows.cols(); ++c)
                acc[c] = static_cast<std::uint8_t>((acc[c] + coeff[r] * rows.at(r, c)) % q);
        if (acc == v) return true;
    }
    return false;
}

// Subspace oracle: distinct closures of all k-tuples of vectors, of size q^k.
std::size_t brute_subspace_count(std::uint32_t q, std::size_t m, std::size_t k) {
    const auto vecs = all_vectors(q, m);
    std::set<std::set<std::vector<std::uint8_t>>> spaces;
    std::vector<std::size_t> idx(k, 0);
    std::size_t target = 1;
    for (std::size_t i = 0; i < k; ++i) target *= q;
    while (true) {
        FqMatrix gens(q, k, m);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < m; ++c) gens.set(r, c, vecs[idx[r]][c]);
        std::set<std::vector<std::uint8_t>> span;
        for (const auto& coeff : all_vectors(q, k)) {
            std::vector<std::uint8_t> acc(m, 0);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < m; ++c) acc[c] = static_cast<std::uint8_t>((acc[c] + coeff[r] * gens.at(r, c)) % q);
            span.insert(acc);
        }
        if (span.size() == target) spaces.insert(span);
        std::size_t i = 0;
        while (i < k && ++idx[i] == vecs.size()) idx[i++] = 0;
        if (i == k) break;
    }
    return spaces.size();
}

}  // namespace

TEST(FieldElement, Arithmetic) {
    FieldElement a(2, 3), b(2, 3);
    EXPECT_EQ((a + b).value(), 1u);
    EXPECT_EQ((a * b).value(), 1u);
    EXPECT_EQ((a - b).value(), 0u);
    EXPECT_EQ(a.inverse().value(), 2u);
    EXPECT_THROW(FieldElement(0, 5).inverse(), invalid_argument_error);
    EXPECT_THROW(FieldElement(1, 2) + FieldElement(1, 3), space_mismatch_error);
}

TEST(Rref, InvertibleBecomesIdentity) {
    auto e = rref(mat(2, {{1, 1}, {0, 1}}));
    EXPECT_EQ(e.body(), mat(2, {{1, 0}, {0, 1}}));
    EXPECT_EQ(e.pivots(), (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, ZeroMatrixHasNoRows) {
    auto e = rref(FqMatrix(3, 2, 4));
    EXPECT_EQ(e.rows(), 0u);
    EXPECT_EQ(e.cols(), 4u);
}

TEST(Rref, SingularOverGF3) {
    // det = 4 - 1 = 3 = 0 mod 3; second row is twice the first.
    auto e = rref(mat(3, {{2, 1}, {1, 2}}));
    EXPECT_EQ(e.body(), mat(3, {{1, 2}}));
}

TEST(Rref, IdempotentAndRowSpacePreserving) {
    for (std::uint32_t q : {2u, 3u}) {
        const auto vecs = all_vectors(q, 3);
        // Every 2x3 matrix over GF(q).
        for (const auto& r0 : vecs)
            for (const auto& r1 : vecs) {
                FqMatrix m(q, 2, 3);
                for (std::size_t c = 0; c < 3; ++c) m.set(0, c, r0[c]), m.set(1, c, r1[c]);
                auto e = rref(m);
                ASSERT_EQ(rref(e.body()), e);
                for (const auto& v : vecs) ASSERT_EQ(in_span(std::span<const std::uint8_t>(v), e), brute_in_span(v, m));
            }
    }
}

TEST(InSpan, Examples) {
    auto m = rref(mat(2, {{1, 0, 1}, {0, 1, 1}}));
    std::vector<std::uint8_t> v110{1, 1, 0}, v000{0, 0, 0}, v100{1, 0, 0};
    EXPECT_TRUE(in_span(std::span<const std::uint8_t>(v110), m));
    EXPECT_TRUE(in_span(std::span<const std::uint8_t>(v000), m));
    EXPECT_FALSE(in_span(std::span<const std::uint8_t>(v100), m));
    EXPECT_FALSE(brute_in_span(v100, mat(2, {{1, 0, 1}, {0, 1, 1}})));
    std::vector<std::uint8_t> short_v{1, 1};
    EXPECT_THROW(in_span(std::span<const std::uint8_t>(short_v), m), invalid_argument_error);
    std::vector<FieldElement> fe{{1, 2}, {1, 2}, {0, 2}};
    EXPECT_TRUE(in_span(fe, m));
}

TEST(GaussianBinomial, Values) {
    EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
    EXPECT_EQ(gaussian_binomial(3, 1, 3), 13u);
    EXPECT_EQ(gaussian_binomial(7, 0, 5), 1u);
    EXPECT_EQ(gaussian_binomial(2, 1, 2), 3u);
}

TEST(EnumerateRre, SmallCases) {
    auto lines = enumerate_rre(1, 2, 2);
    ASSERT_EQ(lines.size(), 3u);
    std::set<FqMatrix> bodies;
    for (const auto& e : lines) bodies.insert(e.body());
    EXPECT_TRUE(bodies.count(mat(2, {{1, 0}})));
    EXPECT_TRUE(bodies.count(mat(2, {{1, 1}})));
    EXPECT_TRUE(bodies.count(mat(2, {{0, 1}})));

    auto full = enumerate_rre(3, 3, 3);
    ASSERT_EQ(full.size(), 1u);
    EXPECT_EQ(full[0].body(), mat(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));

    EXPECT_EQ(enumerate_rre(2, 4, 2).size(), 35u);
    EXPECT_THROW(enumerate_rre(3, 2, 2), invalid_argument_error);
    EXPECT_THROW(enumerate_rre(1, 4, 4), invalid_argument_error);
    EXPECT_THROW(enumerate_rre(3, 8, 3, 1000.0), ceiling_exceeded_error);
}

TEST(EnumerateRre, MatchesBruteForceSubspaceCount) {
    for (std::uint32_t q : {2u, 3u})
        for (std::size_t m = 1; m <= (q == 2 ? 4u : 3u); ++m)
            for (std::size_t k = 0; k <= m; ++k)
                EXPECT_EQ(enumerate_rre(k, m, q).size(), brute_subspace_count(q, m, k)) << q << ' ' << m << ' ' << k;
}

TEST(EnumerateRre, CanonicalAndDistinct) {
    auto all = enumerate_rre(2, 5, 3);
    for (std::size_t i = 1; i < all.size(); ++i) ASSERT_LT(all[i - 1], all[i]);
    for (const auto& e : all) ASSERT_EQ(rref(e.body()), e);
}

TEST(SubspaceLeq, Examples) {
    auto id = rref(mat(2, {{1, 0}, {0, 1}}));
    auto diag = rref(mat(2, {{1, 1}}));
    EXPECT_TRUE(subspace_leq(id, id));
    EXPECT_TRUE(subspace_leq(diag, id));
    EXPECT_FALSE(subspace_leq(id, diag));
    EXPECT_THROW(subspace_leq(diag, rref(mat(2, {{1, 1, 0}}))), invalid_argument_error);
}

TEST(SubspaceLeq, PartialOrderOnCanonicalForms) {
    std::vector<EchelonMatrix> all;
    for (std::size_t k = 0; k <= 3; ++k)
        for (auto& e : enumerate_rre(k, 3, 2)) all.push_back(e);
    for (const auto& a : all)
        for (const auto& b : all) {
            if (subspace_leq(a, b) && subspace_leq(b, a)) {
                ASSERT_EQ(a, b);
            }
            if (!subspace_leq(a, b)) continue;
            for (const auto& c : all)
                if (subspace_leq(b, c)) {
                    ASSERT_TRUE(subspace_leq(a, c));
                }
        }
}

TEST(EchelonMatrix, RejectsNonReduced) {
    EXPECT_THROW(EchelonMatrix::from_reduced(mat(2, {{1, 1}, {0, 1}})), invalid_argument_error);
    EXPECT_THROW(EchelonMatrix::from_reduced(mat(2, {{0, 0}})), invalid_argument_error);
    EXPECT_THROW(EchelonMatrix::from_reduced(mat(3, {{2, 0}})), invalid_argument_error);
}
