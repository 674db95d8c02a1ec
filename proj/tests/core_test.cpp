#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rspace/audit.hpp"
#include "rspace/ellentuck.hpp"
#include "rspace/matrix_space.hpp"
#include "rspace/partition_space.hpp"

using namespace rspace;

namespace {

using E = EllentuckApprox;
using P = PartitionApprox;

// Ellentuck space whose r_0 is {0} instead of the empty set.
struct BrokenSpace {
    using approx_type = E;
    EllentuckSpace base{6};

    std::string_view name() const { return "broken"; }
    E empty() const { return base.empty(); }
    std::size_t length(const E& a) const { return base.length(a); }
    E cut(const E& a, std::size_t n) const { return n == 0 && !a.empty() ? E{a.elements().front()} : base.cut(a, n); }
    bool fin_leq(const E& a, const E& b) const { return base.fin_leq(a, b); }
    std::vector<E> fin_below(const E& a) const { return base.fin_below(a); }
    bool leq(const E& a, const E& b) const { return base.leq(a, b); }
    E top() const { return base.top(); }
    bool is_element(const E& a) const { return base.is_element(a); }
    std::vector<E> reducts(const E& a) const { return base.reducts(a); }
    std::string serialize(const E& a) const { return base.serialize(a); }
    E parse(std::string_view t) const { return base.parse(t); }
};

Stem<EllentuckSpace> evens(const EllentuckSpace& s) { return Stem<EllentuckSpace>(s, E{0, 2, 4, 6, 8}); }

}  // namespace

TEST(Core, ApproxAndLength) {
    EllentuckSpace s(10);
    EXPECT_EQ(approx(s, evens(s), 3), (E{0, 2, 4}));
    EXPECT_EQ(length(s, E{0, 5, 7}), 3u);
    MatrixSpace m(2, 4);
    Stem<MatrixSpace> id(m, m.top());
    const auto r2 = approx(m, id, 2);
    EXPECT_EQ(r2.rows(), 2u);
    EXPECT_EQ(r2.cols(), 2u);
    EXPECT_EQ(length(m, r2), 2u);
    PartitionSpace p(6);
    EXPECT_EQ(length(p, P::from_blocks({{0, 3}, {1, 4}, {2, 5}})), 3u);
}

TEST(Core, FinLeqAndBelow) {
    EllentuckSpace s(10);
    EXPECT_TRUE(fin_leq(s, E{2, 6}, E{0, 2, 4, 6}));
    EXPECT_FALSE(fin_leq(s, E{2, 7}, E{0, 2, 4, 6}));
    const auto below = fin_below(s, E{1, 2});
    EXPECT_EQ(std::set<E>(below.begin(), below.end()), (std::set<E>{E{}, E{1}, E{2}, E{1, 2}}));
    EXPECT_EQ(fin_below(s, E{}), std::vector<E>{E{}});
}

TEST(Core, Depth) {
    EllentuckSpace s(10);
    const auto st = evens(s);
    EXPECT_EQ(depth(s, st, E{2, 6}), 4u);
    EXPECT_EQ(depth(s, st, E{}), 0u);
    for (std::size_t n = 0; n <= st.length(); ++n) EXPECT_EQ(depth(s, st, approx(s, st, n)), n);
    EXPECT_THROW(depth(s, st, E{3}), not_in_space_error);
}

TEST(Core, DepthBoundsLength) {
    // |a| <= depth_A(a) for every a in AR(A).
    PartitionSpace p(5);
    for (const auto& st : reduct_stems(p, Stem<PartitionSpace>(p, p.top())))
        for (const auto& level : ar_levels(p, st.element(), st.length()))
            for (const auto& a : level) EXPECT_LE(p.length(a), depth(p, st, a));
}

TEST(Core, Extensions) {
    EllentuckSpace six(6);
    EXPECT_EQ(extensions(six, E{1}, six.top()), (std::vector<E>{{1, 2}, {1, 3}, {1, 4}, {1, 5}}));
    EllentuckSpace ten(10);
    EXPECT_EQ(extensions(ten, E{}, evens(ten)), (std::vector<E>{{0}, {2}, {4}, {6}, {8}}));
    EXPECT_THROW(extensions(ten, E{1}, evens(ten)), empty_neighborhood_error);
}

TEST(Core, PartitionExtensionsMatchOracle) {
    // Oracle: partitions of {0..3} with at least two blocks whose second block
    // starts at 1, restricted to the points before the least element of block 3.
    PartitionSpace p(4);
    std::set<P> expected;
    std::vector<std::uint32_t> lab(4, 0);
    while (true) {
        std::map<std::uint32_t, std::vector<std::uint32_t>> by;
        for (std::uint32_t i = 0; i < 4; ++i) by[lab[i]].push_back(i);
        std::vector<std::vector<std::uint32_t>> blocks;
        for (auto& [l, b] : by) blocks.push_back(b);
        std::sort(blocks.begin(), blocks.end());
        if (blocks.size() >= 2 && blocks[1].front() == 1) {
            const std::uint32_t end = blocks.size() > 2 ? blocks[2].front() : 4;
            std::vector<std::vector<std::uint32_t>> cut(2);
            for (std::size_t b = 0; b < 2; ++b)
                for (auto x : blocks[b])
                    if (x < end) cut[b].push_back(x);
            expected.insert(P::from_blocks(cut));
        }
        std::size_t i = 0;
        while (i < 4 && ++lab[i] == 4) lab[i++] = 0;
        if (i == 4) break;
    }
    const auto got = extensions(p, P::from_blocks({{0}}), p.top());
    EXPECT_EQ(std::set<P>(got.begin(), got.end()), expected);
    EXPECT_EQ(got.size(), expected.size());
}

TEST(Core, NeighborhoodAndAR) {
    EllentuckSpace s(6);
    const Stem<EllentuckSpace> top(s, s.top());
    for (const auto& c : neighborhood_at(s, 2, top)) EXPECT_EQ(approx(s, c, 2), (E{0, 1}));
    EXPECT_TRUE(in_ar(s, E{1, 4}, top));
    EXPECT_FALSE(in_ar(s, E{1, 4}, Stem<EllentuckSpace>(s, E{1, 2, 3})));
    const auto levels = ar_levels(s, s.top(), 2);
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_EQ(levels[1].size(), 6u);
    EXPECT_EQ(levels[2].size(), 15u);
}

TEST(Audit, EllentuckDefaultBounds) {
    const auto r = audit_axioms(EllentuckSpace(8), {4, 2, true});
    EXPECT_TRUE(r.all_pass()) << to_text(r);
    for (auto ax : {"A1", "A2", "A3", "A4", "A5(i)", "A5(ii)", "A6"}) EXPECT_EQ(r.verdict(ax).status, AxiomStatus::bounded_pass);
    EXPECT_EQ(r.depth_bound_violations, 0u);
}

TEST(Audit, MatrixDefaultBounds) {
    const auto r = audit_axioms(MatrixSpace(2, 4), {3, 2, false});
    EXPECT_TRUE(r.all_pass()) << to_text(r);
    for (auto ax : {"A1", "A2", "A3", "A4", "A5(i)", "A5(ii)"}) EXPECT_EQ(r.verdict(ax).status, AxiomStatus::bounded_pass);
    EXPECT_EQ(r.verdict("A6").status, AxiomStatus::not_run);
    EXPECT_EQ(r.depth_bound_violations, 0u);
}

TEST(Audit, PartitionDefaultBounds) {
    const auto r = audit_axioms(PartitionSpace(6), {3, 2, false});
    EXPECT_TRUE(r.all_pass()) << to_text(r);
    for (auto ax : {"A1", "A2", "A3", "A4", "A5(i)", "A5(ii)"}) EXPECT_EQ(r.verdict(ax).status, AxiomStatus::bounded_pass);
    EXPECT_EQ(r.depth_bound_violations, 0u);
}

TEST(Audit, BrokenSpaceFailsA1) {
    const auto r = audit_axioms(BrokenSpace{}, {3, 2, false});
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.verdict("A1").status, AxiomStatus::counterexample);
    EXPECT_FALSE(r.verdict("A1").witness.empty());
}

TEST(Audit, CeilingRefusal) {
    EXPECT_THROW(audit_axioms(EllentuckSpace(14), {4, 2, true}), ceiling_exceeded_error);
}
