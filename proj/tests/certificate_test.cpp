#include <gtest/gtest.h>

#include <sstream>

#include "rspace/rspace.hpp"

using namespace rspace;

namespace {

using E = EllentuckApprox;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::size_t count_prefix(const std::vector<std::string>& lines, const std::string& prefix) {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const std::string& l) {
        return l.rfind(prefix, 0) == 0;
    }));
}

}  // namespace

TEST(FamilyFile, ParsesHeaderItemsAndComments) {
    const auto file = parse_item_text("\n# space=ellentuck ground=8 bound=2\n{0,1}\n\n# note\n  {2}  \n");
    EXPECT_EQ(file.header.space, "ellentuck");
    EXPECT_EQ(file.header.number("ground"), 8u);
    EXPECT_EQ(file.header.number("missing", 5), 5u);
    ASSERT_EQ(file.items.size(), 2u);
    EXPECT_EQ(file.items[1].text, "{2}");
    EXPECT_EQ(file.items[1].line, 6u);
    const EllentuckSpace s(8);
    const auto f = load_family(s, file);
    EXPECT_EQ(f.length_bound(), 2u);
    EXPECT_TRUE(f.contains(E{0, 1}));
}

TEST(FamilyFile, BoundDefaultsToLongestMember) {
    const EllentuckSpace s(8);
    const auto f = load_family(s, parse_item_text("# space=ellentuck ground=8\n{1,2,3}\n{4}\n"));
    EXPECT_EQ(f.length_bound(), 3u);
    EXPECT_EQ(load_family(s, parse_item_text("# space=ellentuck ground=8\n")).size(), 0u);
}

TEST(FamilyFile, MalformedInputsAreRejected) {
    const EllentuckSpace s(8);
    EXPECT_THROW(parse_item_text(""), parse_error);
    EXPECT_THROW(parse_item_text("{1}\n"), parse_error);
    EXPECT_THROW(parse_item_text("# ground=8\n"), parse_error);
    EXPECT_THROW(parse_item_text("# space=ellentuck ground\n"), parse_error);
    EXPECT_THROW(parse_item_text("# space=ellentuck ground=8 ground=9\n"), parse_error);
    EXPECT_THROW(parse_item_text("# space=ellentuck ground=x\n").header.number("ground"), parse_error);
    EXPECT_THROW(parse_item_text("# space=ellentuck ground=-1\n").header.number("ground"), parse_error);
    try {
        load_family(s, parse_item_text("# space=ellentuck ground=8\n{1}\n{2,1}\n"));
        FAIL() << "expected a parse error";
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_family(s, parse_item_text("# space=ellentuck ground=8 bound=1\n{1,2}\n")), invalid_argument_error);
    EXPECT_THROW(load_family(s, parse_item_text("# space=ellentuck ground=8\n{9}\n")), invalid_argument_error);
}

TEST(FamilyFile, WriteRoundTrip) {
    const PartitionSpace s(5);
    const FileHeader header{"partition", {{"domain", "5"}}};
    const auto f = load_family(s, parse_item_text("# space=partition domain=5 bound=2\n({0},{1})\n({0,2},{1})\n"));
    const auto text = write_family(s, header, f);
    EXPECT_EQ(text, "# space=partition domain=5 bound=2\n({0},{1})\n({0,2},{1})\n");
    const auto again = load_family(s, parse_item_text(text));
    EXPECT_EQ(again.members(), f.members());
}

TEST(ColoringFile, LoadsColors) {
    const EllentuckSpace s(6);
    const auto c = load_coloring(s, parse_item_text("# space=ellentuck ground=6 k=1 s=2\n{0} 1\n{1}\t0\n"));
    EXPECT_EQ(c(E{0}), 1u);
    EXPECT_EQ(c(E{1}), 0u);
    EXPECT_THROW(c(E{2}), out_of_range_error);
    EXPECT_THROW(load_coloring(s, parse_item_text("# space=ellentuck ground=6 s=2\n{0}\n")), parse_error);
    EXPECT_THROW(load_coloring(s, parse_item_text("# space=ellentuck ground=6 s=2\n{0} 2\n")), invalid_argument_error);
    EXPECT_THROW(load_coloring(s, parse_item_text("# space=ellentuck ground=6 s=2\n{0} 1\n{0} 0\n")),
                 invalid_argument_error);
}

TEST(GalvinCertificate, Alt1Format) {
    const EllentuckSpace s(8);
    const Stem<EllentuckSpace> top(s, s.top());
    const auto f = load_family(s, parse_item_text("# space=ellentuck ground=8 bound=2\n{0,1}\n{1}\n{2}\n"));
    const auto cert = galvin_certificate(s, f, galvin_search(s, top, f), "ellentuck ground=8");
    const auto lines = lines_of(cert);
    ASSERT_GE(lines.size(), 6u);
    EXPECT_EQ(lines[0], "certificate galvin");
    EXPECT_EQ(lines[1], "space ellentuck ground=8");
    EXPECT_EQ(lines[2], "family_bound 2");
    EXPECT_EQ(lines[3], "family_size 3");
    EXPECT_EQ(lines[4], "outcome alt1");
    EXPECT_EQ(lines[5], "stem {0,3,4,5,6,7}");
    EXPECT_EQ(count_prefix(lines, "chain "), 0u);
}

TEST(GalvinCertificate, Alt2ListsOneHitPerChain) {
    const EllentuckSpace s(6);
    const Stem<EllentuckSpace> top(s, s.top());
    // Every chain meets F at its first or second step.
    const auto f = load_family(s, parse_item_text("# space=ellentuck ground=6\n{0}\n{1}\n{2,3}\n{2,4}\n{2,5}\n{3}\n{4}\n{5}\n"));
    const auto r = galvin_search(s, top, f);
    ASSERT_EQ(r.outcome, Alternative::alt2);
    const auto cert = galvin_certificate(s, f, r, "ellentuck ground=6");
    const auto lines = lines_of(cert);
    EXPECT_EQ(count_prefix(lines, "chain "), r.hits.size());
    EXPECT_EQ(r.hits.size(), 8u);
    EXPECT_NE(cert.find("chain {2,3} 2"), std::string::npos) << cert;
    EXPECT_TRUE(replay_galvin_certificate(s, top, f, cert).ok);
    auto missing = cert;
    missing.erase(missing.find("chain {2,3} 2\n"), 14);
    EXPECT_FALSE(replay_galvin_certificate(s, top, f, missing).ok);
}

TEST(GalvinCertificate, Deterministic) {
    const EllentuckSpace s(10);
    const Stem<EllentuckSpace> top(s, s.top());
    const auto f = load_family(s, parse_item_text("# space=ellentuck ground=10 bound=2\n{0,2}\n{1,3}\n{4}\n"));
    const auto first = galvin_certificate(s, f, galvin_search(s, top, f), "ellentuck ground=10");
    for (int i = 0; i < 3; ++i) EXPECT_EQ(galvin_certificate(s, f, galvin_search(s, top, f), "ellentuck ground=10"), first);
}

TEST(RamseyCertificate, Format) {
    const auto r = glr_witness(2, 1, 2, 2, 4);
    const auto lines = lines_of(ramsey_certificate(r));
    ASSERT_GE(lines.size(), 8u);
    EXPECT_EQ(lines[0], "certificate ramsey/glr");
    EXPECT_EQ(lines[1], "instance q=2 k=1 n=2 s=2 bound=4");
    EXPECT_EQ(lines[2], "mode exhaustive");
    EXPECT_EQ(lines[3], "outcome found");
    EXPECT_EQ(lines[4], "value 3");
    EXPECT_EQ(lines[5].rfind("checked ", 0), 0u);
    EXPECT_EQ(lines[6], "bad_size 2");
    EXPECT_EQ(count_prefix(lines, "color "), 3u);
    EXPECT_EQ(ramsey_certificate(r).find("seconds"), std::string::npos);
}

TEST(RamseyCertificate, DeterministicAcrossModesAndJobs) {
    const auto a = ramsey_certificate(classical_ramsey_number(2, 3, 2, 8));
    RamseyOptions o;
    o.limits.jobs = 4;
    EXPECT_EQ(ramsey_certificate(classical_ramsey_number(2, 3, 2, 8, o)), a);
    EXPECT_EQ(ramsey_certificate(classical_ramsey_number(2, 3, 2, 8)), a);
}

TEST(RamseyCertificate, ExhaustedCarriesDiagnostic) {
    const auto r = classical_ramsey_number(2, 3, 2, 4);
    EXPECT_EQ(r.outcome, WitnessOutcome::exhausted);
    EXPECT_EQ(r.value, 4u);
    const auto cert = ramsey_certificate(r);
    EXPECT_NE(cert.find("outcome exhausted"), std::string::npos);
    EXPECT_NE(cert.find("diagnostic "), std::string::npos);
    EXPECT_TRUE(verify_witness(cert).ok);
}
