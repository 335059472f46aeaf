#include "common.hpp"
#include "pagame/cli.hpp"
#include "pagame/trace.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace pagame;
using pagame::testing::source_path;

namespace {

struct CliRun {
    int rc;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int rc = run_cli(args, in, out, err);
    return {rc, out.str(), err.str()};
}

std::string proof(const std::string& name) { return source_path("proofs/" + name); }

std::vector<TraceRecord> records(const std::string& text) {
    std::istringstream in(text);
    return read_trace(in);
}

}  // namespace

TEST(Trace, RoundTrip) {
    TraceRecord r;
    r.add("n", "3").add("move", "(guess (= 1 1))").add("note", "a \"quoted\" back\\slash").add("empty", "");
    std::string line = render(r);
    EXPECT_EQ(line.rfind("n=3 move=\"(guess (= 1 1))\"", 0), 0u) << line;
    EXPECT_EQ(parse_trace_line(line), r);
    EXPECT_EQ(r.get("n"), "3");
    EXPECT_FALSE(r.get("missing"));
    std::stringstream s;
    write_trace(s, {r, r});
    s.str("# comment\n\n" + s.str());
    EXPECT_EQ(read_trace(s).size(), 2u);
}

TEST(Cli, Ord) {
    CliRun r = cli({"ord", "(w+1)*(w+1)"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out, "w^2 + w + 1\n");
    r = cli({"ord", "w+"});
    EXPECT_EQ(r.rc, 1);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, CheckReportsStatusAndErrors) {
    CliRun ok = cli({"check", proof("double.paproof")});
    EXPECT_EQ(ok.rc, 0);
    // Notes come first, the status record last.
    EXPECT_NE(ok.out.find("note: compound cut"), std::string::npos);
    std::size_t at = ok.out.find("status=");
    ASSERT_NE(at, std::string::npos);
    auto rec = parse_trace_line(ok.out.substr(at, ok.out.find('\n', at) - at));
    EXPECT_EQ(rec.get("status"), "ok");
    EXPECT_EQ(rec.get("compound_cuts"), "1");
    EXPECT_EQ(rec.get("alpha"), "w^(w^(w*243))");

    CliRun bad = cli({"check", proof("bad_eigen.paproof")});
    EXPECT_EQ(bad.rc, 1);
    EXPECT_NE(bad.err.find("bad_eigen.paproof:3: error: eigenvariable x"), std::string::npos) << bad.err;

    EXPECT_EQ(cli({"check", "/nonexistent.paproof"}).rc, 1);
    EXPECT_EQ(cli({}).rc, 1);
}

TEST(Cli, Compile) {
    CliRun r = cli({"compile", proof("ti_w2.paproof"), "--param", "b=3", "--samples", "20"});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto rec = parse_trace_line(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(rec.get("alpha"), "w^2 + 2");
    EXPECT_EQ(rec.get("violations"), "0");
    EXPECT_EQ(rec.get("sampled_plays"), "20");
}

TEST(Cli, Extract) {
    CliRun r = cli({"extract", proof("double.paproof"), "--inputs", "0..4"});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto rs = records(r.out);
    ASSERT_EQ(rs.size(), 5u);
    for (std::size_t n = 0; n < rs.size(); ++n) {
        EXPECT_EQ(rs[n].get("input"), std::to_string(n));
        EXPECT_EQ(rs[n].get("output"), std::to_string(2 * n));
    }
    EXPECT_EQ(cli({"extract", proof("double.paproof"), "--inputs", "4..1"}).rc, 1);
    EXPECT_EQ(cli({"extract", proof("monus_zero.paproof"), "--inputs", "0..1"}).rc, 1);
}

TEST(Cli, ExtractTrace) {
    CliRun r = cli({"extract", proof("identity.paproof"), "--inputs", "2..2", "--trace"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("0: y=<> a=4\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("input=2 output=2 trace_length=3 max_ordinal=4"), std::string::npos) << r.out;
}

TEST(Cli, Nci) {
    CliRun r = cli({"nci", proof("monus_zero.paproof"), "--oracle", "(S x)"});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto rec = parse_trace_line(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(rec.get("x1"), "0");
    EXPECT_EQ(rec.get("y1"), "1");
    EXPECT_EQ(rec.get("holds"), "true");
}

TEST(Cli, DebateTrace) {
    CliRun r = cli({"debate", proof("double.paproof"), "--trace", "--seed", "1"});
    ASSERT_EQ(r.rc, 0) << r.err;
    auto rs = records(r.out);
    ASSERT_FALSE(rs.empty());
    std::size_t emits = 0;
    for (const auto& rec : rs) {
        ASSERT_TRUE(rec.get("position") || rec.get("outcome")) << render(rec);
        if (rec.get("case") == "emit") {
            ++emits;
            EXPECT_TRUE(rec.get("delta"));
            EXPECT_NO_THROW(parse_ordinal(*rec.get("delta")));
        }
    }
    EXPECT_GT(emits, 0u);
    EXPECT_NE(r.out.find("outcome=won"), std::string::npos);
    EXPECT_EQ(cli({"debate", proof("identity.paproof")}).rc, 1);
}

TEST(Cli, Play) {
    CliRun r = cli({"play", proof("identity.paproof")}, "oops\n3\n");
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("illegal reply"), std::string::npos);
    EXPECT_NE(r.out.find("eloisa wins with (= 3 3)"), std::string::npos) << r.out;
    EXPECT_EQ(cli({"play", proof("identity.paproof")}, "").rc, 1);
}
