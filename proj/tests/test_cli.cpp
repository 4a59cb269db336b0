#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gybe/cli.hpp"
#include "gybe/serialization.hpp"

using namespace gybe;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("gybe_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, VerifyRowell) {
    const auto r = run({"verify", "--solution", "rowell", "--tol", "1e-12"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("passed     true"), std::string::npos);
    const auto j = run({"--json", "verify", "--solution", "rowell", "--tol", "1e-12"});
    EXPECT_TRUE(Json::parse(j.out)["passed"].get<bool>());
}

TEST(Cli, VerifyChecks) {
    EXPECT_EQ(run({"verify", "--solution", "xshape", "--check", "far"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "--solution", "base2", "--check", "blocks"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "--solution", "rowell", "--check", "unitary"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "--solution", "rowell", "--check", "sideways"}).code, kExitUsage);
}

TEST(Cli, VerifyFailureExitsOne) {
    const std::string bad = R"({"rows":8,"cols":8,"entries":[)" + [] {
        std::string e;
        for (int k = 0; k < 64; ++k) e += (k ? "," : "") + std::string(k % 9 == 0 ? "[2,0]" : k == 1 ? "[1,0]" : "[0,0]");
        return e;
    }() + "]}";
    const auto r = run({"--json", "verify", "--matrix", "-", "--signature", "2,3,1"}, bad);
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_FALSE(Json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, FamilyThirdAtPiHasEqualHalves) {
    const auto r = run({"--json", "family", "--family", "3", "--theta", "3.14159265358979"});
    ASSERT_EQ(r.code, kExitPass);
    const auto m = matrix_from_json(Json::parse(r.out));
    EXPECT_LE(max_abs_diff(m.block(0, 0, 4, 4), m.block(4, 4, 4, 4)), 1e-12);
}

TEST(Cli, FamilyOutputFeedsVerify) {
    for (const char* f : {"1", "2", "3"}) {
        const auto fam = run({"--json", "family", "--family", f, "--theta", "0.3"});
        ASSERT_EQ(fam.code, kExitPass);
        const auto v = run({"--json", "verify", "--matrix", "-"}, fam.out);
        EXPECT_EQ(v.code, kExitPass) << v.err;
        const auto human = run({"family", "--family", f, "--alpha", "0,1", "--beta", "1,0"});
        EXPECT_EQ(run({"verify", "--matrix", "-"}, human.out).code, kExitPass);
    }
}

TEST(Cli, FamilyRangeErrors) {
    EXPECT_EQ(run({"family", "--family", "4", "--theta", "1"}).code, kExitUsage);
    EXPECT_EQ(run({"family", "--family", "1", "--theta", "4"}).code, kExitUsage);
    EXPECT_EQ(run({"family", "--family", "1", "--alpha", "2,0", "--beta", "1,0"}).code, kExitUsage);
}

TEST(Cli, Classify) {
    auto r = run({"classify", "--omega", "0,1", "--gamma", "0,1", "--delta", "1,0"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, "A\n");
    r = run({"classify", "--omega", "0,-1", "--gamma", "1,0", "--delta", "0,-1"});
    EXPECT_EQ(r.out, "B\n");
    r = run({"classify", "--omega", "1,0", "--gamma", "1,0", "--delta", "1,0"});
    EXPECT_EQ(r.out, "C\n");
    r = run({"classify", "--omega", "1,0", "--gamma", "0,1", "--delta", "1,0"});
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_EQ(r.out, "none\n");
}

TEST(Cli, BraidRelation) {
    const auto r = run({"braid", "--solution", "base1", "--word", "n=3: 1,2,1", "--compare", "n=3: 2,1,2"});
    EXPECT_EQ(r.code, kExitPass);
    const auto j = run({"--json", "braid", "--solution", "base1", "--word", "n=3: 1,2,1", "--compare", "n=3: 2,1,2"});
    EXPECT_LE(Json::parse(j.out)["difference"].get<double>(), 1e-12);
}

TEST(Cli, BraidStateAndGate) {
    const auto gate = run({"--json", "braid", "--solution", "rowell", "--word", "n=3: 2"});
    ASSERT_EQ(gate.code, kExitPass);
    const auto path = write_temp("gate.json", gate.out);
    const auto g = run({"--json", "braid", "--solution", "rowell", "--word", "n=3:", "--gate", path});
    EXPECT_EQ(g.code, kExitPass);
    EXPECT_EQ(Json::parse(g.out)["index"], 2);

    const auto product = run({"--json", "braid", "--solution", "rowell", "--word", "n=3: 1,2"});
    const auto none = run({"--json", "braid", "--solution", "rowell", "--word", "n=3:", "--gate",
                           write_temp("product.json", product.out)});
    EXPECT_EQ(none.code, kExitFail);

    std::string state = R"({"rows":16,"cols":1,"entries":[[1,0])";
    for (int k = 1; k < 16; ++k) state += ",[0,0]";
    state += "]}";
    const auto s = run({"--json", "braid", "--solution", "rowell", "--word", "n=3: 1,-1", "--state",
                        write_temp("state.json", state)});
    ASSERT_EQ(s.code, kExitPass) << s.err;
    const auto out = state_from_json(Json::parse(s.out));
    EXPECT_NEAR(std::abs(out.amplitudes()[0]), 1.0, 1e-12);
}

TEST(Cli, EquivFindsRowellWitness) {
    const auto r = run({"--json", "equiv", "--solution", "family1:theta=1.5707963267948966", "--solution", "rowell"});
    ASSERT_EQ(r.code, kExitPass);
    const auto j = Json::parse(r.out);
    EXPECT_LE(j["residual"].get<double>(), 1e-9);
    const auto none = run({"equiv", "--solution", "base1", "--solution", "base3"});
    EXPECT_EQ(none.code, kExitFail);
    EXPECT_EQ(none.out, "none\n");
}

TEST(Cli, SearchSmall) {
    const auto r = run({"--json", "search", "--restarts", "4", "--param", "unit-modulus", "--threads", "2"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_GE(j["certified"].get<int>(), 1);
    for (const auto& s : j["solutions"]) EXPECT_LE(s["residual"].get<double>(), 1e-11);
}

TEST(Cli, SearchPatternFile) {
    std::string grid;
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) grid += (i == k ? '1' : '0');
        grid += '\n';
    }
    const auto r = run({"--json", "search", "--pattern", write_temp("diag.txt", grid), "--restarts", "2"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
}

TEST(Cli, RegistryListsIds) {
    const auto r = run({"registry"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("rowell"), std::string::npos);
    EXPECT_NE(r.out.find("conj:base1"), std::string::npos);
    const auto j = run({"--json", "registry"});
    EXPECT_TRUE(Json::parse(j.out).is_array());
}

TEST(Cli, JsonOutputsParse) {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"--json", "verify", "--solution", "base3", "--check", "far"},
             {"--json", "family", "--family", "2", "--theta", "1"},
             {"--json", "classify", "--solution", "base2"},
             {"--json", "braid", "--solution", "xshape", "--word", "n=3: 1"},
         }) {
        const auto r = run(args);
        EXPECT_FALSE(Json::parse(r.out, nullptr, false).is_discarded()) << r.out;
    }
}

TEST(Cli, MalformedInputsExitTwoWithOneLine) {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {},
             {"bogus"},
             {"verify"},
             {"verify", "--solution", "nope"},
             {"verify", "--solution", "rowell", "--bogus"},
             {"verify", "--solution", "rowell", "--tol", "abc"},
             {"verify", "--matrix", "-"},
             {"verify", "--matrix", "/nonexistent/file.json"},
             {"verify", "--solution", "rowell", "--signature", "2,3"},
             {"family", "--theta", "1"},
             {"family", "--family", "1"},
             {"classify", "--omega", "1"},
             {"braid", "--solution", "rowell", "--word", "n=3: 5"},
             {"braid", "--solution", "rowell", "--word", "3: 1"},
             {"search", "--pattern", "nowhere"},
             {"search", "--restarts", "0"},
             {"search", "--param", "polar"},
             {"equiv", "--solution", "rowell"},
             {"equiv", "--solution", "rowell", "--solution", "base1", "--shapes", "upper"},
             {"equiv", "--solution", "rowell", "--solution", "base1", "--restarts", "0"},
         }) {
        const auto r = run(args, "{not json");
        EXPECT_EQ(r.code, kExitUsage) << ::testing::PrintToString(args);
        EXPECT_EQ(line_count(r.err), 1u) << r.err;
        EXPECT_TRUE(r.err.starts_with("error: ")) << r.err;
    }
}
