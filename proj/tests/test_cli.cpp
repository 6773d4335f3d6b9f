#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "gk/commands.hpp"

using namespace gk;

namespace {

const std::string kExamples = GK_EXAMPLES_DIR;

std::string error_of(const std::string& text) {
    try {
        build_instance(Config::parse(text, "t.toml"), "t.toml");
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

struct Run {
    int code;
    std::string out;
};

Run run_tool(const std::string& args) {
    std::string cmd = std::string(GK_TOOL) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 512> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const char* kField = "[field]\ncharacteristic = 0\nvaluation = \"p-adic\"\nprime = 3\n";

}  // namespace

TEST(Config, ScalarsArraysAndSections) {
    auto c = Config::parse(
        "# comment\n[a]\nx = \"1/2\"  # trailing\ny = -3\nz = [[\"1\", \"0\"],\n     [\"0\", \"1\"],]\nw = true\n[a.b]\n\"q.r\" = false\n");
    EXPECT_EQ(c.str("a", "x"), "1/2");
    EXPECT_EQ(c.integer("a", "y"), -3);
    EXPECT_EQ(c.get("a", "z").items.size(), 2u);
    EXPECT_EQ(c.get("a", "z").items[1].items[0].text, "0");
    EXPECT_TRUE(c.boolean("a", "w", false));
    EXPECT_FALSE(c.boolean("a.b", "q.r", true));
    EXPECT_EQ(c.section_names(), (std::vector<std::string>{"a", "a.b"}));
}

TEST(Config, ErrorsCarryLineAndColumn) {
    auto msg = [](const std::string& t) {
        try {
            Config::parse(t, "f");
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_EQ(msg("[s]\nx = 0.5\n"), "f:2:6: floating-point literals are not accepted; write rationals as \"p/q\" strings");
    EXPECT_EQ(msg("[s]\nx = 1\nx = 2\n"), "f:3:1: duplicate key 'x'");
    EXPECT_EQ(msg("[s]\nx = \"abc\n"), "f:2:9: unterminated string");
    EXPECT_EQ(msg("[s\n"), "f:1:3: expected ']'");
    EXPECT_EQ(msg("[s]\nx = [1, 2\n"), "f:3:1: unterminated array");
    EXPECT_EQ(msg("[s]\nx = 1 2\n"), "f:2:7: expected end of line");
}

TEST(Instance, QuaternionExampleLoads) {
    auto I = load_instance(kExamples + "/quaternion_3adic.toml");
    ASSERT_TRUE(I.A);
    EXPECT_EQ(I.A->dim(), 4u);
    EXPECT_EQ(I.A->names(), (std::vector<std::string>{"1", "i", "j", "k"}));
    EXPECT_EQ(I.v->describe(), padic(3)->describe());
    ASSERT_TRUE(I.sigma);
    EXPECT_EQ(I.sigma->apply(I.A->parse("1+i")), I.A->parse("1-i"));
    EXPECT_EQ(I.phi->eval(I.A->parse("3*i + 9*j")), Value{1});
}

TEST(Instance, SemanticErrors) {
    EXPECT_NE(error_of("[field]\nvaluation = \"ultra\"\n").find("unsupported field preset"), std::string::npos);
    // a a = b, b a = a, a b = 0: (a a) a = a but a (a a) = 0
    std::string bad = std::string(kField) +
                      "[algebra]\npreset = \"custom\"\nbasis = [\"1\", \"a\", \"b\"]\n"
                      "table = [[\"1\", \"a\", \"b\"], [\"a\", \"b\", \"0\"], [\"b\", \"a\", \"0\"]]\n";
    std::string e = error_of(bad);
    EXPECT_NE(e.find("not associative at (a, a, a)"), std::string::npos) << e;
    std::string inv = std::string(kField) +
                      "[algebra]\npreset = \"matrix\"\nn = 2\n[involution]\npreset = \"custom\"\n"
                      "images = [\"E11\", \"E21\", \"E12\", \"E11\"]\n";
    EXPECT_NE(error_of(inv).find("not an involution"), std::string::npos) << error_of(inv);
    std::string ext = std::string(kField) + "[extension]\nd = \"7\"\n";
    EXPECT_NE(error_of(ext).find("extension:"), std::string::npos) << error_of(ext);
    std::string rank = std::string(kField) +
                       "[algebra]\npreset = \"matrix\"\nn = 2\n[value_function]\nkind = \"min-of-coordinates\"\n"
                       "values = [[\"0\", \"1\"], \"0\", \"0\", \"0\"]\n";
    EXPECT_NE(error_of(rank).find("expected a value of rank 1"), std::string::npos) << error_of(rank);
    EXPECT_NE(error_of(std::string(kField) + "[bogus]\n").find("unknown section [bogus]"), std::string::npos);
}

TEST(Commands, ReportsAreDeterministicAndSorted) {
    auto I = load_instance(kExamples + "/quaternion_3adic.toml");
    auto a = run_command("check-special", I), b = run_command("check-special", I);
    EXPECT_EQ(a.report.dump(2), b.report.dump(2));
    EXPECT_EQ(a.exit_code, kComputed);
    EXPECT_EQ(a.report["witness"]["text"], "1+i+j");
    EXPECT_EQ(a.report["value_x"], nlohmann::json::array({"0"}));
    EXPECT_EQ(a.report["value_sigma_x_x"], nlohmann::json::array({"1"}));
    std::string prev;
    for (auto it = a.report.begin(); it != a.report.end(); ++it) {
        EXPECT_LT(prev, it.key());
        prev = it.key();
    }
    EXPECT_EQ(value_json(Value::infinity(2)), "inf");
}

TEST(Tool, CheckSpecialMessageAndExitCodes) {
    auto r = run_tool("check-special " + kExamples + "/quaternion_3adic.toml");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("NOT σ-special; witness 1+i+j"), std::string::npos) << r.out;
    auto u = run_tool("check-special " + kExamples + "/m2_transpose_3adic.toml --budget 3");
    EXPECT_EQ(u.code, 1) << u.out;
    auto s = run_tool("check-special " + kExamples + "/m2_transpose_3adic.toml --budget 3 --strict");
    EXPECT_EQ(s.code, 1);
    EXPECT_NE(s.out.find("strict"), std::string::npos);
    EXPECT_EQ(run_tool("check-special /nonexistent/file.toml").code, 2);
    EXPECT_EQ(run_tool("frobnicate").code, 2);
    EXPECT_EQ(run_tool("compose " + kExamples + "/quaternion_3adic.toml").code, 2);
    // verdicts are not errors
    EXPECT_EQ(run_tool("check-gauge " + kExamples + "/triangular_custom.toml").code, 0);
}

TEST(Tool, GradedDumpOfTheCharacteristicTwoSwap) {
    auto r = run_tool("graded-dump " + kExamples + "/char2_swap_2adic.toml");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1~ ∈ Symd"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("type=symplectic"), std::string::npos) << r.out;
}

TEST(Tool, SuiteAllPassAndJsonIsByteIdentical) {
    std::string j1 = ::testing::TempDir() + "/suite1.json", j2 = ::testing::TempDir() + "/suite2.json";
    auto r = run_tool("suite --json " + j1);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("0 failed, 0 undecided"), std::string::npos) << r.out;
    run_tool("suite --json " + j2);
    auto slurp = [](const std::string& p) {
        FILE* f = fopen(p.c_str(), "rb");
        std::string s;
        if (!f) return s;
        int c;
        while ((c = fgetc(f)) != EOF) s += char(c);
        fclose(f);
        return s;
    };
    std::string a = slurp(j1);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(j2));
}
