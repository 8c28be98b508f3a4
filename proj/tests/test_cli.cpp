#include "muntz/cli.hpp"
#include "muntz/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace muntz;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("muntz_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::filesystem::path dir_;
};

}  // namespace

TEST(IndexList, Parsing) {
    EXPECT_EQ(cli::parse_index_list("1..3,8"), (std::vector<std::size_t>{1, 2, 3, 8}));
    EXPECT_THROW(cli::parse_index_list("4..2"), PreconditionError);
    EXPECT_THROW(cli::parse_index_list("x"), PreconditionError);
    EXPECT_EQ(cli::parse_real_list("0.5, 1e-3"), (std::vector<double>{0.5, 1e-3}));
}

TEST_F(CliTest, CheckLambdaPowerTwo) {
    const auto r = run({"check-lambda", "--rule", "power", "--p", "2", "--N", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["command"], "check-lambda");
    EXPECT_DOUBLE_EQ(j["result"]["alpha0"].get<double>(), 3.0);
    EXPECT_NEAR(j["result"]["alpha1"].get<double>(), 1.6449, 1e-4);
    EXPECT_EQ(j["result"]["verdict"], "both-conditions-hold");
    EXPECT_EQ(j["config"]["N"], "1000");
}

TEST_F(CliTest, LebesgueFejerCsv) {
    const auto r = run({"lebesgue", "--method", "fejer", "--n", "1..32"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# {", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "n,value,tol");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto a = line.find(',');
        const auto b = line.find(',', a + 1);
        EXPECT_NEAR(std::stod(line.substr(a + 1, b - a - 1)), 1.0, 1e-6);
        ++rows;
    }
    EXPECT_EQ(rows, 32);
}

TEST_F(CliTest, InvalidFlagWritesNothing) {
    const auto out = path("x.json");
    const auto r = run({"lebesgue", "--bogus", "1", "--out", out});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(std::filesystem::exists(out));
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nope"}).code, 2);
}

TEST_F(CliTest, PreconditionAndIoExitCodes) {
    const auto out = path("y.json");
    EXPECT_EQ(run({"check-lambda", "--rule", "power", "--p", "-1", "--out", out}).code, 2);
    EXPECT_FALSE(std::filesystem::exists(out));
    EXPECT_EQ(run({"basis-validate", "--in", path("missing.json")}).code, 4);
    EXPECT_EQ(run({"lebesgue", "--n", "1", "--out", path("no/dir/z.csv")}).code, 4);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
    const auto cfg = path("cfg.json");
    write_text_file(cfg, R"({"rule": "geometric", "base": 3, "N": 5})");
    const auto a = run({"check-lambda", "--config", cfg});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_DOUBLE_EQ(Json::parse(a.out)["result"]["alpha0"].get<double>(), 6.0);
    const auto b = run({"check-lambda", "--config", cfg, "--base", "2"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_DOUBLE_EQ(Json::parse(b.out)["result"]["alpha0"].get<double>(), 2.0);
    write_text_file(cfg, R"({"rule": "power", "colour": 1})");
    EXPECT_EQ(run({"check-lambda", "--config", cfg}).code, 2);
    EXPECT_EQ(run({"check-lambda", "--config", path("none.json")}).code, 4);
}

TEST_F(CliTest, EmbeddedConfigReproducesArtifact) {
    const auto a = path("a.json");
    ASSERT_EQ(run({"remez-eta", "--lambda", "power:2", "--N", "8", "--samples", "20", "--seed", "7", "--out", a}).code, 0);
    const auto first = read_json_file(a);
    EXPECT_EQ(first["seed"], 7);
    const auto cfg = path("cfg.json");
    Json c = first["config"];
    c["seed"] = std::to_string(first["seed"].get<std::uint64_t>());
    write_text_file(cfg, c.dump());
    const auto b = path("b.json");
    ASSERT_EQ(run({"remez-eta", "--config", cfg, "--out", b}).code, 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(CliTest, BasisBuildThenValidate) {
    const auto step = path("step.json");
    const auto r = run({"basis-build", "--lambda", "geometric:2", "--N", "6", "--method", "fejer", "--degrees",
                        "2,4,8", "--out", step});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto built = read_json_file(step);
    EXPECT_TRUE(built["result"]["violations"].empty());
    const auto v = run({"basis-validate", "--in", step, "--L", "3", "--probes", "6", "--seed", "3"});
    ASSERT_EQ(v.code, 0) << v.err;
    const auto j = Json::parse(v.out);
    EXPECT_TRUE(j["result"]["lead_columns_strict"].get<bool>());
    EXPECT_GT(j["result"]["inclination_floor"].get<double>(), 0.0);
}

TEST_F(CliTest, OtherSubcommandsRun) {
    const auto seq = path("from.json");
    const auto to = path("to.json");
    write_text_file(seq, R"({"rule": "explicit", "N": 3, "exponents": [1, 2, 3]})");
    write_text_file(to, R"({"rule": "explicit", "N": 3, "exponents": [1, 2.1, 3.05]})");
    const auto t5 = run({"theorem5", "--from", seq, "--to", to, "--samples", "12", "--seed", "1"});
    ASSERT_EQ(t5.code, 0) << t5.err;
    EXPECT_EQ(Json::parse(t5.out)["result"]["violations"], 0);
    EXPECT_EQ(run({"fourier-approx", "--function", "t2-t4", "--n", "1,2,4"}).code, 0);
    EXPECT_EQ(run({"best-approx", "--function", "cos", "--k", "2", "--n", "2"}).code, 0);
    EXPECT_EQ(run({"weil-deriv", "--function", "abs-cos", "--K", "8", "--r", "1", "--beta", "1"}).code, 0);
    EXPECT_EQ(run({"weak-norm", "--function", "2t"}).code, 0);
    EXPECT_EQ(run({"prop10", "--exponents", "1,3", "--coefficients", "1,-1"}).code, 0);
    EXPECT_EQ(run({"asymptotic", "--alpha", "0.5", "--K", "4096"}).code, 0);
    EXPECT_EQ(run({"rate-experiment", "--lambda", "power:2", "--N", "8", "--n-max", "8", "--samples", "2"}).code, 0);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliBinary, RunsAsProcess) {
    const std::string cmd = std::string(MUNTZ_CLI_PATH) + " check-lambda --rule power --p 2 --N 10 > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    const std::string bad = std::string(MUNTZ_CLI_PATH) + " lebesgue --bogus 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
