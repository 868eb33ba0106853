#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "majorant_lab/montecarlo.hpp"

namespace majorant_lab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("majorant_lab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenIsDeterministicAndReadable) {
  const std::vector<std::string> args{"gen", "--model", "bernoulli", "--n", "1000",
                                      "--delta", "0.5", "--seed", "7"};
  const auto first = run(args);
  const auto second = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out.rfind("# spec_echo ", 0), 0u);

  std::istringstream in(first.out);
  const auto set = read_frequency_set(in);
  SeededRng rng(7, 0);
  const auto expected = sample(BernoulliSelector{1000, 0.5}, rng);
  EXPECT_EQ(set.freqs(), expected.freqs());

  auto other = args;
  other.back() = "8";
  EXPECT_NE(run(other).out, first.out);
}

TEST_F(CliTest, NormExactEvenEchoesResult) {
  ASSERT_EQ(run({"gen", "--model", "full_range", "--n", "3", "--out", path("s.txt")}).code, 0);
  const auto result = run({"norm", "--set-file", path("s.txt"), "--p", "4", "--method", "exact-even"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = json::parse(result.out);
  EXPECT_EQ(report["method"], "even_convolution");
  EXPECT_EQ(report["rel_error_estimate"], 0.0);
  EXPECT_NEAR(report["value"].get<double>(), std::pow(19.0, 0.25), 1e-12);
  EXPECT_EQ(report["spec_echo"]["set"], json::array({1, 2, 3}));
}

TEST_F(CliTest, ChernoffMatchesInProcessRun) {
  const auto result = run({"experiment", "--name", "chernoff", "--n", "4096", "--delta", "0.5",
                           "--trials", "2000", "--seed", "1"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = json::parse(result.out);
  const auto check = check_chernoff(BernoulliSelector{4096, 0.5}, 2000, 1);
  EXPECT_EQ(report["extra"]["empirical_probability"].get<double>(), check.probability);
  EXPECT_EQ(report["mean"].get<double>(), check.report.mean);
  EXPECT_EQ(report["spec_echo"]["seed"], 1);
  EXPECT_EQ(report["spec_echo"]["model"]["model"], "bernoulli");
}

TEST_F(CliTest, ConfigFileMergesWithFlagPrecedence) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# selector\nmodel = bernoulli\nn = 500\ndelta = 0.25  # sparse\nseed = 3\n"
           "trials = 40\n";
  }
  const auto from_file = run({"gen", "--config", path("run.cfg")});
  const auto from_flags = run({"gen", "--model", "bernoulli", "--n", "500", "--delta", "0.25",
                               "--seed", "3", "--config", path("run.cfg")});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, from_flags.out);

  const auto overridden = run({"gen", "--config", path("run.cfg"), "--seed", "4"});
  ASSERT_EQ(overridden.code, 0);
  EXPECT_NE(overridden.out.find("\"seed\":4"), std::string::npos);
  EXPECT_NE(overridden.out, from_file.out);
}

TEST_F(CliTest, ValidationErrorsExitTwoWithoutOutput) {
  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "model = bernoulli\nwidth = 3\n";
  }
  const auto unknown_key = run({"gen", "--config", path("bad.cfg"), "--out", path("o.txt")});
  EXPECT_EQ(unknown_key.code, 2);
  EXPECT_NE(unknown_key.err.find("width"), std::string::npos);

  const auto bad_type = run({"gen", "--model", "bernoulli", "--n", "ten", "--out", path("o.txt")});
  EXPECT_EQ(bad_type.code, 2);
  EXPECT_NE(bad_type.err.find("--n"), std::string::npos);

  const auto bad_value = run({"experiment", "--name", "chernoff", "--n", "4096", "--delta", "1.5",
                              "--trials", "10", "--out", path("o.txt")});
  EXPECT_EQ(bad_value.code, 2);
  EXPECT_NE(bad_value.err.find("--delta"), std::string::npos);

  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"norm", "--model", "full_range", "--n", "4", "--p", "1.5"}).code, 2);
  EXPECT_EQ(run({"experiment", "--name", "nope"}).code, 2);
  EXPECT_FALSE(fs::exists(path("o.txt")));
}

TEST_F(CliTest, RuntimeFailureExitsOne) {
  const auto result = run({"norm", "--model", "bernoulli", "--n", "300", "--delta", "0.2",
                           "--seed", "1", "--p", "3", "--rel-tol", "1e-15", "--out",
                           path("o.txt")});
  EXPECT_EQ(result.code, 1) << result.err;
  EXPECT_FALSE(fs::exists(path("o.txt")));
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"gen", "--model", "perturbed_ap", "--n", "400", "--l", "8", "--s", "4", "--a", "40",
       "--b", "5", "--seed", "2", "--format", "json"},
      {"norm", "--model", "bernoulli", "--n", "200", "--delta", "0.4", "--seed", "5", "--p", "3"},
      {"majorant", "--model", "bernoulli", "--n", "64", "--delta", "0.4", "--seed", "5", "--p",
       "3", "--restarts", "2"},
      {"lambdap", "--model", "block_uniform", "--n", "64", "--l", "8", "--seed", "5", "--p", "4",
       "--restarts", "2", "--format", "csv"},
      {"experiment", "--name", "lambda-expectation", "--n", "64", "--l", "8", "--p", "4",
       "--trials", "3", "--restarts", "2", "--seed", "9"},
      {"experiment", "--name", "selector-moment", "--model", "block_uniform", "--n", "256", "--l",
       "16", "--q", "4", "--trials", "100", "--seed", "9", "--format", "csv"}};
  for (const auto& command : commands) {
    auto a = command, b = command;
    a.insert(a.end(), {"--out", path("a.out")});
    b.insert(b.end(), {"--out", path("b.out")});
    ASSERT_EQ(run(a).code, 0) << command[0];
    ASSERT_EQ(run(b).code, 0) << command[0];
    const auto text = slurp(path("a.out"));
    EXPECT_EQ(text, slurp(path("b.out"))) << command[0];
    EXPECT_NE(text.find("spec_echo"), std::string::npos) << command[0];
  }
}

TEST_F(CliTest, SpecEchoReproducesRun) {
  const auto result = run({"majorant", "--model", "bernoulli", "--n", "64", "--delta", "0.4",
                           "--seed", "11", "--p", "3", "--restarts", "2"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = json::parse(result.out);
  const auto& echo = report["spec_echo"];
  EXPECT_EQ(echo["command"], "majorant");
  EXPECT_EQ(echo["optimizer"]["restarts"], 2);
  EXPECT_EQ(echo["optimizer"]["seed"], 11);
  EXPECT_EQ(echo["model"]["n"], 64);
  EXPECT_GE(report["ratio"].get<double>(), 1.0 - 1e-9);
}

TEST_F(CliTest, ScalingExperimentDefaults) {
  const auto result = run({"experiment", "--name", "majorant-scaling", "--n-list", "32,64,128",
                           "--p", "4", "--trials", "3", "--restarts", "1", "--seed", "2"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto report = json::parse(result.out);
  EXPECT_EQ(report["points"].size(), 3u);
  EXPECT_NEAR(report["slope"].get<double>(), 0.0, 1e-6);
  EXPECT_EQ(run({"experiment", "--name", "majorant-scaling", "--n-list", "32,64", "--p", "4"}).code,
            2);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto result = run({"--help"});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find("experiment"), std::string::npos);
}

}  // namespace
}  // namespace majorant_lab
