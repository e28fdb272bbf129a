// Copyright 2026 The ridgekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "ridgekit/json_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = ridgekit::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ridgekit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ridgekit::write_text_file_atomic(
        dir_ / "spec.json",
        R"({"d":4,"components":[{"xi":[0.5,0.5,0.5,0.5],"g":{"kind":"sin","params":[1,1,0]},"alpha":1,"L":1,"G":1}]})");
    ridgekit::write_text_file_atomic(
        dir_ / "config.json",
        R"({"spec_path":"spec.json","sizes":[64,128,256],"trials":2,"alpha":1,"noise_level":0.3,
            "base_seed":42,"M":1.3,"S":2,"ridge_eps":0.01,"n_test":2000})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"bounds", "--S", "2"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto r = run({"build", "--spec", path("missing.json"), "--S", "2", "--N", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, BoundsReportsParamCount) {
  const auto r = run({"bounds", "--S", "2", "--d", "4", "--m", "1", "--N", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& e : j["entries"]) {
    if (e["name"] == "param_count") {
      found = true;
      EXPECT_EQ(e["value"].get<double>(), 36.0);
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, BuildEvalApprox) {
  ASSERT_EQ(run({"build", "--spec", path("spec.json"), "--S", "2", "--N", "6", "--out", path("model.json")}).code, 0);
  const auto e = run({"eval", "--model", path("model.json"), "--x", "0.1,0.2,-0.3,0.1"});
  ASSERT_EQ(e.code, 0) << e.err;
  const double pred = nlohmann::json::parse(e.out)["prediction"].get<double>();
  EXPECT_NEAR(pred, std::sin(0.5 * 0.1), 1.0 / 6.0);
  const auto a = run({"approx", "--model", path("model.json"), "--spec", path("spec.json"), "--probes", "500"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(nlohmann::json::parse(a.out)["within_bound"].get<bool>());
  EXPECT_EQ(run({"eval", "--model", path("model.json"), "--x", "1,1,1,1"}).code, 1);
  EXPECT_EQ(run({"eval", "--model", path("model.json"), "--x", "0.1,abc"}).code, 1);
}

TEST_F(CliTest, EvalZeroModelIsZero) {
  ASSERT_EQ(run({"build", "--spec", path("spec.json"), "--S", "2", "--N", "2", "--out", path("model.json")}).code, 0);
  auto j = nlohmann::json::parse(ridgekit::read_text_file(path("model.json")));
  for (auto& w : j["filters"])
    for (auto& v : w) v = 0.0;
  for (auto& b : j["biases"])
    for (auto& v : b) v = 0.0;
  for (auto& v : j["fc_bias"]) v = 0.0;
  for (auto& v : j["c"]) v = 0.0;
  ridgekit::write_text_file_atomic(path("zero.json"), j.dump());
  const auto e = run({"eval", "--model", path("zero.json"), "--x", "0.3,0,0,0.2"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(nlohmann::json::parse(e.out)["prediction"].get<double>(), 0.0);
}

TEST_F(CliTest, FactorizeRoundTrip) {
  ridgekit::write_text_file_atomic(path("w.json"), "[1, -0.5, 0.25, 0.3, -0.2, 0.1]");
  const auto r = run({"factorize", "--filter", path("w.json"), "--S", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["relative_error"].get<double>(), 1e-8);
  EXPECT_LE(j["count"].get<int>(), 3);
}

TEST_F(CliTest, MinimaxVerifies) {
  const auto r = run({"minimax", "--N-hat", "16", "--alpha", "1", "--G", "1", "--L", "1", "--seed", "3",
                      "--out", path("packing.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto v = nlohmann::json::parse(r.out)["verification"];
  EXPECT_TRUE(v["separation_ok"].get<bool>());
  EXPECT_TRUE(v["kl_ok"].get<bool>());
  EXPECT_TRUE(fs::exists(path("packing.json")));
  EXPECT_EQ(run({"minimax", "--N-hat", "4", "--alpha", "1", "--G", "1", "--L", "1"}).code, 1);
}

TEST_F(CliTest, FitAndRate) {
  const auto f = run({"fit", "--config", path("config.json"), "--n", "200", "--seed", "1"});
  ASSERT_EQ(f.code, 0) << f.err;
  const auto j = nlohmann::json::parse(f.out);
  EXPECT_TRUE(j.contains("model"));
  EXPECT_GT(j["l2_error"].get<double>(), 0.0);
  const auto r = run({"rate", "--config", path("config.json"), "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,trial,mse\n", 0), 0u);
  EXPECT_NE(r.out.find("# slope="), std::string::npos);
}

TEST_F(CliTest, DeterministicOutputs) {
  const std::vector<std::vector<std::string>> cmds{
      {"build", "--spec", path("spec.json"), "--S", "2", "--N", "5"},
      {"bounds", "--S", "2", "--d", "4", "--m", "1", "--N", "5", "--B", "16", "--alpha", "1", "--n", "1000"},
      {"minimax", "--N-hat", "24", "--alpha", "0.5", "--G", "1", "--L", "1", "--seed", "9", "--max-pairs", "8"},
      {"rate", "--config", path("config.json"), "--seed", "4"},
      {"fit", "--config", path("config.json"), "--method", "gd", "--epochs", "3", "--seed", "2"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST_F(CliTest, FailureLeavesNoOutputFile) {
  ridgekit::write_text_file_atomic(path("bad_spec.json"), R"({"d":4,"components":[{"xi":[1,0,0,0]}]})");
  const auto r = run({"build", "--spec", path("bad_spec.json"), "--S", "2", "--N", "3", "--out", path("m.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing field 'g'"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("m.json")));
  EXPECT_FALSE(fs::exists(path("m.json.tmp")));
}
