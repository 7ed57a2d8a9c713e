// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
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

#include "dpcp/cli.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dpcp/dataset_io.h"
#include "dpcp/report_json.h"

namespace dpcp::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("dpcp_cli_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    SetDefaultExecutionPolicy(ExecutionPolicy{});
    fs::remove_all(dir_);
  }

  int Call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return dpcp::cli::Run(args, out_, err_);
  }

  std::string Slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  Json ReadJson(const fs::path& path) { return Json::parse(Slurp(path)); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, UsageErrorsExitWithOne) {
  EXPECT_EQ(Call({}), kExitUsage);
  EXPECT_EQ(Call({"bogus"}), kExitUsage);
  EXPECT_EQ(Call({"fit"}), kExitUsage);  // --data is required
  EXPECT_EQ(Call({"synth", "--no-such-flag"}), kExitUsage);
  EXPECT_EQ(Call({"--out", dir_.string(), "synth", "--M", "3", "--ratio", "0.5"}), kExitUsage);
  EXPECT_EQ(Call({"--threads", "-2", "--out", dir_.string(), "synth", "--N", "3"}), kExitUsage);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, HelpExitsWithZero) {
  EXPECT_EQ(Call({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("synth"), std::string::npos);
}

TEST_F(CliTest, MissingInputIsARuntimeFailure) {
  EXPECT_EQ(Call({"--out", dir_.string(), "fit", "--data", (dir_ / "absent.csv").string()}), kExitRuntime);
}

TEST_F(CliTest, SynthResolvesRatioAndWritesManifest) {
  ASSERT_EQ(Call({"--seed", "1", "--out", dir_.string(), "synth", "--ratio", "0.7"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("M=1167"), std::string::npos) << out_.str();
  const Dataset data = LoadDataset(dir_ / "dataset.csv");
  EXPECT_EQ(data.dim(), 30);
  EXPECT_EQ(data.size(), 500 + 1167);
  const Json truth = ReadJson(dir_ / "truth.json");
  EXPECT_EQ(truth["normals"].size(), 1u);
  const Json manifest = ReadJson(dir_ / "synth.manifest.json");
  EXPECT_EQ(manifest["command"], "synth");
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["config"]["M"], 1167);
  EXPECT_EQ(manifest["argv"].size(), 7u);
  EXPECT_EQ(manifest["outputs"].size(), 2u);
}

TEST_F(CliTest, FitMatchesBruteForceOnPlanarToy) {
  // Five unit vectors in R^2; the l1 minimizer is found by a fine angle scan.
  Matrix x(2, 5);
  for (int j = 0; j < 5; ++j) x.col(j) << std::cos(0.3 * j + 0.1), std::sin(0.3 * j + 0.1);
  const fs::path data = dir_ / "toy.csv";
  SaveDataset(Dataset(x), data);
  ASSERT_EQ(Call({"--out", dir_.string(), "oracle", "--data", data.string()}), kExitOk) << err_.str();
  const double oracle = ReadJson(dir_ / "oracle.json")["objective"];
  for (const char* method : {"psgm", "mbls", "alp", "irls"}) {
    ASSERT_EQ(Call({"--out", dir_.string(), "fit", "--data", data.string(), "--method", method}), kExitOk)
        << method << ": " << err_.str();
    const Json fit = ReadJson(dir_ / "fit.json");
    EXPECT_LE(fit["final_objective"].get<double>(), oracle + 1e-6) << method;
    EXPECT_GE(fit["final_objective"].get<double>(), oracle - 1e-4) << method;
  }
}

TEST_F(CliTest, DeterministicRerunsAreByteIdentical) {
  ASSERT_EQ(Call({"--seed", "3", "--out", dir_.string(), "synth", "--D", "8", "--d", "7", "--N", "100",
                  "--M", "150", "--format", "bin"}),
            kExitOk);
  const std::vector<std::string> fit = {"--deterministic", "--threads", "2", "--out", dir_.string(), "fit",
                                        "--data", (dir_ / "dataset.bin").string(), "--max-iters", "80"};
  ASSERT_EQ(Call(fit), kExitOk) << err_.str();
  const std::string json1 = Slurp(dir_ / "fit.json");
  const std::string trace1 = Slurp(dir_ / "trace.csv");
  const std::string manifest1 = Slurp(dir_ / "fit.manifest.json");
  ASSERT_EQ(Call(fit), kExitOk);
  EXPECT_EQ(Slurp(dir_ / "fit.json"), json1);
  EXPECT_EQ(Slurp(dir_ / "trace.csv"), trace1);
  EXPECT_EQ(Slurp(dir_ / "fit.manifest.json"), manifest1);
  EXPECT_EQ(ReadJson(dir_ / "fit.json")["wall_nanos"], 0);
}

TEST_F(CliTest, FitWritesTraceAndTheta) {
  ASSERT_EQ(Call({"--seed", "2", "--out", dir_.string(), "synth", "--D", "10", "--d", "9", "--N", "200",
                  "--M", "200"}),
            kExitOk);
  ASSERT_EQ(Call({"--out", dir_.string(), "fit", "--data", (dir_ / "dataset.csv").string(), "--max-iters",
                  "300"}),
            kExitOk);
  EXPECT_EQ(out_.str().rfind("objective ", 0), 0u);
  const std::string trace = Slurp(dir_ / "trace.csv");
  EXPECT_EQ(trace.rfind("k,objective,step,theta,phi,wall_nanos\n", 0), 0u);
  const Json fit = ReadJson(dir_ / "fit.json");
  EXPECT_EQ(fit["method"], "psgm");
  EXPECT_LE(fit["iters"].get<int>(), 300);
  EXPECT_EQ(Call({"--out", dir_.string(), "fit", "--data", (dir_ / "dataset.csv").string(), "--schedule",
                  "weird"}),
            kExitUsage);
}

TEST_F(CliTest, QuantitiesPhaseGridAndRoc) {
  ASSERT_EQ(Call({"--seed", "2", "--out", dir_.string(), "synth", "--D", "6", "--d", "5", "--N", "60",
                  "--M", "20"}),
            kExitOk);
  ASSERT_EQ(Call({"--out", dir_.string(), "quantities", "--data", (dir_ / "dataset.csv").string(),
                  "--budget", "200"}),
            kExitOk)
      << err_.str();
  const Json q = ReadJson(dir_ / "quantities.json");
  EXPECT_TRUE(q.contains("stats"));

  ASSERT_EQ(Call({"--out", dir_.string(), "phase", "--Ms", "10,20", "--Ns", "5,20", "--D", "4", "--d", "3",
                  "--trials", "2", "--max-iters", "50"}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "phase.csv"));
  EXPECT_EQ(ReadJson(dir_ / "phase.json")["cells"].size(), 4u);

  ASSERT_EQ(Call({"--out", dir_.string(), "grid-alp", "--N", "40", "--D", "6", "--ratios", "0.1",
                  "--rel-dims", "0.5", "--trials", "1", "--budget", "100"}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "grid_alp.csv"));

  ASSERT_EQ(Call({"--out", dir_.string(), "roc", "--synthetic", "--inliers", "120", "--outliers", "80",
                  "--threshold", "0.003"}),
            kExitOk)
      << err_.str();
  const Json roc = ReadJson(dir_ / "roc.json");
  ASSERT_TRUE(roc.contains("detection"));
  EXPECT_GE(roc["detection"]["auc"].get<double>(), 0.9);
  EXPECT_TRUE(fs::exists(dir_ / "roc.manifest.json"));
  EXPECT_EQ(Call({"--out", dir_.string(), "roc"}), kExitUsage);  // no cloud source
}

// The installed binary maps failures to process exit codes.
TEST_F(CliTest, BinaryExitCodes) {
  const std::string tool = DPCP_TOOL_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("--help"), 0);
  EXPECT_EQ(status("--frobnicate"), 1);
  EXPECT_EQ(status("--out " + dir_.string() + " fit --data " + (dir_ / "nope.csv").string()), 2);
  EXPECT_EQ(status("--out " + dir_.string() + " synth --D 4 --d 3 --N 5 --M 5"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "dataset.csv"));
}

}  // namespace
}  // namespace dpcp::cli
