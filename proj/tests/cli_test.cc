/* Copyright 2026 The Robscore Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "robscore/cli.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "oracles.h"
#include "robscore/dataset.h"
#include "robscore/io.h"
#include "robscore/model_io.h"

namespace robscore::cli {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;
using testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> SplitCsvRow(const std::string& text, int row) {
  std::istringstream in(text);
  std::string line;
  for (int i = 0; i <= row; ++i) std::getline(in, line);
  std::vector<std::string> fields;
  std::istringstream fs(line);
  std::string f;
  while (std::getline(fs, f, ',')) fields.push_back(f);
  return fields;
}

class CliTest : public ::testing::Test {
 protected:
  std::string Path(const std::string& name) const { return dir_.File(name); }

  void MakeData(const std::string& means = "0,0:4,0", const std::string& n = "100") {
    ASSERT_EQ(Cli({"gen", "--means", means, "--n", n, "--seed", "7", "--out", Path("d.csv")}).code,
              kExitOk);
  }

  TempDir dir_;
};

TEST_F(CliTest, GenWritesTheRequestedRows) {
  const auto r = Cli({"gen", "--means", "0,0:4,0", "--std", "1", "--n", "200", "--seed", "7",
                      "--out", Path("g.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, StartsWith("gen seed=7 samples=400"));
  EXPECT_EQ(LoadCsv(Path("g.csv")).size(), 400u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  const auto unknown = Cli({"gen", "--bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"gen", "--means", "0,0", "--out", Path("x.csv")}).code, kExitUsage);
  EXPECT_EQ(Cli({"gen", "--means", "0,0:1,a", "--out", Path("x.csv")}).code, kExitUsage);
  EXPECT_EQ(Cli({"gen", "--means", "0,0:1,0", "--std", "-1", "--out", Path("x.csv")}).code,
            kExitUsage);
  MakeData();
  ASSERT_EQ(Cli({"train", "--data", Path("d.csv"), "--out", Path("m.json")}).code, kExitOk);
  EXPECT_EQ(Cli({"score", "--model", Path("m.json"), "--data", Path("d.csv"), "--precision",
                 "0"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"tradeoff", "--model", Path("m.json"), "--data", Path("d.csv"), "--alpha",
                 "1.5"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"train", "--data", Path("d.csv"), "--kind", "svm", "--out", Path("m.json")}).code,
            kExitUsage);
}

TEST_F(CliTest, MissingInputNamesThePath) {
  const std::string missing = Path("nowhere.csv");
  const auto r = Cli({"train", "--data", missing, "--out", Path("m.json")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_THAT(r.err, HasSubstr(missing));
  EXPECT_FALSE(std::filesystem::exists(Path("m.json")));
}

TEST_F(CliTest, MalformedInputsAreDataErrors) {
  MakeData();
  std::ofstream(Path("bad.json")) << "{\"kind\":\"tree\"}";
  EXPECT_EQ(Cli({"score", "--model", Path("bad.json"), "--data", Path("d.csv"), "--out",
                 Path("s.csv")}).code,
            kExitData);
  std::ofstream(Path("bad.csv")) << "1,2,x\n";
  EXPECT_EQ(Cli({"train", "--data", Path("bad.csv"), "--out", Path("m.json")}).code, kExitData);
  // A 3-feature model against 2-feature data.
  MakeData("0,0,0:4,0,0");
  std::filesystem::rename(Path("d.csv"), Path("d3.csv"));
  ASSERT_EQ(Cli({"train", "--data", Path("d3.csv"), "--out", Path("m3.json")}).code, kExitOk);
  MakeData();
  EXPECT_EQ(Cli({"score", "--model", Path("m3.json"), "--data", Path("d.csv"), "--out",
                 Path("s.csv")}).code,
            kExitData);
}

TEST_F(CliTest, ExperimentFailuresAreNumericErrors) {
  std::ofstream(Path("few.csv")) << "0,1\n1,2\n";
  ASSERT_EQ(Cli({"train", "--data", Path("few.csv"), "--out", Path("m.json")}).code, kExitOk);
  const auto r = Cli({"regress", "--model", Path("m.json"), "--data", Path("few.csv"), "--out",
                      Path("p.csv"), "--summary", Path("s.csv")});
  EXPECT_EQ(r.code, kExitNumeric) << r.err;
}

TEST_F(CliTest, VersionAndHelp) {
  const auto v = Cli({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_THAT(v.out, HasSubstr(kVersion));
  for (const char* sub : {"gen", "train", "score", "radius", "regress", "split-report", "sweep",
                          "heatmap", "mce-curve", "tradeoff"}) {
    const auto h = Cli({sub, "--help"});
    EXPECT_EQ(h.code, kExitOk) << sub;
    EXPECT_THAT(h.out, HasSubstr("--seed")) << sub;
    EXPECT_THAT(h.out, HasSubstr("--config")) << sub;
  }
  const auto score = Cli({"score", "--help"}).out;
  EXPECT_THAT(score, HasSubstr("5000"));
  EXPECT_THAT(score, HasSubstr("0.5"));
  const auto heat = Cli({"heatmap", "--help"}).out;
  EXPECT_THAT(heat, HasSubstr("300"));
  EXPECT_THAT(heat, HasSubstr("50"));
}

TEST_F(CliTest, SeedDefaultsToZero) {
  const auto r = Cli({"gen", "--means", "0,0:4,0", "--n", "5", "--out", Path("a.csv")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_THAT(r.out, StartsWith("gen seed=0 "));
  ASSERT_EQ(Cli({"gen", "--means", "0,0:4,0", "--n", "5", "--seed", "0", "--out", Path("b.csv")})
                .code,
            kExitOk);
  EXPECT_EQ(ReadFile(Path("a.csv")), ReadFile(Path("b.csv")));
}

TEST_F(CliTest, ConfigFileLosesToFlags) {
  std::ofstream(Path("gen.cfg")) << "means=0,0:4,0\nn=3\nseed=9\n";
  auto r = Cli({"gen", "--config", Path("gen.cfg"), "--out", Path("a.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, StartsWith("gen seed=9 samples=6"));
  r = Cli({"gen", "--config", Path("gen.cfg"), "--n", "4", "--out", Path("a.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, StartsWith("gen seed=9 samples=8"));
}

TEST_F(CliTest, PipelineReproducesTheBinomialIdentity) {
  const auto start = std::chrono::steady_clock::now();
  MakeData("0,0:3,0", "200");
  ASSERT_EQ(Cli({"train", "--data", Path("d.csv"), "--out", Path("m.json")}).code, kExitOk);
  const auto score = Cli({"score", "--model", Path("m.json"), "--data", Path("d.csv"),
                          "--precision", "0.01", "--out", Path("s.csv")});
  ASSERT_EQ(score.code, kExitOk) << score.err;
  EXPECT_THAT(score.out, HasSubstr("R_nu="));
  const auto reg = Cli({"regress", "--model", Path("m.json"), "--data", Path("d.csv"), "--out",
                        Path("p.csv"), "--summary", Path("rs.csv")});
  ASSERT_EQ(reg.code, kExitOk) << reg.err;

  const auto header = SplitCsvRow(ReadFile(Path("s.csv")), 0);
  const auto row = SplitCsvRow(ReadFile(Path("s.csv")), 1);
  ASSERT_EQ(header[2], "r_nu");
  ASSERT_EQ(header[3], "accuracy");
  ASSERT_EQ(header[5], "n_excluded_nu");
  const auto model = std::get<LinearModel>(LoadModel(Path("m.json")));
  const double norm = model.BinomialWeights().norm();
  EXPECT_EQ(row[5], "0");
  EXPECT_NEAR(ParseDouble(row[2]) * norm, ParseDouble(row[3]), 1e-6);

  const auto summary = SplitCsvRow(ReadFile(Path("rs.csv")), 2);
  EXPECT_NEAR(ParseDouble(summary[0]), 1.0 / norm, 1e-9);
  EXPECT_NEAR(ParseDouble(summary[2]), 1.0, 1e-6);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  MakeData();
  ASSERT_EQ(Cli({"train", "--data", Path("d.csv"), "--kind", "mlp", "--hidden", "4", "--epochs",
                 "20", "--out", Path("m.json")})
                .code,
            kExitOk);
  for (int run = 0; run < 2; ++run) {
    const std::string tag = std::to_string(run);
    ASSERT_EQ(Cli({"train", "--data", Path("d.csv"), "--kind", "mlp", "--hidden", "4",
                   "--epochs", "20", "--out", Path("m" + tag + ".json")})
                  .code,
              kExitOk);
    ASSERT_EQ(Cli({"radius", "--model", Path("m.json"), "--data", Path("d.csv"), "--directions",
                   "50", "--precision", "0.05", "--workers", run ? "3" : "1", "--out",
                   Path("r" + tag + ".csv")})
                  .code,
              kExitOk);
  }
  EXPECT_EQ(ReadFile(Path("m0.json")), ReadFile(Path("m1.json")));
  EXPECT_EQ(ReadFile(Path("r0.csv")), ReadFile(Path("r1.csv")));
}

}  // namespace
}  // namespace robscore::cli
