#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Run {
  int code;
  std::string out;
};

/// Runs the CLI and captures stdout, or stderr when `want_stderr` is set.
Run run(const std::string& args, bool want_stderr = false) {
  const std::string cmd = std::string(NESTLIE_CLI) + " " + args + (want_stderr ? " 2>&1 >/dev/null" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("nestlie_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static Json read_json(const std::string& p) {
    std::ifstream in(p);
    return Json::parse(in);
  }
  static void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

  fs::path dir_;
};

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_F(CliTest, SpacesReportsDimensions) {
  const auto r = run(R"(spaces --nest '{"blocks":[1,1]}' --n 2)");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["dims"]["derivation"], 3);
  EXPECT_EQ(j["dims"]["central_vanishing"], 2);
  EXPECT_EQ(j["dims"]["lie_n"], 5);
  EXPECT_EQ(j["dims"]["K_n"], 1);
}

TEST_F(CliTest, SpacesEmitsBasesToFile) {
  const auto r = run(R"(spaces --nest '{"blocks":[1,2]}' --n 3 --emit-bases --out )" + path("s.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = read_json(path("s.json"));
  EXPECT_EQ(j["dims"]["lie_n"], 10);
}

TEST_F(CliTest, InputErrorsExitOne) {
  EXPECT_EQ(run(R"(spaces --nest '{"blocks":[0,1]}' --n 2)").code, 1);
  EXPECT_EQ(run(R"(spaces --nest '{"blocks":[1,1]}' --n 1)").code, 1);
  EXPECT_EQ(run("spaces --nest-file " + path("missing.json") + " --n 2").code, 1);
  EXPECT_EQ(run(R"(decompose --nest '{"blocks":[2,1]}' --n 2 --random --route general)").code, 1);
}

TEST_F(CliTest, BudgetExitsTwo) {
  EXPECT_EQ(run(R"(spaces --nest '{"blocks":[5,5]}' --n 3)").code, 2);
  EXPECT_EQ(run(R"(spaces --nest '{"blocks":[1,2]}' --n 3 --budget-tuples 10)").code, 2);
}

TEST_F(CliTest, DecomposeThenVerify) {
  const std::string cert = path("c.json");
  ASSERT_EQ(run(R"(decompose --nest '{"blocks":[1,2]}' --n 2 --random --seed 7 --out )" + cert).code, 0);
  const Json c = read_json(cert);
  EXPECT_EQ(c["verified"], true);
  EXPECT_EQ(c["route"], "GENERAL");
  EXPECT_EQ(run("verify " + cert).code, 0);

  // Same seed, same bytes.
  ASSERT_EQ(run(R"(decompose --nest '{"blocks":[1,2]}' --n 2 --random --seed 7 --out )" + path("c2.json")).code, 0);
  std::stringstream a, b;
  a << std::ifstream(cert).rdbuf();
  b << std::ifstream(path("c2.json")).rdbuf();
  EXPECT_EQ(a.str(), b.str());

  for (const char* route : {"generic", "dim1"}) {
    const std::string p = path(std::string(route) + ".json");
    ASSERT_EQ(run(std::string(R"(decompose --nest '{"blocks":[2,1]}' --n 3 --random --seed 3 --route )") + route + " --out " + p).code, 0);
    EXPECT_EQ(run("verify " + p).code, 0);
  }
}

TEST_F(CliTest, NonLieMapExitsThree) {
  const std::string cert = path("c.json");
  ASSERT_EQ(run(R"(decompose --nest '{"blocks":[1,2]}' --n 2 --random --seed 7 --out )" + cert).code, 0);
  Json map = read_json(cert)["L"];
  map["values"][0][0][1] = Json::array({"99", "0"});
  write(path("bad.json"), map.dump());
  const auto r = run("decompose --n 2 --map " + path("bad.json"), true);
  EXPECT_EQ(r.code, 3);
  const Json err = Json::parse(r.out);
  EXPECT_EQ(err["error"], "NOT-LIE-N");
  EXPECT_EQ(err["tuple"].size(), 2u);
  EXPECT_NE(err["lhs"], err["rhs"]);
}

TEST_F(CliTest, TamperedCertificateExitsFive) {
  // L = [E12, .] + H0 with H0(E11) = I on blocks (1,1).
  write(path("map.json"), R"({"nest":{"blocks":[1,1]},"values":[[[1,-1],[0,1]],[[0,0],[0,0]],[[0,1],[0,0]]]})");
  const std::string cert = path("c.json");
  ASSERT_EQ(run("decompose --n 2 --route generic --map " + path("map.json") + " --out " + cert).code, 0);
  EXPECT_EQ(run("verify " + cert).code, 0);

  // Shift I from D(E12) into H(E12): L = D + H still holds, but H no longer kills E12.
  Json c = read_json(cert);
  for (int k = 0; k < 2; ++k) {
    c["H"]["values"][1][k][k] = Json::array({"1", "0"});
    c["D"]["values"][1][k][k] = Json::array({"-1", "0"});
  }
  write(path("bad.json"), c.dump());
  EXPECT_EQ(run("verify " + path("bad.json")).code, 5);

  Json sum = read_json(cert);
  sum["H"]["values"][2][0][0] = Json::array({"5", "0"});
  write(path("sum.json"), sum.dump());
  EXPECT_EQ(run("verify " + path("sum.json")).code, 5);

  std::stringstream text;
  text << std::ifstream(cert).rdbuf();
  write(path("trunc.json"), text.str().substr(0, text.str().size() / 2));
  EXPECT_EQ(run("verify " + path("trunc.json")).code, 1);
}

TEST_F(CliTest, SurveyRowsAndBudget) {
  const auto r = run(R"(survey --nests '[[1,1],[1,2],[2,1],[1,1,1],[2,2]]' --orders 2,3)");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 11);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "blocks,n,d,derivation,central_vanishing,lie_n,K_n,gauge,identity,status,seed");
  while (std::getline(in, line)) {
    EXPECT_NE(line.find(",0,true,OK,"), std::string::npos) << line;
  }

  const auto empty = run(R"(survey --nests '[]' --orders 2)");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(count_lines(empty.out), 1);

  const auto big = run(R"(survey --nests '[[1,1],[5,5]]' --orders 2)");
  EXPECT_EQ(big.code, 0);
  EXPECT_NE(big.out.find("\"(5,5)\",2,75,,,,,,,BUDGET"), std::string::npos);
  EXPECT_NE(big.out.find("\"(1,1)\",2,3,3,2,5,1,0,true,OK"), std::string::npos);
}

TEST_F(CliTest, ConditionsOnFullAlgebra) {
  const auto r = run(R"(conditions --full --nest '{"blocks":[1,2]}' --seed 4)");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["spade1"], "PROVED");
  EXPECT_EQ(j["spade4"], "SAMPLED-CONSISTENT");
  EXPECT_EQ(j["seed"], 4);
}
