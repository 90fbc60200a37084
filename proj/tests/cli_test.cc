#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sndg/game_io.h"
#include "test_games.h"

namespace sndg::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "sndg");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string InstanceAFile() {
  return WriteTemp("instance_a.json", SaveGame(sndg::testing::InstanceA()));
}

TEST(CliTest, AnalyzeInstanceA) {
  const Outcome r = RunArgs({"analyze", InstanceAFile()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("PoS: 1 (1)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PoA: 3/2 (1.5)"), std::string::npos);
  EXPECT_NE(r.out.find("POPoA: 1 (1)"), std::string::npos);
  EXPECT_NE(r.out.find("nash equilibria: 2"), std::string::npos);
}

TEST(CliTest, AnalyzeJson) {
  const Outcome r = RunArgs({"--json", "analyze", InstanceAFile()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["price_of_anarchy"]["exact"], "3/2");
  EXPECT_EQ(doc["potential_optimal_price_of_anarchy"]["exact"], "1");
  EXPECT_EQ(doc["nash_count"], 2);
  // Global flags also work after the subcommand.
  EXPECT_EQ(RunArgs({"analyze", InstanceAFile(), "--json"}).out, r.out);
}

TEST(CliTest, ExitCodesAreDistinct) {
  EXPECT_EQ(RunArgs({"--max-profiles", "100", "analyze", InstanceAFile()}).code,
            kExitOk);
  EXPECT_EQ(RunArgs({"--max-profiles", "3", "analyze", InstanceAFile()}).code,
            kExitBudget);
  EXPECT_EQ(RunArgs({"analyze", WriteTemp("bad.json", "{")}).code, kExitParse);
  const std::string invalid = WriteTemp(
      "invalid.json",
      R"({"vertices":["a","b"],"edges":[{"id":"e","u":"a","v":"b",)"
      R"("cost":"-1"}],"players":[{"id":"1","source":"a","target":"b"}]})");
  const Outcome v = RunArgs({"analyze", invalid});
  EXPECT_EQ(v.code, kExitValidation);
  EXPECT_NE(v.err.find("negative cost"), std::string::npos);
  EXPECT_EQ(RunArgs({"analyze", "/nonexistent.json"}).code, kExitIo);
  EXPECT_NE(RunArgs({"nonsense"}).code, kExitOk);
}

TEST(CliTest, VerifyLemmas) {
  const Outcome a = RunArgs({"verify-lemmas", InstanceAFile()});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("lemma 1 pivot 1: Phi(N)=3 Phi(dev)=3 RHS=3 PASS"),
            std::string::npos)
      << a.out;
  const std::string disjoint =
      WriteTemp("disjoint.json", SaveGame(sndg::testing::DisjointPlayers()));
  const Outcome d = RunArgs({"verify-lemmas", disjoint});
  EXPECT_EQ(d.code, kExitOk);
  EXPECT_NE(d.out.find("lemma 3 pivot 1"), std::string::npos);
  EXPECT_EQ(d.out.find("lemma 1"), std::string::npos);
  const Outcome j = RunArgs({"--json", "verify-lemmas", disjoint});
  EXPECT_EQ(nlohmann::json::parse(j.out)["verdict"], "PASS");
}

TEST(CliTest, VerifyLemmasRefusesDirected) {
  const Outcome gen = RunArgs({"gen", "directed", "--n", "2", "--eps", "1/10"});
  ASSERT_EQ(gen.code, kExitOk);
  const Outcome r =
      RunArgs({"verify-lemmas", WriteTemp("directed.json", gen.out)});
  EXPECT_EQ(r.code, kExitPrecondition);
  EXPECT_NE(r.err.find("undirected"), std::string::npos);
}

TEST(CliTest, Bounds) {
  const Outcome r = RunArgs({"bounds", "--n-max", "10"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_NE(r.out.find("\n10,7381/2520,"), std::string::npos);

  const Outcome eps = RunArgs({"bounds", "--n-max", "10", "--epsilon", "1"});
  EXPECT_NE(eps.out.find("least tabulated n with gap < 1: 10"),
            std::string::npos);
  const Outcome two = RunArgs({"bounds", "--n", "2"});
  EXPECT_NE(two.out.find("2,3/2,1,2.56074461109,"), std::string::npos);
  const Outcome json = RunArgs({"bounds", "--n", "2", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(json.out)["rows"][0]["B(n)"],
            "2.56074461109");
}

TEST(CliTest, FuzzIsByteIdentical) {
  const std::vector<std::string> args = {"fuzz", "--players", "2",
                                         "--vertices", "4", "--edges", "6",
                                         "--count", "200", "--seed", "7"};
  const Outcome a = RunArgs(args);
  const Outcome b = RunArgs(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("violations: 0"), std::string::npos);
}

TEST(CliTest, EmptyFuzz) {
  const Outcome r = RunArgs({"fuzz", "--count", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("instances: 0"), std::string::npos);
}

TEST(CliTest, GenWritesLoadableGames) {
  const std::string path = ::testing::TempDir() + "/gen_random.json";
  const Outcome r = RunArgs({"--seed", "42", "--out", path, "gen", "random",
                             "--players", "2", "--vertices", "4", "--edges",
                             "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Game game = ReadGameFile(path);
  EXPECT_EQ(game.num_players(), 2);
  const Outcome bridge =
      RunArgs({"gen", "bridge", "--n", "3", "--bridge-cost", "1/3"});
  EXPECT_EQ(LoadGame(bridge.out).num_players(), 3);
  const Outcome impossible =
      RunArgs({"gen", "random", "--vertices", "2", "--edges", "0"});
  EXPECT_EQ(impossible.code, kExitPrecondition);
}

}  // namespace
}  // namespace sndg::cli
