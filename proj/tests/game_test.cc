#include "sndg/game.h"

#include <gtest/gtest.h>

#include "sndg/errors.h"
#include "sndg/game_io.h"
#include "sndg/natural_order.h"
#include "test_games.h"

namespace sndg {
namespace {

using testing::InstanceA;
using testing::MakeGame;
using testing::ProfileOf;

constexpr const char* kInstanceA = R"({
  "vertices": ["a", "b"],
  "edges": [
    {"id": "e1", "u": "a", "v": "b", "cost": 2},
    {"id": "e2", "u": "a", "v": "b", "cost": "3"}
  ],
  "players": [
    {"id": 1, "source": "a", "target": "b"},
    {"id": 2, "source": "a", "target": "b"}
  ]
})";

std::string ValidationField(const std::string& document) {
  try {
    LoadGame(document);
  } catch (const ValidationError& e) {
    return e.field() + " | " + e.what();
  }
  return "no error";
}

TEST(GameIoTest, LoadsInstanceA) {
  const Game game = LoadGame(kInstanceA);
  EXPECT_EQ(game.num_players(), 2);
  EXPECT_EQ(game.num_edges(), 2);
  EXPECT_FALSE(game.directed());
  EXPECT_EQ(game.edge(*game.FindEdge("e2")).cost, Rational(3));
  EXPECT_EQ(game.player(0).id, "1");
  EXPECT_EQ(game, InstanceA());
}

TEST(GameIoTest, NegativeCostNamesTheField) {
  const std::string doc = R"({"vertices":["a","b"],
    "edges":[{"id":"e1","u":"a","v":"b","cost":"-1"}],
    "players":[{"id":"1","source":"a","target":"b"}]})";
  const std::string got = ValidationField(doc);
  EXPECT_NE(got.find("edges[e1].cost"), std::string::npos) << got;
  EXPECT_NE(got.find("negative cost"), std::string::npos) << got;
}

TEST(GameIoTest, UnknownVertexIsRejected) {
  const std::string doc = R"({"vertices":["a","b"],
    "edges":[{"id":"e1","u":"a","v":"b","cost":1}],
    "players":[{"id":"1","source":"a","target":"z"}]})";
  EXPECT_NE(ValidationField(doc).find("unknown vertex"), std::string::npos);
}

TEST(GameIoTest, EmptyPlayersIsRejected) {
  const std::string doc = R"({"vertices":["a","b"],
    "edges":[{"id":"e1","u":"a","v":"b","cost":1}], "players":[]})";
  EXPECT_NE(ValidationField(doc).find("at least one player"),
            std::string::npos);
}

TEST(GameIoTest, UnreachablePairIsRejected) {
  const std::string doc = R"({"vertices":["a","b","c"],
    "edges":[{"id":"e1","u":"a","v":"b","cost":1}],
    "players":[{"id":"1","source":"a","target":"c"}]})";
  EXPECT_NE(ValidationField(doc).find("unreachable"), std::string::npos);
  const std::string directed = R"({"directed":true,"vertices":["a","b"],
    "edges":[{"id":"e1","u":"a","v":"b","cost":1}],
    "players":[{"id":"1","source":"b","target":"a"}]})";
  EXPECT_NE(ValidationField(directed).find("unreachable"), std::string::npos);
}

TEST(GameIoTest, MalformedDocumentsAreParseErrors) {
  for (const char* doc :
       {"", "{", "[]", R"({"vertices":["a"]})",
        R"({"vertices":["a","b"],"edges":[],"players":[],"extra":1})",
        R"({"vertices":["a","b"],"edges":[{"id":"e","u":"a","v":"b",
            "cost":"x"}],"players":[]})",
        R"({"vertices":["a","b"],"edges":[{"id":"e","u":"a","v":"b",
            "cost":1.5}],"players":[]})"}) {
    EXPECT_THROW(LoadGame(doc), ParseError) << doc;
  }
}

TEST(GameIoTest, RoundTripKeepsExactCosts) {
  const Game game = MakeGame({"a", "b"}, {{"e1", "a", "b", Rational(7, 3)}},
                             {{"1", "a", "b"}});
  const std::string doc = SaveGame(game);
  EXPECT_NE(doc.find("\"7/3\""), std::string::npos) << doc;
  EXPECT_EQ(LoadGame(doc), game);
  EXPECT_EQ(LoadGame(SaveGame(InstanceA())), InstanceA());
}

TEST(GameIoTest, MissingFileIsAnIoError) {
  EXPECT_THROW(ReadGameFile("/nonexistent/game.json"), IoError);
}

TEST(GameTest, StructuralValidation) {
  EXPECT_THROW(MakeGame({"a"}, {{"e", "a", "a", 1}}, {{"1", "a", "a"}}),
               ValidationError);
  EXPECT_THROW(MakeGame({"a", "b"}, {{"e", "a", "b", 1}, {"e", "a", "b", 2}},
                        {{"1", "a", "b"}}),
               ValidationError);
  EXPECT_THROW(MakeGame({"a", "b"}, {{"e", "a", "b", 1}},
                        {{"1", "a", "b"}, {"1", "a", "b"}}),
               ValidationError);
  EXPECT_THROW(MakeGame({"a", "a"}, {}, {{"1", "a", "a"}}), ValidationError);
}

TEST(GameTest, IdsAreOrderedNaturally) {
  EXPECT_TRUE(NaturalLess("e2", "e10"));
  EXPECT_FALSE(NaturalLess("e10", "e2"));
  EXPECT_TRUE(NaturalLess("a", "b"));
  EXPECT_TRUE(NaturalLess("v9", "v10"));
  EXPECT_FALSE(NaturalLess("x", "x"));
  const Game game = MakeGame({"a", "b"},
                             {{"e10", "a", "b", 1}, {"e2", "a", "b", 1}},
                             {{"p10", "a", "b"}, {"p2", "a", "b"}});
  EXPECT_EQ(game.edge(0).id, "e2");
  EXPECT_EQ(game.player(0).id, "p2");
}

TEST(GameTest, ProfilesTrackUsage) {
  const Game game = InstanceA();
  const StrategyProfile both = ProfileOf(game, {{"e1"}, {"e1"}});
  EXPECT_EQ(both.usage(0), 2);
  EXPECT_EQ(both.usage(1), 0);
  EXPECT_EQ(both.users(0), AllPlayers(2));
  EXPECT_TRUE(both.Uses(1, 0));
  EXPECT_EQ(FormatPath(game, both.path(0)), "[e1]");
  const StrategyProfile moved = both.WithPath(game, 1, {1});
  EXPECT_EQ(moved.usage(1), 1);
  EXPECT_EQ(moved.UsedEdges(), (std::vector<int>{0, 1}));
}

TEST(GameTest, InvalidProfilesAreRejected) {
  const Game game = testing::Triangle();
  // Not ending at the target.
  EXPECT_THROW(ProfileOf(game, {{"ac"}}), ValidationError);
  // Wrong player count.
  EXPECT_THROW(StrategyProfile::Create(game, {}), ValidationError);
  const Game path = testing::PathGraph({{"1", "a", "c"}});
  EXPECT_NO_THROW(ProfileOf(path, {{"ab", "bc"}}));
  EXPECT_THROW(ProfileOf(path, {{"bc", "ab"}}), ValidationError);
}

TEST(GameTest, DirectedEdgesRespectOrientation) {
  const Game game = MakeGame({"a", "b", "c"},
                             {{"ab", "a", "b", 1}, {"cb", "c", "b", 1},
                              {"ac", "a", "c", 1}},
                             {{"1", "a", "b"}}, /*directed=*/true);
  EXPECT_NO_THROW(ProfileOf(game, {{"ac", "cb"}}));
  const Game reversed = MakeGame({"a", "b", "c"},
                                 {{"ab", "a", "b", 1}, {"bc", "b", "c", 1},
                                  {"ac", "a", "c", 1}},
                                 {{"1", "a", "b"}}, true);
  EXPECT_THROW(ProfileOf(reversed, {{"ac", "bc"}}), ValidationError);
}

}  // namespace
}  // namespace sndg
