#include "sndg/game_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sndg/errors.h"

namespace sndg {
namespace {

using Json = nlohmann::ordered_json;

void RejectUnknownKeys(const Json& object, const std::string& where,
                       const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ParseError(where + ": unknown field '" + key + "'");
    }
  }
}

const Json& Require(const Json& object, const std::string& where,
                    const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return *it;
}

std::string ReadIdentifier(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw ParseError(where + ": expected a string or integer identifier");
}

Rational ReadCost(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational::Parse(value.dump());
  if (value.is_string()) {
    try {
      return Rational::Parse(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where +
                   ": expected an integer or a \"p/q\" rational string");
}

const Json& RequireArray(const Json& root, const char* key) {
  const Json& value = Require(root, "instance", key);
  if (!value.is_array()) {
    throw ParseError(std::string(key) + ": expected a list");
  }
  return value;
}

}  // namespace

GameSpec ParseGameSpec(std::string_view document) {
  Json root;
  try {
    root = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance: expected an object");
  RejectUnknownKeys(root, "instance",
                    {"directed", "vertices", "edges", "players"});

  GameSpec spec;
  if (const auto it = root.find("directed"); it != root.end()) {
    if (!it->is_boolean()) throw ParseError("directed: expected a boolean");
    spec.directed = it->get<bool>();
  }
  const Json& vertices = RequireArray(root, "vertices");
  for (size_t k = 0; k < vertices.size(); ++k) {
    spec.vertices.push_back(
        ReadIdentifier(vertices[k], "vertices[" + std::to_string(k) + "]"));
  }
  const Json& edges = RequireArray(root, "edges");
  for (size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const Json& e = edges[k];
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    RejectUnknownKeys(e, where, {"id", "u", "v", "cost"});
    spec.edges.push_back(EdgeSpec{
        ReadIdentifier(Require(e, where, "id"), where + ".id"),
        ReadIdentifier(Require(e, where, "u"), where + ".u"),
        ReadIdentifier(Require(e, where, "v"), where + ".v"),
        ReadCost(Require(e, where, "cost"), where + ".cost")});
  }
  const Json& players = RequireArray(root, "players");
  for (size_t k = 0; k < players.size(); ++k) {
    const std::string where = "players[" + std::to_string(k) + "]";
    const Json& p = players[k];
    if (!p.is_object()) throw ParseError(where + ": expected an object");
    RejectUnknownKeys(p, where, {"id", "source", "target"});
    spec.players.push_back(PlayerSpec{
        ReadIdentifier(Require(p, where, "id"), where + ".id"),
        ReadIdentifier(Require(p, where, "source"), where + ".source"),
        ReadIdentifier(Require(p, where, "target"), where + ".target")});
  }
  return spec;
}

Game LoadGame(std::string_view document) {
  return Game::FromSpec(ParseGameSpec(document));
}

std::string SaveGame(const Game& game) {
  const GameSpec spec = game.ToSpec();
  Json root;
  root["directed"] = spec.directed;
  root["vertices"] = spec.vertices;
  Json edges = Json::array();
  for (const EdgeSpec& e : spec.edges) {
    edges.push_back(Json{{"id", e.id},
                         {"u", e.u},
                         {"v", e.v},
                         {"cost", e.cost.ToString()}});
  }
  root["edges"] = std::move(edges);
  Json players = Json::array();
  for (const PlayerSpec& p : spec.players) {
    players.push_back(
        Json{{"id", p.id}, {"source", p.source}, {"target", p.target}});
  }
  root["players"] = std::move(players);
  return root.dump(2) + "\n";
}

Game ReadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadGame(buffer.str());
}

void WriteGameFile(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file '" + path + "'");
  out << SaveGame(game);
}

}  // namespace sndg
