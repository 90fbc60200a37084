#ifndef SNDG_GAME_IO_H_
#define SNDG_GAME_IO_H_

#include <string>
#include <string_view>

#include "sndg/game.h"

namespace sndg {

// Instance documents are JSON objects:
//
//   {
//     "directed": false,
//     "vertices": ["a", "b"],
//     "edges":   [{"id": "e1", "u": "a", "v": "b", "cost": "7/3"}],
//     "players": [{"id": "1", "source": "a", "target": "b"}]
//   }
//
// "directed" is optional. Ids may be strings or integers (integers are
// read as their decimal spelling). Costs are integers or "p/q" strings and
// are written back as strings in lowest terms.

// Throws ParseError for malformed documents and ValidationError for
// well-formed documents describing an invalid game.
Game LoadGame(std::string_view document);
GameSpec ParseGameSpec(std::string_view document);

std::string SaveGame(const Game& game);

Game ReadGameFile(const std::string& path);
void WriteGameFile(const Game& game, const std::string& path);

}  // namespace sndg

#endif  // SNDG_GAME_IO_H_
