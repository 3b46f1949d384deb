#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "anonlip/equilibrium.hpp"

namespace anonlip::cli {

// Game file, JSON:
//
//   {
//     "format": "anonlip-game",   (optional)
//     "version": 1,               (optional, must be 1 when present)
//     "n": <players >= 2>,
//     "k": <actions >= 2>,
//     "payoffs": [ player ][ action ][ rank ]
//   }
//
// rank runs over the opponents' count vectors (total n - 1, k entries) in
// ascending lexicographic order, so each innermost array has
// C(n + k - 2, k - 1) entries. Actions are 0-based. Values lie in [0, 1].

inline constexpr int kGameFileVersion = 1;

/// Schema violation; what() names the offending JSON path.
class GameFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AnonymousGame game_from_json(const nlohmann::json& doc);
nlohmann::json game_to_json(const AnonymousGame& game);

/// Reads and validates a game file. Throws GameFileError on I/O, parse or
/// schema problems.
AnonymousGame load_game(const std::string& path);
AnonymousGame read_game(std::istream& in);

}  // namespace anonlip::cli
