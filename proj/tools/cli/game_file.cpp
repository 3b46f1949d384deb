#include "cli/game_file.hpp"

#include <fstream>
#include <istream>

#include "anonlip/counts.hpp"

namespace anonlip::cli {
namespace {

int read_int(const nlohmann::json& doc, const char* key, int min) {
  if (!doc.contains(key)) throw GameFileError(std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw GameFileError(std::string("field '") + key + "' must be an integer");
  }
  const auto x = v.get<long long>();
  if (x < min || x > 1'000'000) {
    throw GameFileError(std::string("field '") + key + "' = " + std::to_string(x) +
                        " out of range (minimum " + std::to_string(min) + ")");
  }
  return static_cast<int>(x);
}

const nlohmann::json& expect_array(const nlohmann::json& v, std::size_t size,
                                   const std::string& path) {
  if (!v.is_array()) throw GameFileError(path + ": expected an array");
  if (v.size() != size) {
    throw GameFileError(path + ": expected " + std::to_string(size) + " entries, found " +
                        std::to_string(v.size()));
  }
  return v;
}

}  // namespace

AnonymousGame game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GameFileError("top level must be an object");
  if (doc.contains("format") && doc.at("format") != "anonlip-game") {
    throw GameFileError("field 'format' must be \"anonlip-game\"");
  }
  if (doc.contains("version") && doc.at("version") != kGameFileVersion) {
    throw GameFileError("unsupported version " + doc.at("version").dump() + " (expected " +
                        std::to_string(kGameFileVersion) + ")");
  }
  const int n = read_int(doc, "n", 2);
  const int k = read_int(doc, "k", 2);
  if (!doc.contains("payoffs")) throw GameFileError("missing field 'payoffs'");

  const auto ranks = static_cast<std::size_t>(binomial(n + k - 2, k - 1));
  const auto& players = expect_array(doc.at("payoffs"), static_cast<std::size_t>(n), "payoffs");
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k) * ranks);
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string pi = "payoffs[" + std::to_string(i) + "]";
    const auto& actions = expect_array(players[i], static_cast<std::size_t>(k), pi);
    for (std::size_t j = 0; j < actions.size(); ++j) {
      const std::string pj = pi + "[" + std::to_string(j) + "]";
      const auto& row = expect_array(actions[j], ranks, pj);
      for (std::size_t r = 0; r < row.size(); ++r) {
        const std::string pr = pj + "[" + std::to_string(r) + "]";
        if (!row[r].is_number()) throw GameFileError(pr + ": expected a number");
        const double v = row[r].get<double>();
        if (!(v >= 0.0 && v <= 1.0)) {
          throw GameFileError(pr + ": value " + row[r].dump() + " outside [0, 1]");
        }
        table.push_back(v);
      }
    }
  }
  return AnonymousGame(n, k, std::move(table));
}

nlohmann::json game_to_json(const AnonymousGame& game) {
  const std::size_t ranks = game.opponent_space().size();
  nlohmann::json payoffs = nlohmann::json::array();
  for (int i = 0; i < game.players(); ++i) {
    nlohmann::json per_action = nlohmann::json::array();
    for (int j = 0; j < game.actions(); ++j) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t r = 0; r < ranks; ++r) row.push_back(game.payoff(i, j, r));
      per_action.push_back(std::move(row));
    }
    payoffs.push_back(std::move(per_action));
  }
  return {{"format", "anonlip-game"},
          {"version", kGameFileVersion},
          {"n", game.players()},
          {"k", game.actions()},
          {"payoffs", std::move(payoffs)}};
}

AnonymousGame read_game(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw GameFileError(std::string("malformed JSON: ") + e.what());
  }
  return game_from_json(doc);
}

AnonymousGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameFileError("cannot open game file '" + path + "'");
  return read_game(in);
}

}  // namespace anonlip::cli
