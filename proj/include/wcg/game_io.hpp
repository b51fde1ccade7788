#pragma once

#include <json.hpp>

#include <string>

#include "wcg/game.hpp"

namespace wcg {

using Json = nlohmann::ordered_json;

/// Tagged-object form, e.g. {"kind":"monomial","degree":2,"coeff":"3"}.
/// Numeric fields are decimal strings (or "p/q" fractions) so parsing is
/// exact; plain JSON integers are accepted too.
Json cost_to_json(const CostSpec& cost);
CostSpec cost_from_json(const Json& j);

/// Instance document: version, players[{id,weight}], resources[{id,cost}],
/// strategies{player_id: [[resource_id,...],...]}.
Json game_to_json(const Game& g);
Game game_from_json(const Json& j);

Game load_game_file(const std::string& path);
void save_game_file(const Game& g, const std::string& path);
CostSpec load_cost_file(const std::string& path);

Rational rational_from_json(const Json& j);

inline constexpr int kGameFormatVersion = 1;

}  // namespace wcg
