// Copyright 2026 The routegame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/strategy.h"

#include <string>

#include "json.hpp"

namespace routegame {
namespace {

using ordered_json = nlohmann::ordered_json;

Reward ParseReward(const nlohmann::json& v) {
  try {
    if (v.is_string()) return std::stoll(v.get<std::string>());
    if (v.is_number_integer()) return v.get<Reward>();
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParseError,
              "rewards must be integers or decimal strings");
}

}  // namespace

StrategyProfile StrategyProfile::Zeros(const GameSpec& game) {
  StrategyProfile profile;
  for (const NodeId player : game.topology.players()) {
    const std::size_t m = game.topology.Candidates(player).size();
    if (m == 0) continue;
    profile.tables[player].by_incoming.assign(
        static_cast<std::size_t>(game.reward) + 1, ActionVector(m, 0));
  }
  return profile;
}

const ActionVector& StrategyProfile::ActionFor(NodeId player,
                                               Reward incoming) const {
  auto it = tables.find(player);
  if (it == tables.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no strategy for player " + std::to_string(player), player);
  }
  const auto& rows = it->second.by_incoming;
  if (incoming < 0 || static_cast<std::size_t>(incoming) >= rows.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "player " + std::to_string(player) +
                    " has no row for incoming reward " +
                    std::to_string(incoming),
                player);
  }
  return rows[static_cast<std::size_t>(incoming)];
}

void StrategyProfile::Set(NodeId player, Reward incoming, ActionVector action) {
  if (incoming < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative incoming reward");
  }
  auto& rows = tables[player].by_incoming;
  if (rows.size() <= static_cast<std::size_t>(incoming)) {
    rows.resize(static_cast<std::size_t>(incoming) + 1);
  }
  rows[static_cast<std::size_t>(incoming)] = std::move(action);
}

void StrategyProfile::Validate(const GameSpec& game) const {
  const Topology& topo = game.topology;
  for (const auto& [player, table] : tables) {
    if (!topo.HasNode(player) || player == topo.destination()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "strategy listed for unknown player " +
                      std::to_string(player));
    }
    if (topo.Candidates(player).empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "player " + std::to_string(player) +
                      " has nobody to sell to but lists a strategy",
                  player);
    }
  }
  for (const NodeId player : topo.players()) {
    const std::size_t m = topo.Candidates(player).size();
    if (m == 0) continue;
    auto it = tables.find(player);
    if (it == tables.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no strategy for player " + std::to_string(player), player);
    }
    const auto& rows = it->second.by_incoming;
    if (rows.size() != static_cast<std::size_t>(game.reward) + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "player " + std::to_string(player) + " covers " +
                      std::to_string(rows.size()) +
                      " incoming rewards, expected " +
                      std::to_string(game.reward + 1),
                  player);
    }
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if (rows[x].size() != m) {
        throw Error(ErrorCode::kInvalidArgument,
                    "player " + std::to_string(player) + " row " +
                        std::to_string(x) + " has " +
                        std::to_string(rows[x].size()) +
                        " rewards, expected " + std::to_string(m),
                    player);
      }
      for (const Reward y : rows[x]) {
        if (y < 0 || (y != 0 && y >= static_cast<Reward>(x))) {
          throw Error(ErrorCode::kIllegalAction,
                      "player " + std::to_string(player) + " resells at " +
                          std::to_string(y) + " while receiving " +
                          std::to_string(x),
                      player);
        }
      }
    }
  }
}

std::string ProfileToJson(const GameSpec& game,
                          const StrategyProfile& profile) {
  ordered_json j;
  j["game"] = ordered_json::parse(GameSpecToJson(game));
  ordered_json strategies = ordered_json::object();
  for (const auto& [player, table] : profile.tables) {
    ordered_json rows = ordered_json::array();
    for (const ActionVector& row : table.by_incoming) {
      ordered_json cells = ordered_json::array();
      for (const Reward y : row) cells.push_back(std::to_string(y));
      rows.push_back(std::move(cells));
    }
    strategies[std::to_string(player)] = std::move(rows);
  }
  j["strategies"] = std::move(strategies);
  return j.dump(2);
}

std::pair<GameSpec, StrategyProfile> ProfileFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("game") || !j.contains("strategies")) {
    throw Error(ErrorCode::kParseError,
                "profile JSON needs \"game\" and \"strategies\"");
  }
  GameSpec game = GameSpecFromJson(j["game"].dump());
  StrategyProfile profile;
  for (const auto& [key, rows] : j["strategies"].items()) {
    NodeId player = 0;
    try {
      player = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad player id: " + key);
    }
    if (!rows.is_array()) {
      throw Error(ErrorCode::kParseError,
                  "strategy of player " + key + " must be an array of rows");
    }
    StrategyTable table;
    for (const auto& row : rows) {
      if (!row.is_array()) {
        throw Error(ErrorCode::kParseError,
                    "strategy row of player " + key + " must be an array");
      }
      ActionVector action;
      for (const auto& cell : row) action.push_back(ParseReward(cell));
      table.by_incoming.push_back(std::move(action));
    }
    profile.tables[player] = std::move(table);
  }
  profile.Validate(game);
  return {std::move(game), std::move(profile)};
}

}  // namespace routegame
