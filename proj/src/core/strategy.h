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

#ifndef ROUTEGAME_CORE_STRATEGY_H_
#define ROUTEGAME_CORE_STRATEGY_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/game.h"
#include "core/types.h"

namespace routegame {

// What one player does for every reward it might be offered. Row x holds the
// reward vector emitted towards the player's candidate neighbours (ascending
// id) when the adopted incoming reward is x.
struct StrategyTable {
  std::vector<ActionVector> by_incoming;
};

// A complete plan of play: one table per player that has someone to sell to.
// Players without candidate neighbours never emit and carry no table.
struct StrategyProfile {
  std::map<NodeId, StrategyTable> tables;

  // All-zero tables: nobody resells anything.
  static StrategyProfile Zeros(const GameSpec& game);

  const ActionVector& ActionFor(NodeId player, Reward incoming) const;
  // Overwrites one row; grows the player's table if needed.
  void Set(NodeId player, Reward incoming, ActionVector action);

  // Checks totality (rows 0..reward for every selling player, row width =
  // candidate count) and legality (resale strictly below the incoming
  // reward, or zero). Throws on the first violation.
  void Validate(const GameSpec& game) const;
};

// Serialized profile embeds the game so that a single file is a complete,
// verifiable object.
std::string ProfileToJson(const GameSpec& game, const StrategyProfile& profile);
std::pair<GameSpec, StrategyProfile> ProfileFromJson(const std::string& text);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_STRATEGY_H_
