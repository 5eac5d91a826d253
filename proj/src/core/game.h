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

#ifndef ROUTEGAME_CORE_GAME_H_
#define ROUTEGAME_CORE_GAME_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/topology.h"
#include "core/types.h"

namespace routegame {

// A game instance: who is connected to whom, how much the destination offers
// for carrying its traffic, and how equal offers are ranked.
struct GameSpec {
  GameSpec(Topology t, Reward r, TieBreak tb = TieBreak::kLowestSender);

  Topology topology;
  Reward reward;           // what the destination promises its neighbours
  Reward cost = kUnitCost; // per-player forwarding cost (fixed at 1)
  TieBreak tiebreak = TieBreak::kLowestSender;
};

// An offer received by `to`: adopt the sender's route and collect `reward`
// per routed node. `route` is the sender's own route, starting at `from` and
// ending at the destination.
struct RewardOffer {
  NodeId from = 0;
  NodeId to = 0;
  Reward reward = 0;
  std::vector<NodeId> route;

  friend bool operator==(const RewardOffer& a, const RewardOffer& b) {
    return a.from == b.from && a.to == b.to && a.reward == b.reward &&
           a.route == b.route;
  }
};

// Picks the offer a rational player adopts: maximal reward among offers worth
// at least the forwarding cost, ties broken by the configured rule. Returns
// nullopt when no offer is worth taking. All offers must target one player.
std::optional<RewardOffer> HrpSelect(const std::vector<RewardOffer>& offers,
                                     TieBreak tiebreak,
                                     Reward cost = kUnitCost);

// One reward per candidate neighbour, in ascending neighbour id. Zero means
// "no offer".
using ActionVector = std::vector<Reward>;
using ActionProfile = std::map<NodeId, ActionVector>;

struct PlayerOutcome {
  bool participates = false;
  NodeId parent = -1;        // next hop towards the destination
  Reward received = 0;       // reward promised by the parent
  std::vector<NodeId> route; // this player's route, ending at the destination
  ActionVector action;       // rewards emitted to candidates (empty if unused)
  std::vector<NodeId> children;
  long long delta = 0;       // players routing through this one
  Reward participation_term = 0;  // received - cost
  Reward profit_term = 0;    // sum of margin * subtree over sales
};

// The routing forest realised by one play of the game, with per-player
// utilities already attached. Utilities of non-participants are zero.
struct OutcomeTree {
  std::map<NodeId, PlayerOutcome> players;
  NodeId destination = -1;
  bool spanning = false;  // every player participates

  const PlayerOutcome& at(NodeId player) const;
  Reward UtilityOf(NodeId player) const;
  // Same adopted routes: identical participant sets and parents.
  bool SameTree(const OutcomeTree& other) const;

  std::string ToJson() const;
  std::string ToDot() const;
};

// Identifies a subgame by the offers crossing its frontier. The full game
// starts from the destination's own offers; a line/tree subgame pins one
// player's incoming reward; a ring subgame at stage k pins what the two
// stage-k players (or the single last player) are offered.
class History {
 public:
  static History Full();
  static History At(NodeId player, Reward incoming);
  static History RingStage(int stage, Reward left_in, Reward right_in);

  struct Seed {
    NodeId from;
    NodeId to;
    Reward reward;
  };
  std::vector<Seed> Seeds(const GameSpec& game) const;
  std::string Describe() const;

 private:
  enum class Kind { kFull, kAt, kRingStage };
  Kind kind_ = Kind::kFull;
  NodeId player_ = -1;
  int stage_ = 0;
  Reward left_in_ = 0;
  Reward right_in_ = 0;
};

class StrategyProfile;  // defined in core/strategy.h

// Plays the game (or the subgame behind `at`) on the fixed stage-by-stage
// schedule: offers cross one stage per step and every player immediately
// adopts the best offer it holds. `pinned`, when present, overrides the
// profile's action for selected players regardless of their incoming reward.
OutcomeTree Cascade(const GameSpec& game, const StrategyProfile& profile,
                    const History& at = History::Full(),
                    const ActionProfile* pinned = nullptr);

// Recomputes children, subtree weights, utilities and the spanning flag of
// an outcome whose participation/parent/received fields are already set.
void FinalizeOutcome(const GameSpec& game, OutcomeTree* out);

// Same cascade driven by literal per-player actions instead of strategies.
// Every player with at least one candidate must have an entry; an action that
// does not undercut the player's incoming reward is rejected with an
// ErrorCode::kIllegalAction naming the player.
OutcomeTree OutcomeFromActions(const GameSpec& game,
                               const ActionProfile& actions);

std::string GameSpecToJson(const GameSpec& game);
GameSpec GameSpecFromJson(const std::string& text);

struct Utility {
  Reward participation = 0;
  Reward profit = 0;
  Reward total = 0;
};

// Utility of one player in a realised outcome (zero for non-participants).
Utility UtilityParts(const GameSpec& game, const OutcomeTree& outcome,
                     NodeId player);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_GAME_H_
