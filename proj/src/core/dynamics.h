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

#ifndef ROUTEGAME_CORE_DYNAMICS_H_
#define ROUTEGAME_CORE_DYNAMICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "core/game.h"
#include "core/strategy.h"
#include "core/types.h"

namespace routegame {

// Who runs when. A round activates a set of players; fairness means every
// player runs at least once in every aligned window of `window` rounds.
struct Schedule {
  std::vector<std::vector<NodeId>> rounds;
  std::size_t window = 0;

  // One player per round, ascending ids; window = one full pass.
  static Schedule RoundRobin(const Topology& topo);
  // Per window: n uniformly random nonempty activation sets followed by a
  // round-robin pass, so fairness holds no matter what was drawn.
  static Schedule Random(const Topology& topo, int windows,
                         std::uint64_t seed);

  // Rejects empty/oversized rounds, unknown players, and windows that miss
  // a player.
  void Validate(const Topology& topo) const;
};

// One player's view of the protocol: freshest offer per sender, the offer it
// currently routes through, and what it last resold downstream.
struct PlayerView {
  std::map<NodeId, RewardOffer> rib_in;
  std::optional<RewardOffer> adopted;
  ActionVector emitted;
};

struct ProtocolState {
  std::map<NodeId, PlayerView> views;
  std::map<NodeId, std::vector<RewardOffer>> inbox;
  long long round = 0;
  bool changed_last_step = false;  // any selection change in the last step
};

// Fresh state with the destination's advertisements already in flight.
ProtocolState InitState(const GameSpec& game);

// One protocol round: every activated player drains its inbox, re-selects
// the best route it knows, and on any selection change emits its strategy's
// rewards to its candidate neighbours. Unactivated players are untouched.
ProtocolState Step(const GameSpec& game, const StrategyProfile& strategies,
                   const ProtocolState& st,
                   const std::vector<NodeId>& activated);

struct RunResult {
  OutcomeTree tree;
  bool converged = false;
  long long rounds_used = 0;
};

// Cycles the schedule until a full window passes with no selection change
// and no offer in flight, or max_rounds is hit. Non-convergence is reported,
// not thrown.
RunResult Run(const GameSpec& game, const StrategyProfile& strategies,
              const Schedule& schedule, long long max_rounds);

struct ConvergenceReport {
  bool unanimous = false;
  int trials = 0;
  std::optional<int> failed_trial;
  std::optional<Schedule> counterexample;
};

// Runs `trials` random fair schedules (seeds seed, seed+1, ...) and compares
// every fixed point against the stage-by-stage cascade of the same profile.
ConvergenceReport CheckUniqueConvergence(const GameSpec& game,
                                         const StrategyProfile& strategies,
                                         int trials, std::uint64_t seed);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_DYNAMICS_H_
