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

#ifndef ROUTEGAME_CORE_STAGE_GAME_H_
#define ROUTEGAME_CORE_STAGE_GAME_H_

#include <optional>
#include <string>

#include "core/game.h"
#include "core/strategy.h"
#include "core/types.h"

namespace routegame {

// A profitable unilateral move found by a verifier.
struct DeviationWitness {
  NodeId player = -1;
  ActionVector action;  // the improving reward vector
  Reward gain = 0;      // strict utility improvement it yields
  std::string history;  // where the deviation applies
};

struct VerifyResult {
  bool pass = false;
  std::optional<DeviationWitness> witness;
};

// Does any single player profit by changing its move in the (sub)game behind
// `at`, everyone else following `profile`? Each player moves exactly once, at
// the history where the cascade reaches it; in a unilateral deviation every
// other table is still consulted only at that one history, so trying every
// alternative reward vector there covers every unilateral strategy change.
VerifyResult IsNash(const GameSpec& game, const StrategyProfile& profile,
                    const History& at = History::Full());

// IsNash at every per-stage frontier, whether or not on-path play reaches
// it: line/tree players are probed at every incoming reward 0..r_d (their
// subtrees are independent), ring stages at every pair of branch rewards.
// Other shapes are rejected.
VerifyResult IsSubgamePerfect(const GameSpec& game,
                              const StrategyProfile& profile);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_STAGE_GAME_H_
