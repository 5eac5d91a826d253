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

#ifndef ROUTEGAME_CORE_NORMAL_FORM_H_
#define ROUTEGAME_CORE_NORMAL_FORM_H_

#include <string>
#include <utility>
#include <vector>

#include "core/game.h"
#include "core/types.h"

namespace routegame {

// How stages 2..3 of the three-stage ring are resolved when projecting the
// game onto the two first-stage bids.
enum class StageTwoResolution {
  // Exhaustive pure-equilibrium search of the second-stage bidding duel;
  // among its equilibria, the side with the higher incoming reward (ties to
  // the left) wins with the minimal winning bid and the loser bids its cap.
  kSearched,
  // The shorthand rule min(own reward - 1, rival reward - 1), applied
  // verbatim; kept for comparison, it overpays the losing side when the
  // incoming rewards differ.
  kLiteral,
};

// Two-player projection of the three-stage ring: rows are the left player's
// bids, columns the right player's, payoffs the resale-profit part of each
// utility.
struct NormalFormMatrix {
  std::vector<Reward> row_actions;
  std::vector<Reward> col_actions;
  // payoffs[i][j] = (left, right) profits at (row_actions[i], col_actions[j])
  std::vector<std::vector<std::pair<Reward, Reward>>> payoffs;
  std::string resolution_note;
};

NormalFormMatrix ReduceToNormalForm(
    const GameSpec& game,
    StageTwoResolution resolution = StageTwoResolution::kSearched);

// One deleted action during iterated elimination.
struct Elimination {
  bool row = false;  // otherwise a column
  Reward action = 0;
};

enum class ScanOrder { kRowsFirst, kColsFirst };

struct DominanceResult {
  NormalFormMatrix matrix;
  std::vector<Elimination> order;
};

// Repeatedly deletes strictly dominated pure actions until none remain. The
// surviving matrix is independent of the scan order (a property of strict
// dominance that the tests assert by running both orders).
DominanceResult IteratedStrictDominance(const NormalFormMatrix& m,
                                        ScanOrder scan = ScanOrder::kRowsFirst);

// All cells from which neither player gains strictly by moving alone.
std::vector<std::pair<Reward, Reward>> PureNash(const NormalFormMatrix& m);

struct BestResponseWalk {
  std::vector<std::pair<Reward, Reward>> path;   // starting cell first
  std::vector<std::pair<Reward, Reward>> cycle;  // empty when a fixed point
};

// Alternating best-response walk: the row player moves when not already
// best-responding, otherwise the column player; ties prefer the lowest
// action. Stops at a fixed point or on the first revisited cell.
BestResponseWalk BestResponseCycle(const NormalFormMatrix& m, Reward row_start,
                                   Reward col_start);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_NORMAL_FORM_H_
