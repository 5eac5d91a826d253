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

#include "core/stage_game.h"

#include <algorithm>

namespace routegame {
namespace {

// Every reward vector of width m whose components undercut `incoming` or are
// zero, in odometer order starting from all-zero.
std::vector<ActionVector> LegalActions(Reward incoming, std::size_t m) {
  std::vector<ActionVector> all;
  const Reward base = std::max<Reward>(incoming, 1);
  ActionVector cur(m, 0);
  while (true) {
    all.push_back(cur);
    std::size_t k = 0;
    while (k < m) {
      if (++cur[k] < base) break;
      cur[k] = 0;
      ++k;
    }
    if (k == m) break;
  }
  return all;
}

}  // namespace

VerifyResult IsNash(const GameSpec& game, const StrategyProfile& profile,
                    const History& at) {
  const OutcomeTree base = Cascade(game, profile, at);
  VerifyResult res;
  res.pass = true;
  for (const auto& [player, po] : base.players) {
    if (!po.participates) continue;  // silent players have no move to change
    const std::size_t m = game.topology.Candidates(player).size();
    if (m == 0) continue;
    const Reward u0 = base.UtilityOf(player);
    for (const ActionVector& alt : LegalActions(po.received, m)) {
      if (alt == po.action) continue;
      ActionProfile pinned;
      pinned[player] = alt;
      const OutcomeTree dev = Cascade(game, profile, at, &pinned);
      const Reward u1 = dev.UtilityOf(player);
      if (u1 > u0) {
        res.pass = false;
        res.witness = DeviationWitness{player, alt, u1 - u0, at.Describe()};
        return res;
      }
    }
  }
  return res;
}

VerifyResult IsSubgamePerfect(const GameSpec& game,
                              const StrategyProfile& profile) {
  profile.Validate(game);
  const Topology& topo = game.topology;
  switch (topo.shape()) {
    case Shape::kLine:
    case Shape::kTree:
      // Simultaneous subtrees are independent, so each per-player frontier
      // can be probed on its own.
      for (const NodeId player : topo.players()) {
        for (Reward x = 0; x <= game.reward; ++x) {
          VerifyResult r = IsNash(game, profile, History::At(player, x));
          if (!r.pass) return r;
        }
      }
      break;
    case Shape::kRing: {
      if (!topo.IsCanonicalRing()) {
        throw Error(ErrorCode::kUnsupportedShape,
                    "ring must be canonical (destination 0, players 1..2K-1)");
      }
      // The two branches meet again at the last player, so a ring frontier
      // is the pair of rewards entering the branches.
      for (Reward x = 0; x <= game.reward; ++x) {
        VerifyResult r = IsNash(game, profile, History::RingStage(1, x, x));
        if (!r.pass) return r;
      }
      for (int stage = 2; stage <= topo.depth(); ++stage) {
        for (Reward xl = 0; xl <= game.reward; ++xl) {
          for (Reward xr = 0; xr <= game.reward; ++xr) {
            VerifyResult r =
                IsNash(game, profile, History::RingStage(stage, xl, xr));
            if (!r.pass) return r;
          }
        }
      }
      break;
    }
    default:
      throw Error(ErrorCode::kUnsupportedShape,
                  "per-subgame verification covers line, tree and ring only");
  }
  return VerifyResult{true, std::nullopt};
}

}  // namespace routegame
