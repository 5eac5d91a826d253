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

#ifndef ROUTEGAME_CORE_EQUILIBRIA_H_
#define ROUTEGAME_CORE_EQUILIBRIA_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "core/game.h"
#include "core/strategy.h"
#include "core/topology.h"
#include "core/types.h"

namespace routegame {

// The minimum spanning reward grows super-exponentially (the increments are
// factorials), so 64-bit arithmetic dies near depth 23.
using BigInt = boost::multiprecision::cpp_int;

BigInt Factorial(int n);

// Minimum reward for which a depth-k chain has an equilibrium whose outcome
// reaches everyone: g(0)=0, g(1)=1, g(2)=2, then
// g(k) = (k-1)g(k-1) - (k-2)g(k-2).
BigInt GrowthF(int k);

struct GrowthRow {
  int k = 0;
  BigInt value;
  std::optional<BigInt> increment;  // value - previous value, from k >= 1
  std::optional<BigInt> factorial;  // (k-2)!, the closed form, from k >= 2
};
std::vector<GrowthRow> GrowthTable(int max_k);

// Backward-induction profile for the chain d-1-...-depth: every table row is
// the profit-maximizing resale against the already-built downstream rows,
// ties resolved towards the larger resale so that reward f(K) still reaches
// the whole chain. Passes IsSubgamePerfect.
StrategyProfile BuildLineSpe(Reward reward, int depth);

// Same induction with one resale component per child; sibling subtrees are
// independent. Accepts line shapes as degenerate trees.
StrategyProfile BuildTreeSpe(Reward reward, const Topology& tree);

// Two-stage ring: both first-stage players compete head-to-head for the last
// player and bid their whole margin: x-1 when x > 1, else 0.
StrategyProfile BuildRing2Ne(Reward reward);

// The ring equilibrium at exactly reward f(K): branch bids follow the growth
// sequence, the left branch wins the last player by one unit, and off-path
// rows are best-response continuations against the rival branch's bid.
struct RingSpecial {
  BigInt reward;    // f(K), exact
  GameSpec game;    // same reward as a machine integer
  StrategyProfile profile;
};
RingSpecial BuildRingSpecial(int stages);

// Smallest reward <= bound whose subgame admits an equilibrium with a
// spanning outcome, by exhaustive search over on-path action profiles, each
// completed off-path with best-response continuations; nullopt if the bound
// is exhausted. Line, tree and ring shapes only.
std::optional<Reward> MinSpanningIncentive(const Topology& topology,
                                           Reward bound);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_EQUILIBRIA_H_
