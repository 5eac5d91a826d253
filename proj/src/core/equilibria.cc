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

#include "core/equilibria.h"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "core/stage_game.h"

namespace routegame {
namespace {

// Per-player backward-induction result: what to resell at every incoming
// reward, and how many players the offer chain reaches (self included).
struct Built {
  std::vector<ActionVector> rows;
  std::vector<long long> reach;
};

// Resale values share ties at the growth-sequence boundaries; preferring the
// larger resale keeps the offer chain going all the way down, which is what
// makes reward f(K) exactly sufficient.
template <typename DownReach>
void FillRow(Reward x, std::size_t width, const DownReach& down, Built* b) {
  ActionVector act(width, 0);
  long long reach = 0;
  if (x >= kUnitCost) {
    reach = 1;
    for (std::size_t i = 0; i < width; ++i) {
      Reward best_y = 0;
      long long best_v = 0;
      for (Reward y = 0; y < x; ++y) {
        const long long v = static_cast<long long>(x - y) * down(i, y);
        if (v >= best_v) {
          best_v = v;
          best_y = y;
        }
      }
      act[i] = best_y;
      reach += down(i, best_y);
    }
  }
  b->rows[static_cast<std::size_t>(x)] = std::move(act);
  b->reach[static_cast<std::size_t>(x)] = reach;
}

// Children before parents: compare stages descending.
std::vector<NodeId> DeepestFirst(const Topology& topo) {
  std::vector<NodeId> order = topo.players();
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const int sa = topo.stage(a), sb = topo.stage(b);
    return sa != sb ? sa > sb : a < b;
  });
  return order;
}

std::map<NodeId, Built> BuildForTree(const Topology& topo, Reward reward) {
  std::map<NodeId, Built> built;
  for (const NodeId player : DeepestFirst(topo)) {
    const std::vector<NodeId> kids = topo.Candidates(player);
    Built b;
    b.rows.resize(static_cast<std::size_t>(reward) + 1);
    b.reach.assign(static_cast<std::size_t>(reward) + 1, 0);
    for (Reward x = 0; x <= reward; ++x) {
      FillRow(
          x, kids.size(),
          [&](std::size_t i, Reward y) {
            return built.at(kids[i]).reach[static_cast<std::size_t>(y)];
          },
          &b);
    }
    built[player] = std::move(b);
  }
  return built;
}

// One ring branch is a chain whose last member sells to the contested last
// player; a bid lands that sale iff it is at least `win_bid` (the rival
// branch's standing bid, plus one when the rival wins ties).
std::map<NodeId, Built> BuildForChain(Reward reward,
                                      const std::vector<NodeId>& chain,
                                      Reward win_bid) {
  std::map<NodeId, Built> built;
  const Built* next = nullptr;
  for (std::size_t i = chain.size(); i-- > 0;) {
    const bool last = (i + 1 == chain.size());
    Built b;
    b.rows.resize(static_cast<std::size_t>(reward) + 1);
    b.reach.assign(static_cast<std::size_t>(reward) + 1, 0);
    for (Reward x = 0; x <= reward; ++x) {
      FillRow(
          x, 1,
          [&](std::size_t, Reward y) -> long long {
            if (last) return y >= win_bid ? 1 : 0;
            return next->reach[static_cast<std::size_t>(y)];
          },
          &b);
    }
    built[chain[i]] = std::move(b);
    next = &built[chain[i]];
  }
  return built;
}

StrategyProfile ProfileFromBuilt(const std::map<NodeId, Built>& built,
                                 const Topology& topo) {
  StrategyProfile profile;
  for (const auto& [player, b] : built) {
    if (topo.Candidates(player).empty()) continue;
    profile.tables[player].by_incoming = b.rows;
  }
  return profile;
}

std::vector<NodeId> LeftChain(int stages) {
  std::vector<NodeId> chain;
  for (int j = 1; j <= stages - 1; ++j) chain.push_back(2 * j - 1);
  return chain;
}

std::vector<NodeId> RightChain(int stages) {
  std::vector<NodeId> chain;
  for (int j = 1; j <= stages - 1; ++j) chain.push_back(2 * j);
  return chain;
}

// Exhaustive search for one reward value: does any spanning assignment of
// on-path actions, completed off-path by best-response continuations,
// survive the deviation check?
bool ExistsSpanningNe(const GameSpec& game) {
  const Topology& topo = game.topology;
  const bool ring = topo.shape() == Shape::kRing;
  std::vector<NodeId> order = topo.players();
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const int sa = topo.stage(a), sb = topo.stage(b);
    return sa != sb ? sa < sb : a < b;
  });

  StrategyProfile tree_base;
  if (!ring) {
    tree_base = ProfileFromBuilt(BuildForTree(topo, game.reward), topo);
  }

  std::map<NodeId, Reward> incoming;
  ActionProfile actions;

  auto complete = [&]() {
    StrategyProfile profile;
    if (ring) {
      const int stages = topo.depth();
      const NodeId left_last = 2 * stages - 3;
      const NodeId right_last = 2 * stages - 2;
      const Reward left_bid = actions.at(left_last)[0];
      const Reward right_bid = actions.at(right_last)[0];
      // Left (odd) wins ties at the contested player under the default rule,
      // so it matches the rival's bid while the right must beat it.
      auto built = BuildForChain(game.reward, LeftChain(stages),
                                 std::max<Reward>(right_bid, kUnitCost));
      auto right = BuildForChain(game.reward, RightChain(stages),
                                 std::max<Reward>(left_bid + 1, kUnitCost));
      built.insert(right.begin(), right.end());
      profile = ProfileFromBuilt(built, topo);
    } else {
      profile = tree_base;
    }
    for (const auto& [player, act] : actions) {
      profile.Set(player, incoming.at(player), act);
    }
    return IsNash(game, profile).pass;
  };

  std::function<bool(std::size_t)> descend = [&](std::size_t idx) -> bool {
    if (idx == order.size()) return complete();
    const NodeId player = order[idx];
    Reward x = 0;
    for (const NodeId up : topo.Suppliers(player)) {
      if (up == topo.destination()) {
        x = std::max(x, game.reward);
        continue;
      }
      const std::vector<NodeId> cands = topo.Candidates(up);
      const std::size_t slot = static_cast<std::size_t>(
          std::find(cands.begin(), cands.end(), player) - cands.begin());
      x = std::max(x, actions.at(up)[slot]);
    }
    if (x < kUnitCost) return false;  // this player can never join the tree
    incoming[player] = x;
    const std::size_t m = topo.Candidates(player).size();
    if (m == 0) return descend(idx + 1);
    ActionVector vec(m, 0);
    actions[player] = vec;
    while (true) {
      actions[player] = vec;
      if (descend(idx + 1)) return true;
      std::size_t k = 0;
      while (k < m) {
        if (++vec[k] < x) break;
        vec[k] = 0;
        ++k;
      }
      if (k == m) break;
    }
    actions.erase(player);
    return false;
  };

  return descend(0);
}

}  // namespace

BigInt Factorial(int n) {
  if (n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "factorial of a negative number");
  }
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt GrowthF(int k) {
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "growth function index must be non-negative");
  }
  if (k == 0) return 0;
  if (k == 1) return 1;
  BigInt prev = 1, cur = 2;  // values at 1 and 2
  for (int j = 3; j <= k; ++j) {
    BigInt nxt = (j - 1) * cur - (j - 2) * prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return cur;
}

std::vector<GrowthRow> GrowthTable(int max_k) {
  if (max_k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "growth table needs a non-negative maximum");
  }
  std::vector<GrowthRow> rows;
  BigInt prev = 0;
  for (int k = 0; k <= max_k; ++k) {
    GrowthRow row;
    row.k = k;
    row.value = GrowthF(k);
    if (k >= 1) row.increment = row.value - prev;
    if (k >= 2) row.factorial = Factorial(k - 2);
    prev = row.value;
    rows.push_back(std::move(row));
  }
  return rows;
}

StrategyProfile BuildLineSpe(Reward reward, int depth) {
  return BuildTreeSpe(reward, Topology::Line(depth));
}

StrategyProfile BuildTreeSpe(Reward reward, const Topology& tree) {
  if (reward < 0) {
    throw Error(ErrorCode::kInvalidArgument, "reward must be non-negative");
  }
  if (tree.shape() != Shape::kLine && tree.shape() != Shape::kTree) {
    throw Error(ErrorCode::kUnsupportedShape,
                "backward induction per subtree needs a line or tree");
  }
  return ProfileFromBuilt(BuildForTree(tree, reward), tree);
}

StrategyProfile BuildRing2Ne(Reward reward) {
  if (reward < 0) {
    throw Error(ErrorCode::kInvalidArgument, "reward must be non-negative");
  }
  StrategyProfile profile;
  for (const NodeId player : {1, 2}) {
    auto& rows = profile.tables[player].by_incoming;
    for (Reward x = 0; x <= reward; ++x) {
      rows.push_back({x > 1 ? x - 1 : 0});
    }
  }
  return profile;
}

RingSpecial BuildRingSpecial(int stages) {
  if (stages <= 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "the construction needs at least 3 stages; use the two-stage "
                "head-to-head profile below that");
  }
  if (stages > 20) {
    throw Error(ErrorCode::kInvalidArgument,
                "rewards beyond 20 stages do not fit machine integers");
  }
  const BigInt reward_big = GrowthF(stages);
  const Reward reward = reward_big.convert_to<Reward>();
  GameSpec game(Topology::Ring(stages), reward);
  // On path the left branch ends bidding f(1)=1 and the right f(0)=0 for the
  // last player, so off-path left rows assume 1 wins (it takes ties) and
  // right rows assume 2 is needed.
  auto built = BuildForChain(reward, LeftChain(stages), 1);
  auto right = BuildForChain(reward, RightChain(stages), 2);
  built.insert(right.begin(), right.end());
  StrategyProfile profile = ProfileFromBuilt(built, game.topology);
  return RingSpecial{reward_big, std::move(game), std::move(profile)};
}

std::optional<Reward> MinSpanningIncentive(const Topology& topology,
                                           Reward bound) {
  if (bound < 0) {
    throw Error(ErrorCode::kInvalidArgument, "search bound must be >= 0");
  }
  const Shape shape = topology.shape();
  if (shape == Shape::kRing && !topology.IsCanonicalRing()) {
    throw Error(ErrorCode::kUnsupportedShape,
                "ring must be canonical (destination 0, players 1..2K-1)");
  }
  if (shape != Shape::kLine && shape != Shape::kTree &&
      shape != Shape::kRing) {
    throw Error(ErrorCode::kUnsupportedShape,
                "minimum-incentive search covers line, tree and ring only");
  }
  for (Reward r = 0; r <= bound; ++r) {
    if (ExistsSpanningNe(GameSpec(topology, r))) return r;
  }
  return std::nullopt;
}

}  // namespace routegame
