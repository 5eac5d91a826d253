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

#include "core/normal_form.h"

#include <algorithm>
#include <optional>

namespace routegame {
namespace {

struct StageTwoBids {
  Reward b3 = 0;
  Reward b4 = 0;
};

// Profit of one second-stage bidder: it sells one unit at its bid iff the
// bid is worth forwarding and beats the rival (or ties in its favour).
Reward DuelProfit(Reward incoming, Reward bid, Reward rival_bid,
                  bool wins_tie) {
  const bool wins =
      bid >= kUnitCost && (bid > rival_bid || (bid == rival_bid && wins_tie));
  return wins ? incoming - bid : 0;
}

StageTwoBids SolveSearched(Reward r1, Reward r2, bool left_wins_tie) {
  const bool in3 = r1 >= kUnitCost;
  const bool in4 = r2 >= kUnitCost;
  if (!in3 && !in4) return {0, 0};
  if (in3 != in4) {
    // Unopposed seller: the minimal winning bid, if it has any margin.
    const Reward r = in3 ? r1 : r2;
    const Reward bid = r >= 2 ? 1 : 0;
    return in3 ? StageTwoBids{bid, 0} : StageTwoBids{0, bid};
  }
  std::vector<StageTwoBids> equilibria;
  for (Reward b3 = 0; b3 < r1; ++b3) {
    for (Reward b4 = 0; b4 < r2; ++b4) {
      bool stable = true;
      const Reward p3 = DuelProfit(r1, b3, b4, left_wins_tie);
      for (Reward a = 0; a < r1 && stable; ++a) {
        if (DuelProfit(r1, a, b4, left_wins_tie) > p3) stable = false;
      }
      const Reward p4 = DuelProfit(r2, b4, b3, !left_wins_tie);
      for (Reward a = 0; a < r2 && stable; ++a) {
        if (DuelProfit(r2, a, b3, !left_wins_tie) > p4) stable = false;
      }
      if (stable) equilibria.push_back({b3, b4});
    }
  }
  // Selection among the duel's equilibria: the side with the higher incoming
  // reward (ties per the last player's preference) should win with the
  // minimal winning bid while the loser bids its cap.
  const bool left_designated = r1 > r2 || (r1 == r2 && left_wins_tie);
  auto rank = [&](const StageTwoBids& e) {
    const bool left_wins =
        e.b3 >= kUnitCost &&
        (e.b3 > e.b4 || (e.b3 == e.b4 && left_wins_tie));
    const bool right_wins = !left_wins && e.b4 >= kUnitCost;
    const bool designated_wins = left_designated ? left_wins : right_wins;
    const bool any_sale = left_wins || right_wins;
    const Reward winner_bid = left_wins ? e.b3 : e.b4;
    const Reward loser_bid = left_wins ? e.b4 : e.b3;
    // Lexicographic: designated winner first, then any sale, then the
    // winner's bid as low as possible, then the loser's as high as possible.
    return std::make_tuple(designated_wins ? 0 : 1, any_sale ? 0 : 1,
                           any_sale ? winner_bid : -e.b3 - e.b4, -loser_bid);
  };
  const StageTwoBids* best = nullptr;
  for (const StageTwoBids& e : equilibria) {
    if (best == nullptr || rank(e) < rank(*best)) best = &e;
  }
  // The duel always has a pure equilibrium; guard anyway.
  if (best == nullptr) {
    throw Error(ErrorCode::kInternal, "second-stage duel without equilibrium");
  }
  return *best;
}

Reward LiteralBid(Reward own, Reward rival) {
  if (own <= kUnitCost) return 0;  // includes the absent seller
  if (rival > kUnitCost) return std::min(own - 1, rival - 1);
  return 1;
}

}  // namespace

NormalFormMatrix ReduceToNormalForm(const GameSpec& game,
                                    StageTwoResolution resolution) {
  const Topology& topo = game.topology;
  if (!topo.IsCanonicalRing() || topo.depth() != 3) {
    throw Error(ErrorCode::kUnsupportedShape,
                "the two-player projection needs the canonical 3-stage ring");
  }
  if (game.reward < 1) {
    throw Error(ErrorCode::kInvalidArgument, "reward must be at least 1");
  }
  const bool left_wins_tie = game.tiebreak == TieBreak::kLowestSender;
  NormalFormMatrix m;
  for (Reward a = 0; a < game.reward; ++a) {
    m.row_actions.push_back(a);
    m.col_actions.push_back(a);
  }
  m.resolution_note =
      resolution == StageTwoResolution::kSearched
          ? "second stage solved by exhaustive equilibrium search; winner = "
            "higher incoming reward (ties to the last player's preference), "
            "minimal winning bid, loser at cap"
          : "second stage plays the literal min(own-1, rival-1) shorthand";
  for (const Reward r1 : m.row_actions) {
    std::vector<std::pair<Reward, Reward>> row;
    for (const Reward r2 : m.col_actions) {
      StageTwoBids bids;
      if (resolution == StageTwoResolution::kSearched) {
        bids = SolveSearched(r1, r2, left_wins_tie);
      } else {
        bids = {LiteralBid(r1, r2), LiteralBid(r2, r1)};
      }
      ActionProfile actions;
      actions[1] = {r1};
      actions[2] = {r2};
      actions[3] = {bids.b3};
      actions[4] = {bids.b4};
      const OutcomeTree out = OutcomeFromActions(game, actions);
      row.emplace_back(out.at(1).profit_term, out.at(2).profit_term);
    }
    m.payoffs.push_back(std::move(row));
  }
  return m;
}

namespace {

// Is `a` strictly worse than some other live action of the same player in
// every live opposing action?
std::optional<std::size_t> FindDominated(const NormalFormMatrix& m,
                                         const std::vector<bool>& rows_alive,
                                         const std::vector<bool>& cols_alive,
                                         bool for_rows) {
  const std::size_t n = for_rows ? m.row_actions.size() : m.col_actions.size();
  const std::size_t k = for_rows ? m.col_actions.size() : m.row_actions.size();
  const auto& alive = for_rows ? rows_alive : cols_alive;
  const auto& other_alive = for_rows ? cols_alive : rows_alive;
  auto pay = [&](std::size_t own, std::size_t opp) {
    return for_rows ? m.payoffs[own][opp].first : m.payoffs[opp][own].second;
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (!alive[a]) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !alive[b]) continue;
      bool dominates = true;
      for (std::size_t j = 0; j < k && dominates; ++j) {
        if (other_alive[j] && pay(b, j) <= pay(a, j)) dominates = false;
      }
      if (dominates) return a;
    }
  }
  return std::nullopt;
}

}  // namespace

DominanceResult IteratedStrictDominance(const NormalFormMatrix& m,
                                        ScanOrder scan) {
  std::vector<bool> rows_alive(m.row_actions.size(), true);
  std::vector<bool> cols_alive(m.col_actions.size(), true);
  DominanceResult result;
  for (;;) {
    const bool rows_first = scan == ScanOrder::kRowsFirst;
    auto first = FindDominated(m, rows_alive, cols_alive, rows_first);
    if (first.has_value()) {
      (rows_first ? rows_alive : cols_alive)[*first] = false;
      result.order.push_back(
          {rows_first,
           (rows_first ? m.row_actions : m.col_actions)[*first]});
      continue;
    }
    auto second = FindDominated(m, rows_alive, cols_alive, !rows_first);
    if (second.has_value()) {
      (!rows_first ? rows_alive : cols_alive)[*second] = false;
      result.order.push_back(
          {!rows_first,
           (!rows_first ? m.row_actions : m.col_actions)[*second]});
      continue;
    }
    break;
  }
  NormalFormMatrix& out = result.matrix;
  out.resolution_note = m.resolution_note;
  for (std::size_t i = 0; i < m.row_actions.size(); ++i) {
    if (rows_alive[i]) out.row_actions.push_back(m.row_actions[i]);
  }
  for (std::size_t j = 0; j < m.col_actions.size(); ++j) {
    if (cols_alive[j]) out.col_actions.push_back(m.col_actions[j]);
  }
  for (std::size_t i = 0; i < m.row_actions.size(); ++i) {
    if (!rows_alive[i]) continue;
    std::vector<std::pair<Reward, Reward>> row;
    for (std::size_t j = 0; j < m.col_actions.size(); ++j) {
      if (cols_alive[j]) row.push_back(m.payoffs[i][j]);
    }
    out.payoffs.push_back(std::move(row));
  }
  return result;
}

std::vector<std::pair<Reward, Reward>> PureNash(const NormalFormMatrix& m) {
  std::vector<std::pair<Reward, Reward>> cells;
  for (std::size_t i = 0; i < m.row_actions.size(); ++i) {
    for (std::size_t j = 0; j < m.col_actions.size(); ++j) {
      bool stable = true;
      for (std::size_t a = 0; a < m.row_actions.size() && stable; ++a) {
        if (m.payoffs[a][j].first > m.payoffs[i][j].first) stable = false;
      }
      for (std::size_t b = 0; b < m.col_actions.size() && stable; ++b) {
        if (m.payoffs[i][b].second > m.payoffs[i][j].second) stable = false;
      }
      if (stable) cells.emplace_back(m.row_actions[i], m.col_actions[j]);
    }
  }
  return cells;
}

BestResponseWalk BestResponseCycle(const NormalFormMatrix& m, Reward row_start,
                                   Reward col_start) {
  auto index_of = [](const std::vector<Reward>& actions, Reward a) {
    auto it = std::find(actions.begin(), actions.end(), a);
    if (it == actions.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "starting action " + std::to_string(a) +
                      " is not in the matrix");
    }
    return static_cast<std::size_t>(it - actions.begin());
  };
  std::size_t r = index_of(m.row_actions, row_start);
  std::size_t c = index_of(m.col_actions, col_start);
  // Actions ascend, so scanning with a strict ">" keeps the lowest action
  // among tied best responses.
  auto best_row = [&](std::size_t col) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.row_actions.size(); ++i) {
      if (m.payoffs[i][col].first > m.payoffs[best][col].first) best = i;
    }
    return best;
  };
  auto best_col = [&](std::size_t row) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m.col_actions.size(); ++j) {
      if (m.payoffs[row][j].second > m.payoffs[row][best].second) best = j;
    }
    return best;
  };
  BestResponseWalk walk;
  walk.path.emplace_back(m.row_actions[r], m.col_actions[c]);
  for (;;) {
    const std::size_t br = best_row(c);
    if (br != r && m.payoffs[br][c].first > m.payoffs[r][c].first) {
      r = br;
    } else {
      const std::size_t bc = best_col(r);
      if (bc == c || m.payoffs[r][bc].second <= m.payoffs[r][c].second) {
        return walk;  // fixed point
      }
      c = bc;
    }
    const std::pair<Reward, Reward> cell(m.row_actions[r], m.col_actions[c]);
    const auto seen = std::find(walk.path.begin(), walk.path.end(), cell);
    if (seen != walk.path.end()) {
      walk.cycle.assign(seen, walk.path.end());
      return walk;
    }
    walk.path.push_back(cell);
  }
}

}  // namespace routegame
