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

#include "core/dynamics.h"

#include <algorithm>
#include <random>
#include <string>

namespace routegame {

Schedule Schedule::RoundRobin(const Topology& topo) {
  Schedule s;
  for (const NodeId p : topo.players()) s.rounds.push_back({p});
  s.window = s.rounds.size();
  return s;
}

Schedule Schedule::Random(const Topology& topo, int windows,
                          std::uint64_t seed) {
  if (windows < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one window");
  }
  const std::vector<NodeId>& players = topo.players();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::size_t> pick(0, players.size() - 1);
  Schedule s;
  s.window = 2 * players.size();
  for (int w = 0; w < windows; ++w) {
    for (std::size_t r = 0; r < players.size(); ++r) {
      std::vector<NodeId> round;
      for (const NodeId p : players) {
        if (coin(rng) == 1) round.push_back(p);
      }
      if (round.empty()) round.push_back(players[pick(rng)]);
      s.rounds.push_back(std::move(round));
    }
    for (const NodeId p : players) s.rounds.push_back({p});
  }
  return s;
}

void Schedule::Validate(const Topology& topo) const {
  if (rounds.empty() || window == 0 || rounds.size() % window != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "schedule must be a whole number of nonempty windows");
  }
  for (const auto& round : rounds) {
    if (round.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty activation set");
    }
    for (const NodeId p : round) {
      if (!topo.HasNode(p) || p == topo.destination()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "scheduled node " + std::to_string(p) +
                        " is not a player");
      }
    }
  }
  for (std::size_t start = 0; start < rounds.size(); start += window) {
    for (const NodeId p : topo.players()) {
      bool seen = false;
      for (std::size_t r = start; r < start + window && !seen; ++r) {
        seen = std::count(rounds[r].begin(), rounds[r].end(), p) > 0;
      }
      if (!seen) {
        throw Error(ErrorCode::kInvalidArgument,
                    "player " + std::to_string(p) +
                        " is starved in a fairness window");
      }
    }
  }
}

ProtocolState InitState(const GameSpec& game) {
  ProtocolState st;
  const Topology& topo = game.topology;
  for (const NodeId p : topo.players()) st.views[p] = PlayerView{};
  if (game.reward >= kUnitCost) {
    for (const NodeId n : topo.Candidates(topo.destination())) {
      RewardOffer offer;
      offer.from = topo.destination();
      offer.to = n;
      offer.reward = game.reward;
      offer.route = {topo.destination()};
      st.inbox[n].push_back(std::move(offer));
    }
  }
  return st;
}

ProtocolState Step(const GameSpec& game, const StrategyProfile& strategies,
                   const ProtocolState& st,
                   const std::vector<NodeId>& activated) {
  const Topology& topo = game.topology;
  for (const NodeId p : activated) {
    if (!topo.HasNode(p) || p == topo.destination()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "activated node " + std::to_string(p) + " is not a player");
    }
  }
  ProtocolState next = st;
  next.round = st.round + 1;
  next.changed_last_step = false;

  // All activated players read this round's mail; deliveries they trigger
  // land in the next state and are seen on a later activation.
  std::vector<NodeId> order(activated);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::map<NodeId, std::vector<RewardOffer>> drained;
  for (const NodeId p : order) {
    drained[p] = next.inbox[p];
    next.inbox[p].clear();
  }
  for (const NodeId p : order) {
    PlayerView& view = next.views[p];
    for (const RewardOffer& offer : drained[p]) {
      view.rib_in[offer.from] = offer;  // freshest offer per sender wins
    }
    std::vector<RewardOffer> known;
    for (const auto& [from, offer] : view.rib_in) known.push_back(offer);
    std::optional<RewardOffer> best =
        known.empty() ? std::nullopt
                      : HrpSelect(known, game.tiebreak, game.cost);
    if (best == view.adopted) continue;
    view.adopted = best;
    view.emitted.clear();
    next.changed_last_step = true;
    if (!best.has_value()) continue;
    std::vector<NodeId> route;
    route.push_back(p);
    route.insert(route.end(), best->route.begin(), best->route.end());
    const std::vector<NodeId> candidates = topo.Candidates(p);
    if (candidates.empty()) continue;
    const ActionVector& action = strategies.ActionFor(p, best->reward);
    view.emitted = action;
    if (action.size() != candidates.size()) {
      throw Error(ErrorCode::kIllegalAction,
                  "player " + std::to_string(p) + " offers " +
                      std::to_string(action.size()) + " rewards but has " +
                      std::to_string(candidates.size()) + " candidates",
                  p);
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Reward r = action[k];
      if (r <= 0) continue;
      if (r >= best->reward) {
        throw Error(ErrorCode::kIllegalAction,
                    "player " + std::to_string(p) + " resells at " +
                        std::to_string(r) + " while receiving " +
                        std::to_string(best->reward),
                    p);
      }
      RewardOffer offer;
      offer.from = p;
      offer.to = candidates[k];
      offer.reward = r;
      offer.route = route;
      next.inbox[offer.to].push_back(std::move(offer));
    }
  }
  return next;
}

namespace {

OutcomeTree TreeFromState(const GameSpec& game, const ProtocolState& st) {
  OutcomeTree out;
  out.destination = game.topology.destination();
  for (const NodeId p : game.topology.players()) {
    PlayerOutcome po;
    const PlayerView& view = st.views.at(p);
    if (view.adopted.has_value()) {
      po.participates = true;
      po.parent = view.adopted->from;
      po.received = view.adopted->reward;
      po.route.push_back(p);
      po.route.insert(po.route.end(), view.adopted->route.begin(),
                      view.adopted->route.end());
      po.action = view.emitted;
    }
    out.players[p] = std::move(po);
  }
  FinalizeOutcome(game, &out);
  return out;
}

bool MailInFlight(const ProtocolState& st) {
  for (const auto& [to, box] : st.inbox) {
    if (!box.empty()) return true;
  }
  return false;
}

}  // namespace

RunResult Run(const GameSpec& game, const StrategyProfile& strategies,
              const Schedule& schedule, long long max_rounds) {
  if (max_rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one round");
  }
  schedule.Validate(game.topology);
  ProtocolState st = InitState(game);
  RunResult result;
  bool window_quiet = true;
  for (long long r = 0; r < max_rounds; ++r) {
    st = Step(game, strategies, st,
              schedule.rounds[static_cast<std::size_t>(
                  r % static_cast<long long>(schedule.rounds.size()))]);
    window_quiet = window_quiet && !st.changed_last_step;
    if ((r + 1) % static_cast<long long>(schedule.window) == 0) {
      if (window_quiet && !MailInFlight(st)) {
        result.converged = true;
        result.rounds_used = r + 1;
        result.tree = TreeFromState(game, st);
        return result;
      }
      window_quiet = true;
    }
  }
  result.converged = false;
  result.rounds_used = max_rounds;
  result.tree = TreeFromState(game, st);
  return result;
}

ConvergenceReport CheckUniqueConvergence(const GameSpec& game,
                                         const StrategyProfile& strategies,
                                         int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
  }
  const OutcomeTree want = Cascade(game, strategies);
  ConvergenceReport report;
  report.trials = trials;
  const int windows = game.topology.depth() + 3;
  for (int t = 0; t < trials; ++t) {
    Schedule sched = Schedule::Random(game.topology, windows, seed + t);
    RunResult run = Run(game, strategies, sched,
                        static_cast<long long>(sched.rounds.size()));
    if (!run.converged || !run.tree.SameTree(want)) {
      report.unanimous = false;
      report.failed_trial = t;
      report.counterexample = std::move(sched);
      return report;
    }
  }
  report.unanimous = true;
  return report;
}

}  // namespace routegame
