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

#include "core/game.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "core/strategy.h"
#include "json.hpp"

namespace routegame {
namespace {

using ordered_json = nlohmann::ordered_json;

// Canonical upstream route of `node`: step towards the destination through
// the lowest-numbered supplier at every stage. Used only to label offers
// seeded at a subgame frontier; inside a cascade players extend the route of
// the offer they actually adopt.
std::vector<NodeId> CanonicalRoute(const Topology& topo, NodeId node) {
  std::vector<NodeId> route;
  NodeId cur = node;
  route.push_back(cur);
  while (cur != topo.destination()) {
    const std::vector<NodeId> ups = topo.Suppliers(cur);
    if (ups.empty()) {
      throw Error(ErrorCode::kInternal,
                  "no supplier on route for node " + std::to_string(cur));
    }
    cur = ups.front();
    route.push_back(cur);
  }
  return route;
}

void CheckActionLegal(NodeId player, const ActionVector& action,
                      std::size_t want_len, Reward incoming) {
  if (action.size() != want_len) {
    throw Error(ErrorCode::kIllegalAction,
                "player " + std::to_string(player) + " offers " +
                    std::to_string(action.size()) + " rewards but has " +
                    std::to_string(want_len) + " candidates",
                player);
  }
  for (const Reward r : action) {
    if (r < 0 || (r != 0 && r >= incoming)) {
      throw Error(ErrorCode::kIllegalAction,
                  "player " + std::to_string(player) + " resells at " +
                      std::to_string(r) + " while receiving " +
                      std::to_string(incoming),
                  player);
    }
  }
}

// Stage-by-stage cascade shared by the strategy-driven and the literal-action
// entry points. `act` yields the reward vector a reached player emits given
// its adopted incoming reward.
OutcomeTree RunCascade(
    const GameSpec& game, const History& at,
    const std::function<ActionVector(NodeId, Reward)>& act) {
  const Topology& topo = game.topology;
  OutcomeTree out;
  out.destination = topo.destination();
  for (const NodeId p : topo.players()) out.players[p] = PlayerOutcome{};

  std::map<NodeId, std::vector<RewardOffer>> pending;
  for (const History::Seed& seed : at.Seeds(game)) {
    if (seed.reward <= 0) continue;  // a zero reward is "no offer"
    RewardOffer offer;
    offer.from = seed.from;
    offer.to = seed.to;
    offer.reward = seed.reward;
    offer.route = CanonicalRoute(topo, seed.from);
    pending[seed.to].push_back(offer);
  }

  for (int stage = 1; stage <= topo.depth(); ++stage) {
    for (const NodeId player : topo.players()) {
      if (topo.stage(player) != stage) continue;
      auto it = pending.find(player);
      if (it == pending.end()) continue;
      std::optional<RewardOffer> pick =
          HrpSelect(it->second, game.tiebreak, game.cost);
      if (!pick.has_value()) continue;

      PlayerOutcome& po = out.players[player];
      po.participates = true;
      po.parent = pick->from;
      po.received = pick->reward;
      po.route.push_back(player);
      po.route.insert(po.route.end(), pick->route.begin(), pick->route.end());

      const std::vector<NodeId> candidates = topo.Candidates(player);
      if (candidates.empty()) continue;
      po.action = act(player, po.received);
      CheckActionLegal(player, po.action, candidates.size(), po.received);
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (po.action[k] <= 0) continue;
        RewardOffer offer;
        offer.from = player;
        offer.to = candidates[k];
        offer.reward = po.action[k];
        offer.route = po.route;
        pending[offer.to].push_back(offer);
      }
    }
  }

  FinalizeOutcome(game, &out);
  return out;
}

std::string RewardStr(Reward r) { return std::to_string(r); }

}  // namespace

void FinalizeOutcome(const GameSpec& game, OutcomeTree* out) {
  const Topology& topo = game.topology;
  out->spanning = true;
  for (auto& [player, po] : out->players) {
    po.children.clear();
    po.delta = 0;
    po.participation_term = 0;
    po.profit_term = 0;
  }
  for (const auto& [player, po] : out->players) {
    if (!po.participates) {
      out->spanning = false;
    } else if (po.parent != topo.destination()) {
      out->players[po.parent].children.push_back(player);
    }
  }
  // Subtree weights accumulate bottom-up, deepest players first.
  std::vector<NodeId> by_depth = topo.players();
  std::sort(by_depth.begin(), by_depth.end(), [&](NodeId a, NodeId b) {
    const int sa = topo.stage(a), sb = topo.stage(b);
    return sa != sb ? sa > sb : a < b;
  });
  for (const NodeId player : by_depth) {
    PlayerOutcome& po = out->players[player];
    if (!po.participates) continue;
    std::sort(po.children.begin(), po.children.end());
    po.participation_term = po.received - game.cost;
    for (const NodeId child : po.children) {
      const PlayerOutcome& co = out->players[child];
      po.delta += co.delta + 1;
      po.profit_term +=
          (po.received - co.received) * static_cast<Reward>(co.delta + 1);
    }
  }
}

GameSpec::GameSpec(Topology t, Reward r, TieBreak tb)
    : topology(std::move(t)), reward(r), tiebreak(tb) {
  if (r < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "destination reward must be non-negative, got " +
                    std::to_string(r));
  }
}

std::optional<RewardOffer> HrpSelect(const std::vector<RewardOffer>& offers,
                                     TieBreak tiebreak, Reward cost) {
  const RewardOffer* best = nullptr;
  for (const RewardOffer& offer : offers) {
    if (&offer != &offers.front() && offer.to != offers.front().to) {
      throw Error(ErrorCode::kInvalidArgument,
                  "offers target different players");
    }
    if (offer.reward < cost) continue;  // not worth forwarding
    if (best == nullptr || offer.reward > best->reward ||
        (offer.reward == best->reward &&
         (tiebreak == TieBreak::kLowestSender ? offer.from < best->from
                                              : offer.from > best->from))) {
      best = &offer;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

const PlayerOutcome& OutcomeTree::at(NodeId player) const {
  auto it = players.find(player);
  if (it == players.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no outcome for player " + std::to_string(player));
  }
  return it->second;
}

Reward OutcomeTree::UtilityOf(NodeId player) const {
  const PlayerOutcome& po = at(player);
  if (!po.participates) return 0;
  return po.participation_term + po.profit_term;
}

bool OutcomeTree::SameTree(const OutcomeTree& other) const {
  if (players.size() != other.players.size()) return false;
  for (const auto& [player, po] : players) {
    auto it = other.players.find(player);
    if (it == other.players.end()) return false;
    if (po.participates != it->second.participates) return false;
    if (po.participates && po.parent != it->second.parent) return false;
  }
  return true;
}

std::string OutcomeTree::ToJson() const {
  ordered_json j;
  j["destination"] = destination;
  j["spanning"] = spanning;
  ordered_json jp = ordered_json::object();
  for (const auto& [player, po] : players) {
    ordered_json e;
    e["participates"] = po.participates;
    if (po.participates) {
      e["parent"] = po.parent;
      e["received"] = RewardStr(po.received);
      e["route"] = po.route;
      ordered_json acts = ordered_json::array();
      for (const Reward r : po.action) acts.push_back(RewardStr(r));
      e["offers"] = acts;
      e["children"] = po.children;
      e["subtree"] = RewardStr(static_cast<Reward>(po.delta));
      e["utility"] = RewardStr(po.participation_term + po.profit_term);
      e["utility_participation"] = RewardStr(po.participation_term);
      e["utility_profit"] = RewardStr(po.profit_term);
    } else {
      e["utility"] = "0";
    }
    jp[std::to_string(player)] = std::move(e);
  }
  j["players"] = std::move(jp);
  return j.dump(2);
}

std::string OutcomeTree::ToDot() const {
  std::ostringstream os;
  os << "digraph routes {\n  rankdir=RL;\n";
  os << "  n" << destination << " [label=\"" << destination
     << "\", shape=doublecircle];\n";
  for (const auto& [player, po] : players) {
    os << "  n" << player << " [label=\"" << player;
    if (po.participates) {
      os << "\\nd=" << po.delta << " u="
         << RewardStr(po.participation_term + po.profit_term);
    }
    os << "\"";
    if (!po.participates) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& [player, po] : players) {
    if (!po.participates) continue;
    os << "  n" << player << " -> n" << po.parent << " [label=\""
       << RewardStr(po.received) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

History History::Full() { return History(); }

History History::At(NodeId player, Reward incoming) {
  History h;
  h.kind_ = Kind::kAt;
  h.player_ = player;
  h.left_in_ = incoming;
  return h;
}

History History::RingStage(int stage, Reward left_in, Reward right_in) {
  History h;
  h.kind_ = Kind::kRingStage;
  h.stage_ = stage;
  h.left_in_ = left_in;
  h.right_in_ = right_in;
  return h;
}

std::vector<History::Seed> History::Seeds(const GameSpec& game) const {
  const Topology& topo = game.topology;
  std::vector<Seed> seeds;
  switch (kind_) {
    case Kind::kFull:
      for (const NodeId n : topo.Candidates(topo.destination())) {
        seeds.push_back(Seed{topo.destination(), n, game.reward});
      }
      break;
    case Kind::kAt: {
      if (!topo.HasNode(player_) || player_ == topo.destination()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "no such player: " + std::to_string(player_));
      }
      const std::vector<NodeId> ups = topo.Suppliers(player_);
      if (ups.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "player " + std::to_string(player_) +
                        " has no unique upstream neighbour; pin the pair of "
                        "branch offers instead");
      }
      seeds.push_back(Seed{ups.front(), player_, left_in_});
      break;
    }
    case Kind::kRingStage: {
      if (!topo.IsCanonicalRing()) {
        throw Error(ErrorCode::kUnsupportedShape,
                    "per-stage offer pairs only apply to the canonical ring");
      }
      const int last = static_cast<int>(topo.players().size());
      if (stage_ < 1 || stage_ > topo.depth()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "stage out of range: " + std::to_string(stage_));
      }
      if (stage_ == topo.depth()) {
        // The last player is contested by the tails of both branches.
        seeds.push_back(Seed{last - 2, last, left_in_});
        seeds.push_back(Seed{last - 1, last, right_in_});
      } else {
        const NodeId left = 2 * stage_ - 1;
        const NodeId right = 2 * stage_;
        seeds.push_back(Seed{topo.Suppliers(left).front(), left, left_in_});
        seeds.push_back(Seed{topo.Suppliers(right).front(), right, right_in_});
      }
      break;
    }
  }
  return seeds;
}

std::string History::Describe() const {
  switch (kind_) {
    case Kind::kFull:
      return "full game";
    case Kind::kAt:
      return "player " + std::to_string(player_) + " offered " +
             std::to_string(left_in_);
    case Kind::kRingStage:
      return "stage " + std::to_string(stage_) + " offered (" +
             std::to_string(left_in_) + ", " + std::to_string(right_in_) + ")";
  }
  return "";
}

OutcomeTree Cascade(const GameSpec& game, const StrategyProfile& profile,
                    const History& at, const ActionProfile* pinned) {
  return RunCascade(game, at, [&](NodeId player, Reward incoming) {
    if (pinned != nullptr) {
      auto it = pinned->find(player);
      if (it != pinned->end()) return it->second;
    }
    return profile.ActionFor(player, incoming);
  });
}

OutcomeTree OutcomeFromActions(const GameSpec& game,
                               const ActionProfile& actions) {
  const Topology& topo = game.topology;
  for (const NodeId player : topo.players()) {
    const std::size_t n = topo.Candidates(player).size();
    auto it = actions.find(player);
    if (it == actions.end()) {
      if (n == 0) continue;
      throw Error(ErrorCode::kInvalidArgument,
                  "no action listed for player " + std::to_string(player),
                  player);
    }
    if (it->second.size() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "player " + std::to_string(player) + " lists " +
                      std::to_string(it->second.size()) + " rewards but has " +
                      std::to_string(n) + " candidates",
                  player);
    }
  }
  return RunCascade(game, History::Full(),
                    [&](NodeId player, Reward) -> ActionVector {
                      auto it = actions.find(player);
                      return it == actions.end() ? ActionVector{} : it->second;
                    });
}

std::string GameSpecToJson(const GameSpec& game) {
  ordered_json j;
  j["topology"] = ordered_json::parse(game.topology.ToJson());
  j["reward"] = RewardStr(game.reward);
  j["cost"] = RewardStr(game.cost);
  j["tiebreak"] = TieBreakName(game.tiebreak);
  return j.dump(2);
}

namespace {
Reward RewardFromJson(const nlohmann::json& v, const char* what) {
  try {
    if (v.is_string()) return std::stoll(v.get<std::string>());
    if (v.is_number_integer()) return v.get<Reward>();
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParseError,
              std::string(what) + " must be an integer or a decimal string");
}
}  // namespace

GameSpec GameSpecFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("topology") || !j.contains("reward")) {
    throw Error(ErrorCode::kParseError,
                "game JSON needs \"topology\" and \"reward\"");
  }
  GameSpec game(Topology::FromJson(j["topology"].dump()),
                RewardFromJson(j["reward"], "reward"));
  if (j.contains("cost") && RewardFromJson(j["cost"], "cost") != kUnitCost) {
    throw Error(ErrorCode::kInvalidArgument,
                "only unit forwarding cost is supported");
  }
  if (j.contains("tiebreak")) {
    game.tiebreak = TieBreakFromName(j["tiebreak"].get<std::string>());
  }
  return game;
}

Utility UtilityParts(const GameSpec& game, const OutcomeTree& outcome,
                     NodeId player) {
  if (!game.topology.HasNode(player)) {
    throw Error(ErrorCode::kInvalidArgument,
                "no such player: " + std::to_string(player));
  }
  Utility u;
  const PlayerOutcome& po = outcome.at(player);
  if (!po.participates) return u;
  u.participation = po.participation_term;
  u.profit = po.profit_term;
  u.total = u.participation + u.profit;
  return u;
}

}  // namespace routegame
