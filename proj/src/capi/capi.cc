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

#include "routegame.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "core/dynamics.h"
#include "core/equilibria.h"
#include "core/game.h"
#include "core/normal_form.h"
#include "core/stage_game.h"
#include "core/strategy.h"
#include "json.hpp"

using nlohmann::ordered_json;

struct rg_game {
  routegame::GameSpec spec;
};

struct rg_profile {
  routegame::StrategyProfile profile;
};

namespace {

thread_local std::string t_last_error = "no error";

rg_status StatusFor(routegame::ErrorCode code) {
  switch (code) {
    case routegame::ErrorCode::kInvalidArgument:
    case routegame::ErrorCode::kIllegalAction:
      return RG_ERROR_INVALID_ARGUMENT;
    case routegame::ErrorCode::kParseError:
      return RG_ERROR_PARSE;
    case routegame::ErrorCode::kUnsupportedShape:
      return RG_ERROR_UNSUPPORTED;
    case routegame::ErrorCode::kInternal:
      return RG_ERROR_INTERNAL;
  }
  return RG_ERROR_INTERNAL;
}

rg_status Fail(rg_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes + rg_last_error().
template <typename Fn>
rg_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const routegame::Error& e) {
    return Fail(StatusFor(e.code()), e.what());
  } catch (const std::exception& e) {
    return Fail(RG_ERROR_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rg_status Emit(const std::string& s, char** out) {
  if (out == nullptr) return Fail(RG_ERROR_INVALID_ARGUMENT, "null output");
  *out = Dup(s);
  if (*out == nullptr) return Fail(RG_ERROR_INTERNAL, "out of memory");
  return RG_OK;
}

rg_status CheckGame(const rg_game* game) {
  if (game == nullptr)
    return Fail(RG_ERROR_INVALID_ARGUMENT, "null game handle");
  return RG_OK;
}

rg_status CheckProfile(const rg_profile* profile) {
  if (profile == nullptr)
    return Fail(RG_ERROR_INVALID_ARGUMENT, "null profile handle");
  return RG_OK;
}

std::string Dec(routegame::Reward v) { return std::to_string(v); }

ordered_json RewardList(const std::vector<routegame::Reward>& xs) {
  ordered_json a = ordered_json::array();
  for (const routegame::Reward x : xs) a.push_back(Dec(x));
  return a;
}

ordered_json CellList(
    const std::vector<std::pair<routegame::Reward, routegame::Reward>>& xs) {
  ordered_json a = ordered_json::array();
  for (const auto& [r, c] : xs)
    a.push_back(ordered_json::array({Dec(r), Dec(c)}));
  return a;
}

ordered_json WitnessJson(const routegame::DeviationWitness& w) {
  ordered_json j;
  j["player"] = w.player;
  j["history"] = w.history;
  j["offers"] = RewardList(w.action);
  j["gain"] = Dec(w.gain);
  return j;
}

}  // namespace

extern "C" {

const char* rg_last_error(void) { return t_last_error.c_str(); }

void rg_string_free(char* s) { std::free(s); }

rg_status rg_game_create_json(const char* topology_json, int64_t reward,
                              const char* tiebreak, rg_game** out) {
  return Guard([&]() -> rg_status {
    if (topology_json == nullptr || out == nullptr)
      return Fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    routegame::Topology topo = routegame::Topology::FromJson(topology_json);
    routegame::TieBreak tb =
        tiebreak == nullptr ? routegame::TieBreak::kLowestSender
                            : routegame::TieBreakFromName(tiebreak);
    *out = new rg_game{routegame::GameSpec(std::move(topo), reward, tb)};
    return RG_OK;
  });
}

rg_status rg_game_create_line(int depth, int64_t reward, rg_game** out) {
  return Guard([&]() -> rg_status {
    if (out == nullptr) return Fail(RG_ERROR_INVALID_ARGUMENT, "null output");
    *out = new rg_game{
        routegame::GameSpec(routegame::Topology::Line(depth), reward)};
    return RG_OK;
  });
}

rg_status rg_game_create_ring(int stages, int64_t reward, rg_game** out) {
  return Guard([&]() -> rg_status {
    if (out == nullptr) return Fail(RG_ERROR_INVALID_ARGUMENT, "null output");
    *out = new rg_game{
        routegame::GameSpec(routegame::Topology::Ring(stages), reward)};
    return RG_OK;
  });
}

void rg_game_free(rg_game* game) { delete game; }

rg_status rg_game_describe(const rg_game* game, char** json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    const routegame::Topology& topo = game->spec.topology;
    ordered_json j;
    j["shape"] = routegame::ShapeName(topo.shape());
    j["depth"] = topo.depth();
    j["players"] = topo.players();
    j["game"] = ordered_json::parse(routegame::GameSpecToJson(game->spec));
    return Emit(j.dump(2), json_out);
  });
}

rg_status rg_ring_special_reward(int stages, char** decimal_out) {
  return Guard([&]() -> rg_status {
    if (stages < 3)
      return Fail(RG_ERROR_INVALID_ARGUMENT,
                  "the construction needs at least 3 stages");
    return Emit(routegame::GrowthF(stages).str(), decimal_out);
  });
}

rg_status rg_profile_construct(const rg_game* game, const char* kind,
                               rg_profile** out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (kind == nullptr || out == nullptr)
      return Fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    const routegame::GameSpec& spec = game->spec;
    const std::string k = kind;
    routegame::StrategyProfile built;
    if (k == "line-spe") {
      if (spec.topology.shape() != routegame::Shape::kLine)
        return Fail(RG_ERROR_UNSUPPORTED, "line-spe needs a line topology");
      built = routegame::BuildTreeSpe(spec.reward, spec.topology);
    } else if (k == "tree-spe") {
      built = routegame::BuildTreeSpe(spec.reward, spec.topology);
    } else if (k == "ring2") {
      if (!spec.topology.IsCanonicalRing() || spec.topology.depth() != 2)
        return Fail(RG_ERROR_UNSUPPORTED, "ring2 needs the 2-stage ring");
      built = routegame::BuildRing2Ne(spec.reward);
    } else if (k == "ring-special") {
      if (!spec.topology.IsCanonicalRing())
        return Fail(RG_ERROR_UNSUPPORTED, "ring-special needs a ring topology");
      routegame::RingSpecial rs =
          routegame::BuildRingSpecial(spec.topology.depth());
      if (routegame::BigInt(spec.reward) != rs.reward)
        return Fail(RG_ERROR_INVALID_ARGUMENT,
                    "ring-special applies at reward " + rs.reward.str() +
                        " for " + std::to_string(spec.topology.depth()) +
                        " stages, game has " + Dec(spec.reward));
      built = std::move(rs.profile);
    } else {
      return Fail(RG_ERROR_INVALID_ARGUMENT, "unknown construction: " + k);
    }
    built.Validate(spec);
    *out = new rg_profile{std::move(built)};
    return RG_OK;
  });
}

rg_status rg_profile_parse(const char* profile_json, rg_game** game_out,
                           rg_profile** profile_out) {
  return Guard([&]() -> rg_status {
    if (profile_json == nullptr || game_out == nullptr ||
        profile_out == nullptr)
      return Fail(RG_ERROR_INVALID_ARGUMENT, "null argument");
    auto [spec, profile] = routegame::ProfileFromJson(profile_json);
    *game_out = new rg_game{std::move(spec)};
    *profile_out = new rg_profile{std::move(profile)};
    return RG_OK;
  });
}

rg_status rg_profile_to_json(const rg_game* game, const rg_profile* profile,
                             char** json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (rg_status s = CheckProfile(profile); s != RG_OK) return s;
    return Emit(routegame::ProfileToJson(game->spec, profile->profile),
                json_out);
  });
}

void rg_profile_free(rg_profile* profile) { delete profile; }

rg_status rg_cascade(const rg_game* game, const rg_profile* profile,
                     char** tree_json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (rg_status s = CheckProfile(profile); s != RG_OK) return s;
    routegame::OutcomeTree tree =
        routegame::Cascade(game->spec, profile->profile);
    return Emit(tree.ToJson(), tree_json_out);
  });
}

rg_status rg_outcome_dot(const rg_game* game, const rg_profile* profile,
                         char** dot_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (rg_status s = CheckProfile(profile); s != RG_OK) return s;
    routegame::OutcomeTree tree =
        routegame::Cascade(game->spec, profile->profile);
    return Emit(tree.ToDot(), dot_out);
  });
}

rg_status rg_verify(const rg_game* game, const rg_profile* profile,
                    const char* mode, char** verdict_json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (rg_status s = CheckProfile(profile); s != RG_OK) return s;
    if (mode == nullptr) return Fail(RG_ERROR_INVALID_ARGUMENT, "null mode");
    const std::string m = mode;
    routegame::VerifyResult result;
    if (m == "nash") {
      result = routegame::IsNash(game->spec, profile->profile);
    } else if (m == "spe") {
      result = routegame::IsSubgamePerfect(game->spec, profile->profile);
    } else {
      return Fail(RG_ERROR_INVALID_ARGUMENT, "unknown mode: " + m);
    }
    ordered_json j;
    j["mode"] = m;
    j["pass"] = result.pass;
    j["witness"] =
        result.witness ? WitnessJson(*result.witness) : ordered_json(nullptr);
    if (rg_status s = Emit(j.dump(2), verdict_json_out); s != RG_OK) return s;
    if (!result.pass) {
      std::ostringstream os;
      os << "check failed: player " << result.witness->player << " gains "
         << result.witness->gain << " at " << result.witness->history;
      return Fail(RG_ERROR_VERIFICATION, os.str());
    }
    return RG_OK;
  });
}

rg_status rg_simulate(const rg_game* game, const rg_profile* profile,
                      int trials, uint64_t seed, char** report_json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    if (rg_status s = CheckProfile(profile); s != RG_OK) return s;
    if (trials < 0)
      return Fail(RG_ERROR_INVALID_ARGUMENT, "negative trial count");
    const routegame::GameSpec& spec = game->spec;
    routegame::Schedule rr = routegame::Schedule::RoundRobin(spec.topology);
    const long long max_rounds =
        static_cast<long long>(rr.rounds.size()) * (spec.topology.depth() + 4);
    routegame::RunResult run =
        routegame::Run(spec, profile->profile, rr, max_rounds);
    routegame::OutcomeTree baseline =
        routegame::Cascade(spec, profile->profile);
    routegame::ConvergenceReport report = routegame::CheckUniqueConvergence(
        spec, profile->profile, trials, seed);
    ordered_json j;
    j["converged"] = run.converged;
    j["rounds"] = Dec(run.rounds_used);
    j["unanimous"] =
        run.converged && run.tree.SameTree(baseline) && report.unanimous;
    j["trials"] = Dec(report.trials);
    if (report.failed_trial) j["failed_trial"] = *report.failed_trial;
    j["tree"] = ordered_json::parse(run.tree.ToJson());
    return Emit(j.dump(2), report_json_out);
  });
}

rg_status rg_growth_table(int max_k, char** csv_out) {
  return Guard([&]() -> rg_status {
    std::vector<routegame::GrowthRow> rows = routegame::GrowthTable(max_k);
    std::ostringstream os;
    os << "k,value,increment,factorial\n";
    for (const routegame::GrowthRow& row : rows) {
      os << row.k << "," << row.value.str() << ",";
      if (row.increment) os << row.increment->str();
      os << ",";
      if (row.factorial) os << row.factorial->str();
      os << "\n";
    }
    return Emit(os.str(), csv_out);
  });
}

rg_status rg_ring_matrix(int64_t reward, const char* resolution,
                         char** json_out, char** csv_out) {
  return Guard([&]() -> rg_status {
    routegame::StageTwoResolution res =
        routegame::StageTwoResolution::kSearched;
    if (resolution != nullptr) {
      const std::string r = resolution;
      if (r == "searched") {
        res = routegame::StageTwoResolution::kSearched;
      } else if (r == "literal") {
        res = routegame::StageTwoResolution::kLiteral;
      } else {
        return Fail(RG_ERROR_INVALID_ARGUMENT, "unknown resolution: " + r);
      }
    }
    routegame::GameSpec spec(routegame::Topology::Ring(3), reward);
    routegame::NormalFormMatrix m = routegame::ReduceToNormalForm(spec, res);
    routegame::DominanceResult dom = routegame::IteratedStrictDominance(m);
    std::vector<std::pair<routegame::Reward, routegame::Reward>> ne =
        routegame::PureNash(m);
    const routegame::Reward row0 = dom.matrix.row_actions.front();
    const routegame::Reward col0 = dom.matrix.col_actions.front();
    routegame::BestResponseWalk walk =
        routegame::BestResponseCycle(m, row0, col0);
    if (json_out != nullptr) {
      ordered_json j;
      j["reward"] = Dec(reward);
      j["resolution"] = m.resolution_note;
      j["row_actions"] = RewardList(m.row_actions);
      j["col_actions"] = RewardList(m.col_actions);
      ordered_json grid = ordered_json::array();
      for (const auto& row : m.payoffs) grid.push_back(CellList(row));
      j["payoffs"] = std::move(grid);
      j["reduced_rows"] = RewardList(dom.matrix.row_actions);
      j["reduced_cols"] = RewardList(dom.matrix.col_actions);
      ordered_json elim = ordered_json::array();
      for (const routegame::Elimination& e : dom.order) {
        ordered_json je;
        je["side"] = e.row ? "row" : "col";
        je["action"] = Dec(e.action);
        elim.push_back(std::move(je));
      }
      j["elimination_order"] = std::move(elim);
      j["pure_nash"] = CellList(ne);
      ordered_json br;
      br["start"] = ordered_json::array({Dec(row0), Dec(col0)});
      br["path"] = CellList(walk.path);
      br["cycle"] = CellList(walk.cycle);
      j["best_response"] = std::move(br);
      if (rg_status s = Emit(j.dump(2), json_out); s != RG_OK) return s;
    }
    if (csv_out != nullptr) {
      std::ostringstream os;
      os << "r1/r2";
      for (const routegame::Reward c : m.col_actions) os << "," << c;
      os << "\n";
      for (std::size_t i = 0; i < m.row_actions.size(); ++i) {
        os << m.row_actions[i];
        for (const auto& [u1, u2] : m.payoffs[i]) os << "," << u1 << ":" << u2;
        os << "\n";
      }
      if (rg_status s = Emit(os.str(), csv_out); s != RG_OK) return s;
    }
    return RG_OK;
  });
}

rg_status rg_min_incentive(const rg_game* game, int64_t bound,
                           char** json_out) {
  return Guard([&]() -> rg_status {
    if (rg_status s = CheckGame(game); s != RG_OK) return s;
    std::optional<routegame::Reward> found =
        routegame::MinSpanningIncentive(game->spec.topology, bound);
    ordered_json j;
    j["found"] = found.has_value();
    j["reward"] = found ? ordered_json(Dec(*found)) : ordered_json(nullptr);
    j["bound"] = Dec(bound);
    return Emit(j.dump(2), json_out);
  });
}

}  // extern "C"
