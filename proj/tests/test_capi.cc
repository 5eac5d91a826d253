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

// Exercises the shared library strictly through its C surface: opaque
// handles in, status codes and heap strings out.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>
#include <routegame.h>

using nlohmann::json;

namespace {

struct GameDeleter {
  void operator()(rg_game* g) const { rg_game_free(g); }
};
struct ProfileDeleter {
  void operator()(rg_profile* p) const { rg_profile_free(p); }
};
using GamePtr = std::unique_ptr<rg_game, GameDeleter>;
using ProfilePtr = std::unique_ptr<rg_profile, ProfileDeleter>;

// Grabs a returned string into std::string and releases the allocation.
std::string Take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  rg_string_free(s);
  return out;
}

GamePtr MakeLine(int depth, int64_t reward) {
  rg_game* g = nullptr;
  REQUIRE(rg_game_create_line(depth, reward, &g) == RG_OK);
  return GamePtr(g);
}

GamePtr MakeRing(int stages, int64_t reward) {
  rg_game* g = nullptr;
  REQUIRE(rg_game_create_ring(stages, reward, &g) == RG_OK);
  return GamePtr(g);
}

ProfilePtr Construct(const rg_game* game, const char* kind) {
  rg_profile* p = nullptr;
  REQUIRE(rg_profile_construct(game, kind, &p) == RG_OK);
  return ProfilePtr(p);
}

// The forced-bid chain at reward 3: player 1 resells one unit whenever it
// can, player 2 hoards. A full-game equilibrium, but not a frontier one.
constexpr const char* kForcedBidProfile = R"({
  "game": {
    "topology": {"destination": 0, "edges": [[0, 1], [1, 2], [2, 3]]},
    "reward": "3"
  },
  "strategies": {
    "1": [["0"], ["0"], ["1"], ["1"]],
    "2": [["0"], ["0"], ["0"], ["0"]]
  }
})";

}  // namespace

TEST_CASE("the error message is always defined") {
  CHECK(rg_last_error() != nullptr);
  rg_string_free(nullptr);  // must be a safe no-op
  rg_game_free(nullptr);
  rg_profile_free(nullptr);
}

TEST_CASE("games describe themselves") {
  const GamePtr game = MakeLine(3, 3);
  char* out = nullptr;
  REQUIRE(rg_game_describe(game.get(), &out) == RG_OK);
  const json j = json::parse(Take(out));
  CHECK(j["shape"] == "line");
  CHECK(j["depth"] == 3);
  CHECK(j["players"] == json::array({1, 2, 3}));
  CHECK(j["game"]["reward"] == "3");
  CHECK(j["game"]["cost"] == "1");
  CHECK(j["game"]["tiebreak"] == "lowest-sender");

  CHECK(rg_game_create_line(0, 3, nullptr) == RG_ERROR_INVALID_ARGUMENT);
  rg_game* bad = nullptr;
  CHECK(rg_game_create_line(0, 3, &bad) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_game_create_ring(1, 3, &bad) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(rg_last_error()).find("ring") != std::string::npos);
}

TEST_CASE("json games carry shape and tie preference") {
  const char* fork =
      R"({"destination": 0, "edges": [[0, 1], [1, 2], [1, 3]]})";
  rg_game* g = nullptr;
  REQUIRE(rg_game_create_json(fork, 3, "highest-sender", &g) == RG_OK);
  const GamePtr game(g);
  char* out = nullptr;
  REQUIRE(rg_game_describe(game.get(), &out) == RG_OK);
  const json j = json::parse(Take(out));
  CHECK(j["shape"] == "tree");
  CHECK(j["game"]["tiebreak"] == "highest-sender");

  rg_game* bad = nullptr;
  CHECK(rg_game_create_json("{ not json", 3, nullptr, &bad) == RG_ERROR_PARSE);
  CHECK(rg_game_create_json(fork, 3, "leftmost", &bad) == RG_ERROR_PARSE);
  CHECK(rg_game_create_json(nullptr, 3, nullptr, &bad) ==
        RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("the special ring reward arrives as a decimal string") {
  char* out = nullptr;
  REQUIRE(rg_ring_special_reward(7, &out) == RG_OK);
  CHECK(Take(out) == "155");
  REQUIRE(rg_ring_special_reward(25, &out) == RG_OK);
  CHECK(Take(out) == "27029669736328405580315");  // far beyond 64 bits
  CHECK(rg_ring_special_reward(2, &out) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(rg_last_error()).find("3 stages") != std::string::npos);
}

TEST_CASE("profiles round trip through json byte for byte") {
  const GamePtr game = MakeRing(3, 3);
  const ProfilePtr built = Construct(game.get(), "ring-special");

  char* out = nullptr;
  REQUIRE(rg_profile_to_json(game.get(), built.get(), &out) == RG_OK);
  const std::string first = Take(out);

  rg_game* g2 = nullptr;
  rg_profile* p2 = nullptr;
  REQUIRE(rg_profile_parse(first.c_str(), &g2, &p2) == RG_OK);
  const GamePtr game2(g2);
  const ProfilePtr profile2(p2);
  REQUIRE(rg_profile_to_json(game2.get(), profile2.get(), &out) == RG_OK);
  CHECK(Take(out) == first);

  rg_profile* bad = nullptr;
  CHECK(rg_profile_parse("{}", &g2, &bad) == RG_ERROR_PARSE);
  CHECK(rg_profile_parse("{]", &g2, &bad) == RG_ERROR_PARSE);
}

TEST_CASE("construction rejects mismatched games") {
  const GamePtr line = MakeLine(3, 3);
  const GamePtr ring = MakeRing(3, 4);
  rg_profile* p = nullptr;
  CHECK(rg_profile_construct(line.get(), "ring2", &p) == RG_ERROR_UNSUPPORTED);
  CHECK(rg_profile_construct(ring.get(), "line-spe", &p) ==
        RG_ERROR_UNSUPPORTED);
  CHECK(rg_profile_construct(ring.get(), "tree-spe", &p) ==
        RG_ERROR_UNSUPPORTED);
  CHECK(rg_profile_construct(line.get(), "grand-coalition", &p) ==
        RG_ERROR_INVALID_ARGUMENT);

  // The many-stage ring construction works at exactly its growth reward.
  CHECK(rg_profile_construct(ring.get(), "ring-special", &p) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(rg_last_error()).find("applies at reward 3") !=
        std::string::npos);
}

TEST_CASE("cascade and dot render the played outcome") {
  const GamePtr game = MakeLine(3, 3);
  const ProfilePtr profile = Construct(game.get(), "line-spe");

  char* out = nullptr;
  REQUIRE(rg_cascade(game.get(), profile.get(), &out) == RG_OK);
  const json tree = json::parse(Take(out));
  CHECK(tree["spanning"] == true);
  CHECK(tree["players"]["1"]["received"] == "3");
  CHECK(tree["players"]["1"]["offers"] == json::array({"2"}));
  CHECK(tree["players"]["1"]["utility"] == "4");
  CHECK(tree["players"]["3"]["received"] == "1");
  CHECK(tree["players"]["3"]["utility"] == "0");

  REQUIRE(rg_outcome_dot(game.get(), profile.get(), &out) == RG_OK);
  const std::string dot = Take(out);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("rankdir=RL") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("d=2 u=4") != std::string::npos);  // player 1's label
}

TEST_CASE("verification verdicts carry the witness") {
  const GamePtr game = MakeLine(3, 3);
  const ProfilePtr good = Construct(game.get(), "line-spe");
  char* out = nullptr;
  REQUIRE(rg_verify(game.get(), good.get(), "nash", &out) == RG_OK);
  json verdict = json::parse(Take(out));
  CHECK(verdict["mode"] == "nash");
  CHECK(verdict["pass"] == true);
  CHECK(verdict["witness"].is_null());

  rg_game* g = nullptr;
  rg_profile* p = nullptr;
  REQUIRE(rg_profile_parse(kForcedBidProfile, &g, &p) == RG_OK);
  const GamePtr forced_game(g);
  const ProfilePtr forced(p);

  REQUIRE(rg_verify(forced_game.get(), forced.get(), "nash", &out) == RG_OK);
  verdict = json::parse(Take(out));
  CHECK(verdict["pass"] == true);

  // The hoarder would resell if the chain above ever paid it 2; the frontier
  // sweep catches that even though the full game does not reach it.
  CHECK(rg_verify(forced_game.get(), forced.get(), "spe", &out) ==
        RG_ERROR_VERIFICATION);
  verdict = json::parse(Take(out));
  CHECK(verdict["pass"] == false);
  CHECK(verdict["witness"]["player"] == 2);
  CHECK(verdict["witness"]["offers"] == json::array({"1"}));
  CHECK(verdict["witness"]["gain"] == "1");
  CHECK(std::string(verdict["witness"]["history"]).find("player 2") !=
        std::string::npos);
  CHECK(std::string(rg_last_error()).find("check failed") !=
        std::string::npos);

  CHECK(rg_verify(forced_game.get(), forced.get(), "both", &out) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_verify(forced_game.get(), forced.get(), nullptr, &out) ==
        RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("simulation compares the protocol with the cascade") {
  const GamePtr game = MakeLine(3, 3);
  const ProfilePtr profile = Construct(game.get(), "line-spe");
  char* out = nullptr;
  REQUIRE(rg_simulate(game.get(), profile.get(), 10, 0, &out) == RG_OK);
  const json report = json::parse(Take(out));
  CHECK(report["converged"] == true);
  CHECK(report["unanimous"] == true);
  CHECK(report["trials"] == "10");
  CHECK(report["rounds"] == "6");
  CHECK(report["tree"]["spanning"] == true);
  CHECK_FALSE(report.contains("failed_trial"));

  CHECK(rg_simulate(game.get(), profile.get(), 0, 0, &out) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_simulate(game.get(), profile.get(), -2, 0, &out) ==
        RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("growth table csv") {
  char* out = nullptr;
  REQUIRE(rg_growth_table(7, &out) == RG_OK);
  const std::string csv = Take(out);
  CHECK(csv.find("k,value,increment,factorial\n") == 0);
  CHECK(csv.find("\n0,0,,\n") != std::string::npos);
  CHECK(csv.find("\n1,1,1,\n") != std::string::npos);
  CHECK(csv.find("\n2,2,1,1\n") != std::string::npos);
  CHECK(csv.find("\n7,155,120,120\n") != std::string::npos);
  CHECK(rg_growth_table(-1, &out) == RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("ring matrix json and csv agree with the frozen table") {
  char* jout = nullptr;
  char* cout_ = nullptr;
  REQUIRE(rg_ring_matrix(6, nullptr, &jout, &cout_) == RG_OK);
  const json j = json::parse(Take(jout));
  CHECK(j["reward"] == "6");
  CHECK(j["row_actions"].size() == 6);
  CHECK(j["payoffs"][2][1] == json::array({"8", "5"}));
  CHECK(j["payoffs"][2][3] == json::array({"4", "6"}));
  CHECK(j["reduced_rows"] == json::array({"2", "3"}));
  CHECK(j["reduced_cols"] == json::array({"1", "3"}));
  CHECK(j["elimination_order"].size() == 8);
  CHECK(j["elimination_order"][0]["side"] == "row");
  CHECK(j["elimination_order"][0]["action"] == "0");
  CHECK(j["pure_nash"].empty());
  CHECK(j["best_response"]["start"] == json::array({"2", "1"}));
  CHECK(j["best_response"]["path"].size() == 4);
  CHECK(j["best_response"]["cycle"].size() == 4);

  const std::string csv = Take(cout_);
  CHECK(csv.find("r1/r2,0,1,2,3,4,5\n") == 0);
  CHECK(csv.find("\n2,8:0,8:5,8:4,4:6,4:4,4:2\n") != std::string::npos);

  REQUIRE(rg_ring_matrix(6, "literal", &jout, nullptr) == RG_OK);
  const json lit = json::parse(Take(jout));
  CHECK(lit["payoffs"][2][3] == json::array({"8", "3"}));

  CHECK(rg_ring_matrix(6, nullptr, nullptr, nullptr) == RG_OK);
  CHECK(rg_ring_matrix(6, "folk", &jout, nullptr) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_ring_matrix(0, nullptr, &jout, nullptr) ==
        RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("minimum incentive searches under a bound") {
  const GamePtr game = MakeLine(3, 3);
  char* out = nullptr;
  REQUIRE(rg_min_incentive(game.get(), 8, &out) == RG_OK);
  json j = json::parse(Take(out));
  CHECK(j["found"] == true);
  CHECK(j["reward"] == "3");
  CHECK(j["bound"] == "8");

  REQUIRE(rg_min_incentive(game.get(), 2, &out) == RG_OK);
  j = json::parse(Take(out));
  CHECK(j["found"] == false);
  CHECK(j["reward"].is_null());

  const GamePtr ring = MakeRing(3, 9);
  REQUIRE(rg_min_incentive(ring.get(), 8, &out) == RG_OK);
  CHECK(json::parse(Take(out))["reward"] == "3");

  CHECK(rg_min_incentive(game.get(), -1, &out) == RG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("null handles and sinks are rejected not crashed") {
  const GamePtr game = MakeLine(2, 2);
  const ProfilePtr profile = Construct(game.get(), "line-spe");
  char* out = nullptr;
  CHECK(rg_game_describe(nullptr, &out) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_game_describe(game.get(), nullptr) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_cascade(nullptr, profile.get(), &out) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_cascade(game.get(), nullptr, &out) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_profile_to_json(game.get(), nullptr, &out) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_profile_construct(game.get(), nullptr, nullptr) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_profile_parse(nullptr, nullptr, nullptr) ==
        RG_ERROR_INVALID_ARGUMENT);
  CHECK(rg_min_incentive(nullptr, 3, &out) == RG_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(rg_last_error()).find("null") != std::string::npos);
}
