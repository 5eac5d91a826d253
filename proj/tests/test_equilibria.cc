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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "core/equilibria.h"
#include "core/game.h"
#include "core/stage_game.h"
#include "core/strategy.h"
#include "core/topology.h"
#include "core/types.h"

using namespace routegame;

namespace {

// Independent closed form: the recurrence telescopes into a factorial sum,
// f(k) = 1 + sum of i! for i = 0..k-2. Summing factorials shares no code
// path with the recurrence the library iterates.
BigInt FactorialSumForm(int k) {
  if (k == 0) return 0;
  BigInt total = 1;
  for (int i = 0; i <= k - 2; ++i) total += Factorial(i);
  return total;
}

Topology Fork() {
  return Topology::FromJson(
      R"({"destination": 0, "edges": [[0, 1], [1, 2], [1, 3]]})");
}

// One deep branch of two resellers plus one shallow leaf.
Topology MixedTree() {
  return Topology::FromJson(
      R"({"destination": 0, "edges": [[0, 1], [1, 2], [2, 3], [1, 4]]})");
}

}  // namespace

TEST_CASE("growth sequence starts 0 1 2 3 5 11 35 155") {
  const std::vector<long long> first = {0, 1, 2, 3, 5, 11, 35, 155};
  for (std::size_t k = 0; k < first.size(); ++k) {
    CAPTURE(k);
    CHECK(GrowthF(static_cast<int>(k)) == first[k]);
  }
  CHECK_THROWS_AS(GrowthF(-1), Error);
  CHECK(Factorial(0) == 1);
  CHECK(Factorial(5) == 120);
  CHECK_THROWS_AS(Factorial(-2), Error);
}

TEST_CASE("growth matches the factorial sum closed form through depth 25") {
  for (int k = 0; k <= 25; ++k) {
    CAPTURE(k);
    CHECK(GrowthF(k) == FactorialSumForm(k));
  }
}

TEST_CASE("growth increments are factorials") {
  for (int k = 2; k <= 25; ++k) {
    CAPTURE(k);
    CHECK(GrowthF(k) - GrowthF(k - 1) == Factorial(k - 2));
  }
  // The two-step difference telescopes as well, which is what pays the
  // second ring branch its full factorial profit.
  for (int k = 3; k <= 25; ++k) {
    CAPTURE(k);
    CHECK((GrowthF(k) - GrowthF(k - 2)) * (k - 2) == Factorial(k - 1));
  }
}

TEST_CASE("growth table carries value increment and closed form") {
  const std::vector<GrowthRow> rows = GrowthTable(7);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].k == 0);
  CHECK(rows[0].value == 0);
  CHECK_FALSE(rows[0].increment.has_value());
  CHECK_FALSE(rows[0].factorial.has_value());
  CHECK(rows[1].increment == BigInt(1));
  CHECK_FALSE(rows[1].factorial.has_value());
  for (std::size_t k = 2; k < rows.size(); ++k) {
    CAPTURE(k);
    REQUIRE(rows[k].increment.has_value());
    REQUIRE(rows[k].factorial.has_value());
    CHECK(*rows[k].increment == *rows[k].factorial);
  }
  CHECK(rows[7].value == 155);
  CHECK(*rows[7].increment == 120);
  CHECK_THROWS_AS(GrowthTable(-3), Error);
}

TEST_CASE("chain induction is perfect for small depths and rewards") {
  for (int depth = 1; depth <= 5; ++depth) {
    for (Reward rd = 0; rd <= 8; ++rd) {
      CAPTURE(depth);
      CAPTURE(rd);
      const GameSpec game(Topology::Line(depth), rd);
      const StrategyProfile profile = BuildLineSpe(rd, depth);
      CHECK(IsSubgamePerfect(game, profile).pass);
    }
  }
}

TEST_CASE("chain on path resells two then one at reward three") {
  const GameSpec game(Topology::Line(3), 3);
  const OutcomeTree out = Cascade(game, BuildLineSpe(3, 3));
  CHECK(out.spanning);
  CHECK(out.at(1).received == 3);
  CHECK(out.at(2).received == 2);
  CHECK(out.at(3).received == 1);
  CHECK(out.UtilityOf(1) == 4);
  CHECK(out.UtilityOf(2) == 2);
  CHECK(out.UtilityOf(3) == 0);
}

TEST_CASE("chain spans exactly at the growth boundary") {
  for (int depth = 1; depth <= 5; ++depth) {
    CAPTURE(depth);
    const Reward at = GrowthF(depth).convert_to<Reward>();
    const GameSpec enough(Topology::Line(depth), at);
    CHECK(Cascade(enough, BuildLineSpe(at, depth)).spanning);

    const GameSpec short_by_one(Topology::Line(depth), at - 1);
    CHECK_FALSE(Cascade(short_by_one, BuildLineSpe(at - 1, depth)).spanning);
  }
}

TEST_CASE("tree induction covers forks and mixed depths") {
  for (Reward rd = 0; rd <= 6; ++rd) {
    CAPTURE(rd);
    CHECK(IsSubgamePerfect(GameSpec(Fork(), rd), BuildTreeSpe(rd, Fork())).pass);
    CHECK(IsSubgamePerfect(GameSpec(MixedTree(), rd),
                           BuildTreeSpe(rd, MixedTree()))
              .pass);
  }
  // A fork only needs one unit of margin per leaf; the mixed tree is gated
  // by its deeper branch.
  CHECK_FALSE(Cascade(GameSpec(Fork(), 1), BuildTreeSpe(1, Fork())).spanning);
  CHECK(Cascade(GameSpec(Fork(), 2), BuildTreeSpe(2, Fork())).spanning);
  CHECK_FALSE(
      Cascade(GameSpec(MixedTree(), 2), BuildTreeSpe(2, MixedTree())).spanning);
  CHECK(
      Cascade(GameSpec(MixedTree(), 3), BuildTreeSpe(3, MixedTree())).spanning);

  CHECK_THROWS_AS(BuildTreeSpe(3, Topology::Ring(3)), Error);
  CHECK_THROWS_AS(BuildLineSpe(-1, 3), Error);
}

TEST_CASE("two stage ring bids the whole margin head to head") {
  CHECK_THROWS_AS(BuildRing2Ne(-1), Error);
  for (Reward rd = 0; rd <= 10; ++rd) {
    CAPTURE(rd);
    const StrategyProfile profile = BuildRing2Ne(rd);
    for (const TieBreak tb : {TieBreak::kLowestSender, TieBreak::kHighestSender}) {
      const GameSpec game(Topology::Ring(2), rd, tb);
      CHECK(IsNash(game, profile).pass);
    }

    const GameSpec game(Topology::Ring(2), rd);
    const OutcomeTree out = Cascade(game, profile);
    if (rd >= 2) {
      CHECK(out.spanning);
      CHECK(out.at(3).received == rd - 1);
      CHECK(out.at(3).parent == 1);  // the lower sender takes the tie
      CHECK(out.UtilityOf(1) == rd);
      CHECK(out.UtilityOf(2) == rd - 1);
    } else {
      CHECK_FALSE(out.spanning);
    }
  }
  // The opposite preference hands the contested player to the other branch.
  const GameSpec flipped(Topology::Ring(2), 5, TieBreak::kHighestSender);
  const OutcomeTree out = Cascade(flipped, BuildRing2Ne(5));
  CHECK(out.at(3).parent == 2);
  CHECK(out.UtilityOf(2) == 5);
  CHECK(out.UtilityOf(1) == 4);
}

TEST_CASE("ring construction hits the growth reward exactly") {
  CHECK_THROWS_AS(BuildRingSpecial(2), Error);
  CHECK_THROWS_AS(BuildRingSpecial(21), Error);
  for (int stages = 3; stages <= 7; ++stages) {
    CAPTURE(stages);
    const RingSpecial special = BuildRingSpecial(stages);
    CHECK(special.reward == GrowthF(stages));
    CHECK(special.game.reward ==
          GrowthF(stages).convert_to<Reward>());

    CHECK(IsNash(special.game, special.profile).pass);

    const OutcomeTree out = Cascade(special.game, special.profile);
    CHECK(out.spanning);
    const NodeId contested = 2 * stages - 1;
    CHECK(out.at(contested).received == 1);
    CHECK(out.at(contested).parent == 2 * stages - 3);

    for (int j = 1; j <= stages - 1; ++j) {
      CAPTURE(j);
      const NodeId left = 2 * j - 1;
      const NodeId right = 2 * j;
      // Offers down each branch follow the growth sequence.
      CHECK(out.at(left).received ==
            GrowthF(stages - j + 1).convert_to<Reward>());
      const Reward right_in = j == 1
                                  ? GrowthF(stages).convert_to<Reward>()
                                  : GrowthF(stages - j).convert_to<Reward>();
      CHECK(out.at(right).received == right_in);
      // Resale profits telescope into factorials on both branches.
      CHECK(out.at(left).profit_term ==
            Factorial(stages - j).convert_to<Reward>());
      const Reward right_profit =
          j == 1 ? Factorial(stages - 1).convert_to<Reward>()
                 : (j <= stages - 2
                        ? Factorial(stages - j - 1).convert_to<Reward>()
                        : 0);
      CHECK(out.at(right).profit_term == right_profit);
    }
    CHECK(out.at(contested).profit_term == 0);
    CHECK(out.UtilityOf(contested) == 0);
  }
}

TEST_CASE("minimum incentive follows the growth sequence") {
  const std::vector<Reward> line_marks = {1, 2, 3, 5, 11};
  for (int depth = 1; depth <= 5; ++depth) {
    CAPTURE(depth);
    CHECK(MinSpanningIncentive(Topology::Line(depth), 16) ==
          std::optional<Reward>(line_marks[static_cast<std::size_t>(depth) - 1]));
  }
  CHECK(MinSpanningIncentive(Topology::Ring(3), 8) == std::optional<Reward>(3));
  CHECK(MinSpanningIncentive(Topology::Ring(4), 8) == std::optional<Reward>(5));
  CHECK(MinSpanningIncentive(Fork(), 8) == std::optional<Reward>(2));
  CHECK(MinSpanningIncentive(MixedTree(), 8) == std::optional<Reward>(3));
}

TEST_CASE("minimum incentive respects the bound and the shape") {
  CHECK(MinSpanningIncentive(Topology::Line(4), 4) == std::nullopt);
  CHECK(MinSpanningIncentive(Topology::Line(1), 0) == std::nullopt);
  CHECK_THROWS_AS(MinSpanningIncentive(Topology::Line(3), -1), Error);

  // A star is a depth-1 tree: everyone is offered the reward directly, so
  // one unit suffices.
  CHECK(MinSpanningIncentive(Topology::Star(4), 8) == std::optional<Reward>(1));

  // A cycle of even length that is not labelled canonically is recognized as
  // a ring but rejected by the per-stage search.
  const Topology relabelled = Topology::FromJson(
      R"({"destination": 0, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]]})");
  REQUIRE(relabelled.shape() == Shape::kRing);
  REQUIRE_FALSE(relabelled.IsCanonicalRing());
  CHECK_THROWS_AS(MinSpanningIncentive(relabelled, 8), Error);
}
