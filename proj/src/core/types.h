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

#ifndef ROUTEGAME_CORE_TYPES_H_
#define ROUTEGAME_CORE_TYPES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace routegame {

// Rewards, costs and utilities are exact integers throughout; no floating
// point is used anywhere in the core.
using Reward = std::int64_t;
using NodeId = int;

// The per-player forwarding cost. The model is analysed with a unit cost and
// the engine enforces it at game construction.
inline constexpr Reward kUnitCost = 1;

// Rule used to break ties between offers carrying the same reward. On the
// canonical even ring the lowest-id parent of the last player is its odd
// ("left") parent, so kLowestSender doubles as the left-parent preference and
// kHighestSender as the right-parent preference.
enum class TieBreak {
  kLowestSender,
  kHighestSender,
};

enum class Shape {
  kLine,     // path with the destination at one end
  kTree,     // connected, acyclic, not a line
  kRing,     // single cycle of even length through the destination
  kGeneral,  // anything else (e.g. odd cycles)
};

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kUnsupportedShape,
  kIllegalAction,
  kInternal,
};

// Domain error. `player` identifies the offending player when the failure is
// attributable to one (e.g. an action that violates the decreasing-reward
// rule).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<NodeId> player = std::nullopt)
      : std::runtime_error(message), code_(code), player_(player) {}

  ErrorCode code() const { return code_; }
  std::optional<NodeId> player() const { return player_; }

 private:
  ErrorCode code_;
  std::optional<NodeId> player_;
};

std::string ShapeName(Shape shape);
std::string TieBreakName(TieBreak rule);
TieBreak TieBreakFromName(const std::string& name);

}  // namespace routegame

#endif  // ROUTEGAME_CORE_TYPES_H_
