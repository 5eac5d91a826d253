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

#ifndef ROUTEGAME_CORE_TOPOLOGY_H_
#define ROUTEGAME_CORE_TOPOLOGY_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/types.h"

namespace routegame {

// An undirected connected graph with a distinguished destination node.
// Players are every node except the destination. Stages are BFS distances
// from the destination; a player at stage k resells routes to its neighbours
// at stage k+1 (its "candidates") and buys from neighbours at stage k-1 (its
// "suppliers").
class Topology {
 public:
  // Path d - 1 - 2 - ... - depth with the destination at one end.
  static Topology Line(int depth);
  // Even cycle with `stages` levels: destination 0, players 1..2*stages-1,
  // player i at stage ceil(i/2). Players 2j-1 form the "left" branch,
  // players 2j the "right" branch and player 2*stages-1 closes the cycle,
  // adjacent to both branch ends.
  static Topology Ring(int stages);
  // Destination with `leaves` direct children.
  static Topology Star(int leaves);
  // Tree given as child -> parent (the destination appears only as a parent).
  static Topology FromParents(const std::map<NodeId, NodeId>& parent,
                              NodeId destination);
  // JSON object {"nodes": [...], "destination": id, "edges": [[a, b], ...]}.
  static Topology FromJson(const std::string& json_text);

  Topology(NodeId destination,
           const std::vector<std::pair<NodeId, NodeId>>& edges);

  NodeId destination() const { return destination_; }
  const std::vector<NodeId>& players() const { return players_; }
  const std::vector<NodeId>& neighbors(NodeId node) const;
  bool HasNode(NodeId node) const { return adjacency_.count(node) > 0; }

  // BFS distance from the destination (0 for the destination itself).
  int stage(NodeId node) const;
  const std::map<NodeId, int>& stages() const { return stages_; }
  // Largest stage over all players.
  int depth() const { return depth_; }

  // Neighbours one stage further from / closer to the destination, ascending.
  std::vector<NodeId> Candidates(NodeId node) const;
  std::vector<NodeId> Suppliers(NodeId node) const;

  Shape shape() const { return shape_; }
  // True for Ring(K)-shaped graphs with the canonical id layout
  // (destination 0, players 1..2K-1, stage of i == ceil(i/2)).
  bool IsCanonicalRing() const;

  std::string ToJson() const;

  bool operator==(const Topology& other) const {
    return destination_ == other.destination_ && adjacency_ == other.adjacency_;
  }

 private:
  NodeId destination_;
  std::vector<NodeId> players_;            // sorted
  std::map<NodeId, std::vector<NodeId>> adjacency_;  // sorted neighbour lists
  std::map<NodeId, int> stages_;
  int depth_ = 0;
  Shape shape_ = Shape::kGeneral;

  void Classify();
};

}  // namespace routegame

#endif  // ROUTEGAME_CORE_TOPOLOGY_H_
