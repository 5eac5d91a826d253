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

#include "core/topology.h"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

namespace routegame {

std::string ShapeName(Shape shape) {
  switch (shape) {
    case Shape::kLine:
      return "line";
    case Shape::kTree:
      return "tree";
    case Shape::kRing:
      return "ring";
    case Shape::kGeneral:
      return "general";
  }
  return "general";
}

std::string TieBreakName(TieBreak rule) {
  return rule == TieBreak::kLowestSender ? "lowest-sender" : "highest-sender";
}

TieBreak TieBreakFromName(const std::string& name) {
  if (name == "lowest-sender" || name == "lowest" || name == "left") {
    return TieBreak::kLowestSender;
  }
  if (name == "highest-sender" || name == "highest" || name == "right") {
    return TieBreak::kHighestSender;
  }
  throw Error(ErrorCode::kParseError, "unknown tie-break rule: " + name);
}

Topology Topology::Line(int depth) {
  if (depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "line depth must be >= 1");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= depth; ++i) edges.push_back({i - 1, i});
  return Topology(0, edges);
}

Topology Topology::Ring(int stages) {
  if (stages < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ring needs at least 2 stages");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  const NodeId last = 2 * stages - 1;
  edges.push_back({0, 1});
  edges.push_back({0, 2});
  for (NodeId i = 3; i < last; ++i) edges.push_back({i - 2, i});
  edges.push_back({last - 2, last});  // left branch end
  edges.push_back({last - 1, last});  // right branch end
  return Topology(0, edges);
}

Topology Topology::Star(int leaves) {
  if (leaves < 1) {
    throw Error(ErrorCode::kInvalidArgument, "star needs at least 1 leaf");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Topology(0, edges);
}

Topology Topology::FromParents(const std::map<NodeId, NodeId>& parent,
                               NodeId destination) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [child, par] : parent) edges.push_back({par, child});
  return Topology(destination, edges);
}

Topology Topology::FromJson(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("topology is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("destination") || !j.contains("edges")) {
    throw Error(ErrorCode::kParseError,
                "topology JSON needs \"destination\" and \"edges\"");
  }
  NodeId destination = j.at("destination").get<NodeId>();
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw Error(ErrorCode::kParseError, "edges must be [a, b] pairs");
    }
    edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
  }
  Topology t(destination, edges);
  if (j.contains("nodes")) {
    std::set<NodeId> declared;
    for (const auto& n : j.at("nodes")) declared.insert(n.get<NodeId>());
    declared.insert(destination);
    std::set<NodeId> present(t.players_.begin(), t.players_.end());
    present.insert(destination);
    if (declared != present) {
      throw Error(ErrorCode::kParseError,
                  "node list does not match the nodes used by edges");
    }
  }
  return t;
}

Topology::Topology(NodeId destination,
                   const std::vector<std::pair<NodeId, NodeId>>& edges)
    : destination_(destination) {
  if (edges.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "topology has no edges");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [a, b] : edges) {
    if (a == b) {
      throw Error(ErrorCode::kInvalidArgument, "self loop on node " +
                                                   std::to_string(a));
    }
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) continue;  // ignore duplicate edges
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  if (adjacency_.count(destination_) == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "destination " + std::to_string(destination_) +
                    " does not appear in the edge list");
  }
  for (auto& [node, nbrs] : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (node != destination_) players_.push_back(node);
  }

  // BFS from the destination; distances are the stage numbers.
  std::deque<NodeId> queue{destination_};
  stages_[destination_] = 0;
  while (!queue.empty()) {
    NodeId node = queue.front();
    queue.pop_front();
    for (NodeId nbr : adjacency_.at(node)) {
      if (stages_.count(nbr)) continue;
      stages_[nbr] = stages_.at(node) + 1;
      depth_ = std::max(depth_, stages_[nbr]);
      queue.push_back(nbr);
    }
  }
  if (stages_.size() != adjacency_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph is not connected to the destination");
  }
  Classify();
}

void Topology::Classify() {
  const std::size_t nodes = adjacency_.size();
  std::size_t edge_count = 0;
  std::size_t degree_one = 0;
  std::size_t max_degree = 0;
  bool all_degree_two = true;
  for (const auto& [node, nbrs] : adjacency_) {
    edge_count += nbrs.size();
    if (nbrs.size() == 1) ++degree_one;
    if (nbrs.size() != 2) all_degree_two = false;
    max_degree = std::max(max_degree, nbrs.size());
  }
  edge_count /= 2;

  if (edge_count == nodes - 1) {
    // Acyclic. A line is a path with the destination at one end.
    const bool is_path = nodes == 2 || (degree_one == 2 && max_degree == 2);
    shape_ = (is_path && adjacency_.at(destination_).size() == 1)
                 ? Shape::kLine
                 : Shape::kTree;
  } else if (edge_count == nodes && all_degree_two) {
    shape_ = (nodes % 2 == 0) ? Shape::kRing : Shape::kGeneral;
  } else {
    shape_ = Shape::kGeneral;
  }
}

bool Topology::IsCanonicalRing() const {
  if (shape_ != Shape::kRing || destination_ != 0) return false;
  const int n = static_cast<int>(players_.size());
  for (int i = 1; i <= n; ++i) {
    if (players_[i - 1] != i) return false;
    if (stage(i) != (i + 1) / 2) return false;
  }
  return true;
}

const std::vector<NodeId>& Topology::neighbors(NodeId node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "node " + std::to_string(node) + " is not in the topology");
  }
  return it->second;
}

int Topology::stage(NodeId node) const {
  auto it = stages_.find(node);
  if (it == stages_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "node " + std::to_string(node) + " is not in the topology");
  }
  return it->second;
}

std::vector<NodeId> Topology::Candidates(NodeId node) const {
  std::vector<NodeId> out;
  const int next = stage(node) + 1;
  for (NodeId nbr : neighbors(node)) {
    if (stage(nbr) == next) out.push_back(nbr);
  }
  return out;
}

std::vector<NodeId> Topology::Suppliers(NodeId node) const {
  std::vector<NodeId> out;
  const int prev = stage(node) - 1;
  for (NodeId nbr : neighbors(node)) {
    if (stage(nbr) == prev) out.push_back(nbr);
  }
  return out;
}

std::string Topology::ToJson() const {
  nlohmann::json j;
  j["destination"] = destination_;
  j["nodes"] = players_;
  std::vector<std::vector<NodeId>> edges;
  for (const auto& [node, nbrs] : adjacency_) {
    for (NodeId nbr : nbrs) {
      if (node < nbr) edges.push_back({node, nbr});
    }
  }
  j["edges"] = edges;
  return j.dump();
}

}  // namespace routegame
