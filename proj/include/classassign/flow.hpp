// Copyright 2026 The classassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Integral minimum-cost flow over networks with node supplies/demands.
//
// The solver uses successive shortest augmenting paths with node potentials.
// Initial potentials come from Bellman-Ford over the zero flow; if the
// network contains a negative-cost cycle of positive capacity, every
// negative-cost arc is saturated first so that the starting residual graph
// has no negative arcs at all. Each augmentation then runs Dijkstra on
// reduced costs from a super source (feeding every excess node) to a super
// sink (draining every deficit node).
//
// Distances and potentials are kept in 128-bit integers; only the final
// objective has to fit in int64.
//
// Tie-breaking is fixed: the heap orders by (distance, node index), labels
// are replaced only on strict improvement, and arcs are scanned in insertion
// order. The same network therefore always yields the same flow.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "classassign/error.hpp"

namespace classassign {

using NodeId = int;
using ArcId = int;

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  std::int64_t capacity = 0;
  std::int64_t cost = 0;
};

// Directed graph with arc capacities u(e), costs h(e) and supplies b(v)
// (positive = supply, negative = demand).
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(int num_nodes) : supplies_(num_nodes, 0) {}

  NodeId add_node(std::int64_t supply = 0) {
    supplies_.push_back(supply);
    return static_cast<NodeId>(supplies_.size() - 1);
  }

  ArcId add_arc(NodeId from, NodeId to, std::int64_t capacity,
                std::int64_t cost) {
    if (from < 0 || from >= num_nodes() || to < 0 || to >= num_nodes()) {
      throw Error(ErrorKind::kInvalidArgument, "arc endpoint out of range");
    }
    if (capacity < 0) {
      throw Error(ErrorKind::kInvalidArgument, "negative arc capacity");
    }
    arcs_.push_back({from, to, capacity, cost});
    return static_cast<ArcId>(arcs_.size() - 1);
  }

  void set_supply(NodeId v, std::int64_t supply) { supplies_.at(v) = supply; }

  [[nodiscard]] int num_nodes() const {
    return static_cast<int>(supplies_.size());
  }
  [[nodiscard]] int num_arcs() const { return static_cast<int>(arcs_.size()); }
  [[nodiscard]] const Arc& arc(ArcId a) const { return arcs_[a]; }
  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  [[nodiscard]] std::int64_t supply(NodeId v) const { return supplies_[v]; }
  [[nodiscard]] const std::vector<std::int64_t>& supplies() const {
    return supplies_;
  }

 private:
  std::vector<std::int64_t> supplies_;
  std::vector<Arc> arcs_;
};

struct Flow {
  std::vector<std::int64_t> per_arc;
  std::int64_t total_cost = 0;
};

namespace detail {

using Wide = __int128;
inline constexpr Wide kUnreachable = Wide{1} << 120;

struct ResidualEdge {
  NodeId from;
  NodeId to;
  std::int64_t residual;
  std::int64_t cost;
};

class MinCostFlowSolver {
 public:
  explicit MinCostFlowSolver(const FlowNetwork& network) : network_(network) {}

  Flow solve() {
    validate();
    build_residual();
    if (!initial_potentials()) saturate_negative_arcs();
    attach_terminals();
    augment_all();
    return extract();
  }

 private:
  void validate() const {
    Wide balance = 0;
    for (auto b : network_.supplies()) balance += b;
    if (balance != 0) {
      throw Error(ErrorKind::kInvalidArgument, "supplies do not sum to zero");
    }
  }

  void add_edge_pair(NodeId from, NodeId to, std::int64_t cap,
                     std::int64_t cost) {
    edges_.push_back({from, to, cap, cost});
    edges_.push_back({to, from, 0, -cost});
  }

  void build_residual() {
    const int n = network_.num_nodes();
    excess_.assign(network_.supplies().begin(), network_.supplies().end());
    edges_.reserve(2 * (network_.num_arcs() + n));
    for (const Arc& a : network_.arcs()) {
      add_edge_pair(a.from, a.to, a.capacity, a.cost);
    }
    potential_.assign(n + 2, 0);
  }

  // Bellman-Ford from a virtual source joined to every node at cost 0.
  // Returns false on a negative cycle.
  bool initial_potentials() {
    const int n = network_.num_nodes();
    std::vector<Wide> dist(n, 0);
    for (int round = 0; round <= n; ++round) {
      bool changed = false;
      for (const ResidualEdge& e : edges_) {
        if (e.residual == 0) continue;
        const Wide candidate = dist[e.from] + e.cost;
        if (candidate < dist[e.to]) {
          dist[e.to] = candidate;
          changed = true;
        }
      }
      if (!changed) {
        std::copy(dist.begin(), dist.end(), potential_.begin());
        return true;
      }
    }
    return false;
  }

  void saturate_negative_arcs() {
    std::fill(potential_.begin(), potential_.end(), 0);
    for (std::size_t i = 0; i < edges_.size(); i += 2) {
      ResidualEdge& fwd = edges_[i];
      if (fwd.cost >= 0 || fwd.residual == 0) continue;
      excess_[fwd.from] -= fwd.residual;
      excess_[fwd.to] += fwd.residual;
      edges_[i + 1].residual += fwd.residual;
      fwd.residual = 0;
    }
  }

  void attach_terminals() {
    const int n = network_.num_nodes();
    source_ = n;
    sink_ = n + 1;
    Wide lowest = 0;
    for (int v = 0; v < n; ++v) lowest = std::min(lowest, potential_[v]);
    potential_[source_] = 0;
    potential_[sink_] = lowest;
    for (NodeId v = 0; v < n; ++v) {
      if (excess_[v] > 0) {
        add_edge_pair(source_, v, static_cast<std::int64_t>(excess_[v]), 0);
        required_ += excess_[v];
      } else if (excess_[v] < 0) {
        add_edge_pair(v, sink_, static_cast<std::int64_t>(-excess_[v]), 0);
      }
    }
    build_adjacency(n + 2);
  }

  void build_adjacency(int num_nodes) {
    start_.assign(num_nodes + 1, 0);
    for (const auto& e : edges_) ++start_[e.from + 1];
    for (int v = 0; v < num_nodes; ++v) start_[v + 1] += start_[v];
    adjacency_.resize(edges_.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      adjacency_[fill[edges_[i].from]++] = i;
    }
  }

  // Dijkstra on reduced costs; stops once the sink is settled.
  bool shortest_path() {
    const int n = static_cast<int>(potential_.size());
    dist_.assign(n, kUnreachable);
    parent_edge_.assign(n, -1);
    std::vector<bool> done(n, false);
    using Entry = std::pair<Wide, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist_[source_] = 0;
    heap.emplace(0, source_);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (done[v]) continue;
      done[v] = true;
      if (v == sink_) break;
      for (int i = start_[v]; i < start_[v + 1]; ++i) {
        const int id = adjacency_[i];
        const ResidualEdge& e = edges_[id];
        if (e.residual == 0 || done[e.to]) continue;
        const Wide reduced = e.cost + potential_[v] - potential_[e.to];
        const Wide candidate = d + reduced;
        if (candidate < dist_[e.to]) {
          dist_[e.to] = candidate;
          parent_edge_[e.to] = id;
          heap.emplace(candidate, e.to);
        }
      }
    }
    return dist_[sink_] != kUnreachable;
  }

  void augment_all() {
    Wide sent = 0;
    while (sent < required_) {
      if (!shortest_path()) {
        throw Error(ErrorKind::kInfeasible,
                    "no flow satisfies all supplies and demands");
      }
      const Wide to_sink = dist_[sink_];
      for (std::size_t v = 0; v < potential_.size(); ++v) {
        potential_[v] += std::min(dist_[v], to_sink);
      }
      std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
      for (NodeId v = sink_; v != source_; v = edges_[parent_edge_[v]].from) {
        bottleneck = std::min(bottleneck, edges_[parent_edge_[v]].residual);
      }
      for (NodeId v = sink_; v != source_; v = edges_[parent_edge_[v]].from) {
        const int id = parent_edge_[v];
        edges_[id].residual -= bottleneck;
        edges_[id ^ 1].residual += bottleneck;
      }
      sent += bottleneck;
    }
  }

  Flow extract() const {
    Flow flow;
    flow.per_arc.resize(network_.num_arcs());
    Wide cost = 0;
    for (int a = 0; a < network_.num_arcs(); ++a) {
      const std::int64_t f = edges_[2 * a + 1].residual;
      flow.per_arc[a] = f;
      cost += Wide{f} * network_.arc(a).cost;
    }
    if (cost > std::numeric_limits<std::int64_t>::max() ||
        cost < std::numeric_limits<std::int64_t>::min()) {
      throw Error(ErrorKind::kOverflow, "flow cost exceeds 64-bit range");
    }
    flow.total_cost = static_cast<std::int64_t>(cost);
    return flow;
  }

  const FlowNetwork& network_;
  std::vector<ResidualEdge> edges_;
  std::vector<Wide> excess_;
  std::vector<Wide> potential_;
  std::vector<Wide> dist_;
  std::vector<int> parent_edge_;
  std::vector<int> start_;
  std::vector<int> adjacency_;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  Wide required_ = 0;
};

}  // namespace detail

// Returns a minimum-cost integral flow meeting every supply and demand.
// Throws kInfeasible when none exists, kOverflow when the cost does not fit
// in int64, kInvalidArgument on unbalanced supplies.
inline Flow solve_min_cost_flow(const FlowNetwork& network) {
  return detail::MinCostFlowSolver(network).solve();
}

// Capacity bounds and conservation (out - in == b(v)) on every node.
inline bool is_feasible_flow(const FlowNetwork& network, const Flow& flow) {
  if (static_cast<int>(flow.per_arc.size()) != network.num_arcs()) return false;
  std::vector<detail::Wide> net(network.num_nodes(), 0);
  detail::Wide cost = 0;
  for (int a = 0; a < network.num_arcs(); ++a) {
    const Arc& arc = network.arc(a);
    const std::int64_t f = flow.per_arc[a];
    if (f < 0 || f > arc.capacity) return false;
    net[arc.from] += f;
    net[arc.to] -= f;
    cost += detail::Wide{f} * arc.cost;
  }
  for (int v = 0; v < network.num_nodes(); ++v) {
    if (net[v] != network.supply(v)) return false;
  }
  return cost == flow.total_cost;
}

// Optimality certificate: true if the residual graph of `flow` contains a
// negative-cost directed cycle (Bellman-Ford from a virtual source).
inline bool has_negative_residual_cycle(const FlowNetwork& network,
                                        const Flow& flow) {
  struct Edge {
    NodeId from;
    NodeId to;
    std::int64_t cost;
  };
  std::vector<Edge> residual;
  for (int a = 0; a < network.num_arcs(); ++a) {
    const Arc& arc = network.arc(a);
    if (flow.per_arc[a] < arc.capacity) {
      residual.push_back({arc.from, arc.to, arc.cost});
    }
    if (flow.per_arc[a] > 0) residual.push_back({arc.to, arc.from, -arc.cost});
  }
  const int n = network.num_nodes();
  std::vector<detail::Wide> dist(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge& e : residual) {
      const detail::Wide candidate = dist[e.from] + e.cost;
      if (candidate < dist[e.to]) {
        dist[e.to] = candidate;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

}  // namespace classassign
