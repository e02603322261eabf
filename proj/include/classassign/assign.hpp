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

// Maximum-utility class assignment with lower/upper capacities, solved as a
// min-cost flow:
//
//   o --(cap 1, cost 0)--> s --(cap 1, cost -p_sc)--> c --(cap u-l)--> t
//
// with b(o) = |S|, b(c) = -lower_c and b(t) = sum(lower) - |S|. Only active
// classes get nodes. Also hosts the named utility vectors (Opt80 ... and the
// lexicographic RankMaximal / Fair / Opt67xFair encodings).

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/flow.hpp"

namespace classassign {

struct AssignmentNetwork {
  FlowNetwork network;
  NodeId source = 0;
  NodeId sink = 0;
  std::vector<NodeId> student_node;
  std::vector<NodeId> class_node;  // -1 for canceled classes
  std::vector<ClassIndex> active;  // active classes, in instance order
  ArcId first_pair_arc = 0;

  // Arc from student s to the j-th active class.
  [[nodiscard]] ArcId pair_arc(StudentIndex s, int j) const {
    return first_pair_arc + s * static_cast<int>(active.size()) + j;
  }
};

inline void check_capacity_totals(const Instance& instance) {
  const std::int64_t n = instance.num_students();
  const std::int64_t lower = instance.total_lower();
  const std::int64_t upper = instance.total_upper();
  if (lower > n || n > upper) {
    throw Error(ErrorKind::kCapacityMismatch,
                "need sum(lower) <= |S| <= sum(upper) over active classes, got " +
                    std::to_string(lower) + " <= " + std::to_string(n) +
                    " <= " + std::to_string(upper));
  }
}

inline AssignmentNetwork build_network(const Instance& instance,
                                       const UtilityVector& v) {
  check_capacity_totals(instance);
  check_utility_vector(v, instance.k(), instance.num_students());

  AssignmentNetwork out;
  out.active = instance.active_classes();
  const int n = instance.num_students();
  FlowNetwork& g = out.network;

  out.source = g.add_node(n);
  out.student_node.resize(n);
  for (StudentIndex s = 0; s < n; ++s) out.student_node[s] = g.add_node(0);
  out.class_node.assign(instance.num_classes(), -1);
  for (ClassIndex c : out.active) {
    out.class_node[c] = g.add_node(-instance.class_info(c).lower);
  }
  out.sink = g.add_node(instance.total_lower() - n);

  for (StudentIndex s = 0; s < n; ++s) {
    g.add_arc(out.source, out.student_node[s], 1, 0);
  }
  out.first_pair_arc = g.num_arcs();
  for (StudentIndex s = 0; s < n; ++s) {
    for (ClassIndex c : out.active) {
      g.add_arc(out.student_node[s], out.class_node[c], 1,
                -utility_of(instance, v, s, c));
    }
  }
  for (ClassIndex c : out.active) {
    const ClassInfo& info = instance.class_info(c);
    g.add_arc(out.class_node[c], out.sink, info.upper - info.lower, 0);
  }
  return out;
}

struct AssignmentResult {
  Matching matching;
  std::int64_t total_utility = 0;
  AssignmentNetwork network;
  Flow flow;
};

// Solves CA(p): maximizes total utility over all matchings that respect the
// lower and upper capacities of every active class.
inline AssignmentResult solve_assignment(const Instance& instance,
                                         const UtilityVector& v) {
  AssignmentResult result;
  result.network = build_network(instance, v);
  result.flow = solve_min_cost_flow(result.network.network);
  result.total_utility = -result.flow.total_cost;

  const int n = instance.num_students();
  const int m = static_cast<int>(result.network.active.size());
  result.matching.mode = CapacityMode::kLowerAndUpper;
  result.matching.assignment.assign(n, -1);
  for (StudentIndex s = 0; s < n; ++s) {
    int placed = 0;
    for (int j = 0; j < m; ++j) {
      if (result.flow.per_arc[result.network.pair_arc(s, j)] == 1) {
        result.matching.assignment[s] = result.network.active[j];
        ++placed;
      }
    }
    if (placed != 1) {
      throw Error(ErrorKind::kInfeasible,
                  "flow does not place student '" + instance.student_id(s) +
                      "' exactly once");
    }
  }
  return result;
}

inline std::int64_t total_utility(const Instance& instance,
                                  const UtilityVector& v, const Matching& m) {
  std::int64_t sum = 0;
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    sum = detail::checked_add(sum, utility_of(instance, v, s, m[s]),
                              "total utility overflow");
  }
  return sum;
}

// True iff some student sits in a slot worth -M or less. For Opt-style and
// rank-restricted vectors this means no matching avoids the forbidden ranks.
inline bool detect_restricted_infeasibility(const Matching& matching,
                                            const Instance& instance,
                                            const UtilityVector& v) {
  const std::int64_t threshold = -penalty_constants(instance).M;
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    if (utility_of(instance, v, s, matching[s]) <= threshold) return true;
  }
  return false;
}

// Ranks beyond max_rank and the others slot become -M.
inline UtilityVector restrict(const UtilityVector& v, int max_rank,
                              std::int64_t M) {
  const int k = static_cast<int>(v.by_rank.size());
  if (max_rank < 1 || max_rank > k) {
    throw Error(ErrorKind::kInvalidArgument,
                "max rank must lie in [1, " + std::to_string(k) + "]");
  }
  UtilityVector out = v;
  for (int i = max_rank; i < k; ++i) out.by_rank[i] = -M;
  out.others = -M;
  return out;
}

namespace detail {

inline constexpr std::array<std::int64_t, 6> kOpt80 = {100, 80, 64, 51, 41, 0};
inline constexpr std::array<std::int64_t, 6> kOpt75 = {100, 75, 56, 42, 32, 0};
inline constexpr std::array<std::int64_t, 6> kOpt67 = {100, 67, 45, 30, 20, 0};
inline constexpr std::array<std::int64_t, 6> kOpt50 = {100, 50, 25, 13, 6, 0};

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    out = checked_mul(out, base, "lexicographic weight exceeds 64-bit range");
  }
  return out;
}

// Table vectors are written for k = 6; shorter k truncates, longer k pads
// with the 6th-choice utility (0).
inline UtilityVector opt_vector(const std::array<std::int64_t, 6>& base, int k,
                                std::int64_t M) {
  UtilityVector v;
  for (int i = 0; i < k; ++i) v.by_rank.push_back(i < 6 ? base[i] : 0);
  v.others = -M;
  return v;
}

// Strict dominance of each lexicographic level over everything below it.
inline void verify_weight_separation(std::int64_t num_students,
                                     const PenaltyConstants& pc) {
  const std::int64_t n3 = checked_pow(pc.N, 3);
  const bool ok = pc.M > 100 * num_students && pc.N > num_students &&
                  pc.L > checked_mul(n3, num_students, "L separation");
  if (!ok) {
    throw Error(ErrorKind::kInvalidArgument,
                "penalty constants do not separate lexicographic levels");
  }
}

// (N^{k-2}, ..., N, 1, 0 | -(N^{k-2}|S| + 1)); equals (N^3, N^2, N, 1, 0 | -L)
// at k = 5.
inline UtilityVector rank_maximal_vector(int k, std::int64_t num_students,
                                         const PenaltyConstants& pc) {
  UtilityVector v;
  for (int i = 0; i < k - 1; ++i) v.by_rank.push_back(checked_pow(pc.N, k - 2 - i));
  v.by_rank.push_back(0);
  if (k >= 2) {
    const std::int64_t top = v.by_rank.front();
    const std::int64_t penalty = checked_add(
        checked_mul(top, num_students, "rank-maximal penalty"), 1,
        "rank-maximal penalty");
    if (penalty <= top * num_students) {
      throw Error(ErrorKind::kInvalidArgument, "rank-maximal penalty too small");
    }
    v.others = -penalty;
  } else {
    v.others = -1;
  }
  return v;
}

// (0, -1, -N, ..., -N^{k-2} | -N^{k-1}).
inline UtilityVector fair_vector(int k, const PenaltyConstants& pc) {
  UtilityVector v;
  v.by_rank.push_back(0);
  for (int i = 1; i < k; ++i) v.by_rank.push_back(-checked_pow(pc.N, i - 1));
  v.others = -checked_pow(pc.N, k - 1);
  return v;
}

// Opt67 utilities on ranks 1-3, then -M, -MN, ... on ranks 4.. and others.
inline UtilityVector opt67_fair_vector(int k, const PenaltyConstants& pc) {
  UtilityVector v;
  for (int i = 0; i < k; ++i) {
    v.by_rank.push_back(i < 3 ? kOpt67[i]
                              : -checked_mul(pc.M, checked_pow(pc.N, i - 3),
                                             "Opt67xFair weight"));
  }
  const int level = k > 3 ? k - 3 : 0;
  v.others = -checked_mul(pc.M, checked_pow(pc.N, level), "Opt67xFair weight");
  return v;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "Opt80",      "Opt75",      "Opt67",      "Opt50",
      "Opt67-max5", "Opt67-max4", "Opt67-max3", "Opt67-max2",
      "RankMaximal", "Fair",      "Opt67xFair"};
  return names;
}

// True for presets whose penalty slots signal infeasibility of the model
// itself (Opt-family and rank-restricted vectors).
inline bool is_opt_family(std::string_view name) {
  return name.starts_with("Opt") && name != "Opt67xFair";
}

inline UtilityVector preset(std::string_view name, const Instance& instance) {
  const int k = instance.k();
  const std::int64_t n = instance.num_students();
  const PenaltyConstants pc = penalty_constants(instance);
  detail::verify_weight_separation(n, pc);

  UtilityVector v;
  if (name == "Opt80") {
    v = detail::opt_vector(detail::kOpt80, k, pc.M);
  } else if (name == "Opt75") {
    v = detail::opt_vector(detail::kOpt75, k, pc.M);
  } else if (name == "Opt67") {
    v = detail::opt_vector(detail::kOpt67, k, pc.M);
  } else if (name == "Opt50") {
    v = detail::opt_vector(detail::kOpt50, k, pc.M);
  } else if (name.starts_with("Opt67-max") && name.size() == 10 &&
             name[9] >= '2' && name[9] <= '5') {
    v = restrict(detail::opt_vector(detail::kOpt67, k, pc.M), name[9] - '0',
                 pc.M);
  } else if (name == "RankMaximal") {
    v = detail::rank_maximal_vector(k, n, pc);
  } else if (name == "Fair") {
    v = detail::fair_vector(k, pc);
  } else if (name == "Opt67xFair") {
    v = detail::opt67_fair_vector(k, pc);
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                "unknown model '" + std::string(name) + "'");
  }
  check_utility_vector(v, k, instance.num_students());
  return v;
}

}  // namespace classassign
