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

// Exhaustive ground truth for tiny instances. Nothing here is clever on
// purpose: every assignment is generated and checked against the
// definitions.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/mechanisms.hpp"

namespace classassign {

inline constexpr int kOracleMaxStudents = 10;
inline constexpr std::int64_t kOracleMaxAssignments = 10'000'000;

namespace detail {

inline void guard_search_space(const Instance& instance,
                               const std::vector<std::int64_t>& options) {
  if (instance.num_students() > kOracleMaxStudents) {
    throw Error(ErrorKind::kTooLarge,
                "oracle handles at most " + std::to_string(kOracleMaxStudents) +
                    " students");
  }
  std::int64_t product = 1;
  for (auto o : options) {
    if (o != 0 && product > kOracleMaxAssignments / o) {
      throw Error(ErrorKind::kTooLarge, "more than 10^7 assignments to enumerate");
    }
    product *= o;
  }
}

inline bool within_capacities(const Instance& instance,
                              const std::vector<int>& count, bool check_lower) {
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    if (count[c] > (info.active ? info.upper : 0)) return false;
    if (check_lower && info.active && count[c] < info.lower) return false;
  }
  return true;
}

template <typename Visitor>
void enumerate_recursive(const Instance& instance,
                         const std::vector<ClassIndex>& active, Matching& current,
                         std::vector<int>& count, StudentIndex s,
                         Visitor& visit) {
  if (s == instance.num_students()) {
    if (within_capacities(instance, count, /*check_lower=*/true)) visit(current);
    return;
  }
  for (ClassIndex c : active) {
    if (count[c] == instance.class_info(c).upper) continue;
    ++count[c];
    current.assignment[s] = c;
    enumerate_recursive(instance, active, current, count, s + 1, visit);
    --count[c];
  }
}

}  // namespace detail

// Calls visit(const Matching&) for every total assignment that respects the
// lower and upper capacities, in lexicographic order (student 0 most
// significant, classes by index).
template <typename Visitor>
void for_each_matching(const Instance& instance, Visitor&& visit) {
  const auto active = instance.active_classes();
  detail::guard_search_space(
      instance, std::vector<std::int64_t>(instance.num_students(),
                                          static_cast<std::int64_t>(active.size())));
  Matching current;
  current.assignment.assign(instance.num_students(), -1);
  std::vector<int> count(instance.num_classes(), 0);
  detail::enumerate_recursive(instance, active, current, count, 0, visit);
}

inline std::vector<Matching> enumerate_matchings(const Instance& instance) {
  std::vector<Matching> out;
  for_each_matching(instance, [&](const Matching& m) { out.push_back(m); });
  return out;
}

// Odometer over all |active|^|S| assignments; independent of the recursive
// enumerator and used to cross-check it.
inline std::vector<Matching> enumerate_matchings_iterative(
    const Instance& instance) {
  const auto active = instance.active_classes();
  const int n = instance.num_students();
  const int m = static_cast<int>(active.size());
  detail::guard_search_space(instance, std::vector<std::int64_t>(n, m));
  std::vector<int> digit(n, 0);
  std::vector<Matching> out;
  while (true) {
    std::vector<int> count(instance.num_classes(), 0);
    Matching candidate;
    for (int s = 0; s < n; ++s) {
      candidate.assignment.push_back(active[digit[s]]);
      ++count[active[digit[s]]];
    }
    if (detail::within_capacities(instance, count, true)) {
      out.push_back(std::move(candidate));
    }
    int pos = n - 1;
    while (pos >= 0 && ++digit[pos] == m) digit[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

struct OracleOptimum {
  std::int64_t best = 0;
  std::vector<Matching> optimal;
};

inline OracleOptimum oracle_optimum(const Instance& instance,
                                    const UtilityVector& v) {
  OracleOptimum out;
  out.best = std::numeric_limits<std::int64_t>::min();
  for_each_matching(instance, [&](const Matching& m) {
    std::int64_t total = 0;
    for (StudentIndex s = 0; s < instance.num_students(); ++s) {
      total += utility_of(instance, v, s, m[s]);
    }
    if (total > out.best) {
      out.best = total;
      out.optimal.clear();
    }
    if (total == out.best) out.optimal.push_back(m);
  });
  if (out.optimal.empty()) {
    throw Error(ErrorKind::kInfeasible, "no capacity-respecting matching");
  }
  return out;
}

struct StableSet {
  std::vector<PartialMatching> matchings;
  // Index of the element every student weakly prefers to all others.
  std::optional<std::size_t> student_optimal;
};

// All upper-feasible matchings into ranked classes (or unassigned) that
// admit no blocking pair under `priority`.
inline StableSet oracle_stable_set(const Instance& instance,
                                   const PriorityOrder& priority) {
  const int n = instance.num_students();
  std::vector<std::vector<std::optional<ClassIndex>>> options(n);
  std::vector<std::int64_t> sizes;
  for (StudentIndex s = 0; s < n; ++s) {
    for (ClassIndex c : instance.preferences(s)) {
      if (instance.class_info(c).active) options[s].push_back(c);
    }
    options[s].push_back(std::nullopt);
    sizes.push_back(static_cast<std::int64_t>(options[s].size()));
  }
  detail::guard_search_space(instance, sizes);

  StableSet out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    PartialMatching candidate(n);
    std::vector<int> count(instance.num_classes(), 0);
    for (int s = 0; s < n; ++s) {
      candidate[s] = options[s][digit[s]];
      if (candidate[s]) ++count[*candidate[s]];
    }
    if (detail::within_capacities(instance, count, false) &&
        check_stability(instance, candidate, priority).empty()) {
      out.matchings.push_back(std::move(candidate));
    }
    int pos = n - 1;
    while (pos >= 0 && ++digit[pos] == options[pos].size()) digit[pos--] = 0;
    if (pos < 0) break;
  }

  const auto effective = [&](StudentIndex s, const std::optional<ClassIndex>& c) {
    return c ? instance.rank_of(s, *c) : instance.k() + 1;
  };
  for (std::size_t i = 0; i < out.matchings.size(); ++i) {
    bool best_for_all = true;
    for (std::size_t j = 0; j < out.matchings.size() && best_for_all; ++j) {
      for (StudentIndex s = 0; s < n; ++s) {
        if (effective(s, out.matchings[i][s]) > effective(s, out.matchings[j][s])) {
          best_for_all = false;
          break;
        }
      }
    }
    if (best_for_all) {
      out.student_optimal = i;
      break;
    }
  }
  return out;
}

}  // namespace classassign
