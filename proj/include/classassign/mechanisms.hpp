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

// Student-proposing deferred acceptance and the Boston (immediate acceptance)
// mechanism under single tie-breaking. Neither consults lower capacities.
// Students left without a seat are placed by leftover_fill and count as
// "Others" in profiles.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>
#include <string>
#include <vector>

#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/random.hpp"

namespace classassign {

// A strict priority over students shared by every class; position 0 is the
// highest priority.
class PriorityOrder {
 public:
  explicit PriorityOrder(std::vector<StudentIndex> order)
      : order_(std::move(order)), position_(order_.size(), -1) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const StudentIndex s = order_[i];
      if (s < 0 || s >= static_cast<int>(order_.size()) || position_[s] != -1) {
        throw Error(ErrorKind::kInvalidArgument,
                    "priority order is not a permutation of the students");
      }
      position_[s] = static_cast<int>(i);
    }
  }

  static PriorityOrder identity(int num_students) {
    std::vector<StudentIndex> order(num_students);
    for (int i = 0; i < num_students; ++i) order[i] = i;
    return PriorityOrder(std::move(order));
  }

  [[nodiscard]] int size() const { return static_cast<int>(order_.size()); }
  [[nodiscard]] const std::vector<StudentIndex>& order() const { return order_; }
  [[nodiscard]] int position(StudentIndex s) const { return position_[s]; }

  friend bool operator==(const PriorityOrder& a, const PriorityOrder& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<StudentIndex> order_;
  std::vector<int> position_;
};

// Fisher-Yates over the student indices with the pinned xoshiro256**
// generator (see random.hpp).
inline PriorityOrder single_tie_break(const Instance& instance,
                                      std::uint64_t seed) {
  std::vector<StudentIndex> order(instance.num_students());
  for (int i = 0; i < instance.num_students(); ++i) order[i] = i;
  Xoshiro256 rng(seed);
  fisher_yates(std::span<StudentIndex>(order), rng);
  return PriorityOrder(std::move(order));
}

namespace detail {

inline void check_priority(const Instance& instance,
                           const PriorityOrder& priority) {
  if (priority.size() != instance.num_students()) {
    throw Error(ErrorKind::kInvalidArgument,
                "priority order does not cover the instance's students");
  }
}

}  // namespace detail

// Places every unassigned student, in priority order, into the active class
// with the most remaining seats (lowest index on ties).
inline Matching leftover_fill(const Instance& instance,
                              const PartialMatching& partial,
                              const PriorityOrder& priority) {
  detail::check_priority(instance, priority);
  if (instance.total_upper() < instance.num_students()) {
    throw Error(ErrorKind::kCapacityMismatch,
                "active classes offer " + std::to_string(instance.total_upper()) +
                    " seats for " + std::to_string(instance.num_students()) +
                    " students");
  }
  std::vector<int> residual(instance.num_classes(), 0);
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    residual[c] = info.active ? info.upper : 0;
  }
  Matching out;
  out.mode = CapacityMode::kUpperOnly;
  out.assignment.assign(instance.num_students(), -1);
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    if (partial[s]) {
      out.assignment[s] = *partial[s];
      --residual[*partial[s]];
    }
  }
  for (StudentIndex s : priority.order()) {
    if (partial[s]) continue;
    const auto best = std::max_element(residual.begin(), residual.end());
    out.assignment[s] = static_cast<ClassIndex>(best - residual.begin());
    --*best;
  }
  return out;
}

enum class ProposalOrder {
  kFifo,  // rejected students rejoin the back of the queue
  kLifo,  // rejected students propose again immediately
};

// Student-proposing DA without the leftover fill. Students who exhaust their
// lists stay unassigned.
inline PartialMatching deferred_acceptance_unfilled(
    const Instance& instance, const PriorityOrder& priority,
    ProposalOrder order = ProposalOrder::kFifo) {
  detail::check_priority(instance, priority);
  const int n = instance.num_students();
  PartialMatching held(n);
  std::vector<std::size_t> next_choice(n, 0);
  // Max-heap of priority positions: top() is the weakest held student.
  std::vector<std::priority_queue<int>> holding(instance.num_classes());

  std::deque<StudentIndex> free(priority.order().begin(),
                                priority.order().end());
  while (!free.empty()) {
    StudentIndex s;
    if (order == ProposalOrder::kFifo) {
      s = free.front();
      free.pop_front();
    } else {
      s = free.back();
      free.pop_back();
    }
    const auto list = instance.preferences(s);
    if (next_choice[s] >= list.size()) continue;
    const ClassIndex c = list[next_choice[s]++];
    const ClassInfo& info = instance.class_info(c);
    auto& seats = holding[c];
    if (!info.active) {
      free.push_back(s);
    } else if (static_cast<int>(seats.size()) < info.upper) {
      seats.push(priority.position(s));
      held[s] = c;
    } else if (seats.top() > priority.position(s)) {
      const StudentIndex evicted = priority.order()[seats.top()];
      seats.pop();
      held[evicted].reset();
      seats.push(priority.position(s));
      held[s] = c;
      free.push_back(evicted);
    } else {
      free.push_back(s);
    }
  }
  return held;
}

inline Matching deferred_acceptance(const Instance& instance,
                                    const PriorityOrder& priority) {
  return leftover_fill(instance, deferred_acceptance_unfilled(instance, priority),
                       priority);
}

// Boston rounds 1..k without the leftover fill: in round i every unassigned
// student applies to their i-th choice and admissions are final.
inline PartialMatching boston_unfilled(const Instance& instance,
                                       const PriorityOrder& priority) {
  detail::check_priority(instance, priority);
  PartialMatching assigned(instance.num_students());
  std::vector<int> remaining(instance.num_classes(), 0);
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    remaining[c] = info.active ? info.upper : 0;
  }
  for (int round = 0; round < instance.k(); ++round) {
    // Scanning in priority order admits each class's applicants by priority.
    for (StudentIndex s : priority.order()) {
      if (assigned[s]) continue;
      const auto list = instance.preferences(s);
      if (round >= static_cast<int>(list.size())) continue;
      const ClassIndex c = list[round];
      if (remaining[c] > 0) {
        --remaining[c];
        assigned[s] = c;
      }
    }
  }
  return assigned;
}

inline Matching boston(const Instance& instance, const PriorityOrder& priority) {
  return leftover_fill(instance, boston_unfilled(instance, priority), priority);
}

struct BlockingPair {
  StudentIndex student;
  ClassIndex klass;
  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

// Every (s, c) where s ranks c above their current seat (unassigned or
// unranked counts as worst) and c has a free seat or holds a student of
// lower priority than s.
inline std::vector<BlockingPair> check_stability(const Instance& instance,
                                                 const PartialMatching& matching,
                                                 const PriorityOrder& priority) {
  detail::check_priority(instance, priority);
  std::vector<int> count(instance.num_classes(), 0);
  std::vector<int> weakest(instance.num_classes(), -1);
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    if (!matching[s]) continue;
    const ClassIndex c = *matching[s];
    ++count[c];
    weakest[c] = std::max(weakest[c], priority.position(s));
  }
  std::vector<BlockingPair> out;
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    Rank current = matching[s] ? instance.rank_of(s, *matching[s]) : kUnranked;
    if (current == kUnranked) current = instance.k() + 1;
    const auto list = instance.preferences(s);
    for (int i = 0; i + 1 < current && i < static_cast<int>(list.size()); ++i) {
      const ClassIndex c = list[i];
      const ClassInfo& info = instance.class_info(c);
      if (!info.active) continue;
      if (count[c] < info.upper || weakest[c] > priority.position(s)) {
        out.push_back({s, c});
      }
    }
  }
  return out;
}

inline std::vector<BlockingPair> check_stability(const Instance& instance,
                                                 const Matching& matching,
                                                 const PriorityOrder& priority) {
  return check_stability(instance, to_partial(matching), priority);
}

}  // namespace classassign
