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

// Domain types shared by every module: instances (students, classes,
// preference lists), integral utility vectors, penalty constants, matchings
// and rank profiles.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "classassign/error.hpp"

namespace classassign {

using StudentIndex = int;
using ClassIndex = int;

// Rank 0 means "not in the student's list" (the Others column).
using Rank = int;
inline constexpr Rank kUnranked = 0;

inline constexpr int kDefaultLowerCapacity = 7;

// Largest worst-case objective magnitude a utility vector may produce.
inline constexpr std::int64_t kMaxObjectiveMagnitude = std::int64_t{1} << 62;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b,
                                const char* what) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, what);
  }
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b,
                                const char* what) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, what);
  }
  return out;
}

}  // namespace detail

struct ClassInfo {
  std::string id;
  int lower = kDefaultLowerCapacity;
  int upper = 0;
  bool active = true;
};

// An immutable class-assignment instance. Preference lists hold class
// indices, best first. Canceled classes stay in the model and keep their
// positions in the lists; they simply offer no seats.
class Instance {
 public:
  Instance(std::vector<std::string> students, std::vector<ClassInfo> classes,
           std::vector<std::vector<ClassIndex>> preferences, int k,
           std::vector<std::string> groups = {})
      : students_(std::move(students)),
        classes_(std::move(classes)),
        preferences_(std::move(preferences)),
        groups_(std::move(groups)),
        k_(k) {
    validate();
    index();
  }

  // Convenience constructor keyed by class ids.
  static Instance from_ids(
      std::vector<std::string> students, std::vector<ClassInfo> classes,
      const std::vector<std::vector<std::string>>& preference_ids, int k,
      std::vector<std::string> groups = {}) {
    std::unordered_map<std::string, ClassIndex> by_id;
    for (ClassIndex c = 0; c < static_cast<ClassIndex>(classes.size()); ++c) {
      by_id.emplace(classes[c].id, c);
    }
    std::vector<std::vector<ClassIndex>> prefs;
    prefs.reserve(preference_ids.size());
    for (const auto& list : preference_ids) {
      std::vector<ClassIndex>& out = prefs.emplace_back();
      for (const auto& id : list) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
          throw Error(ErrorKind::kInvalidInstance,
                      "unknown class id '" + id + "' in preference list");
        }
        out.push_back(it->second);
      }
    }
    return Instance(std::move(students), std::move(classes), std::move(prefs),
                    k, std::move(groups));
  }

  [[nodiscard]] int num_students() const {
    return static_cast<int>(students_.size());
  }
  [[nodiscard]] int num_classes() const {
    return static_cast<int>(classes_.size());
  }
  [[nodiscard]] int k() const { return k_; }

  [[nodiscard]] const std::vector<std::string>& students() const {
    return students_;
  }
  [[nodiscard]] const std::vector<ClassInfo>& classes() const {
    return classes_;
  }
  [[nodiscard]] const std::string& student_id(StudentIndex s) const {
    return students_[s];
  }
  [[nodiscard]] const ClassInfo& class_info(ClassIndex c) const {
    return classes_[c];
  }
  [[nodiscard]] std::span<const ClassIndex> preferences(StudentIndex s) const {
    return preferences_[s];
  }

  [[nodiscard]] bool has_groups() const { return !groups_.empty(); }
  [[nodiscard]] const std::string& group(StudentIndex s) const {
    return groups_[s];
  }

  // 1-based position of `c` in the student's list, or kUnranked.
  [[nodiscard]] Rank rank_of(StudentIndex s, ClassIndex c) const {
    return rank_table_[static_cast<std::size_t>(s) * classes_.size() + c];
  }

  [[nodiscard]] std::optional<StudentIndex> find_student(
      const std::string& id) const {
    auto it = student_lookup_.find(id);
    if (it == student_lookup_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::optional<ClassIndex> find_class(
      const std::string& id) const {
    auto it = class_lookup_.find(id);
    if (it == class_lookup_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::vector<ClassIndex> active_classes() const {
    std::vector<ClassIndex> out;
    for (ClassIndex c = 0; c < num_classes(); ++c) {
      if (classes_[c].active) out.push_back(c);
    }
    return out;
  }
  [[nodiscard]] std::int64_t total_lower() const {
    std::int64_t sum = 0;
    for (const auto& c : classes_) {
      if (c.active) sum += c.lower;
    }
    return sum;
  }
  [[nodiscard]] std::int64_t total_upper() const {
    std::int64_t sum = 0;
    for (const auto& c : classes_) {
      if (c.active) sum += c.upper;
    }
    return sum;
  }

 private:
  void validate() const {
    if (k_ < 1) throw Error(ErrorKind::kInvalidInstance, "k must be >= 1");
    if (students_.empty()) {
      throw Error(ErrorKind::kInvalidInstance, "instance has no students");
    }
    if (preferences_.size() != students_.size()) {
      throw Error(ErrorKind::kInvalidInstance,
                  "one preference list per student is required");
    }
    if (!groups_.empty() && groups_.size() != students_.size()) {
      throw Error(ErrorKind::kInvalidInstance,
                  "group column must cover every student");
    }
    bool any_active = false;
    for (const auto& c : classes_) {
      if (c.lower < 0 || c.upper < 1 || c.lower > c.upper) {
        throw Error(ErrorKind::kInvalidInstance,
                    "class '" + c.id + "' needs 0 <= lower <= upper, upper >= 1");
      }
      any_active = any_active || c.active;
    }
    if (!any_active) {
      throw Error(ErrorKind::kInvalidInstance, "no active class");
    }
    for (std::size_t s = 0; s < preferences_.size(); ++s) {
      const auto& list = preferences_[s];
      if (static_cast<int>(list.size()) > k_) {
        throw Error(ErrorKind::kInvalidInstance,
                    "student '" + students_[s] + "' lists more than k classes");
      }
      std::vector<bool> seen(classes_.size(), false);
      for (ClassIndex c : list) {
        if (c < 0 || c >= static_cast<ClassIndex>(classes_.size())) {
          throw Error(ErrorKind::kInvalidInstance,
                      "student '" + students_[s] + "' lists an unknown class");
        }
        if (seen[c]) {
          throw Error(ErrorKind::kInvalidInstance,
                      "student '" + students_[s] + "' lists class '" +
                          classes_[c].id + "' twice");
        }
        seen[c] = true;
      }
    }
  }

  void index() {
    rank_table_.assign(students_.size() * classes_.size(), kUnranked);
    for (std::size_t s = 0; s < preferences_.size(); ++s) {
      const auto& list = preferences_[s];
      for (std::size_t i = 0; i < list.size(); ++i) {
        rank_table_[s * classes_.size() + list[i]] = static_cast<Rank>(i + 1);
      }
    }
    for (std::size_t s = 0; s < students_.size(); ++s) {
      if (!student_lookup_.emplace(students_[s], static_cast<int>(s)).second) {
        throw Error(ErrorKind::kInvalidInstance,
                    "duplicate student id '" + students_[s] + "'");
      }
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!class_lookup_.emplace(classes_[c].id, static_cast<int>(c)).second) {
        throw Error(ErrorKind::kInvalidInstance,
                    "duplicate class id '" + classes_[c].id + "'");
      }
    }
  }

  std::vector<std::string> students_;
  std::vector<ClassInfo> classes_;
  std::vector<std::vector<ClassIndex>> preferences_;
  std::vector<std::string> groups_;
  int k_;
  std::vector<Rank> rank_table_;
  std::unordered_map<std::string, StudentIndex> student_lookup_;
  std::unordered_map<std::string, ClassIndex> class_lookup_;
};

// Per-rank utilities p_1..p_k plus the utility of any unlisted class.
struct UtilityVector {
  std::vector<std::int64_t> by_rank;
  std::int64_t others = 0;

  [[nodiscard]] std::int64_t at_rank(Rank r) const {
    return r == kUnranked ? others : by_rank[r - 1];
  }

  friend bool operator==(const UtilityVector&, const UtilityVector&) = default;
};

// Rejects vectors whose worst-case objective |value| * |S| exceeds 2^62, or
// whose length does not match k.
inline void check_utility_vector(const UtilityVector& v, int k,
                                 int num_students) {
  if (static_cast<int>(v.by_rank.size()) != k) {
    throw Error(ErrorKind::kInvalidArgument,
                "utility vector has " + std::to_string(v.by_rank.size()) +
                    " ranks, instance has k = " + std::to_string(k));
  }
  const auto check = [num_students](std::int64_t value) {
    if (value == std::numeric_limits<std::int64_t>::min()) {
      throw Error(ErrorKind::kOverflow, "utility value out of range");
    }
    const std::int64_t magnitude = value < 0 ? -value : value;
    std::int64_t total = 0;
    if (__builtin_mul_overflow(magnitude, std::int64_t{num_students}, &total) ||
        total > kMaxObjectiveMagnitude) {
      throw Error(ErrorKind::kOverflow,
                  "utility " + std::to_string(value) + " times " +
                      std::to_string(num_students) + " students exceeds 2^62");
    }
  };
  for (std::int64_t value : v.by_rank) check(value);
  check(v.others);
}

// M dominates any Opt-style total, N separates profile levels, L dominates
// every rank-maximal level.
struct PenaltyConstants {
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::int64_t L = 0;
};

inline PenaltyConstants penalty_constants(std::int64_t num_students) {
  if (num_students < 1) {
    throw Error(ErrorKind::kInvalidArgument, "need at least one student");
  }
  using detail::checked_add;
  using detail::checked_mul;
  const char* what = "penalty constants exceed 64-bit range";
  PenaltyConstants pc;
  pc.M = checked_add(checked_mul(100, num_students, what), 1, what);
  pc.N = checked_add(num_students, 1, what);
  const std::int64_t n3 = checked_mul(checked_mul(pc.N, pc.N, what), pc.N, what);
  pc.L = checked_add(checked_mul(n3, num_students, what), 1, what);
  // Callers multiply L by |S| when summing objectives.
  checked_mul(pc.L, num_students, what);
  return pc;
}

inline PenaltyConstants penalty_constants(const Instance& instance) {
  return penalty_constants(instance.num_students());
}

inline std::int64_t utility_of(const Instance& instance, const UtilityVector& v,
                               StudentIndex s, ClassIndex c) {
  return v.at_rank(instance.rank_of(s, c));
}

enum class CapacityMode {
  kLowerAndUpper,  // optimization models
  kUpperOnly,      // DA / Boston outputs
};

// A total assignment of students to classes, indexed by student.
struct Matching {
  std::vector<ClassIndex> assignment;
  CapacityMode mode = CapacityMode::kLowerAndUpper;

  [[nodiscard]] ClassIndex operator[](StudentIndex s) const {
    return assignment[s];
  }
  friend bool operator==(const Matching&, const Matching&) = default;
};

// Mechanism output before leftover filling; nullopt = unassigned.
using PartialMatching = std::vector<std::optional<ClassIndex>>;

inline PartialMatching to_partial(const Matching& m) {
  return PartialMatching(m.assignment.begin(), m.assignment.end());
}

inline std::vector<int> enrollment(const Instance& instance,
                                   std::span<const ClassIndex> assignment) {
  std::vector<int> counts(instance.num_classes(), 0);
  for (ClassIndex c : assignment) ++counts[c];
  return counts;
}

// Throws kInvalidArgument when the matching breaks totality or the
// capacity rules of its mode.
inline void check_matching(const Instance& instance, const Matching& m) {
  if (static_cast<int>(m.assignment.size()) != instance.num_students()) {
    throw Error(ErrorKind::kInvalidArgument, "matching is not total");
  }
  for (ClassIndex c : m.assignment) {
    if (c < 0 || c >= instance.num_classes()) {
      throw Error(ErrorKind::kInvalidArgument, "matching names unknown class");
    }
  }
  const auto counts = enrollment(instance, m.assignment);
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    if (!info.active && counts[c] > 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "canceled class '" + info.id + "' received students");
    }
    if (!info.active) continue;
    if (counts[c] > info.upper ||
        (m.mode == CapacityMode::kLowerAndUpper && counts[c] < info.lower)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "class '" + info.id + "' has " + std::to_string(counts[c]) +
                      " students, outside its capacity bounds");
    }
  }
}

// Students by received rank; counts[i] is rank i+1.
struct Profile {
  std::vector<std::int64_t> counts;
  std::int64_t others = 0;
  std::int64_t total = 0;

  [[nodiscard]] int k() const { return static_cast<int>(counts.size()); }
  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile make_profile(std::vector<std::int64_t> counts,
                            std::int64_t others) {
  Profile p;
  p.counts = std::move(counts);
  p.others = others;
  p.total = others;
  for (auto c : p.counts) p.total += c;
  return p;
}

}  // namespace classassign
