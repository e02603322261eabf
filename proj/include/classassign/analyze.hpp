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

// Rank profiles, exact averages, popularity diagnostics and comparison
// tables. Averages are exact rationals; digits are cut only when rendered.

#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "classassign/core.hpp"
#include "classassign/error.hpp"

namespace classassign {

// Published tables cut averages after the last shown digit.
enum class Rounding {
  kTruncate,
  kHalfAwayFromZero,
};

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }

  [[nodiscard]] std::string to_fixed(int decimals = 3,
                                     Rounding mode = Rounding::kTruncate) const {
    __int128 scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const bool negative = num_ < 0;
    const __int128 magnitude = negative ? -__int128{num_} : __int128{num_};
    const __int128 scaled =
        mode == Rounding::kTruncate
            ? magnitude * scale / den_
            : (magnitude * scale * 2 + den_) / (2 * __int128{den_});
    const __int128 whole = scaled / scale;
    __int128 frac = scaled % scale;
    std::string digits;
    for (int i = 0; i < decimals; ++i) {
      digits.insert(digits.begin(), static_cast<char>('0' + frac % 10));
      frac /= 10;
    }
    std::string out = (negative && scaled != 0) ? "-" : "";
    out += std::to_string(static_cast<long long>(whole));
    if (decimals > 0) out += "." + digits;
    return out;
  }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Profile profile_of(const Instance& instance, const Matching& matching) {
  Profile p;
  p.counts.assign(instance.k(), 0);
  p.total = instance.num_students();
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    const Rank r = instance.rank_of(s, matching[s]);
    if (r == kUnranked) {
      ++p.others;
    } else {
      ++p.counts[r - 1];
    }
  }
  return p;
}

// Mean utility per student. Undefined (kUndefined) when a student occupies
// a penalty slot (utility <= -M), like the "--" cells of mechanism rows.
inline Rational average_utility(const Profile& profile, const UtilityVector& v) {
  if (profile.k() != static_cast<int>(v.by_rank.size())) {
    throw Error(ErrorKind::kInvalidArgument, "profile and vector lengths differ");
  }
  const std::int64_t threshold = -penalty_constants(profile.total).M;
  std::int64_t sum = 0;
  const auto add = [&](std::int64_t count, std::int64_t utility) {
    if (count == 0) return;
    if (utility <= threshold) {
      throw Error(ErrorKind::kUndefined,
                  "average utility is undefined with penalty slots occupied");
    }
    sum = detail::checked_add(
        sum, detail::checked_mul(count, utility, "utility sum overflow"),
        "utility sum overflow");
  };
  for (int i = 0; i < profile.k(); ++i) add(profile.counts[i], v.by_rank[i]);
  add(profile.others, v.others);
  return Rational(sum, profile.total);
}

struct RankAverage {
  Rational value;
  bool lower_bound = false;  // Others counted as rank k+1

  [[nodiscard]] std::string render(bool ascii = false) const {
    if (!lower_bound) return value.to_fixed(3);
    return std::string(ascii ? ">= " : "≥ ") + value.to_fixed(3);
  }
};

inline RankAverage average_rank(const Profile& profile) {
  std::int64_t sum = 0;
  for (int i = 0; i < profile.k(); ++i) sum += profile.counts[i] * (i + 1);
  sum += profile.others * (profile.k() + 1);
  return {Rational(sum, profile.total), profile.others > 0};
}

struct PopularityShortfall {
  ClassIndex klass;
  std::int64_t count;  // listings within the top max_rank choices
  int lower;
  friend bool operator==(const PopularityShortfall&,
                         const PopularityShortfall&) = default;
};

// n[c][i] = number of students whose (i+1)-th choice is c, canceled classes
// included.
inline std::vector<std::vector<std::int64_t>> rank_histogram(
    const Instance& instance) {
  std::vector<std::vector<std::int64_t>> n(
      instance.num_classes(), std::vector<std::int64_t>(instance.k(), 0));
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    const auto list = instance.preferences(s);
    for (std::size_t i = 0; i < list.size(); ++i) ++n[list[i]][i];
  }
  return n;
}

// Active classes listed within the top max_rank choices by fewer students
// than their lower capacity. A nonempty result proves the rank-restricted
// model infeasible; an empty one proves nothing.
inline std::vector<PopularityShortfall> necessary_condition(
    const Instance& instance, int max_rank) {
  if (max_rank < 1 || max_rank > instance.k()) {
    throw Error(ErrorKind::kInvalidArgument,
                "max rank must lie in [1, " + std::to_string(instance.k()) + "]");
  }
  const auto n = rank_histogram(instance);
  std::vector<PopularityShortfall> out;
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    if (!info.active) continue;
    std::int64_t count = 0;
    for (int i = 0; i < max_rank; ++i) count += n[c][i];
    if (count < info.lower) out.push_back({c, count, info.lower});
  }
  return out;
}

// Every student weakly prefers `a` to `b` and at least one strictly.
inline bool pareto_dominates(const Instance& instance, const Matching& a,
                             const Matching& b) {
  const auto effective = [&](StudentIndex s, ClassIndex c) {
    const Rank r = instance.rank_of(s, c);
    return r == kUnranked ? instance.k() + 1 : r;
  };
  bool strict = false;
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    const int ra = effective(s, a[s]);
    const int rb = effective(s, b[s]);
    if (ra > rb) return false;
    strict = strict || ra < rb;
  }
  return strict;
}

inline std::map<std::string, Profile> profile_by_group(const Instance& instance,
                                                       const Matching& matching) {
  std::map<std::string, Profile> out;
  if (!instance.has_groups()) return out;
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    Profile& p = out[instance.group(s)];
    if (p.counts.empty()) p.counts.assign(instance.k(), 0);
    ++p.total;
    const Rank r = instance.rank_of(s, matching[s]);
    if (r == kUnranked) {
      ++p.others;
    } else {
      ++p.counts[r - 1];
    }
  }
  return out;
}

// One model's outcome for compare(); a missing matching marks the model
// infeasible.
struct ModelOutcome {
  std::string name;
  std::optional<Matching> matching;
  UtilityVector reporting_vector;
};

struct ComparisonRow {
  std::string name;
  bool infeasible = false;
  Profile profile;
  std::optional<Rational> average_utility;
  std::optional<RankAverage> average_rank;
};

struct Dominance {
  std::size_t better;
  std::size_t worse;
};

inline std::string ordinal(int i) {
  const int mod100 = i % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (i % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(i) + suffix;
}

struct ComparisonTable {
  int k = 0;
  std::int64_t total = 0;
  std::vector<ComparisonRow> rows;
  std::vector<Dominance> dominance;

  [[nodiscard]] std::string to_csv() const {
    std::ostringstream out;
    out << "model";
    for (int i = 1; i <= k; ++i) out << ",rank_" << i;
    out << ",others,average_utility,average_rank,status\n";
    for (const auto& row : rows) {
      out << row.name;
      if (row.infeasible) {
        for (int i = 0; i < k + 3; ++i) out << ',';
        out << ",infeasible\n";
        continue;
      }
      for (auto c : row.profile.counts) out << ',' << c;
      out << ',' << row.profile.others << ',';
      out << (row.average_utility ? row.average_utility->to_fixed(3) : "--");
      out << ',' << row.average_rank->render(/*ascii=*/true) << ",ok\n";
    }
    return out.str();
  }

  [[nodiscard]] std::string to_markdown() const {
    std::ostringstream out;
    out << "# of students (Total = " << total << ")\n\n";
    out << "| Model |";
    for (int i = 1; i <= k; ++i) out << ' ' << ordinal(i) << " |";
    out << " Others | Avg utility | Avg rank |\n";
    out << "|---|";
    for (int i = 0; i < k + 3; ++i) out << "---:|";
    out << '\n';
    for (const auto& row : rows) {
      out << "| " << row.name << " |";
      if (row.infeasible) {
        out << " infeasible |";
        for (int i = 0; i < k + 2; ++i) out << " |";
        out << '\n';
        continue;
      }
      for (auto c : row.profile.counts) out << ' ' << c << " |";
      out << ' ' << row.profile.others << " | "
          << (row.average_utility ? row.average_utility->to_fixed(3) : "--")
          << " | " << row.average_rank->render() << " |\n";
    }
    if (!dominance.empty()) {
      out << "\nPareto dominance:\n";
      for (const auto& d : dominance) {
        out << "- " << rows[d.better].name << " ≻ " << rows[d.worse].name << '\n';
      }
    }
    return out.str();
  }
};

inline ComparisonTable compare(const Instance& instance,
                               const std::vector<ModelOutcome>& models) {
  ComparisonTable table;
  table.k = instance.k();
  table.total = instance.num_students();
  for (const auto& model : models) {
    ComparisonRow row;
    row.name = model.name;
    if (!model.matching) {
      row.infeasible = true;
      table.rows.push_back(std::move(row));
      continue;
    }
    row.profile = profile_of(instance, *model.matching);
    try {
      row.average_utility = average_utility(row.profile, model.reporting_vector);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefined) throw;
    }
    row.average_rank = average_rank(row.profile);
    table.rows.push_back(std::move(row));
  }
  for (std::size_t a = 0; a < models.size(); ++a) {
    for (std::size_t b = 0; b < models.size(); ++b) {
      if (a == b || !models[a].matching || !models[b].matching) continue;
      if (pareto_dominates(instance, *models[a].matching, *models[b].matching)) {
        table.dominance.push_back({a, b});
      }
    }
  }
  return table;
}

inline std::string group_breakdown_markdown(const Instance& instance,
                                            const Matching& matching) {
  const auto groups = profile_by_group(instance, matching);
  if (groups.empty()) return {};
  std::ostringstream out;
  out << "| Group |";
  for (int i = 1; i <= instance.k(); ++i) out << ' ' << ordinal(i) << " |";
  out << " Others | Total |\n|---|";
  for (int i = 0; i < instance.k() + 2; ++i) out << "---:|";
  out << '\n';
  for (const auto& [group, p] : groups) {
    out << "| " << group << " |";
    for (auto c : p.counts) out << ' ' << c << " |";
    out << ' ' << p.others << " | " << p.total << " |\n";
  }
  return out.str();
}

}  // namespace classassign
