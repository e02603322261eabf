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

// CSV instance files, matching output and the synthetic instance generator.
//
// classes file:      class_id,lower,upper,status     (status: active|canceled)
// preferences file:  student_id[,group],choice_1,...,choice_k
// matching file:     student_id,class_id,rank        (rank: 1..k|others)

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/random.hpp"

namespace classassign {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;
};

// Non-empty rows with their 1-based line numbers; strips a UTF-8 BOM.
inline std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<CsvRow> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    rows.push_back({number, split_csv(line)});
  }
  return rows;
}

[[noreturn]] inline void parse_fail(const std::filesystem::path& path, int line,
                                    const std::string& message) {
  throw Error(ErrorKind::kParse,
              path.string() + ":" + std::to_string(line) + ": " + message);
}

inline int parse_int(const std::filesystem::path& path, int line,
                     const std::string& field, const char* name) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    parse_fail(path, line, std::string("bad ") + name + " '" + field + "'");
  }
  return value;
}

}  // namespace detail

inline Instance load_instance(const std::filesystem::path& classes_path,
                              const std::filesystem::path& preferences_path) {
  using detail::parse_fail;

  const auto class_rows = detail::read_csv(classes_path);
  const std::vector<std::string> class_header = {"class_id", "lower", "upper",
                                                 "status"};
  if (class_rows.empty() || class_rows[0].fields != class_header) {
    parse_fail(classes_path, class_rows.empty() ? 1 : class_rows[0].line,
               "expected header 'class_id,lower,upper,status'");
  }
  std::vector<ClassInfo> classes;
  std::unordered_map<std::string, ClassIndex> class_index;
  for (std::size_t r = 1; r < class_rows.size(); ++r) {
    const auto& row = class_rows[r];
    if (row.fields.size() != 4) parse_fail(classes_path, row.line, "expected 4 fields");
    ClassInfo info;
    info.id = row.fields[0];
    if (info.id.empty()) parse_fail(classes_path, row.line, "empty class id");
    info.lower = detail::parse_int(classes_path, row.line, row.fields[1], "lower");
    info.upper = detail::parse_int(classes_path, row.line, row.fields[2], "upper");
    if (row.fields[3] == "active") {
      info.active = true;
    } else if (row.fields[3] == "canceled") {
      info.active = false;
    } else {
      parse_fail(classes_path, row.line,
                 "status must be 'active' or 'canceled', got '" + row.fields[3] + "'");
    }
    if (info.lower < 0 || info.upper < 1 || info.lower > info.upper) {
      parse_fail(classes_path, row.line,
                 "class '" + info.id + "' needs 0 <= lower <= upper and upper >= 1");
    }
    if (!class_index.emplace(info.id, static_cast<ClassIndex>(classes.size())).second) {
      parse_fail(classes_path, row.line, "duplicate class id '" + info.id + "'");
    }
    classes.push_back(std::move(info));
  }

  const auto pref_rows = detail::read_csv(preferences_path);
  if (pref_rows.empty() || pref_rows[0].fields.empty() ||
      pref_rows[0].fields[0] != "student_id") {
    parse_fail(preferences_path, pref_rows.empty() ? 1 : pref_rows[0].line,
               "expected header 'student_id[,group],choice_1,...'");
  }
  const auto& header = pref_rows[0].fields;
  const bool has_group = header.size() > 1 && header[1] == "group";
  const std::size_t first_choice = has_group ? 2 : 1;
  const int k = static_cast<int>(header.size() - first_choice);
  if (k < 1) parse_fail(preferences_path, pref_rows[0].line, "no choice columns");

  std::vector<std::string> students;
  std::vector<std::string> groups;
  std::vector<std::vector<ClassIndex>> preferences;
  std::unordered_set<std::string> seen_students;
  for (std::size_t r = 1; r < pref_rows.size(); ++r) {
    const auto& row = pref_rows[r];
    if (row.fields.size() > header.size()) {
      parse_fail(preferences_path, row.line, "more fields than the header");
    }
    const std::string& id = row.fields[0];
    if (id.empty()) parse_fail(preferences_path, row.line, "empty student id");
    if (!seen_students.insert(id).second) {
      parse_fail(preferences_path, row.line, "duplicate student id '" + id + "'");
    }
    std::vector<ClassIndex> list;
    bool ended = false;
    for (std::size_t f = first_choice; f < row.fields.size(); ++f) {
      const std::string& choice = row.fields[f];
      if (choice.empty()) {
        ended = true;
        continue;
      }
      if (ended) {
        parse_fail(preferences_path, row.line,
                   "student '" + id + "' has a gap in the choice list");
      }
      const auto it = class_index.find(choice);
      if (it == class_index.end()) {
        parse_fail(preferences_path, row.line, "unknown class id '" + choice + "'");
      }
      if (std::find(list.begin(), list.end(), it->second) != list.end()) {
        parse_fail(preferences_path, row.line,
                   "student '" + id + "' lists '" + choice + "' twice");
      }
      list.push_back(it->second);
    }
    students.push_back(id);
    if (has_group) groups.push_back(row.fields.size() > 1 ? row.fields[1] : "");
    preferences.push_back(std::move(list));
  }
  return Instance(std::move(students), std::move(classes), std::move(preferences),
                  k, std::move(groups));
}

inline std::string rank_label(Rank r) {
  return r == kUnranked ? "others" : std::to_string(r);
}

// Rows ordered by student id.
inline std::string matching_csv(const Matching& matching, const Instance& instance) {
  std::vector<StudentIndex> order(instance.num_students());
  for (int i = 0; i < instance.num_students(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](StudentIndex a, StudentIndex b) {
    return instance.student_id(a) < instance.student_id(b);
  });
  std::ostringstream out;
  out << "student_id,class_id,rank\n";
  for (StudentIndex s : order) {
    out << instance.student_id(s) << ',' << instance.class_info(matching[s]).id
        << ',' << rank_label(instance.rank_of(s, matching[s])) << '\n';
  }
  return out.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

inline void save_matching(const Matching& matching, const Instance& instance,
                          const std::filesystem::path& path) {
  write_text(path, matching_csv(matching, instance));
}

inline Matching load_matching(const Instance& instance,
                              const std::filesystem::path& path,
                              CapacityMode mode = CapacityMode::kLowerAndUpper) {
  const auto rows = detail::read_csv(path);
  const std::vector<std::string> header = {"student_id", "class_id", "rank"};
  if (rows.empty() || rows[0].fields != header) {
    detail::parse_fail(path, 1, "expected header 'student_id,class_id,rank'");
  }
  Matching m;
  m.mode = mode;
  m.assignment.assign(instance.num_students(), -1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 3) detail::parse_fail(path, row.line, "expected 3 fields");
    const auto s = instance.find_student(row.fields[0]);
    const auto c = instance.find_class(row.fields[1]);
    if (!s || !c) detail::parse_fail(path, row.line, "unknown student or class id");
    if (m.assignment[*s] != -1) {
      detail::parse_fail(path, row.line, "student listed twice");
    }
    m.assignment[*s] = *c;
  }
  if (std::find(m.assignment.begin(), m.assignment.end(), -1) != m.assignment.end()) {
    detail::parse_fail(path, static_cast<int>(rows.size()), "matching is not total");
  }
  return m;
}

inline void write_instance_files(const Instance& instance,
                                 const std::filesystem::path& classes_path,
                                 const std::filesystem::path& preferences_path) {
  std::ostringstream classes;
  classes << "class_id,lower,upper,status\n";
  for (const auto& c : instance.classes()) {
    classes << c.id << ',' << c.lower << ',' << c.upper << ','
            << (c.active ? "active" : "canceled") << '\n';
  }
  write_text(classes_path, classes.str());

  std::ostringstream prefs;
  prefs << "student_id";
  if (instance.has_groups()) prefs << ",group";
  for (int i = 1; i <= instance.k(); ++i) prefs << ",choice_" << i;
  prefs << '\n';
  for (StudentIndex s = 0; s < instance.num_students(); ++s) {
    prefs << instance.student_id(s);
    if (instance.has_groups()) prefs << ',' << instance.group(s);
    const auto list = instance.preferences(s);
    for (int i = 0; i < instance.k(); ++i) {
      prefs << ',';
      if (i < static_cast<int>(list.size())) prefs << instance.class_info(list[i]).id;
    }
    prefs << '\n';
  }
  write_text(preferences_path, prefs.str());
}

struct GeneratorSpec {
  int students = 1138;
  int classes = 54;
  int k = 6;
  int lower = kDefaultLowerCapacity;
  int upper_min = 15;
  int upper_max = 40;
  double skew = 1.0;  // Zipf exponent of class popularity
  int canceled = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string padded_id(char prefix, int value, int count) {
  const int width = static_cast<int>(std::to_string(count).size());
  std::string digits = std::to_string(value);
  return std::string(1, prefix) +
         std::string(std::max(0, width - static_cast<int>(digits.size())), '0') +
         digits;
}

}  // namespace detail

// Synthetic instance: class c (0-based) has popularity weight (c+1)^-skew;
// each student draws k distinct classes without replacement (canceled ones
// included) and ranks them in draw order. Capacities are uniform in
// [upper_min, upper_max], raised round-robin if they cannot seat everyone.
inline Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.students < 1 || spec.classes < 1 || spec.k < 1 ||
      spec.k > spec.classes || spec.canceled < 0 ||
      spec.canceled >= spec.classes || spec.lower < 0 ||
      spec.upper_min < std::max(spec.lower, 1) || spec.upper_max < spec.upper_min ||
      spec.skew < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "inconsistent generator spec");
  }
  const std::int64_t active = spec.classes - spec.canceled;
  if (active * spec.lower > spec.students ||
      active * spec.upper_max < spec.students) {
    throw Error(ErrorKind::kInvalidArgument,
                "unsatisfiable spec: need active*lower <= students <= "
                "active*upper_max");
  }

  Xoshiro256 rng(spec.seed);
  std::vector<ClassInfo> classes(spec.classes);
  for (int c = 0; c < spec.classes; ++c) {
    classes[c].id = detail::padded_id('c', c + 1, spec.classes);
    classes[c].lower = spec.lower;
    classes[c].upper =
        spec.upper_min + static_cast<int>(rng.bounded(
                             static_cast<std::uint64_t>(spec.upper_max - spec.upper_min + 1)));
  }
  std::vector<int> indices(spec.classes);
  for (int c = 0; c < spec.classes; ++c) indices[c] = c;
  fisher_yates(std::span<int>(indices), rng);
  for (int i = 0; i < spec.canceled; ++i) classes[indices[i]].active = false;

  std::int64_t seats = 0;
  for (const auto& c : classes) {
    if (c.active) seats += c.upper;
  }
  for (int c = 0; seats < spec.students; c = (c + 1) % spec.classes) {
    if (classes[c].active && classes[c].upper < spec.upper_max) {
      ++classes[c].upper;
      ++seats;
    }
  }

  std::vector<double> weight(spec.classes);
  for (int c = 0; c < spec.classes; ++c) {
    weight[c] = std::pow(static_cast<double>(c + 1), -spec.skew);
  }
  std::vector<std::string> students(spec.students);
  std::vector<std::vector<ClassIndex>> prefs(spec.students);
  for (int s = 0; s < spec.students; ++s) {
    students[s] = detail::padded_id('s', s + 1, spec.students);
    std::vector<double> remaining = weight;
    for (int j = 0; j < spec.k; ++j) {
      double total = 0.0;
      for (double w : remaining) total += w;
      const double target = rng.uniform01() * total;
      double cumulative = 0.0;
      ClassIndex pick = -1;
      for (int c = 0; c < spec.classes; ++c) {
        if (remaining[c] <= 0.0) continue;
        pick = c;
        cumulative += remaining[c];
        if (target < cumulative) break;
      }
      prefs[s].push_back(pick);
      remaining[pick] = 0.0;
    }
  }
  return Instance(std::move(students), std::move(classes), std::move(prefs), spec.k);
}

}  // namespace classassign
