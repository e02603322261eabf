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

// Solves a small hand-written instance under three models and prints the
// comparison table.

#include <iostream>

#include "classassign/classassign.hpp"

int main() {
  using namespace classassign;
  std::vector<ClassInfo> classes = {
      {"math", 2, 3, true}, {"physics", 2, 3, true}, {"poetry", 2, 3, true}};
  std::vector<std::string> students = {"ann", "bo", "cy", "di", "ed", "fay"};
  const Instance instance = Instance::from_ids(
      students, classes,
      {{"math", "physics"},
       {"math", "poetry"},
       {"math", "physics"},
       {"physics", "math"},
       {"math", "poetry"},
       {"physics", "poetry"}},
      2);

  std::vector<ModelOutcome> rows;
  for (const char* name : {"Opt67", "RankMaximal", "Fair"}) {
    const auto result = solve_assignment(instance, preset(name, instance));
    rows.push_back({name, result.matching, preset("Opt67", instance)});
  }
  const auto priority = single_tie_break(instance, 7);
  rows.push_back({"DA with STB", deferred_acceptance(instance, priority),
                  preset("Opt67", instance)});
  std::cout << compare(instance, rows).to_markdown();
  return 0;
}
