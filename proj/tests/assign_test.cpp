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

#include "classassign/assign.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "classassign/analyze.hpp"
#include "classassign/io.hpp"
#include "classassign/oracle.hpp"
#include "test_support.hpp"

namespace classassign {
namespace {

std::vector<ClassInfo> OpenClasses(int m, int lower, int upper) {
  std::vector<ClassInfo> classes;
  for (int c = 1; c <= m; ++c) classes.push_back({"c" + std::to_string(c), lower, upper, true});
  return classes;
}

// Lexicographic keys, smaller is better.
std::vector<std::int64_t> FairKey(const Profile& p) {
  std::vector<std::int64_t> key = {p.others};
  for (int i = p.k() - 1; i >= 1; --i) key.push_back(p.counts[i]);
  return key;
}

std::vector<std::int64_t> RankMaximalKey(const Profile& p) {
  std::vector<std::int64_t> key = {p.others};
  for (int i = 0; i < p.k(); ++i) key.push_back(-p.counts[i]);
  return key;
}

std::vector<std::int64_t> Opt67FairKey(const Profile& p) {
  std::vector<std::int64_t> key = {p.others};
  for (int i = p.k() - 1; i >= 3; --i) key.push_back(p.counts[i]);
  const std::int64_t top3 = 100 * p.counts[0] + 67 * p.counts[1] + 45 * p.counts[2];
  key.push_back(-top3);
  return key;
}

template <typename KeyFn>
std::vector<std::int64_t> BestKey(const Instance& instance, KeyFn key) {
  std::optional<std::vector<std::int64_t>> best;
  for_each_matching(instance, [&](const Matching& m) {
    auto k = key(profile_of(instance, m));
    if (!best || k < *best) best = k;
  });
  return *best;
}

TEST(BuildNetworkTest, SmallestInstance) {
  const Instance instance =
      Instance::from_ids({"s"}, {{"c", 0, 1, true}}, {{"c"}}, 1);
  const AssignmentNetwork net = build_network(instance, preset("Opt67", instance));
  EXPECT_EQ(net.network.num_nodes(), 4);
  EXPECT_EQ(net.network.num_arcs(), 3);
  EXPECT_EQ(net.network.arc(net.pair_arc(0, 0)).cost, -100);
}

TEST(BuildNetworkTest, Fy2018ShapeSinkDemand) {
  GeneratorSpec spec;
  spec.students = 1138;
  spec.classes = 54;
  spec.canceled = 2;
  spec.k = 6;
  const Instance instance = generate_instance(spec);
  const AssignmentNetwork net = build_network(instance, preset("Opt67", instance));
  EXPECT_EQ(net.network.supply(net.sink), -774);
  EXPECT_EQ(net.network.supply(net.source), 1138);
  EXPECT_EQ(net.network.num_nodes(), 1 + 1138 + 52 + 1);
}

TEST(BuildNetworkTest, ClassToSinkCapacityIsUpperMinusLower) {
  const Instance instance = Instance::from_ids(
      {"s1", "s2", "s3", "s4", "s5", "s6", "s7"}, {{"c", 7, 25, true}},
      {{"c"}, {"c"}, {"c"}, {"c"}, {"c"}, {"c"}, {"c"}}, 1);
  const AssignmentNetwork net = build_network(instance, preset("Opt67", instance));
  const Arc& last = net.network.arc(net.network.num_arcs() - 1);
  EXPECT_EQ(last.to, net.sink);
  EXPECT_EQ(last.capacity, 18);
}

TEST(BuildNetworkTest, CapacityMismatchReportsTotals) {
  const Instance instance =
      Instance::from_ids({"s1", "s2"}, {{"c", 0, 1, true}}, {{"c"}, {"c"}}, 1);
  try {
    build_network(instance, preset("Opt67", instance));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacityMismatch);
    EXPECT_NE(std::string(e.what()).find("2 <= 1"), std::string::npos);
  }
}

TEST(SolveAssignmentTest, TwoStudentsShareTwoClasses) {
  const Instance instance = Instance::from_ids(
      {"A", "B"}, OpenClasses(2, 0, 1), {{"c1", "c2"}, {"c1", "c2"}}, 2);
  const UtilityVector v = preset("Opt67", instance);
  EXPECT_EQ(v.by_rank, (std::vector<std::int64_t>{100, 67}));
  const AssignmentResult r = solve_assignment(instance, v);
  EXPECT_EQ(r.total_utility, 167);
  EXPECT_EQ(oracle_optimum(instance, v).best, 167);
  const Profile p = profile_of(instance, r.matching);
  EXPECT_EQ(p.counts, (std::vector<std::int64_t>{1, 1}));
}

TEST(SolveAssignmentTest, DistinctFirstChoicesAllSatisfied) {
  const Instance instance = Instance::from_ids(
      {"a", "b", "c"}, OpenClasses(3, 0, 2), {{"c1", "c2"}, {"c2", "c3"}, {"c3"}}, 2);
  const AssignmentResult r = solve_assignment(instance, preset("Opt67", instance));
  EXPECT_EQ(r.total_utility, 300);
  for (StudentIndex s = 0; s < 3; ++s) EXPECT_EQ(instance.rank_of(s, r.matching[s]), 1);
}

TEST(SolveAssignmentTest, PublishedOpt67ProfileTotal) {
  const Instance instance = generate_instance({.students = 1138, .classes = 54,
                                               .k = 6, .canceled = 2});
  const UtilityVector v = preset("Opt67", instance);
  const std::vector<std::int64_t> counts = {758, 247, 103, 16, 11, 3};
  std::int64_t total = 0;
  for (int i = 0; i < 6; ++i) total += counts[i] * v.by_rank[i];
  EXPECT_EQ(total, 97684);
}

TEST(SolveAssignmentTest, MatchesOracleAndIsIntegral) {
  Xoshiro256 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance instance = testing::random_tiny_instance(rng);
    for (const auto& name : preset_names()) {
      const UtilityVector v = preset(name, instance);
      const AssignmentResult r = solve_assignment(instance, v);
      EXPECT_EQ(r.total_utility, oracle_optimum(instance, v).best)
          << name << " trial " << trial;
      EXPECT_EQ(r.total_utility, total_utility(instance, v, r.matching));
      EXPECT_NO_THROW(check_matching(instance, r.matching));
      for (StudentIndex s = 0; s < instance.num_students(); ++s) {
        std::int64_t out = 0;
        for (std::size_t j = 0; j < r.network.active.size(); ++j) {
          const std::int64_t f = r.flow.per_arc[r.network.pair_arc(s, j)];
          EXPECT_TRUE(f == 0 || f == 1);
          out += f;
        }
        EXPECT_EQ(out, 1);
      }
    }
  }
}

TEST(LexicographicTest, FairRankMaximalAndHybridAgainstEnumeration) {
  Xoshiro256 rng(4242);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance instance = testing::random_tiny_instance(rng);
    const auto fair = solve_assignment(instance, preset("Fair", instance));
    EXPECT_EQ(FairKey(profile_of(instance, fair.matching)), BestKey(instance, FairKey));
    const auto rm = solve_assignment(instance, preset("RankMaximal", instance));
    EXPECT_EQ(RankMaximalKey(profile_of(instance, rm.matching)),
              BestKey(instance, RankMaximalKey));
    const auto hybrid = solve_assignment(instance, preset("Opt67xFair", instance));
    EXPECT_EQ(Opt67FairKey(profile_of(instance, hybrid.matching)),
              BestKey(instance, Opt67FairKey));
  }
}

TEST(DetectInfeasibilityTest, PositiveUtilitiesOnly) {
  const Instance instance = Instance::from_ids(
      {"a", "b"}, OpenClasses(2, 0, 1), {{"c1", "c2"}, {"c2", "c1"}}, 2);
  const UtilityVector v = preset("Opt67-max2", instance);
  const auto r = solve_assignment(instance, v);
  EXPECT_FALSE(detect_restricted_infeasibility(r.matching, instance, v));
}

TEST(DetectInfeasibilityTest, PigeonholeForcesPenalty) {
  // 15 students list (X, Y); X and Y seat 13, so two land in Z.
  std::vector<std::string> students;
  std::vector<std::vector<std::string>> prefs;
  for (int i = 0; i < 15; ++i) {
    students.push_back("s" + std::to_string(i));
    prefs.push_back({"X", "Y"});
  }
  const Instance instance = Instance::from_ids(
      students, {{"X", 0, 10, true}, {"Y", 0, 3, true}, {"Z", 0, 10, true}}, prefs, 2);
  const UtilityVector v = preset("Opt67-max2", instance);
  const auto r = solve_assignment(instance, v);
  EXPECT_TRUE(detect_restricted_infeasibility(r.matching, instance, v));
  EXPECT_EQ(profile_of(instance, r.matching).others, 2);
}

TEST(DetectInfeasibilityTest, OracleConfirmsEveryMatchingIsPenalized) {
  std::vector<std::string> students = {"a", "b", "c", "d", "e"};
  std::vector<std::vector<std::string>> prefs(5, {"X", "Y"});
  const Instance instance = Instance::from_ids(
      students, {{"X", 0, 2, true}, {"Y", 0, 1, true}, {"Z", 0, 5, true}}, prefs, 2);
  const UtilityVector v = preset("Opt67-max2", instance);
  for_each_matching(instance, [&](const Matching& m) {
    EXPECT_TRUE(detect_restricted_infeasibility(m, instance, v));
  });
  EXPECT_TRUE(detect_restricted_infeasibility(solve_assignment(instance, v).matching,
                                              instance, v));
}

TEST(DetectInfeasibilityTest, PopularityShortfallImpliesPenalty) {
  // Class D has lower 2 but nobody lists it in the top 3.
  std::vector<std::string> students;
  std::vector<std::vector<std::string>> prefs;
  for (int i = 0; i < 6; ++i) {
    students.push_back("s" + std::to_string(i));
    prefs.push_back({"A", "B", "C", "D"});
  }
  const Instance instance = Instance::from_ids(
      students,
      {{"A", 0, 3, true}, {"B", 0, 3, true}, {"C", 0, 3, true}, {"D", 2, 3, true}},
      prefs, 4);
  EXPECT_EQ(necessary_condition(instance, 3).size(), 1u);
  const UtilityVector v = preset("Opt67-max3", instance);
  EXPECT_TRUE(detect_restricted_infeasibility(solve_assignment(instance, v).matching,
                                              instance, v));
  const UtilityVector v4 = preset("Opt67-max4", instance);
  EXPECT_FALSE(detect_restricted_infeasibility(solve_assignment(instance, v4).matching,
                                               instance, v4));
}

TEST(PresetTest, PublishedVectors) {
  const Instance fy2018 = generate_instance({.students = 1138, .classes = 54, .k = 6,
                                             .canceled = 2});
  const std::int64_t M18 = 113801;
  EXPECT_EQ(preset("Opt67", fy2018),
            (UtilityVector{{100, 67, 45, 30, 20, 0}, -M18}));
  EXPECT_EQ(preset("Opt80", fy2018),
            (UtilityVector{{100, 80, 64, 51, 41, 0}, -M18}));
  EXPECT_EQ(preset("Opt75", fy2018),
            (UtilityVector{{100, 75, 56, 42, 32, 0}, -M18}));
  EXPECT_EQ(preset("Opt50", fy2018),
            (UtilityVector{{100, 50, 25, 13, 6, 0}, -M18}));
  EXPECT_EQ(preset("Opt67-max3", fy2018),
            (UtilityVector{{100, 67, 45, -M18, -M18, -M18}, -M18}));
  EXPECT_EQ(preset("Opt67-max5", fy2018),
            (UtilityVector{{100, 67, 45, 30, 20, -M18}, -M18}));

  const Instance fy2019 = generate_instance({.students = 1123, .classes = 50, .k = 5});
  const std::int64_t N = 1124;
  const std::int64_t M = 112301;
  const std::int64_t L = N * N * N * 1123 + 1;
  EXPECT_EQ(preset("RankMaximal", fy2019),
            (UtilityVector{{N * N * N, N * N, N, 1, 0}, -L}));
  EXPECT_EQ(preset("Fair", fy2019),
            (UtilityVector{{0, -1, -N, -N * N, -N * N * N}, -N * N * N * N}));
  EXPECT_EQ(preset("Opt67xFair", fy2019),
            (UtilityVector{{100, 67, 45, -M, -M * N}, -M * N * N}));
  EXPECT_EQ(preset("Opt67", fy2019), (UtilityVector{{100, 67, 45, 30, 20}, -M}));
}

TEST(PresetTest, UnknownName) {
  const Instance instance = Instance::from_ids({"s"}, {{"c", 0, 1, true}}, {{"c"}}, 1);
  EXPECT_THROW(preset("Opt65", instance), Error);
  EXPECT_THROW(preset("Opt67-max9", instance), Error);
}

TEST(RestrictTest, Examples) {
  const std::int64_t M = 113801;
  const UtilityVector opt67{{100, 67, 45, 30, 20, 0}, -M};
  EXPECT_EQ(restrict(opt67, 3, M),
            (UtilityVector{{100, 67, 45, -M, -M, -M}, -M}));
  EXPECT_EQ(restrict(opt67, 6, M), (UtilityVector{{100, 67, 45, 30, 20, 0}, -M}));
  EXPECT_EQ(restrict(restrict(opt67, 3, M), 4, M), restrict(opt67, 3, M));
  EXPECT_THROW(restrict(opt67, 0, M), Error);
  EXPECT_THROW(restrict(opt67, 7, M), Error);
}

TEST(RestrictTest, TighteningNeverHelpsTrueUtility) {
  Xoshiro256 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance instance = testing::random_tiny_instance(rng);
    const UtilityVector opt67 = preset("Opt67", instance);
    const std::int64_t M = penalty_constants(instance).M;
    std::optional<std::int64_t> previous_utility;
    for (int r = instance.k(); r >= 1; --r) {
      const UtilityVector v = restrict(opt67, r, M);
      const auto result = solve_assignment(instance, v);
      if (detect_restricted_infeasibility(result.matching, instance, v)) break;
      const std::int64_t true_utility = total_utility(instance, opt67, result.matching);
      if (previous_utility) {
        EXPECT_LE(true_utility, *previous_utility);
      }
      previous_utility = true_utility;
      const Profile p = profile_of(instance, result.matching);
      std::int64_t within = 0;
      for (int i = 0; i < r; ++i) within += p.counts[i];
      EXPECT_EQ(within, instance.num_students());
    }
  }
}

}  // namespace
}  // namespace classassign
