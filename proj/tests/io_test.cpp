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

#include "classassign/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "classassign/analyze.hpp"
#include "classassign/assign.hpp"
#include "classassign/mechanisms.hpp"

namespace classassign {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("classassign_io_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  static std::string Read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Loads the pair and returns the parse error message, or "" on success.
  std::string LoadError(const std::string& classes, const std::string& prefs) {
    try {
      (void)load_instance(Write("c.csv", classes), Write("p.csv", prefs));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << e.what();
      return e.what();
    }
    return "";
  }

  fs::path dir_;
};

constexpr const char* kClasses =
    "class_id,lower,upper,status\n"
    "c1,1,2,active\n"
    "c2,0,2,active\n"
    "c3,0,5,canceled\n";

TEST_F(IoTest, LoadsClassesAndPreferences) {
  const Instance inst = load_instance(
      Write("c.csv", kClasses),
      Write("p.csv",
            "student_id,choice_1,choice_2,choice_3\n"
            "alice,c1,c3,c2\n"
            "\n"
            "bob,c2,,\n"));
  EXPECT_EQ(inst.num_students(), 2);
  EXPECT_EQ(inst.num_classes(), 3);
  EXPECT_EQ(inst.k(), 3);
  EXPECT_FALSE(inst.class_info(2).active);
  EXPECT_EQ(inst.rank_of(0, 1), 3);
  EXPECT_EQ(inst.rank_of(0, 2), 2);
  EXPECT_EQ(inst.preferences(1).size(), 1u);
  EXPECT_FALSE(inst.has_groups());
}

TEST_F(IoTest, ToleratesBomCrlfAndSpaces) {
  const Instance inst = load_instance(
      Write("c.csv", "\xEF\xBB\xBF" "class_id,lower,upper,status\r\nc1 , 0 , 3 , active\r\n"),
      Write("p.csv", "student_id,group,choice_1\r\ns1,east,c1\r\ns2,west, c1\r\n"));
  EXPECT_EQ(inst.class_info(0).upper, 3);
  EXPECT_TRUE(inst.has_groups());
  EXPECT_EQ(inst.group(1), "west");
  EXPECT_EQ(inst.k(), 1);
}

TEST_F(IoTest, RejectsMalformedFiles) {
  const std::string prefs = "student_id,choice_1\ns1,c1\n";
  EXPECT_NE(LoadError("id,lower,upper,status\nc1,0,1,active\n", prefs), "");
  EXPECT_NE(LoadError("class_id,lower,upper,status\nc1,0,1,open\n", prefs), "");
  EXPECT_NE(LoadError("class_id,lower,upper,status\nc1,3,1,active\n", prefs), "");
  EXPECT_NE(LoadError("class_id,lower,upper,status\nc1,x,1,active\n", prefs), "");
  EXPECT_NE(LoadError("class_id,lower,upper,status\nc1,0,1,active\nc1,0,1,active\n", prefs),
            "");
  EXPECT_NE(LoadError(kClasses, "student_id,choice_1\ns1,c9\n"), "");
  EXPECT_NE(LoadError(kClasses, "student_id,choice_1,choice_2\ns1,c1,c1\n"), "");
  EXPECT_NE(LoadError(kClasses, "student_id,choice_1,choice_2\ns1,,c1\n"), "");
  EXPECT_NE(LoadError(kClasses, "student_id,choice_1\ns1,c1\ns1,c2\n"), "");
  EXPECT_NE(LoadError(kClasses, "student_id,choice_1\ns1,c1,c2\n"), "");
  EXPECT_NE(LoadError(kClasses, "name,choice_1\ns1,c1\n"), "");
}

TEST_F(IoTest, ErrorsCarryFileAndLine) {
  const std::string message = LoadError(kClasses, "student_id,choice_1\ns1,c1\ns2,zz\n");
  EXPECT_NE(message.find("p.csv:3:"), std::string::npos) << message;
  EXPECT_NE(message.find("zz"), std::string::npos);
}

TEST_F(IoTest, MissingFileIsIoError) {
  try {
    (void)load_instance(dir_ / "nope.csv", dir_ / "nope2.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST_F(IoTest, SavedMatchingLabelsRanks) {
  const Instance inst = load_instance(
      Write("c.csv", kClasses),
      Write("p.csv", "student_id,choice_1,choice_2\nzed,c1,c2\namy,c1\n"));
  const Matching m{{1, 0}, CapacityMode::kLowerAndUpper};
  save_matching(m, inst, dir_ / "m.csv");
  EXPECT_EQ(Read(dir_ / "m.csv"),
            "student_id,class_id,rank\n"
            "amy,c1,1\n"
            "zed,c2,2\n");
  const Matching filled{{1, 1}, CapacityMode::kUpperOnly};
  EXPECT_EQ(matching_csv(filled, inst),
            "student_id,class_id,rank\n"
            "amy,c2,others\n"
            "zed,c2,2\n");
}

TEST_F(IoTest, SolveSaveLoadRoundTrip) {
  const Instance inst = generate_instance(
      {.students = 60, .classes = 6, .k = 4, .lower = 3, .upper_min = 8,
       .upper_max = 14, .canceled = 1, .seed = 4});
  const AssignmentResult res = solve_assignment(inst, preset("Opt67", inst));
  save_matching(res.matching, inst, dir_ / "m.csv");
  const Matching back = load_matching(inst, dir_ / "m.csv");
  EXPECT_EQ(back.assignment, res.matching.assignment);
}

TEST_F(IoTest, LoadMatchingRejectsPartialFiles) {
  const Instance inst = load_instance(
      Write("c.csv", kClasses), Write("p.csv", "student_id,choice_1\na,c1\nb,c2\n"));
  EXPECT_THROW((void)load_matching(inst, Write("m.csv", "student_id,class_id,rank\na,c1,1\n")),
               Error);
  EXPECT_THROW((void)load_matching(
                   inst, Write("m.csv", "student_id,class_id,rank\na,c1,1\na,c2,1\n")),
               Error);
}

TEST_F(IoTest, InstanceFilesRoundTrip) {
  const Instance inst = generate_instance(
      {.students = 40, .classes = 7, .k = 3, .lower = 2, .upper_min = 6,
       .upper_max = 9, .canceled = 2, .seed = 11});
  write_instance_files(inst, dir_ / "c.csv", dir_ / "p.csv");
  const Instance back = load_instance(dir_ / "c.csv", dir_ / "p.csv");
  ASSERT_EQ(back.num_students(), inst.num_students());
  EXPECT_EQ(back.k(), inst.k());
  for (ClassIndex c = 0; c < inst.num_classes(); ++c) {
    EXPECT_EQ(back.class_info(c).id, inst.class_info(c).id);
    EXPECT_EQ(back.class_info(c).upper, inst.class_info(c).upper);
    EXPECT_EQ(back.class_info(c).active, inst.class_info(c).active);
  }
  for (StudentIndex s = 0; s < inst.num_students(); ++s) {
    const auto a = inst.preferences(s);
    const auto b = back.preferences(s);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST(GeneratorTest, SingletonInstance) {
  const Instance inst =
      generate_instance({.students = 1, .classes = 1, .k = 1, .lower = 0, .seed = 0});
  EXPECT_EQ(inst.num_students(), 1);
  EXPECT_EQ(inst.num_classes(), 1);
  EXPECT_EQ(inst.class_info(0).lower, 0);
  ASSERT_EQ(inst.preferences(0).size(), 1u);
  EXPECT_EQ(inst.preferences(0)[0], 0);
}

TEST(GeneratorTest, DeterministicPerSeed) {
  const GeneratorSpec spec{.students = 200, .classes = 12, .k = 5, .canceled = 2, .seed = 8};
  const Instance a = generate_instance(spec);
  const Instance b = generate_instance(spec);
  GeneratorSpec other = spec;
  other.seed = 9;
  const Instance c = generate_instance(other);
  bool differs = false;
  for (StudentIndex s = 0; s < a.num_students(); ++s) {
    const auto pa = a.preferences(s);
    const auto pb = b.preferences(s);
    const auto pc = c.preferences(s);
    EXPECT_TRUE(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
    differs = differs || !std::equal(pa.begin(), pa.end(), pc.begin(), pc.end());
  }
  EXPECT_TRUE(differs);
}

TEST(GeneratorTest, FirstYearShape) {
  const Instance inst = generate_instance({.canceled = 2, .seed = 1});
  EXPECT_EQ(inst.num_students(), 1138);
  EXPECT_EQ(inst.num_classes(), 54);
  EXPECT_EQ(inst.k(), 6);
  EXPECT_EQ(inst.active_classes().size(), 52u);
  EXPECT_GE(inst.total_upper(), inst.num_students());
  EXPECT_LE(inst.total_lower(), inst.num_students());
  for (StudentIndex s = 0; s < inst.num_students(); ++s) {
    ASSERT_EQ(inst.preferences(s).size(), 6u);
  }
}

TEST(GeneratorTest, SkewConcentratesPopularity) {
  const auto first_choice_share = [](double skew) {
    const Instance inst = generate_instance({.students = 500, .classes = 20, .k = 3,
                                             .upper_min = 30, .upper_max = 40,
                                             .skew = skew, .seed = 2});
    int top = 0;
    for (StudentIndex s = 0; s < inst.num_students(); ++s) top += inst.preferences(s)[0] == 0;
    return top;
  };
  EXPECT_GT(first_choice_share(2.0), first_choice_share(0.0));
}

TEST(GeneratorTest, RejectsUnsatisfiableSpecs) {
  EXPECT_THROW((void)generate_instance({.students = 10, .classes = 2, .k = 1,
                                        .upper_min = 2, .upper_max = 3}),
               Error);
  EXPECT_THROW((void)generate_instance({.students = 10, .classes = 2, .k = 3}), Error);
  EXPECT_THROW((void)generate_instance({.students = 3, .classes = 2, .k = 1, .lower = 2,
                                        .upper_min = 2, .upper_max = 3}),
               Error);
}

}  // namespace
}  // namespace classassign
