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

// Command-line front end. Exit codes: 0 success, 1 error (or diagnostic
// violations for `check` / disagreement for `verify`), 2 model infeasible.

#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "classassign/analyze.hpp"
#include "classassign/assign.hpp"
#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/io.hpp"
#include "classassign/mechanisms.hpp"
#include "classassign/oracle.hpp"

namespace classassign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

struct ModelRun {
  std::string name;
  UtilityVector vector;
  UtilityVector reporting_vector;
  std::optional<Matching> matching;
  std::int64_t total_utility = 0;
  std::string infeasibility;  // empty when feasible
};

inline std::string display_name(const std::string& model,
                                 std::optional<int> max_rank) {
  if (!max_rank) return model;
  return model + " (1st to " + ordinal(*max_rank) + ")";
}

// Solves one preset (optionally rank-restricted) and classifies the outcome.
// Opt-family and restricted models are infeasible when a penalty slot is
// used; any model is infeasible when no capacity-respecting matching exists.
inline ModelRun run_model(const Instance& instance, const std::string& model,
                          std::optional<int> max_rank = std::nullopt) {
  ModelRun run;
  run.name = display_name(model, max_rank);
  run.vector = preset(model, instance);
  if (max_rank) {
    run.vector = restrict(run.vector, *max_rank, penalty_constants(instance).M);
  }
  run.reporting_vector =
      is_opt_family(model) ? run.vector : preset("Opt67", instance);
  try {
    AssignmentResult result = solve_assignment(instance, run.vector);
    if ((is_opt_family(model) || max_rank) &&
        detect_restricted_infeasibility(result.matching, instance, run.vector)) {
      run.infeasibility = "a student had to take a penalized (forbidden) rank";
      return run;
    }
    run.total_utility = result.total_utility;
    run.matching = std::move(result.matching);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInfeasible &&
        e.kind() != ErrorKind::kCapacityMismatch) {
      throw;
    }
    run.infeasibility = e.what();
  }
  return run;
}

namespace detail {

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline bool is_mechanism(const std::string& name) {
  const std::string lower = lowercase(name);
  return lower == "da" || lower == "boston";
}

inline ModelRun run_mechanism(const Instance& instance, const std::string& kind,
                              std::uint64_t seed) {
  const PriorityOrder priority = single_tie_break(instance, seed);
  ModelRun run;
  const bool da = lowercase(kind) == "da";
  run.name = da ? "DA with STB" : "Boston with STB";
  run.matching = da ? deferred_acceptance(instance, priority)
                    : boston(instance, priority);
  run.reporting_vector = preset("Opt67", instance);
  return run;
}

inline void write_table(const ComparisonTable& table,
                        const std::filesystem::path& path,
                        const std::string& extra_markdown = {}) {
  if (path.extension() == ".csv") {
    write_text(path, table.to_csv());
  } else {
    write_text(path, table.to_markdown() +
                         (extra_markdown.empty() ? "" : "\n" + extra_markdown));
  }
}

inline std::string profile_line(const Profile& p) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    out << (i ? ", " : "") << p.counts[i];
  }
  out << "; others " << p.others << ')';
  return out.str();
}

inline int under_filled(const Instance& instance, const Matching& m) {
  const auto counts = enrollment(instance, m.assignment);
  int n = 0;
  for (ClassIndex c = 0; c < instance.num_classes(); ++c) {
    const ClassInfo& info = instance.class_info(c);
    if (info.active && counts[c] < info.lower) ++n;
  }
  return n;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"classassign: student-to-class assignment"};
  app.require_subcommand(1);

  std::string classes_path;
  std::string prefs_path;
  std::string out_path;
  std::string report_path;
  std::string model;
  std::string models;
  std::string kind;
  int max_rank = 0;
  std::uint64_t seed = 0;
  GeneratorSpec gen;
  std::string out_dir;

  const auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--classes", classes_path, "classes CSV")->required();
    sub->add_option("--prefs", prefs_path, "preferences CSV")->required();
  };

  auto* solve = app.add_subcommand("solve", "solve one optimization model");
  solve->add_option("--model", model, "preset name")->required();
  solve->add_option("--max-rank", max_rank, "forbid ranks beyond this one")
      ->check(CLI::PositiveNumber);
  add_instance(solve);
  solve->add_option("--out", out_path, "matching CSV")->required();
  solve->add_option("--report", report_path, "report (.csv or markdown)");

  auto* mechanism = app.add_subcommand("mechanism", "run DA or Boston with STB");
  mechanism->add_option("--kind", kind, "da or boston")
      ->required()
      ->check(CLI::IsMember({"da", "boston"}, CLI::ignore_case));
  mechanism->add_option("--seed", seed, "tie-breaking seed")->required();
  add_instance(mechanism);
  mechanism->add_option("--out", out_path, "matching CSV")->required();
  mechanism->add_option("--report", report_path, "report (.csv or markdown)");

  auto* cmp = app.add_subcommand("compare", "compare several models");
  cmp->add_option("--models", models, "comma-separated presets, DA, Boston")
      ->required();
  cmp->add_option("--seed", seed, "tie-breaking seed for DA/Boston");
  add_instance(cmp);
  cmp->add_option("--out", out_path, "comparison table (.csv or markdown)")
      ->required();

  auto* check = app.add_subcommand("check", "popularity-versus-lower-bound diagnostic");
  check->add_option("--max-rank", max_rank, "choices counted")
      ->required()
      ->check(CLI::PositiveNumber);
  add_instance(check);

  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic instance");
  gen_cmd->add_option("--students", gen.students)->required();
  gen_cmd->add_option("--classes", gen.classes)->required();
  gen_cmd->add_option("--k", gen.k)->required();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--out-dir", out_dir)->required();
  gen_cmd->add_option("--lower", gen.lower, "lower capacity")->capture_default_str();
  gen_cmd->add_option("--upper-min", gen.upper_min)->capture_default_str();
  gen_cmd->add_option("--upper-max", gen.upper_max)->capture_default_str();
  gen_cmd->add_option("--skew", gen.skew, "Zipf exponent")->capture_default_str();
  gen_cmd->add_option("--canceled", gen.canceled)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "cross-check the solver with the oracle");
  verify->add_option("--model", model, "preset name")->required();
  verify->add_option("--max-rank", max_rank)->check(CLI::PositiveNumber);
  add_instance(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const std::optional<int> rank_cap =
      max_rank > 0 ? std::optional<int>(max_rank) : std::nullopt;

  try {
    if (*gen_cmd) {
      const Instance instance = generate_instance(gen);
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      write_instance_files(instance, dir / "classes.csv", dir / "prefs.csv");
      out << "wrote " << (dir / "classes.csv").string() << " and "
          << (dir / "prefs.csv").string() << '\n';
      return kExitOk;
    }

    const Instance instance = load_instance(classes_path, prefs_path);

    if (*solve) {
      const ModelRun run = run_model(instance, model, rank_cap);
      if (!run.matching) {
        err << run.name << ": infeasible (" << run.infeasibility << ")\n";
        return kExitInfeasible;
      }
      save_matching(*run.matching, instance, out_path);
      const Profile profile = profile_of(instance, *run.matching);
      out << run.name << ": total utility " << run.total_utility << ", profile "
          << detail::profile_line(profile) << ", average rank "
          << average_rank(profile).render() << '\n';
      if (!report_path.empty()) {
        const auto table = compare(
            instance, {{run.name, run.matching, run.reporting_vector}});
        detail::write_table(table, report_path,
                            group_breakdown_markdown(instance, *run.matching));
      }
      return kExitOk;
    }

    if (*mechanism) {
      const ModelRun run = detail::run_mechanism(instance, kind, seed);
      save_matching(*run.matching, instance, out_path);
      const Profile profile = profile_of(instance, *run.matching);
      out << run.name << " (seed " << seed << "): profile "
          << detail::profile_line(profile) << ", average rank "
          << average_rank(profile).render() << ", classes below lower capacity "
          << detail::under_filled(instance, *run.matching) << '\n';
      if (!report_path.empty()) {
        const auto table = compare(
            instance, {{run.name, run.matching, run.reporting_vector}});
        detail::write_table(table, report_path,
                            group_breakdown_markdown(instance, *run.matching));
      }
      return kExitOk;
    }

    if (*cmp) {
      std::vector<std::string> names;
      std::stringstream list(models);
      for (std::string name; std::getline(list, name, ',');) {
        if (!name.empty()) names.push_back(name);
      }
      if (names.empty()) throw Error(ErrorKind::kInvalidArgument, "no models given");
      std::vector<std::future<ModelRun>> pending;
      for (const auto& name : names) {
        pending.push_back(std::async(std::launch::async, [&instance, name, seed] {
          return detail::is_mechanism(name)
                     ? detail::run_mechanism(instance, name, seed)
                     : run_model(instance, name);
        }));
      }
      std::vector<ModelOutcome> outcomes;
      for (auto& f : pending) {
        ModelRun run = f.get();
        outcomes.push_back({run.name, run.matching, run.reporting_vector});
      }
      const ComparisonTable table = compare(instance, outcomes);
      detail::write_table(table, out_path);
      out << table.to_markdown();
      return kExitOk;
    }

    if (*check) {
      const auto violations = necessary_condition(instance, max_rank);
      for (const auto& v : violations) {
        out << instance.class_info(v.klass).id << ": listed in the top "
            << max_rank << " choices by " << v.count << " students, lower capacity "
            << v.lower << '\n';
      }
      if (violations.empty()) {
        out << "no class violates the popularity condition at max rank "
            << max_rank << '\n';
        return kExitOk;
      }
      return kExitError;
    }

    if (*verify) {
      UtilityVector v = preset(model, instance);
      if (rank_cap) v = restrict(v, *rank_cap, penalty_constants(instance).M);
      std::optional<std::int64_t> oracle_best;
      try {
        oracle_best = oracle_optimum(instance, v).best;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInfeasible) throw;
      }
      std::optional<std::int64_t> solver_best;
      try {
        solver_best = solve_assignment(instance, v).total_utility;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInfeasible &&
            e.kind() != ErrorKind::kCapacityMismatch) {
          throw;
        }
      }
      const auto show = [](const std::optional<std::int64_t>& x) {
        return x ? std::to_string(*x) : std::string("infeasible");
      };
      out << "oracle optimum: " << show(oracle_best)
          << "\nsolver optimum: " << show(solver_best) << '\n';
      if (oracle_best == solver_best) {
        out << "agree\n";
        return kExitOk;
      }
      err << "solver and oracle disagree\n";
      return kExitError;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace classassign
