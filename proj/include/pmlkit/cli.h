// Copyright 2026 The pmlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The pmlkit command line: compute, verify, continuous and tail.
//
// Exit codes: 0 success, 1 validation failure, 2 oracle guarantee violated,
// 3 capacity exceeded. Commands return their output instead of printing it so
// they can be driven from tests.

#ifndef PMLKIT_CLI_H_
#define PMLKIT_CLI_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "pmlkit/closed_form.h"
#include "pmlkit/density.h"
#include "pmlkit/leakage.h"
#include "pmlkit/model_io.h"
#include "pmlkit/oracles.h"
#include "pmlkit/parallel.h"
#include "pmlkit/report.h"
#include "pmlkit/status_macros.h"

namespace pmlkit::cli {

inline constexpr const char* kToolName = "pmlkit";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitCapacity = 3;

// Slack for floating-point rounding when comparing an oracle with the
// leakage it should reproduce.
inline constexpr double kOracleTolerance = 1e-10;
// Largest accepted gap between closed form and grid evaluation.
inline constexpr double kGridTolerance = 1e-4;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

enum class Format { kJson, kCsv };

struct CommonOptions {
  Units units = Units::kNats;
  Format format = Format::kJson;
  std::uint64_t seed = 42;
};

inline int ExitCodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kResourceExhausted ? kExitCapacity
                                                               : kExitValidation;
}

inline CommandResult Failure(const absl::Status& status) {
  return {ExitCodeFor(status), "", absl::StrCat("error: ", status.message(), "\n")};
}

inline nlohmann::ordered_json Header(absl::string_view command,
                             const CommonOptions& options) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"command", std::string(command)},
          {"units", std::string(UnitsName(options.units))},
          {"seed", options.seed}};
}

// Prior deficit, the largest channel-row deficit and the propagated
// marginal deficit.
inline nlohmann::ordered_json DeficitsToJson(const JointModel& model) {
  double row_max = 0.0;
  for (std::size_t x = 0; x < model.input_alphabet().size(); ++x) {
    row_max = std::max(row_max, model.channel().row(x).truncation_deficit());
  }
  return {{"prior", model.prior().truncation_deficit()},
          {"channel_row_max", row_max},
          {"marginal", model.marginal().truncation_deficit()}};
}

// "# key=value" preamble carrying the header fields into CSV output.
inline std::string CsvPreamble(const nlohmann::ordered_json& header) {
  std::string text;
  for (const auto& [key, value] : header.items()) {
    absl::StrAppend(&text, "# ", key, "=",
                    value.is_string() ? value.get<std::string>() : value.dump(),
                    "\n");
  }
  return text;
}

inline std::string Render(const nlohmann::ordered_json& report) {
  return report.dump(2) + "\n";
}

inline absl::StatusOr<std::size_t> OutcomeIndex(const JointModel& model,
                                                const std::string& text) {
  auto index = model.output_alphabet().IndexOf(internal::SymbolFromText(text));
  if (!index.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("outcome '", text, "' is not in the output alphabet"));
  }
  return index;
}

// ---------------------------------------------------------------- compute

struct ComputeOptions {
  CommonOptions common;
  std::string channel_path;
  std::optional<std::string> prior_path;
  std::optional<std::string> outcome;
};

inline CommandResult RunCompute(const ComputeOptions& options) {
  auto model = LoadModel(options.channel_path, options.prior_path);
  if (!model.ok()) return Failure(model.status());
  const Units units = options.common.units;
  nlohmann::ordered_json report = Header("compute", options.common);
  report["truncation_deficits"] = DeficitsToJson(*model);

  if (options.outcome) {
    auto y = OutcomeIndex(*model, *options.outcome);
    if (!y.ok()) return Failure(y.status());
    const LeakageValue value = PmlAt(*model, *y);
    const Symbol& symbol = model->output_alphabet()[*y];
    if (options.common.format == Format::kCsv) {
      return {kExitOk,
              absl::StrCat(CsvPreamble(report), "outcome,p_y,leakage\n",
                           SymbolToString(symbol), ",",
                           NumberToText(model->marginal()[*y]), ",",
                           NumberToText(value.In(units)), "\n"),
              ""};
    }
    report["outcome"] = SymbolToJson(symbol);
    report["p_y"] = model->marginal()[*y];
    report["leakage"] = LeakageToJson(value, units);
    return {kExitOk, Render(report), ""};
  }

  const LeakageProfile profile = ComputeLeakageProfile(*model, ThreadsFromEnv());
  if (options.common.format == Format::kCsv) {
    report["maximal_leakage"] =
        NumberToText(MaximalLeakage(profile).In(units));
    report["mean_leakage"] = NumberToText(MeanLeakage(profile).In(units));
    return {kExitOk, CsvPreamble(report) + ProfileToCsv(profile, units), ""};
  }
  report.update(ProfileToJson(profile, units));
  return {kExitOk, Render(report), ""};
}

// ----------------------------------------------------------------- verify

enum class Oracle { kSubset, kPartition, kFunctions, kStrategies };

struct VerifyOptions {
  CommonOptions common;
  std::string channel_path;
  std::optional<std::string> prior_path;
  Oracle oracle = Oracle::kSubset;
  double eps = 0.05;
  std::optional<std::size_t> max_groups;
  int resolution = 20;
  // Gain functions for the strategies oracle; random when absent.
  std::optional<std::string> gains_path;
  int random_gains = 10;
};

inline absl::string_view OracleName(Oracle oracle) {
  switch (oracle) {
    case Oracle::kSubset:
      return "subset";
    case Oracle::kPartition:
      return "partition";
    case Oracle::kFunctions:
      return "functions";
    case Oracle::kStrategies:
      return "strategies";
  }
  return "";
}

// a - b with inf - inf = 0.
inline double Gap(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) return 0.0;
  return a - b;
}

// Gains file: a JSON array of {"estimates": [...], "table": [[...], ...]}
// with table[x][w] indexed by input symbol and estimate.
inline absl::StatusOr<std::vector<GainFunction>> LoadGains(
    const std::string& path, const DiscreteDistribution& prior) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": expected an array of gain functions"));
  }
  std::vector<GainFunction> gains;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& entry = j[k];
    if (!entry.is_object() || !entry.contains("estimates") ||
        !entry.contains("table") || !entry["table"].is_array()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ": gain ", k, " needs \"estimates\" and \"table\""));
    }
    ASSIGN_OR_RETURN(Alphabet estimates,
                     internal::AlphabetFromJson(entry["estimates"], "estimates"));
    std::vector<std::vector<double>> table;
    for (const auto& row : entry["table"]) {
      ASSIGN_OR_RETURN(std::vector<double> values,
                       internal::NumbersFromJson(row, "table row"));
      table.push_back(std::move(values));
    }
    ASSIGN_OR_RETURN(GainFunction g, GainFunction::Create(std::move(estimates),
                                                          std::move(table),
                                                          prior));
    gains.push_back(std::move(g));
  }
  return gains;
}

// `count` gain functions with 1 to kMaxStrategyActions estimates and entries
// uniform in [0, 1).
inline std::vector<GainFunction> RandomGains(const DiscreteDistribution& prior,
                                             int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> actions(1, kMaxStrategyActions);
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  std::vector<GainFunction> gains;
  for (int k = 0; k < count; ++k) {
    const std::size_t d = actions(rng);
    std::vector<std::vector<double>> table(prior.size(),
                                           std::vector<double>(d));
    for (auto& row : table) {
      for (double& g : row) g = entry(rng);
    }
    gains.push_back(*GainFunction::Create(
        Alphabet::Integers(0, d), std::move(table), prior));
  }
  return gains;
}

inline CommandResult RunVerify(const VerifyOptions& options) {
  auto model = LoadModel(options.channel_path, options.prior_path);
  if (!model.ok()) return Failure(model.status());
  const Units units = options.common.units;
  const std::size_t n = model->input_alphabet().size();

  nlohmann::ordered_json report = Header("verify", options.common);
  report["truncation_deficits"] = DeficitsToJson(*model);
  report["oracle"] = std::string(OracleName(options.oracle));

  bool lower_bound = false;
  std::size_t max_groups = n;
  std::vector<GainFunction> gains;
  switch (options.oracle) {
    case Oracle::kSubset:
      if (n > kMaxSubsetOracleAlphabet) {
        return Failure(absl::ResourceExhaustedError(absl::StrCat(
            "subset oracle cap exceeded: input alphabet has ", n,
            " symbols, cap is ", kMaxSubsetOracleAlphabet)));
      }
      report["guarantee"] = "oracle equals leakage";
      break;
    case Oracle::kPartition:
      if (!(options.eps > 0.0) || !std::isfinite(options.eps)) {
        return Failure(absl::InvalidArgumentError(
            absl::StrCat("--eps must be positive, got ", options.eps)));
      }
      report["eps"] = options.eps;
      report["guarantee"] = "leakage - eps <= oracle <= leakage";
      break;
    case Oracle::kFunctions:
      if (n > kMaxFunctionOracleAlphabet) {
        return Failure(absl::ResourceExhaustedError(absl::StrCat(
            "function oracle cap exceeded: input alphabet has ", n,
            " symbols, cap is ", kMaxFunctionOracleAlphabet)));
      }
      if (options.max_groups) {
        if (*options.max_groups == 0) {
          return Failure(
              absl::InvalidArgumentError("--max-groups must be positive"));
        }
        max_groups = *options.max_groups;
      }
      lower_bound = max_groups < n;
      report["max_groups"] = max_groups;
      report["guarantee"] = lower_bound ? "oracle <= leakage (lower bound)"
                                        : "oracle equals leakage";
      break;
    case Oracle::kStrategies: {
      if (options.gains_path) {
        auto loaded = LoadGains(*options.gains_path, model->prior());
        if (!loaded.ok()) return Failure(loaded.status());
        gains = *std::move(loaded);
      } else {
        if (options.random_gains < 1) {
          return Failure(
              absl::InvalidArgumentError("--random-gains must be positive"));
        }
        gains = RandomGains(model->prior(), options.random_gains,
                            options.common.seed);
      }
      for (const auto& g : gains) {
        if (g.estimate_alphabet().size() > kMaxStrategyActions) {
          return Failure(absl::ResourceExhaustedError(absl::StrCat(
              "strategy check cap exceeded: ", g.estimate_alphabet().size(),
              " estimates, cap is ", kMaxStrategyActions)));
        }
      }
      if (options.resolution < 1 ||
          options.resolution > kMaxSimplexResolution) {
        return Failure(absl::ResourceExhaustedError(absl::StrCat(
            "strategy check cap exceeded: resolution ", options.resolution,
            ", allowed range is [1, ", kMaxSimplexResolution, "]")));
      }
      report["resolution"] = options.resolution;
      report["gain_functions"] = gains.size();
      report["gain_source"] =
          options.gains_path ? *options.gains_path : std::string("random");
      report["guarantee"] =
          "log gain ratio <= leakage and no mixed strategy beats the best "
          "pure one";
      break;
    }
  }

  bool all_ok = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "outcome,p_y,pml,oracle,gap,ok\n";
  for (std::size_t y = 0; y < model->output_alphabet().size(); ++y) {
    const Symbol& symbol = model->output_alphabet()[y];
    const double py = model->marginal()[y];
    const LeakageValue pml = PmlAt(*model, y);
    nlohmann::ordered_json row = {{"outcome", SymbolToJson(symbol)},
                          {"p_y", py},
                          {"pml", LeakageToJson(pml, units)}};
    if (py == 0.0) {
      row["skipped"] = "zero-probability outcome";
      rows.push_back(row);
      absl::StrAppend(&csv, SymbolToString(symbol), ",0,",
                      NumberToText(pml.In(units)), ",,,skipped\n");
      continue;
    }
    double oracle_nats = 0.0;
    bool ok = true;
    absl::Status status;
    switch (options.oracle) {
      case Oracle::kSubset: {
        auto v = SubsetOracleAt(*model, y);
        status = v.status();
        if (v.ok()) {
          oracle_nats = v->nats();
          ok = std::abs(Gap(pml.nats(), oracle_nats)) <= kOracleTolerance;
        }
        break;
      }
      case Oracle::kPartition: {
        auto v = PartitionOracleAt(*model, y, options.eps);
        status = v.status();
        if (v.ok()) {
          oracle_nats = *v;
          const double gap = Gap(pml.nats(), oracle_nats);
          ok = gap >= -kOracleTolerance && gap <= options.eps + kOracleTolerance;
        }
        break;
      }
      case Oracle::kFunctions: {
        auto v = RandomizedFunctionOracleAt(*model, y, max_groups);
        status = v.status();
        if (v.ok()) {
          oracle_nats = v->nats();
          const double gap = Gap(pml.nats(), oracle_nats);
          ok = lower_bound ? gap >= -kOracleTolerance
                           : std::abs(gap) <= kOracleTolerance;
        }
        break;
      }
      case Oracle::kStrategies: {
        double worst = -std::numeric_limits<double>::infinity();
        bool strategies_ok = true;
        for (const auto& g : gains) {
          auto ratio = GainRatioAt(*model, y, g);
          if (!ratio.ok()) {
            status = ratio.status();
            break;
          }
          worst = std::max(worst, std::log(*ratio));
          auto pure = RandomizedStrategyCheckAt(*model, y, g,
                                                options.resolution);
          if (!pure.ok()) {
            status = pure.status();
            break;
          }
          strategies_ok = strategies_ok && *pure;
        }
        if (status.ok()) {
          oracle_nats = worst;
          ok = strategies_ok && Gap(pml.nats(), worst) >= -kOracleTolerance;
          row["pure_strategies_optimal"] = strategies_ok;
        }
        break;
      }
    }
    if (!status.ok()) return Failure(status);
    const LeakageValue oracle = LeakageValue::Nats(oracle_nats);
    const double gap = Gap(pml.In(units), oracle.In(units));
    row["oracle"] = LeakageToJson(oracle, units);
    row["gap"] = NumberToJson(gap);
    row["ok"] = ok;
    if (lower_bound) row["bound"] = "lower";
    rows.push_back(row);
    absl::StrAppend(&csv, SymbolToString(symbol), ",", NumberToText(py), ",",
                    NumberToText(pml.In(units)), ",",
                    NumberToText(oracle.In(units)), ",", NumberToText(gap),
                    ",", ok ? "true" : "false", "\n");
    all_ok = all_ok && ok;
  }
  report["lower_bound"] = lower_bound;
  report["all_ok"] = all_ok;
  CommandResult result;
  result.exit_code = all_ok ? kExitOk : kExitViolation;
  if (!all_ok) result.err = "error: oracle guarantee violated\n";
  if (options.common.format == Format::kCsv) {
    result.out = CsvPreamble(report) + csv;
  } else {
    report["outcomes"] = rows;
    result.out = Render(report);
  }
  return result;
}

// ------------------------------------------------------------- continuous

struct ContinuousOptions {
  CommonOptions common;
  // Inline JSON or a path to a JSON file.
  std::string family;
  double outcome = 0.0;
  std::optional<std::string> grid;
  bool check_grid = false;
};

inline absl::StatusOr<Json> JsonArgument(const std::string& value,
                                                   absl::string_view flag) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && value[first] == '{') {
    return ParseJson(value, flag);
  }
  ASSIGN_OR_RETURN(std::string text, ReadFile(value));
  return ParseJson(text, value);
}

inline CommandResult RunContinuous(const ContinuousOptions& options) {
  auto family_json = JsonArgument(options.family, "--family");
  if (!family_json.ok()) return Failure(family_json.status());
  auto family = ParseFamilySpec(*family_json);
  if (!family.ok()) return Failure(family.status());
  GridSpec grid;
  if (options.grid) {
    auto grid_json = JsonArgument(*options.grid, "--grid");
    if (!grid_json.ok()) return Failure(grid_json.status());
    auto parsed = ParseGridSpec(*grid_json);
    if (!parsed.ok()) return Failure(parsed.status());
    grid = *parsed;
  }
  const Units units = options.common.units;
  auto closed = PmlClosedForm(*family, options.outcome);
  if (!closed.ok()) return Failure(closed.status());

  nlohmann::ordered_json report = Header("continuous", options.common);
  report["truncation_deficits"] = {{"prior", 0.0}};
  report["family"] = FamilySpecToJson(*family);
  report["outcome"] = options.outcome;
  report["closed_form"] = LeakageToJson(*closed, units);
  CommandResult result;
  if (options.check_grid) {
    report["grid"] = GridSpecToJson(grid);
    if (!HasContinuousInput(*family)) {
      const std::string message =
          absl::StrCat("grid check unsupported for integer family ",
                       FamilyName(*family));
      report["grid_check"] = {{"error", message}};
      result.exit_code = kExitValidation;
      result.err = absl::StrCat("error: ", message, "\n");
    } else {
      auto density = ToDensityModel(*family);
      if (!density.ok()) return Failure(density.status());
      auto value = PmlDensity(*density, options.outcome, grid);
      if (!value.ok()) return Failure(value.status());
      const double gap = Gap(closed->In(units), value->value.In(units));
      const bool ok = std::abs(Gap(closed->nats(), value->value.nats())) <=
                      kGridTolerance;
      report["grid_check"] = {{"grid_value", LeakageToJson(value->value, units)},
                              {"gap", NumberToJson(gap)},
                              {"argmax", value->argmax},
                              {"tolerance", kGridTolerance},
                              {"ok", ok}};
      if (!ok) {
        result.exit_code = kExitViolation;
        result.err = "error: grid value disagrees with the closed form\n";
      }
    }
  }
  if (options.common.format == Format::kCsv) {
    std::string csv = CsvPreamble(report) + "outcome,closed_form";
    std::string line = absl::StrCat(NumberToText(options.outcome), ",",
                                    NumberToText(closed->In(units)));
    if (report.contains("grid_check") &&
        report["grid_check"].contains("grid_value")) {
      absl::StrAppend(&csv, ",grid_value,gap");
      const auto& check = report["grid_check"];
      absl::StrAppend(&line, ",",
                      check["grid_value"].is_string()
                          ? check["grid_value"].get<std::string>()
                          : check["grid_value"].dump(),
                      ",", check["gap"].dump());
    }
    result.out = absl::StrCat(csv, "\n", line, "\n");
  } else {
    result.out = Render(report);
  }
  return result;
}

// ------------------------------------------------------------------- tail

struct TailOptions {
  CommonOptions common;
  std::string channel_path;
  std::optional<std::string> prior_path;
  // Thresholds in the selected units.
  std::vector<double> eps;
};

inline CommandResult RunTail(const TailOptions& options) {
  auto model = LoadModel(options.channel_path, options.prior_path);
  if (!model.ok()) return Failure(model.status());
  const Units units = options.common.units;
  const double to_nats = units == Units::kNats ? 1.0 : std::numbers::ln2;
  const LeakageProfile profile = ComputeLeakageProfile(*model, ThreadsFromEnv());

  nlohmann::ordered_json report = Header("tail", options.common);
  report["truncation_deficits"] = DeficitsToJson(*model);
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  std::string csv = "eps,probability\n";
  for (double eps : options.eps) {
    auto p = TailProbability(profile, eps * to_nats);
    if (!p.ok()) return Failure(p.status());
    table.push_back({{"eps", eps}, {"probability", *p}});
    absl::StrAppend(&csv, NumberToText(eps), ",", NumberToText(*p), "\n");
  }
  nlohmann::ordered_json cdf = nlohmann::ordered_json::array();
  for (const CdfPoint& point : LeakageCdf(profile)) {
    cdf.push_back({{"leakage", LeakageToJson(point.leakage, units)},
                   {"cumulative", point.cumulative}});
  }
  if (options.common.format == Format::kCsv) {
    return {kExitOk, CsvPreamble(report) + csv, ""};
  }
  report["tail"] = table;
  report["cdf"] = cdf;
  return {kExitOk, Render(report), ""};
}

// ----------------------------------------------------------------- driver

// Parses argv, runs the selected command and writes its report to --output
// when given. Output is returned, not printed.
inline CommandResult Run(std::vector<std::string> args) {
  CLI::App app{"pmlkit: pointwise maximal leakage"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions common;
  std::string units = "nats";
  std::string format = "json";
  std::optional<std::string> output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--units", units, "nats or bits")
        ->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--output,-o", output, "write the report to this file");
  };

  ComputeOptions compute;
  CLI::App* compute_cmd =
      app.add_subcommand("compute", "leakage profile of a discrete model");
  compute_cmd->add_option("--channel", compute.channel_path, "channel file")
      ->required();
  compute_cmd->add_option("--prior", compute.prior_path, "prior file");
  compute_cmd->add_option("--outcome", compute.outcome, "single outcome");
  add_common(compute_cmd);

  VerifyOptions verify;
  std::string oracle = "subset";
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check leakage against an oracle");
  verify_cmd->add_option("--channel", verify.channel_path, "channel file")
      ->required();
  verify_cmd->add_option("--prior", verify.prior_path, "prior file");
  verify_cmd->add_option("--oracle", oracle, "oracle")
      ->check(CLI::IsMember({"subset", "partition", "functions", "strategies"}));
  verify_cmd->add_option("--eps", verify.eps, "partition resolution (nats)");
  verify_cmd->add_option("--max-groups", verify.max_groups,
                         "group cap for the functions oracle");
  verify_cmd->add_option("--resolution", verify.resolution,
                         "simplex grid resolution for the strategies oracle");
  verify_cmd->add_option("--gains", verify.gains_path,
                         "gain functions for the strategies oracle");
  verify_cmd->add_option("--random-gains", verify.random_gains,
                         "number of seeded random gain functions");
  add_common(verify_cmd);

  ContinuousOptions continuous;
  CLI::App* continuous_cmd =
      app.add_subcommand("continuous", "closed-form leakage for a family");
  continuous_cmd
      ->add_option("--family", continuous.family, "family spec, JSON or file")
      ->required();
  continuous_cmd->add_option("--outcome", continuous.outcome, "outcome y")
      ->required();
  continuous_cmd->add_option("--grid", continuous.grid,
                             "grid spec, JSON or file");
  continuous_cmd->add_flag("--check-grid", continuous.check_grid,
                           "also evaluate on the grid");
  add_common(continuous_cmd);

  TailOptions tail;
  CLI::App* tail_cmd =
      app.add_subcommand("tail", "tail probabilities of the leakage");
  tail_cmd->add_option("--channel", tail.channel_path, "channel file")
      ->required();
  tail_cmd->add_option("--prior", tail.prior_path, "prior file");
  tail_cmd->add_option("--eps", tail.eps, "thresholds, in the chosen units")
      ->required();
  add_common(tail_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? kExitOk : kExitValidation, out.str(), err.str()};
  }
  common.units = units == "bits" ? Units::kBits : Units::kNats;
  common.format = format == "csv" ? Format::kCsv : Format::kJson;

  CommandResult result;
  if (*compute_cmd) {
    compute.common = common;
    result = RunCompute(compute);
  } else if (*verify_cmd) {
    verify.common = common;
    verify.oracle = oracle == "partition"    ? Oracle::kPartition
                    : oracle == "functions"  ? Oracle::kFunctions
                    : oracle == "strategies" ? Oracle::kStrategies
                                             : Oracle::kSubset;
    result = RunVerify(verify);
  } else if (*continuous_cmd) {
    continuous.common = common;
    result = RunContinuous(continuous);
  } else {
    tail.common = common;
    result = RunTail(tail);
  }
  if (output && !result.out.empty()) {
    std::ofstream file(*output, std::ios::binary);
    if (!file) {
      result.err += absl::StrCat("error: cannot write ", *output, "\n");
      if (result.exit_code == kExitOk) result.exit_code = kExitValidation;
    } else {
      file << result.out;
      result.out.clear();
    }
  }
  return result;
}

}  // namespace pmlkit::cli

#endif  // PMLKIT_CLI_H_
