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

// Reading models from files.
//
// Channel file, JSON:
//
//   {"alphabet_x": [...], "alphabet_y": [...], "prior": [...],
//    "channel": [[...], ...]}
//
// with channel[i][j] = P(Y = alphabet_y[j] | X = alphabet_x[i]). "prior" may
// be omitted when a separate prior file is given. Optional keys
// "prior_truncation_deficit" (number) and "channel_truncation_deficits" (one
// number per row) record mass dropped by truncating countable laws.
//
// Channel file, CSV: a header row of output symbols, then one row per input
// symbol. A row may start with its input symbol (one more field than the
// header); otherwise input symbols are 0, 1, 2, ...
//
// Prior file: a JSON array of numbers, a JSON object with "prior" and
// optionally "alphabet_x" and "truncation_deficit", or a CSV with an optional
// header row of input symbols followed by one row of probabilities.
//
// Numbers are parsed as locale-independent decimal floating point.

#ifndef PMLKIT_MODEL_IO_H_
#define PMLKIT_MODEL_IO_H_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"
#include "pmlkit/closed_form.h"
#include "pmlkit/density.h"
#include "pmlkit/distribution.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

using Json = nlohmann::json;

inline absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Parses JSON text, reporting syntax errors as "<source>:<line>:<column>".
inline absl::StatusOr<Json> ParseJson(absl::string_view text,
                                      absl::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(
        e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ...: "
    // prefix; the position is reported in line/column form instead.
    if (auto colon = what.rfind(": "); colon != std::string::npos) {
      what = what.substr(colon + 2);
    }
    return absl::InvalidArgumentError(
        absl::StrCat(source, ":", line, ":", column, ": parse error: ", what));
  }
}

namespace internal {

inline absl::StatusOr<Symbol> SymbolFromJson(const Json& j,
                                             absl::string_view where) {
  if (j.is_number_integer()) return Symbol(j.get<std::int64_t>());
  if (j.is_string()) return Symbol(j.get<std::string>());
  return absl::InvalidArgumentError(absl::StrCat(
      where, ": symbols must be integers or strings, got ", j.dump()));
}

inline absl::StatusOr<Alphabet> AlphabetFromJson(const Json& j,
                                                 absl::string_view where) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(where, " must be an array"));
  }
  std::vector<Symbol> symbols;
  for (const Json& s : j) {
    ASSIGN_OR_RETURN(Symbol symbol, SymbolFromJson(s, where));
    symbols.push_back(std::move(symbol));
  }
  auto alphabet = Alphabet::Create(std::move(symbols));
  if (!alphabet.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, ": ", alphabet.status().message()));
  }
  return alphabet;
}

inline absl::StatusOr<std::vector<double>> NumbersFromJson(
    const Json& j, absl::string_view where) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(where, " must be an array"));
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      return absl::InvalidArgumentError(absl::StrCat(
          where, "[", i, "] must be a number, got ", j[i].dump()));
    }
    values.push_back(j[i].get<double>());
  }
  return values;
}

inline absl::StatusOr<double> ParseDouble(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a decimal number"));
  }
  return value;
}

inline Symbol SymbolFromText(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec == std::errc() && end == text.data() + text.size() && !text.empty()) {
    return value;
  }
  return std::string(text);
}

// Non-empty lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, absl::string_view>> CsvLines(
    absl::string_view text) {
  std::vector<std::pair<std::size_t, absl::string_view>> lines;
  std::size_t number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

}  // namespace internal

// A prior read from its own file. `alphabet` is empty when the file carries
// probabilities only.
struct PriorSpec {
  std::optional<Alphabet> alphabet;
  std::vector<double> probs;
  double truncation_deficit = 0.0;
};

// Channel plus, when the file carries one, the prior.
struct ChannelSpec {
  DiscreteChannel channel;
  std::optional<PriorSpec> prior;
};

inline absl::StatusOr<ChannelSpec> ParseChannelJson(absl::string_view text,
                                                    absl::string_view source) {
  ASSIGN_OR_RETURN(Json j, ParseJson(text, source));
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": expected a JSON object"));
  }
  for (const char* key : {"alphabet_x", "alphabet_y", "channel"}) {
    if (!j.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ": missing key \"", key, "\""));
    }
  }
  ASSIGN_OR_RETURN(Alphabet input,
                   internal::AlphabetFromJson(j["alphabet_x"], "alphabet_x"));
  ASSIGN_OR_RETURN(Alphabet output,
                   internal::AlphabetFromJson(j["alphabet_y"], "alphabet_y"));
  const Json& channel = j["channel"];
  if (!channel.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": \"channel\" must be an array of rows"));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < channel.size(); ++i) {
    ASSIGN_OR_RETURN(std::vector<double> row,
                     internal::NumbersFromJson(channel[i],
                                               absl::StrCat("channel[", i, "]")));
    if (row.size() != output.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ": channel[", i, "] has ", row.size(), " entries, expected ",
          output.size(), " (one per alphabet_y symbol)"));
    }
    rows.push_back(std::move(row));
  }
  std::vector<double> deficits;
  if (j.contains("channel_truncation_deficits")) {
    ASSIGN_OR_RETURN(deficits,
                     internal::NumbersFromJson(j["channel_truncation_deficits"],
                                               "channel_truncation_deficits"));
  }
  auto parsed = DiscreteChannel::Create(input, std::move(output),
                                        std::move(rows), std::move(deficits));
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": ", parsed.status().message()));
  }
  ChannelSpec spec{*std::move(parsed), std::nullopt};
  if (j.contains("prior")) {
    PriorSpec prior;
    prior.alphabet = input;
    ASSIGN_OR_RETURN(prior.probs, internal::NumbersFromJson(j["prior"], "prior"));
    if (j.contains("prior_truncation_deficit")) {
      if (!j["prior_truncation_deficit"].is_number()) {
        return absl::InvalidArgumentError(absl::StrCat(
            source, ": \"prior_truncation_deficit\" must be a number"));
      }
      prior.truncation_deficit = j["prior_truncation_deficit"].get<double>();
    }
    spec.prior = std::move(prior);
  }
  return spec;
}

inline absl::StatusOr<ChannelSpec> ParseChannelCsv(absl::string_view text,
                                                   absl::string_view source) {
  const auto lines = internal::CsvLines(text);
  if (lines.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(source, ": empty file"));
  }
  std::vector<Symbol> outputs;
  for (absl::string_view field : absl::StrSplit(lines[0].second, ',')) {
    outputs.push_back(internal::SymbolFromText(field));
  }
  auto output = Alphabet::Create(std::move(outputs));
  if (!output.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        source, ":", lines[0].first, ": header: ", output.status().message()));
  }
  const std::size_t m = output->size();
  std::vector<Symbol> inputs;
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [line_number, line] = lines[r];
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    std::size_t first = 0;
    if (fields.size() == m + 1) {
      inputs.push_back(internal::SymbolFromText(fields[0]));
      first = 1;
    } else if (fields.size() == m) {
      inputs.emplace_back(static_cast<std::int64_t>(r - 1));
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ":", line_number, ": expected ", m, " probabilities (or ",
          m + 1, " fields with a leading input symbol), got ", fields.size(),
          " fields"));
    }
    std::vector<double> row;
    for (std::size_t c = first; c < fields.size(); ++c) {
      auto value = internal::ParseDouble(fields[c]);
      if (!value.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat(source, ":", line_number, ":", c + 1, ": ",
                         value.status().message()));
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  auto input = Alphabet::Create(std::move(inputs));
  if (!input.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": input symbols: ", input.status().message()));
  }
  auto channel = DiscreteChannel::Create(*std::move(input), *std::move(output),
                                         std::move(rows));
  if (!channel.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": ", channel.status().message()));
  }
  return ChannelSpec{*std::move(channel), std::nullopt};
}

inline absl::StatusOr<PriorSpec> ParsePrior(absl::string_view text,
                                            absl::string_view source,
                                            bool csv) {
  PriorSpec prior;
  if (!csv) {
    ASSIGN_OR_RETURN(Json j, ParseJson(text, source));
    const Json* probs = &j;
    if (j.is_object()) {
      if (!j.contains("prior")) {
        return absl::InvalidArgumentError(
            absl::StrCat(source, ": missing key \"prior\""));
      }
      probs = &j["prior"];
      if (j.contains("alphabet_x")) {
        ASSIGN_OR_RETURN(prior.alphabet, internal::AlphabetFromJson(
                                             j["alphabet_x"], "alphabet_x"));
      }
      if (j.contains("truncation_deficit")) {
        prior.truncation_deficit = j["truncation_deficit"].get<double>();
      }
    }
    ASSIGN_OR_RETURN(prior.probs, internal::NumbersFromJson(*probs, "prior"));
    return prior;
  }
  const auto lines = internal::CsvLines(text);
  if (lines.empty() || lines.size() > 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        source, ": expected an optional header row and one row of "
                "probabilities"));
  }
  if (lines.size() == 2) {
    std::vector<Symbol> symbols;
    for (absl::string_view field : absl::StrSplit(lines[0].second, ',')) {
      symbols.push_back(internal::SymbolFromText(field));
    }
    ASSIGN_OR_RETURN(prior.alphabet, Alphabet::Create(std::move(symbols)));
  }
  const auto [line_number, line] = lines.back();
  std::size_t column = 0;
  for (absl::string_view field : absl::StrSplit(line, ',')) {
    ++column;
    auto value = internal::ParseDouble(field);
    if (!value.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ":", line_number, ":", column, ": ",
                       value.status().message()));
    }
    prior.probs.push_back(*value);
  }
  return prior;
}

inline bool IsCsvPath(absl::string_view path) {
  return path.size() >= 4 &&
         absl::AsciiStrToLower(path.substr(path.size() - 4)) == ".csv";
}

// Joins a channel with its prior: the prior file when given, else the prior
// embedded in the channel file.
inline absl::StatusOr<JointModel> AssembleModel(
    ChannelSpec channel, std::optional<PriorSpec> prior_file) {
  std::optional<PriorSpec> prior = std::move(prior_file);
  if (!prior) prior = std::move(channel.prior);
  if (!prior) {
    return absl::InvalidArgumentError(
        "no prior: the channel file has no \"prior\" and no prior file was "
        "given");
  }
  const Alphabet& input = channel.channel.input_alphabet();
  if (prior->alphabet && !(*prior->alphabet == input)) {
    return absl::InvalidArgumentError(
        "dimension mismatch: prior alphabet differs from channel input "
        "alphabet");
  }
  auto dist = DiscreteDistribution::Create(input, std::move(prior->probs),
                                           prior->truncation_deficit);
  if (!dist.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prior: ", dist.status().message()));
  }
  return JointModel::Create(*std::move(dist), std::move(channel.channel));
}

inline absl::StatusOr<JointModel> LoadModel(
    const std::string& channel_path,
    const std::optional<std::string>& prior_path = std::nullopt) {
  ASSIGN_OR_RETURN(std::string channel_text, ReadFile(channel_path));
  ASSIGN_OR_RETURN(ChannelSpec channel,
                   IsCsvPath(channel_path)
                       ? ParseChannelCsv(channel_text, channel_path)
                       : ParseChannelJson(channel_text, channel_path));
  std::optional<PriorSpec> prior;
  if (prior_path) {
    ASSIGN_OR_RETURN(std::string prior_text, ReadFile(*prior_path));
    ASSIGN_OR_RETURN(prior, ParsePrior(prior_text, *prior_path,
                                       IsCsvPath(*prior_path)));
  }
  return AssembleModel(std::move(channel), std::move(prior));
}

// {"family": "...", "params": {...}}.
inline absl::StatusOr<ClosedFormModel> ParseFamilySpec(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    return absl::InvalidArgumentError(
        "family spec must be an object with a string \"family\"");
  }
  const std::string family = j["family"].get<std::string>();
  const Json params = j.contains("params") ? j["params"] : Json::object();
  if (!params.is_object()) {
    return absl::InvalidArgumentError("\"params\" must be an object");
  }
  absl::Status missing;
  auto get = [&](const char* name) {
    if (!params.contains(name) || !params[name].is_number()) {
      if (missing.ok()) {
        missing = absl::InvalidArgumentError(absl::StrCat(
            "parameter error (", family, "): missing numeric parameter \"",
            name, "\""));
      }
      return 0.0;
    }
    return params[name].get<double>();
  };
  ClosedFormModel model;
  if (family == "additive_gaussian") {
    model = AdditiveGaussian{get("sigma_x"), get("sigma_n")};
  } else if (family == "bivariate_gaussian") {
    model = BivariateGaussian{get("sigma_x"), get("sigma_y"), get("rho")};
  } else if (family == "gaussian_mixture") {
    model = GaussianMixture{get("sigma")};
  } else if (family == "poisson_binomial") {
    model = PoissonBinomial{get("lambda"), get("p")};
  } else if (family == "geometric_binary") {
    model = GeometricBinary{get("p"), get("q")};
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown family \"", family, "\""));
  }
  RETURN_IF_ERROR(missing);
  RETURN_IF_ERROR(ValidateClosedForm(model));
  return model;
}

inline Json FamilySpecToJson(const ClosedFormModel& model) {
  Json params;
  if (const auto* m = std::get_if<AdditiveGaussian>(&model)) {
    params = {{"sigma_x", m->sigma_x}, {"sigma_n", m->sigma_n}};
  } else if (const auto* m = std::get_if<BivariateGaussian>(&model)) {
    params = {{"sigma_x", m->sigma_x}, {"sigma_y", m->sigma_y}, {"rho", m->rho}};
  } else if (const auto* m = std::get_if<GaussianMixture>(&model)) {
    params = {{"sigma", m->sigma}};
  } else if (const auto* m = std::get_if<PoissonBinomial>(&model)) {
    params = {{"lambda", m->lambda}, {"p", m->p}};
  } else if (const auto* m = std::get_if<GeometricBinary>(&model)) {
    params = {{"p", m->p}, {"q", m->q}};
  }
  return {{"family", std::string(FamilyName(model))}, {"params", params}};
}

// {"points": N, "quantile_clip": c, "refine": r}; absent keys keep `base`.
inline absl::StatusOr<GridSpec> ParseGridSpec(const Json& j,
                                              GridSpec base = {}) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("grid spec must be a JSON object");
  }
  try {
    if (j.contains("points")) base.points = j["points"].get<int>();
    if (j.contains("quantile_clip")) {
      base.quantile_clip = j["quantile_clip"].get<double>();
    }
    if (j.contains("refine")) base.refine = j["refine"].get<int>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("grid spec: ", e.what()));
  }
  RETURN_IF_ERROR(ValidateGridSpec(base));
  return base;
}

inline Json GridSpecToJson(const GridSpec& grid) {
  return {{"points", grid.points},
          {"quantile_clip", grid.quantile_clip},
          {"refine", grid.refine}};
}

}  // namespace pmlkit

#endif  // PMLKIT_MODEL_IO_H_
