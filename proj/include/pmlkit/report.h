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

// JSON and CSV rendering of leakage results. Infinite leakages are written as
// the string "inf" in JSON and as inf in CSV.

#ifndef PMLKIT_REPORT_H_
#define PMLKIT_REPORT_H_

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "nlohmann/json.hpp"
#include "pmlkit/alphabet.h"
#include "pmlkit/leakage.h"

namespace pmlkit {

// Real number, with +-inf as "inf" / "-inf".
inline nlohmann::ordered_json NumberToJson(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline nlohmann::ordered_json LeakageToJson(const LeakageValue& value, Units units) {
  return NumberToJson(value.In(units));
}

inline nlohmann::ordered_json SymbolToJson(const Symbol& symbol) {
  if (const auto* i = std::get_if<std::int64_t>(&symbol)) return *i;
  return std::get<std::string>(symbol);
}

// Shortest text that reads back to the same double.
inline std::string NumberToText(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return nlohmann::ordered_json(v).dump();
}

// {"units", "outcomes", "leakage", "p_y", "maximal_leakage", "mean_leakage"}
// with the three arrays in output-alphabet order.
inline nlohmann::ordered_json ProfileToJson(const LeakageProfile& profile,
                                            Units units) {
  nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
  nlohmann::ordered_json leakage = nlohmann::ordered_json::array();
  nlohmann::ordered_json p_y = nlohmann::ordered_json::array();
  for (std::size_t y = 0; y < profile.size(); ++y) {
    outcomes.push_back(SymbolToJson(profile.outcomes()[y]));
    leakage.push_back(LeakageToJson(profile.leakages()[y], units));
    p_y.push_back(profile.weights()[y]);
  }
  return {{"units", std::string(UnitsName(units))},
          {"outcomes", outcomes},
          {"leakage", leakage},
          {"p_y", p_y},
          {"maximal_leakage", LeakageToJson(MaximalLeakage(profile), units)},
          {"mean_leakage", LeakageToJson(MeanLeakage(profile), units)}};
}

inline std::string ProfileToCsv(const LeakageProfile& profile, Units units) {
  std::string csv = "outcome,p_y,leakage\n";
  for (std::size_t y = 0; y < profile.size(); ++y) {
    absl::StrAppend(&csv, SymbolToString(profile.outcomes()[y]), ",",
                    NumberToText(profile.weights()[y]), ",",
                    NumberToText(profile.leakages()[y].In(units)), "\n");
  }
  return csv;
}

}  // namespace pmlkit

#endif  // PMLKIT_REPORT_H_
