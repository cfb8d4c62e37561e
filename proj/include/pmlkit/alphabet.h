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

#ifndef PMLKIT_ALPHABET_H_
#define PMLKIT_ALPHABET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace pmlkit {

// A label of an alphabet element. Integer labels are kept as integers so that
// metric gains (see MakeApproxGain) can use them.
using Symbol = std::variant<std::int64_t, std::string>;

inline std::string SymbolToString(const Symbol& symbol) {
  if (const auto* i = std::get_if<std::int64_t>(&symbol)) {
    return absl::StrCat(*i);
  }
  return std::get<std::string>(symbol);
}

// An ordered, non-empty list of distinct labels. Position in the list is the
// canonical index used by every probability vector over the alphabet.
class Alphabet {
 public:
  static absl::StatusOr<Alphabet> Create(std::vector<Symbol> symbols) {
    if (symbols.empty()) {
      return absl::InvalidArgumentError("alphabet must not be empty");
    }
    auto index = std::make_shared<std::map<Symbol, std::size_t>>();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (!index->emplace(symbols[i], i).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "duplicate alphabet symbol '", SymbolToString(symbols[i]), "'"));
      }
    }
    return Alphabet(std::move(symbols), std::move(index));
  }

  // {first, first + 1, ..., first + count - 1}.
  static Alphabet Integers(std::int64_t first, std::size_t count) {
    std::vector<Symbol> symbols;
    symbols.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      symbols.emplace_back(first + static_cast<std::int64_t>(i));
    }
    return *Create(std::move(symbols));
  }

  std::size_t size() const { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

  absl::StatusOr<std::size_t> IndexOf(const Symbol& symbol) const {
    auto it = index_->find(symbol);
    if (it == index_->end()) {
      return absl::NotFoundError(
          absl::StrCat("unknown symbol '", SymbolToString(symbol), "'"));
    }
    return it->second;
  }

  bool AllIntegers() const {
    for (const Symbol& s : symbols_) {
      if (!std::holds_alternative<std::int64_t>(s)) return false;
    }
    return true;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  Alphabet(std::vector<Symbol> symbols,
           std::shared_ptr<const std::map<Symbol, std::size_t>> index)
      : symbols_(std::move(symbols)), index_(std::move(index)) {}

  std::vector<Symbol> symbols_;
  // Shared so that copies of an alphabet stay cheap; never mutated.
  std::shared_ptr<const std::map<Symbol, std::size_t>> index_;
};

}  // namespace pmlkit

#endif  // PMLKIT_ALPHABET_H_
