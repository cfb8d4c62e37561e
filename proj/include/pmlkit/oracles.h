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

// Brute-force adversaries for pointwise maximal leakage.
//
// Each oracle evaluates leakage through an operational threat model (a gain
// function, a guessed function of X, a set of events) instead of the closed
// posterior/prior ratio in leakage.h, so the two can be checked against each
// other. Enumeration caps are hard errors (kResourceExhausted); an oracle
// never searches a silently truncated space.

#ifndef PMLKIT_ORACLES_H_
#define PMLKIT_ORACLES_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pmlkit/distribution.h"
#include "pmlkit/leakage.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

inline constexpr std::size_t kMaxSubsetOracleAlphabet = 20;
inline constexpr std::size_t kMaxFunctionOracleAlphabet = 10;
inline constexpr std::size_t kMaxStrategyActions = 4;
inline constexpr int kMaxSimplexResolution = 50;

// A non-negative gain table g(x, w) over input symbols x and estimates w,
// with the prior optimum max_w E[g(X, w)] cached.
class GainFunction {
 public:
  // `table[x][w]`; `prior` fixes the cached prior optimum.
  static absl::StatusOr<GainFunction> Create(
      Alphabet estimates, std::vector<std::vector<double>> table,
      const DiscreteDistribution& prior) {
    if (table.size() != prior.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "dimension mismatch: gain table has %d rows, prior has %d symbols",
          table.size(), prior.size()));
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x].size() != estimates.size()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "dimension mismatch: gain row %d has %d entries for %d estimates",
            x, table[x].size(), estimates.size()));
      }
      for (double g : table[x]) {
        if (!std::isfinite(g) || g < 0.0) {
          return absl::InvalidArgumentError(
              absl::StrCat("gain values must be finite and >= 0, got ", g));
        }
      }
    }
    GainFunction gain(prior.alphabet(), std::move(estimates),
                      std::move(table));
    gain.prior_gain_sup_ = gain.BestExpectedGain(prior.probs());
    return gain;
  }

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& estimate_alphabet() const { return estimates_; }
  double operator()(std::size_t x, std::size_t w) const { return table_[x][w]; }
  double prior_gain_sup() const { return prior_gain_sup_; }

  // E_P[g(X, w)].
  double ExpectedGain(std::span<const double> p, std::size_t w) const {
    double sum = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) sum += table_[x][w] * p[x];
    return sum;
  }

  // max_w E_P[g(X, w)], the best pure action.
  double BestExpectedGain(std::span<const double> p) const {
    double best = 0.0;
    for (std::size_t w = 0; w < estimates_.size(); ++w) {
      best = std::max(best, ExpectedGain(p, w));
    }
    return best;
  }

 private:
  GainFunction(Alphabet input, Alphabet estimates,
               std::vector<std::vector<double>> table)
      : input_(std::move(input)),
        estimates_(std::move(estimates)),
        table_(std::move(table)) {}

  Alphabet input_;
  Alphabet estimates_;
  std::vector<std::vector<double>> table_;
  double prior_gain_sup_ = 0.0;
};

namespace internal {

inline absl::Status RequirePositiveOutcome(const JointModel& model,
                                           std::size_t y) {
  if (model.marginal()[y] == 0.0) {
    return absl::FailedPreconditionError(
        absl::StrCat("outcome '", SymbolToString(model.output_alphabet()[y]),
                     "' has probability zero"));
  }
  return absl::OkStatus();
}

inline absl::Status RequireGainOver(const JointModel& model,
                                    const GainFunction& g) {
  if (!(g.input_alphabet() == model.input_alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: gain function and model have different input "
        "alphabets");
  }
  return absl::OkStatus();
}

}  // namespace internal

// [max_w E[g(X, w) | Y = y]] / [max_w E[g(X, w)]]: the multiplicative
// increase in the best expected gain after observing y. A zero prior optimum
// gives +inf when the posterior optimum is positive, and 1 when it is zero.
inline absl::StatusOr<double> GainRatioAt(const JointModel& model,
                                          std::size_t y,
                                          const GainFunction& g) {
  RETURN_IF_ERROR(internal::RequireGainOver(model, g));
  RETURN_IF_ERROR(internal::RequirePositiveOutcome(model, y));
  const double numerator = g.BestExpectedGain(PosteriorAt(model, y).probs());
  const double denominator = g.BestExpectedGain(model.prior().probs());
  if (denominator == 0.0) {
    return numerator > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return numerator / denominator;
}

inline absl::StatusOr<double> GainRatio(const JointModel& model,
                                        const Symbol& y,
                                        const GainFunction& g) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return GainRatioAt(model, index, g);
}

// Expected posterior gain of the randomized strategy that plays estimate w
// with probability weights[w].
inline absl::StatusOr<double> MixedStrategyGain(const JointModel& model,
                                                std::size_t y,
                                                const GainFunction& g,
                                                std::span<const double> weights) {
  RETURN_IF_ERROR(internal::RequireGainOver(model, g));
  if (weights.size() != g.estimate_alphabet().size()) {
    return absl::InvalidArgumentError("one weight per estimate is required");
  }
  const DiscreteDistribution posterior = PosteriorAt(model, y);
  double gain = 0.0;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    gain += weights[w] * g.ExpectedGain(posterior.probs(), w);
  }
  return gain;
}

// One cell B_w = {x : e^{w eps} <= f(x) < e^{(w+1) eps}} of the level-set
// partition of the posterior/prior ratio f. `index` is empty for w = -inf,
// the cell where f = 0.
struct PartitionCell {
  std::optional<std::int64_t> index;
  std::vector<std::size_t> members;
  double prior_mass = 0.0;
  double posterior_mass = 0.0;
};

// The partition gain g*(x, w) = 1{x in B_w} / P_X(B_w), and 0 on cells of
// prior mass zero.
struct PartitionGain {
  double epsilon = 0.0;
  std::vector<PartitionCell> cells;  // Ascending in index, -inf first.
  GainFunction gain;
};

// Level-set index w with w * eps <= log_ratio < (w + 1) * eps.
inline std::int64_t LevelIndex(double log_ratio, double epsilon) {
  auto w = static_cast<std::int64_t>(std::floor(log_ratio / epsilon));
  while (static_cast<double>(w) * epsilon > log_ratio) --w;
  while (static_cast<double>(w + 1) * epsilon <= log_ratio) ++w;
  return w;
}

inline absl::StatusOr<PartitionGain> BuildPartitionGain(const JointModel& model,
                                                        std::size_t y,
                                                        double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  const DiscreteDistribution& prior = model.prior();
  const DiscreteDistribution posterior = PosteriorAt(model, y);
  ASSIGN_OR_RETURN(AbsoluteContinuity ac,
                   CheckAbsoluteContinuity(posterior, prior));
  if (!ac.holds) {
    return absl::FailedPreconditionError(absl::StrCat(
        "posterior is not absolutely continuous with respect to the prior at "
        "symbol '",
        SymbolToString(prior.alphabet()[*ac.witness]),
        "'; leakage is infinite, use the subset oracle"));
  }
  std::map<std::optional<std::int64_t>, PartitionCell> by_index;
  for (std::size_t x = 0; x < prior.size(); ++x) {
    std::optional<std::int64_t> index;
    if (prior[x] == 0.0) {
      index = 0;  // f = 0/0 = 1.
    } else if (posterior[x] > 0.0) {
      index = LevelIndex(std::log(posterior[x]) - std::log(prior[x]), epsilon);
    }
    PartitionCell& cell = by_index[index];
    cell.index = index;
    cell.members.push_back(x);
    cell.prior_mass += prior[x];
    cell.posterior_mass += posterior[x];
  }
  std::vector<PartitionCell> cells;
  std::vector<Symbol> labels;
  for (auto& [index, cell] : by_index) {
    labels.push_back(index ? Symbol(*index) : Symbol(std::string("-inf")));
    cells.push_back(std::move(cell));
  }
  std::vector<std::vector<double>> table(
      prior.size(), std::vector<double>(cells.size(), 0.0));
  for (std::size_t w = 0; w < cells.size(); ++w) {
    if (cells[w].prior_mass == 0.0) continue;
    for (std::size_t x : cells[w].members) {
      table[x][w] = 1.0 / cells[w].prior_mass;
    }
  }
  ASSIGN_OR_RETURN(Alphabet estimates, Alphabet::Create(std::move(labels)));
  ASSIGN_OR_RETURN(GainFunction gain,
                   GainFunction::Create(std::move(estimates), std::move(table),
                                        prior));
  return PartitionGain{epsilon, std::move(cells), std::move(gain)};
}

// log of the gain ratio achieved by the partition gain at resolution eps.
// Lies in [pml - eps, pml] whenever the posterior is absolutely continuous
// with respect to the prior.
inline absl::StatusOr<double> PartitionOracleAt(const JointModel& model,
                                                std::size_t y,
                                                double epsilon) {
  RETURN_IF_ERROR(internal::RequirePositiveOutcome(model, y));
  ASSIGN_OR_RETURN(PartitionGain partition,
                   BuildPartitionGain(model, y, epsilon));
  ASSIGN_OR_RETURN(double ratio, GainRatioAt(model, y, partition.gain));
  return std::log(ratio);
}

inline absl::StatusOr<double> PartitionOracle(const JointModel& model,
                                              const Symbol& y,
                                              double epsilon) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return PartitionOracleAt(model, index, epsilon);
}

// log max over non-empty events A of P(A) / Q(A), by enumeration of all
// 2^n - 1 events; +inf when some event has Q(A) = 0 < P(A).
inline absl::StatusOr<LeakageValue> SubsetDivergence(
    const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (!(p.alphabet() == q.alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: distributions are over different alphabets");
  }
  const std::size_t n = p.size();
  if (n > kMaxSubsetOracleAlphabet) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "subset oracle cap exceeded: alphabet has %d symbols, cap is %d", n,
        kMaxSubsetOracleAlphabet));
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> p_mass(count, 0.0);
  std::vector<double> q_mass(count, 0.0);
  double best = 0.0;
  bool any = false;
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const auto bit = static_cast<std::size_t>(std::countr_zero(mask));
    p_mass[mask] = p_mass[mask ^ low] + p[bit];
    q_mass[mask] = q_mass[mask ^ low] + q[bit];
    double ratio;
    if (q_mass[mask] == 0.0) {
      if (p_mass[mask] > 0.0) return LeakageValue::Infinite();
      ratio = 1.0;
    } else {
      ratio = p_mass[mask] / q_mass[mask];
    }
    if (!any || ratio > best) best = ratio;
    any = true;
  }
  return LeakageValue::Nats(std::log(best));
}

// The subset form of the leakage: SubsetDivergence(P_{X|Y=y}, P_X).
inline absl::StatusOr<LeakageValue> SubsetOracleAt(const JointModel& model,
                                                   std::size_t y) {
  const std::size_t n = model.input_alphabet().size();
  if (n > kMaxSubsetOracleAlphabet) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "subset oracle cap exceeded: input alphabet has %d symbols, cap is %d",
        n, kMaxSubsetOracleAlphabet));
  }
  RETURN_IF_ERROR(internal::RequirePositiveOutcome(model, y));
  return SubsetDivergence(PosteriorAt(model, y), model.prior());
}

inline absl::StatusOr<LeakageValue> SubsetOracle(const JointModel& model,
                                                 const Symbol& y) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return SubsetOracleAt(model, index);
}

// Leakage of the guessing game on W = grouping(X) played with the shattering
// channel: log max_i P_{W|Y=y}(i) / P_W(i). `grouping[x]` is the group of
// input symbol x, in [0, group_count).
inline absl::StatusOr<LeakageValue> ShatteringValueAt(
    const JointModel& model, std::size_t y,
    std::span<const std::size_t> grouping, std::size_t group_count) {
  const std::size_t n = model.input_alphabet().size();
  if (grouping.size() != n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grouping must be total: %d entries for %d input symbols",
        grouping.size(), n));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (grouping[x] >= group_count) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "grouping sends symbol %d to undefined group %d (groups are "
          "[0, %d))",
          x, grouping[x], group_count));
    }
  }
  RETURN_IF_ERROR(internal::RequirePositiveOutcome(model, y));
  const DiscreteDistribution posterior = PosteriorAt(model, y);
  std::vector<double> post_w(group_count, 0.0);
  std::vector<double> prior_w(group_count, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    post_w[grouping[x]] += posterior[x];
    prior_w[grouping[x]] += model.prior()[x];
  }
  return internal::LogMaxRatio(post_w, prior_w);
}

inline absl::StatusOr<LeakageValue> ShatteringValue(
    const JointModel& model, const Symbol& y,
    std::span<const std::size_t> grouping, std::size_t group_count) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return ShatteringValueAt(model, index, grouping, group_count);
}

// Max of the shattering value over every deterministic grouping of the input
// alphabet into at most `max_groups` groups. Groupings that differ only by a
// relabeling of groups achieve the same value, so each set partition is
// visited once (restricted growth strings). A lower bound on the leakage, and
// equal to it once max_groups >= |E|.
inline absl::StatusOr<LeakageValue> RandomizedFunctionOracleAt(
    const JointModel& model, std::size_t y, std::size_t max_groups) {
  const std::size_t n = model.input_alphabet().size();
  if (max_groups == 0) {
    return absl::InvalidArgumentError("max_groups must be positive");
  }
  if (n > kMaxFunctionOracleAlphabet) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "function oracle cap exceeded: input alphabet has %d symbols, cap is "
        "%d",
        n, kMaxFunctionOracleAlphabet));
  }
  RETURN_IF_ERROR(internal::RequirePositiveOutcome(model, y));
  const std::size_t k = std::min(max_groups, n);
  const DiscreteDistribution posterior = PosteriorAt(model, y);
  const DiscreteDistribution& prior = model.prior();

  std::vector<std::size_t> assignment(n, 0);
  std::vector<double> post_w(k);
  std::vector<double> prior_w(k);
  LeakageValue best;
  // Assigns symbol x to an existing group or opens group `used`. Group masses
  // are summed afresh at each leaf, in symbol order, so a partition gets the
  // same value whatever max_groups it was reached under.
  std::function<void(std::size_t, std::size_t)> visit =
      [&](std::size_t x, std::size_t used) {
        if (best.is_infinite()) return;
        if (x == n) {
          if (used == 1) return;  // The trivial partition has ratio 1.
          std::fill(post_w.begin(), post_w.end(), 0.0);
          std::fill(prior_w.begin(), prior_w.end(), 0.0);
          for (std::size_t i = 0; i < n; ++i) {
            post_w[assignment[i]] += posterior[i];
            prior_w[assignment[i]] += prior[i];
          }
          best = std::max(best, internal::LogMaxRatio(
                                    std::span(post_w).first(used),
                                    std::span(prior_w).first(used)));
          return;
        }
        const std::size_t limit = std::min(used + 1, k);
        for (std::size_t group = 0; group < limit; ++group) {
          assignment[x] = group;
          visit(x + 1, std::max(used, group + 1));
        }
      };
  visit(0, 0);
  return best;
}

inline absl::StatusOr<LeakageValue> RandomizedFunctionOracle(
    const JointModel& model, const Symbol& y, std::size_t max_groups) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return RandomizedFunctionOracleAt(model, index, max_groups);
}

// Checks that no randomized strategy on the simplex grid of the given
// resolution beats the best pure estimate in expected posterior gain.
inline absl::StatusOr<bool> RandomizedStrategyCheckAt(const JointModel& model,
                                                      std::size_t y,
                                                      const GainFunction& g,
                                                      int resolution) {
  RETURN_IF_ERROR(internal::RequireGainOver(model, g));
  const std::size_t actions = g.estimate_alphabet().size();
  if (actions > kMaxStrategyActions) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "strategy check cap exceeded: %d estimates, cap is %d", actions,
        kMaxStrategyActions));
  }
  if (resolution < 1) {
    return absl::InvalidArgumentError("resolution must be positive");
  }
  if (resolution > kMaxSimplexResolution) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "strategy check cap exceeded: resolution %d, cap is %d", resolution,
        kMaxSimplexResolution));
  }
  const DiscreteDistribution posterior = PosteriorAt(model, y);
  std::vector<double> pure(actions);
  for (std::size_t w = 0; w < actions; ++w) {
    pure[w] = g.ExpectedGain(posterior.probs(), w);
  }
  const double best = *std::max_element(pure.begin(), pure.end());
  const double tolerance = 1e-12 * std::max(1.0, best);

  // Enumerate compositions steps[0] + ... + steps[actions - 1] = resolution.
  std::vector<int> steps(actions, 0);
  bool ok = true;
  std::function<void(std::size_t, int)> visit = [&](std::size_t w,
                                                    int remaining) {
    if (!ok) return;
    if (w + 1 == actions) {
      steps[w] = remaining;
      double mixed = 0.0;
      for (std::size_t v = 0; v < actions; ++v) {
        mixed += static_cast<double>(steps[v]) / resolution * pure[v];
      }
      if (mixed > best + tolerance) ok = false;
      return;
    }
    for (int s = 0; s <= remaining; ++s) {
      steps[w] = s;
      visit(w + 1, remaining - s);
    }
  };
  visit(0, resolution);
  return ok;
}

inline absl::StatusOr<bool> RandomizedStrategyCheck(const JointModel& model,
                                                    const Symbol& y,
                                                    const GainFunction& g,
                                                    int resolution) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return RandomizedStrategyCheckAt(model, index, g, resolution);
}

// g(x, w) = P_{U|X=x}(w): guessing the value of U exactly.
inline absl::StatusOr<GainFunction> MakeGuessingGain(
    const DiscreteChannel& subchannel, const DiscreteDistribution& prior) {
  if (!(subchannel.input_alphabet() == prior.alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: subchannel input alphabet differs from prior");
  }
  const std::size_t m = subchannel.output_alphabet().size();
  std::vector<std::vector<double>> table(prior.size(), std::vector<double>(m));
  for (std::size_t x = 0; x < prior.size(); ++x) {
    for (std::size_t w = 0; w < m; ++w) table[x][w] = subchannel(x, w);
  }
  return GainFunction::Create(subchannel.output_alphabet(), std::move(table),
                              prior);
}

// g(x, w) = P_{U|X=x}({a : |a - w| < radius}): guessing U to within an open
// ball, on an integer-labeled alphabet.
inline absl::StatusOr<GainFunction> MakeApproxGain(
    const DiscreteChannel& subchannel, double radius,
    const DiscreteDistribution& prior) {
  if (!(radius > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("radius must be positive, got ", radius));
  }
  const Alphabet& values = subchannel.output_alphabet();
  if (!values.AllIntegers()) {
    return absl::InvalidArgumentError(
        "approximate guessing needs an integer-labeled alphabet");
  }
  if (!(subchannel.input_alphabet() == prior.alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: subchannel input alphabet differs from prior");
  }
  const std::size_t m = values.size();
  auto label = [&](std::size_t i) {
    return static_cast<double>(std::get<std::int64_t>(values[i]));
  };
  std::vector<std::vector<double>> table(prior.size(),
                                         std::vector<double>(m, 0.0));
  for (std::size_t x = 0; x < prior.size(); ++x) {
    for (std::size_t w = 0; w < m; ++w) {
      for (std::size_t a = 0; a < m; ++a) {
        if (std::abs(label(a) - label(w)) < radius) {
          table[x][w] += subchannel(x, a);
        }
      }
    }
  }
  return GainFunction::Create(values, std::move(table), prior);
}

}  // namespace pmlkit

#endif  // PMLKIT_ORACLES_H_
