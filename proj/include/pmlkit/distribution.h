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

// Discrete distributions, channels (transition kernels) and joint models.
//
// All types are immutable after construction. Probability vectors are
// validated on construction and never silently renormalized: a vector whose
// entries plus truncation deficit do not sum to one within kSumTolerance is
// rejected.

#ifndef PMLKIT_DISTRIBUTION_H_
#define PMLKIT_DISTRIBUTION_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pmlkit/alphabet.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

// Tolerance on |sum(probs) + truncation_deficit - 1| for user-supplied input.
inline constexpr double kSumTolerance = 1e-12;
// Tolerance for distributions derived by arithmetic from validated ones
// (marginals and posteriors).
inline constexpr double kDerivedSumTolerance = 1e-10;
// Largest probability mass a truncated countable law may drop.
inline constexpr double kMaxTruncationDeficit = 1e-9;

class DiscreteDistribution {
 public:
  static absl::StatusOr<DiscreteDistribution> Create(
      Alphabet alphabet, std::vector<double> probs,
      double truncation_deficit = 0.0) {
    return CreateWithTolerance(std::move(alphabet), std::move(probs),
                               truncation_deficit, kSumTolerance);
  }

  static absl::StatusOr<DiscreteDistribution> CreateWithTolerance(
      Alphabet alphabet, std::vector<double> probs, double truncation_deficit,
      double sum_tolerance) {
    if (probs.size() != alphabet.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "dimension mismatch: %d probabilities for an alphabet of size %d",
          probs.size(), alphabet.size()));
    }
    if (!(truncation_deficit >= 0.0) ||
        truncation_deficit > kMaxTruncationDeficit) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "truncation deficit %g outside [0, %g]", truncation_deficit,
          kMaxTruncationDeficit));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("probability of symbol '", SymbolToString(alphabet[i]),
                         "' is ", probs[i], ", expected a finite value >= 0"));
      }
      sum += probs[i];
    }
    if (std::abs(sum + truncation_deficit - 1.0) > sum_tolerance) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "probabilities sum to %.17g (plus truncation deficit %g), expected 1 "
          "within %g",
          sum, truncation_deficit, sum_tolerance));
    }
    return DiscreteDistribution(std::move(alphabet), std::move(probs),
                                truncation_deficit);
  }

  // Point mass on the symbol at `index`.
  static DiscreteDistribution PointMass(Alphabet alphabet, std::size_t index) {
    std::vector<double> probs(alphabet.size(), 0.0);
    probs.at(index) = 1.0;
    return DiscreteDistribution(std::move(alphabet), std::move(probs), 0.0);
  }

  static DiscreteDistribution Uniform(Alphabet alphabet) {
    std::vector<double> probs(alphabet.size(),
                              1.0 / static_cast<double>(alphabet.size()));
    return DiscreteDistribution(std::move(alphabet), std::move(probs), 0.0);
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  double truncation_deficit() const { return truncation_deficit_; }

  absl::StatusOr<double> Prob(const Symbol& symbol) const {
    ASSIGN_OR_RETURN(std::size_t i, alphabet_.IndexOf(symbol));
    return probs_[i];
  }

 private:
  DiscreteDistribution(Alphabet alphabet, std::vector<double> probs,
                       double truncation_deficit)
      : alphabet_(std::move(alphabet)),
        probs_(std::move(probs)),
        truncation_deficit_(truncation_deficit) {}

  Alphabet alphabet_;
  std::vector<double> probs_;
  double truncation_deficit_;
};

// Row-stochastic kernel: row i is the output law given input symbol i.
class DiscreteChannel {
 public:
  static absl::StatusOr<DiscreteChannel> Create(
      Alphabet input, Alphabet output, std::vector<std::vector<double>> rows,
      std::vector<double> row_deficits = {}) {
    if (rows.size() != input.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "dimension mismatch: channel has %d rows for an input alphabet of "
          "size %d",
          rows.size(), input.size()));
    }
    if (!row_deficits.empty() && row_deficits.size() != rows.size()) {
      return absl::InvalidArgumentError("one truncation deficit per row");
    }
    std::vector<DiscreteDistribution> laws;
    laws.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto row = DiscreteDistribution::Create(
          output, std::move(rows[i]),
          row_deficits.empty() ? 0.0 : row_deficits[i]);
      if (!row.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("channel row ", i, " (input symbol '",
                         SymbolToString(input[i]), "'): ",
                         row.status().message()));
      }
      laws.push_back(*std::move(row));
    }
    return DiscreteChannel(std::move(input), std::move(output),
                           std::move(laws));
  }

  static DiscreteChannel Identity(const Alphabet& alphabet) {
    std::vector<DiscreteDistribution> rows;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      rows.push_back(DiscreteDistribution::PointMass(alphabet, i));
    }
    return DiscreteChannel(alphabet, alphabet, std::move(rows));
  }

  // Every input maps to the same output law.
  static DiscreteChannel Constant(const Alphabet& input,
                                  const DiscreteDistribution& row) {
    return DiscreteChannel(input, row.alphabet(),
                           std::vector<DiscreteDistribution>(input.size(), row));
  }

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  const DiscreteDistribution& row(std::size_t i) const { return rows_[i]; }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x][y]; }

  // Column maximum max_x P(y | x).
  double ColumnMax(std::size_t y) const {
    double best = 0.0;
    for (const auto& r : rows_) best = std::max(best, r[y]);
    return best;
  }

 private:
  DiscreteChannel(Alphabet input, Alphabet output,
                  std::vector<DiscreteDistribution> rows)
      : input_(std::move(input)),
        output_(std::move(output)),
        rows_(std::move(rows)) {}

  Alphabet input_;
  Alphabet output_;
  std::vector<DiscreteDistribution> rows_;
};

// P_Y(y) = sum_x P_X(x) P_{Y|X=x}(y). The returned deficit is the prior's
// deficit plus the prior-weighted row deficits, so that the marginal keeps
// sum + deficit = 1.
inline absl::StatusOr<DiscreteDistribution> Marginal(
    const DiscreteDistribution& prior, const DiscreteChannel& channel) {
  if (!(prior.alphabet() == channel.input_alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: prior alphabet differs from channel input "
        "alphabet");
  }
  const std::size_t n = prior.size();
  const std::size_t m = channel.output_alphabet().size();
  std::vector<double> probs(m, 0.0);
  double deficit = prior.truncation_deficit();
  for (std::size_t x = 0; x < n; ++x) {
    const double px = prior[x];
    if (px == 0.0) continue;
    const auto& row = channel.row(x);
    for (std::size_t y = 0; y < m; ++y) probs[y] += px * row[y];
    deficit += px * row.truncation_deficit();
  }
  return DiscreteDistribution::CreateWithTolerance(
      channel.output_alphabet(), std::move(probs),
      deficit, kDerivedSumTolerance);
}

// Prior plus channel, with the output marginal cached.
class JointModel {
 public:
  static absl::StatusOr<JointModel> Create(DiscreteDistribution prior,
                                           DiscreteChannel channel) {
    ASSIGN_OR_RETURN(DiscreteDistribution marginal, Marginal(prior, channel));
    return JointModel(std::move(prior), std::move(channel),
                      std::move(marginal));
  }

  const DiscreteDistribution& prior() const { return prior_; }
  const DiscreteChannel& channel() const { return channel_; }
  const DiscreteDistribution& marginal() const { return marginal_; }
  const Alphabet& input_alphabet() const { return prior_.alphabet(); }
  const Alphabet& output_alphabet() const { return marginal_.alphabet(); }

 private:
  JointModel(DiscreteDistribution prior, DiscreteChannel channel,
             DiscreteDistribution marginal)
      : prior_(std::move(prior)),
        channel_(std::move(channel)),
        marginal_(std::move(marginal)) {}

  DiscreteDistribution prior_;
  DiscreteChannel channel_;
  DiscreteDistribution marginal_;
};

// P_{X|Y=y} for the output symbol at index `y`. When P_Y(y) = 0 the prior is
// returned unchanged: conditioning on a null event is no conditioning.
inline DiscreteDistribution PosteriorAt(const JointModel& model,
                                        std::size_t y) {
  const double py = model.marginal()[y];
  if (py == 0.0) return model.prior();
  const auto& prior = model.prior();
  std::vector<double> probs(prior.size());
  for (std::size_t x = 0; x < prior.size(); ++x) {
    probs[x] = prior[x] * model.channel()(x, y) / py;
  }
  // Normalized up to rounding: P_Y was summed from the same products.
  auto posterior = DiscreteDistribution::CreateWithTolerance(
      prior.alphabet(), std::move(probs), 0.0, kDerivedSumTolerance);
  return *std::move(posterior);
}

inline absl::StatusOr<DiscreteDistribution> Posterior(const JointModel& model,
                                                      const Symbol& y) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return PosteriorAt(model, index);
}

// Descriptor of a countably infinite law on the integers.
//   "geometric": P(x) = p (1 - p)^(x - 1), x = 1, 2, ...
//   "poisson":   P(x) = e^-lambda lambda^x / x!, x = 0, 1, ...
struct CountableLaw {
  std::string family;
  double parameter = 0.0;

  static CountableLaw Geometric(double p) { return {"geometric", p}; }
  static CountableLaw Poisson(double lambda) { return {"poisson", lambda}; }
};

namespace internal {

inline double PoissonLogPmf(double lambda, std::int64_t k) {
  return -lambda + static_cast<double>(k) * std::log(lambda) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

// P(X > n) for X ~ Poisson(lambda), summed forward from n + 1.
inline double PoissonUpperTail(double lambda, std::int64_t n) {
  double tail = 0.0;
  for (std::int64_t k = n + 1;; ++k) {
    const double term = std::exp(PoissonLogPmf(lambda, k));
    tail += term;
    if (static_cast<double>(k) > lambda &&
        (term == 0.0 || term < tail * 1e-18)) {
      break;
    }
  }
  return tail;
}

}  // namespace internal

// Restricts a countable law to the shortest initial segment whose dropped
// tail mass is at most `tail_bound`; the dropped mass is recorded as the
// truncation deficit.
inline absl::StatusOr<DiscreteDistribution> TruncateCountable(
    const CountableLaw& law, double tail_bound) {
  if (!(tail_bound > 0.0) || tail_bound > kMaxTruncationDeficit) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "tail bound %g outside (0, %g]", tail_bound, kMaxTruncationDeficit));
  }
  if (law.family == "geometric") {
    const double p = law.parameter;
    if (!(p > 0.0 && p < 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("geometric parameter ", p, " outside (0, 1)"));
    }
    const double log_q = std::log1p(-p);
    auto tail = [&](std::int64_t n) {
      return std::exp(static_cast<double>(n) * log_q);
    };
    auto n = static_cast<std::int64_t>(
        std::ceil(std::log(tail_bound) / log_q));
    n = std::max<std::int64_t>(n, 1);
    while (n > 1 && tail(n - 1) <= tail_bound) --n;
    while (tail(n) > tail_bound) ++n;
    std::vector<double> probs(static_cast<std::size_t>(n));
    for (std::int64_t x = 1; x <= n; ++x) {
      probs[x - 1] = p * std::exp(static_cast<double>(x - 1) * log_q);
    }
    return DiscreteDistribution::Create(
        Alphabet::Integers(1, static_cast<std::size_t>(n)), std::move(probs),
        tail(n));
  }
  if (law.family == "poisson") {
    const double lambda = law.parameter;
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      return absl::InvalidArgumentError(
          absl::StrCat("poisson rate ", lambda, " must be positive"));
    }
    std::int64_t n = 0;
    double tail = internal::PoissonUpperTail(lambda, n);
    while (tail > tail_bound) tail = internal::PoissonUpperTail(lambda, ++n);
    std::vector<double> probs(static_cast<std::size_t>(n + 1));
    for (std::int64_t x = 0; x <= n; ++x) {
      probs[x] = std::exp(internal::PoissonLogPmf(lambda, x));
    }
    return DiscreteDistribution::Create(
        Alphabet::Integers(0, static_cast<std::size_t>(n + 1)),
        std::move(probs), tail);
  }
  return absl::UnimplementedError(
      absl::StrCat("unsupported countable law '", law.family, "'"));
}

}  // namespace pmlkit

#endif  // PMLKIT_DISTRIBUTION_H_
