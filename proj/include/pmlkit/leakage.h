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

// Pointwise maximal leakage for discrete joint models.
//
// The leakage from X to an outcome y is the Renyi divergence of order
// infinity of the posterior P_{X|Y=y} from the prior P_X:
//
//   l(X -> y) = log max_x P_{X|Y=y}(x) / P_X(x),
//
// with 0/0 = 1 and c/0 = +inf for c > 0. All values are in nats; bits are a
// presentation conversion only.

#ifndef PMLKIT_LEAKAGE_H_
#define PMLKIT_LEAKAGE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "pmlkit/distribution.h"
#include "pmlkit/parallel.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

enum class Units { kNats, kBits };

inline absl::string_view UnitsName(Units units) {
  return units == Units::kNats ? "nats" : "bits";
}

// A non-negative leakage in nats, possibly +inf.
class LeakageValue {
 public:
  static constexpr double kRoundingSlack = 1e-9;

  LeakageValue() = default;

  // Rounding can push a mathematically non-negative divergence a few ulps
  // below zero; such values are reported as 0. Anything more negative is kept
  // so that a broken computation stays visible.
  static LeakageValue Nats(double nats) {
    return LeakageValue(nats < 0.0 && nats > -kRoundingSlack ? 0.0 : nats);
  }
  static LeakageValue Infinite() {
    return LeakageValue(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const { return std::isinf(nats_); }
  double nats() const { return nats_; }
  double bits() const { return nats_ / std::numbers::ln2; }
  double In(Units units) const {
    return units == Units::kNats ? nats() : bits();
  }

  friend auto operator<=>(const LeakageValue&, const LeakageValue&) = default;

 private:
  explicit LeakageValue(double nats) : nats_(nats) {}
  double nats_ = 0.0;
};

namespace internal {

// log max_i p_i / q_i over i with p_i > 0, with 0/0 = 1 and c/0 = +inf.
inline LeakageValue LogMaxRatio(std::span<const double> p,
                                std::span<const double> q) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] == 0.0) best = std::max(best, 0.0);
      continue;
    }
    if (q[i] == 0.0) return LeakageValue::Infinite();
    best = std::max(best, std::log(p[i]) - std::log(q[i]));
  }
  return LeakageValue::Nats(best);
}

}  // namespace internal

// D_inf(P || Q) = log max over symbols with P > 0 of P / Q. Symbols with
// P = Q = 0 contribute ratio 1; P > 0 = Q gives +inf.
inline absl::StatusOr<LeakageValue> RenyiInf(const DiscreteDistribution& p,
                                             const DiscreteDistribution& q) {
  if (!(p.alphabet() == q.alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: distributions are over different alphabets");
  }
  return internal::LogMaxRatio(p.probs(), q.probs());
}

inline LeakageValue PmlAt(const JointModel& model, std::size_t y) {
  return *RenyiInf(PosteriorAt(model, y), model.prior());
}

inline absl::StatusOr<LeakageValue> Pml(const JointModel& model,
                                        const Symbol& y) {
  ASSIGN_OR_RETURN(std::size_t index, model.output_alphabet().IndexOf(y));
  return PmlAt(model, index);
}

// The map y -> l(X -> y) together with the outcome law P_Y.
class LeakageProfile {
 public:
  static absl::StatusOr<LeakageProfile> Create(
      DiscreteDistribution weights, std::vector<LeakageValue> leakages) {
    if (leakages.size() != weights.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "dimension mismatch: ", leakages.size(), " leakages for ",
          weights.size(), " outcomes"));
    }
    for (std::size_t y = 0; y < leakages.size(); ++y) {
      if (weights[y] == 0.0 && leakages[y] != LeakageValue()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "outcome '", SymbolToString(weights.alphabet()[y]),
            "' has probability zero but non-zero leakage"));
      }
    }
    return LeakageProfile(std::move(weights), std::move(leakages));
  }

  const Alphabet& outcomes() const { return weights_.alphabet(); }
  const DiscreteDistribution& weights() const { return weights_; }
  const std::vector<LeakageValue>& leakages() const { return leakages_; }
  std::size_t size() const { return leakages_.size(); }

 private:
  LeakageProfile(DiscreteDistribution weights,
                 std::vector<LeakageValue> leakages)
      : weights_(std::move(weights)), leakages_(std::move(leakages)) {}

  DiscreteDistribution weights_;
  std::vector<LeakageValue> leakages_;
};

// Per-outcome work may run on up to `threads` threads; the result is in
// output-alphabet order regardless.
inline LeakageProfile ComputeLeakageProfile(const JointModel& model,
                                            unsigned threads = 1) {
  std::vector<LeakageValue> leakages(model.output_alphabet().size());
  ParallelFor(leakages.size(), threads,
              [&](std::size_t y) { leakages[y] = PmlAt(model, y); });
  return *LeakageProfile::Create(model.marginal(), std::move(leakages));
}

// Profile from a disintegration P_Y (x) P_{X|Y}: one posterior per outcome,
// supplied directly rather than derived by Bayes' rule. Outcomes of weight
// zero get leakage zero whatever posterior is supplied for them.
inline absl::StatusOr<LeakageProfile> LeakageProfileFromPosteriors(
    const DiscreteDistribution& prior, DiscreteDistribution weights,
    const std::vector<DiscreteDistribution>& posteriors) {
  if (posteriors.size() != weights.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: ", posteriors.size(), " posteriors for ",
        weights.size(), " outcomes"));
  }
  std::vector<LeakageValue> leakages(posteriors.size());
  for (std::size_t y = 0; y < posteriors.size(); ++y) {
    if (weights[y] == 0.0) continue;
    ASSIGN_OR_RETURN(leakages[y], RenyiInf(posteriors[y], prior));
  }
  return LeakageProfile::Create(std::move(weights), std::move(leakages));
}

// log E_{P_Y}[exp l(X -> Y)]. On a finite model this equals
// log sum_y max_x P_{Y|X=x}(y).
inline LeakageValue MaximalLeakage(const LeakageProfile& profile) {
  // log-sum-exp over log w_y + l_y.
  std::vector<double> terms;
  for (std::size_t y = 0; y < profile.size(); ++y) {
    const double w = profile.weights()[y];
    if (w == 0.0) continue;
    if (profile.leakages()[y].is_infinite()) return LeakageValue::Infinite();
    terms.push_back(std::log(w) + profile.leakages()[y].nats());
  }
  if (terms.empty()) return LeakageValue();
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return LeakageValue::Nats(top + std::log(sum));
}

// E_{P_Y}[l(X -> Y)] with 0 * inf = 0.
inline LeakageValue MeanLeakage(const LeakageProfile& profile) {
  double mean = 0.0;
  for (std::size_t y = 0; y < profile.size(); ++y) {
    const double w = profile.weights()[y];
    if (w == 0.0) continue;
    if (profile.leakages()[y].is_infinite()) return LeakageValue::Infinite();
    mean += w * profile.leakages()[y].nats();
  }
  return LeakageValue::Nats(mean);
}

// P_Y(l(X -> Y) > eps), eps in nats.
inline absl::StatusOr<double> TailProbability(const LeakageProfile& profile,
                                              double eps) {
  if (!(eps >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be non-negative, got ", eps));
  }
  double mass = 0.0;
  for (std::size_t y = 0; y < profile.size(); ++y) {
    if (profile.leakages()[y].nats() > eps) mass += profile.weights()[y];
  }
  return std::min(mass, 1.0);
}

struct CdfPoint {
  LeakageValue leakage;
  // P_Y(l(X -> Y) <= leakage).
  double cumulative = 0.0;
};

// Step CDF of the leakage random variable at its distinct values, ascending.
inline std::vector<CdfPoint> LeakageCdf(const LeakageProfile& profile) {
  std::vector<std::pair<LeakageValue, double>> atoms;
  for (std::size_t y = 0; y < profile.size(); ++y) {
    atoms.emplace_back(profile.leakages()[y], profile.weights()[y]);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CdfPoint> cdf;
  double running = 0.0;
  for (const auto& [value, weight] : atoms) {
    running += weight;
    if (!cdf.empty() && cdf.back().leakage == value) {
      cdf.back().cumulative = std::min(running, 1.0);
    } else {
      cdf.push_back({value, std::min(running, 1.0)});
    }
  }
  return cdf;
}

struct AbsoluteContinuity {
  bool holds = true;
  // Lowest-index input symbol with posterior > 0 = prior, when !holds.
  std::optional<std::size_t> witness;
};

// Whether posterior << prior on a finite alphabet.
inline absl::StatusOr<AbsoluteContinuity> CheckAbsoluteContinuity(
    const DiscreteDistribution& posterior, const DiscreteDistribution& prior) {
  if (!(posterior.alphabet() == prior.alphabet())) {
    return absl::InvalidArgumentError(
        "dimension mismatch: distributions are over different alphabets");
  }
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (posterior[x] > 0.0 && prior[x] == 0.0) return AbsoluteContinuity{false, x};
  }
  return AbsoluteContinuity{};
}

inline absl::StatusOr<AbsoluteContinuity> CheckAbsoluteContinuity(
    const JointModel& model, const Symbol& y) {
  ASSIGN_OR_RETURN(DiscreteDistribution posterior, Posterior(model, y));
  return CheckAbsoluteContinuity(posterior, model.prior());
}

}  // namespace pmlkit

#endif  // PMLKIT_LEAKAGE_H_
