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

// Pointwise maximal leakage for density models on the real line.
//
// With densities w.r.t. Lebesgue measure the leakage to y is
//
//   l(X -> y) = log esssup_{P_X} f_{Y|X}(y, X) / f_Y(y).
//
// The essential supremum is approximated by a plain maximum over a uniform
// grid on the prior's central quantile range [clip, 1 - clip], followed by one
// round of local refinement around the best grid cell. Every result carries
// the grid it was computed on.

#ifndef PMLKIT_DENSITY_H_
#define PMLKIT_DENSITY_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pmlkit/leakage.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

struct GridSpec {
  int points = 16384;
  double quantile_clip = 1e-9;
  int refine = 16;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline constexpr int kMinGridPoints = 1 << 10;
// Largest prior mass the represented domain may miss.
inline constexpr double kMaxPriorClipMass = 1e-6;
// Relative agreement required between analytic and numeric marginals.
inline constexpr double kMarginalAgreement = 1e-6;

inline absl::Status ValidateGridSpec(const GridSpec& grid) {
  if (grid.points < kMinGridPoints) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid needs at least %d points, got %d", kMinGridPoints, grid.points));
  }
  if (!(grid.quantile_clip > 0.0 && grid.quantile_clip < 0.5)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quantile clip must lie in (0, 0.5), got ", grid.quantile_clip));
  }
  if (grid.refine < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("refinement factor must be >= 1, got ", grid.refine));
  }
  return absl::OkStatus();
}

// Prior density f_X, conditional density f_{Y|X}(y, x) and optionally an
// analytic marginal f_Y on the real line. The prior lives either on a bounded
// interval or on the whole line, in which case it is represented on its
// central quantile range.
class DensityModel {
 public:
  using Density = std::function<double(double)>;
  using ConditionalDensity = std::function<double(double y, double x)>;

  static absl::StatusOr<DensityModel> OnInterval(
      double lo, double hi, Density prior, ConditionalDensity conditional,
      std::optional<Density> marginal = std::nullopt) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid prior support [", lo, ", ", hi, "]"));
    }
    DensityModel model(std::move(prior), std::move(conditional),
                       std::move(marginal));
    model.lo_ = lo;
    model.hi_ = hi;
    return model;
  }

  // Unbounded prior support, clipped to [quantile(c), quantile(1 - c)].
  static absl::StatusOr<DensityModel> WithQuantiles(
      Density prior, Density prior_quantile, ConditionalDensity conditional,
      std::optional<Density> marginal = std::nullopt) {
    DensityModel model(std::move(prior), std::move(conditional),
                       std::move(marginal));
    model.quantile_ = std::move(prior_quantile);
    return model;
  }

  // The represented x-domain for a given quantile clip.
  std::pair<double, double> Domain(double quantile_clip) const {
    if (quantile_) {
      return {(*quantile_)(quantile_clip), (*quantile_)(1.0 - quantile_clip)};
    }
    return {lo_, hi_};
  }

  double Prior(double x) const { return prior_(x); }
  double Conditional(double y, double x) const { return conditional_(y, x); }
  bool has_analytic_marginal() const { return marginal_.has_value(); }
  double AnalyticMarginal(double y) const { return (*marginal_)(y); }

  // Composite Simpson integral of f(x) over the represented domain.
  template <typename F>
  double Integrate(F&& f, const GridSpec& grid) const {
    auto [lo, hi] = Domain(grid.quantile_clip);
    const int intervals = grid.points % 2 == 0 ? grid.points : grid.points - 1;
    const double h = (hi - lo) / intervals;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) {
      sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
    }
    return sum * h / 3.0;
  }

  double NumericMarginal(double y, const GridSpec& grid) const {
    return Integrate(
        [&](double x) { return conditional_(y, x) * prior_(x); }, grid);
  }

  // Checks that the represented domain carries all but kMaxPriorClipMass of
  // the prior.
  absl::Status Validate(const GridSpec& grid) const {
    RETURN_IF_ERROR(ValidateGridSpec(grid));
    const double mass = Integrate(prior_, grid);
    if (!(mass >= 1.0 - kMaxPriorClipMass && mass <= 1.0 + kMaxPriorClipMass)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "model error: prior integrates to %.10g over the represented "
          "domain, expected within %g of 1",
          mass, kMaxPriorClipMass));
    }
    return absl::OkStatus();
  }

  // f_Y(y), analytic when available (after checking it against the numeric
  // integral), numeric otherwise.
  absl::StatusOr<double> Marginal(double y, const GridSpec& grid) const {
    const double numeric = NumericMarginal(y, grid);
    if (!marginal_) return numeric;
    const double analytic = (*marginal_)(y);
    if (!std::isfinite(analytic) || !std::isfinite(numeric)) {
      return absl::InvalidArgumentError(
          absl::StrCat("model error: non-finite marginal density at y = ", y));
    }
    if (std::abs(analytic - numeric) > kMarginalAgreement * analytic) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "model error: analytic marginal %.12g and numeric marginal %.12g "
          "disagree at y = %g; the represented domain does not cover the "
          "posterior",
          analytic, numeric, y));
    }
    return analytic;
  }

 private:
  DensityModel(Density prior, ConditionalDensity conditional,
               std::optional<Density> marginal)
      : prior_(std::move(prior)),
        conditional_(std::move(conditional)),
        marginal_(std::move(marginal)) {}

  Density prior_;
  ConditionalDensity conditional_;
  std::optional<Density> marginal_;
  std::optional<Density> quantile_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

struct DensityLeakage {
  LeakageValue value;
  GridSpec grid;
  // Maximizing x after refinement.
  double argmax = 0.0;
};

inline absl::StatusOr<DensityLeakage> PmlDensity(const DensityModel& model,
                                                 double y,
                                                 const GridSpec& grid = {}) {
  RETURN_IF_ERROR(model.Validate(grid));
  ASSIGN_OR_RETURN(double fy, model.Marginal(y, grid));
  if (!std::isfinite(fy)) {
    return absl::InvalidArgumentError(
        absl::StrCat("model error: non-finite marginal density at y = ", y));
  }
  if (fy <= 0.0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "undefined outcome: marginal density is zero at y = ", y));
  }
  auto [lo, hi] = model.Domain(grid.quantile_clip);
  double best_ratio = -1.0;
  double best_x = lo;
  absl::Status bad;
  auto consider = [&](double x) {
    const double ratio = model.Conditional(y, x) / fy;
    if (!std::isfinite(ratio) || ratio < 0.0) {
      bad = absl::InvalidArgumentError(absl::StrCat(
          "model error: conditional density is ", model.Conditional(y, x),
          " at (y, x) = (", y, ", ", x, ")"));
      return;
    }
    // Strict comparison keeps the lowest x on ties.
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_x = x;
    }
  };
  const double h = (hi - lo) / (grid.points - 1);
  for (int i = 0; i < grid.points && bad.ok(); ++i) consider(lo + i * h);
  RETURN_IF_ERROR(bad);

  const double a = std::max(lo, best_x - h);
  const double b = std::min(hi, best_x + h);
  const int fine = 2 * grid.refine;
  for (int i = 0; i <= fine && bad.ok(); ++i) consider(a + (b - a) * i / fine);
  RETURN_IF_ERROR(bad);

  return DensityLeakage{LeakageValue::Nats(std::log(best_ratio)), grid,
                        best_x};
}

}  // namespace pmlkit

#endif  // PMLKIT_DENSITY_H_
