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

// Closed-form leakage for a catalog of mechanisms, and discrete or gridded
// versions of the same mechanisms for cross-checking.
//
//   additive_gaussian   Y = X + N, X ~ N(0, sx^2), N ~ N(0, sn^2):
//                       l = 1/2 log(1 + sx^2/sn^2) + y^2 / (2 (sx^2 + sn^2))
//   bivariate_gaussian  (X, Y) zero-mean jointly Gaussian, correlation rho:
//                       l = y^2 / (2 sy^2) - 1/2 log(1 - rho^2), 0 if rho = 0
//   gaussian_mixture    X ~ Ber(1/2), Y | X = x ~ N(x, s^2):
//                       l = log(2 / (exp(-|y - 1/2| / s^2) + 1))
//   poisson_binomial    X ~ Pois(lambda p), Y - X | X ~ Pois(lambda (1 - p)):
//                       l = log(e^{lambda p} lambda^{-y} y!)
//   geometric_binary    X ~ Geom(p) on {1, 2, ...}, P(Y = 0 | X = x) = q^x:
//                       l(0) = log((1 - q + pq) / p),
//                       l(1) = log((1 - q + pq) / (1 - q))

#ifndef PMLKIT_CLOSED_FORM_H_
#define PMLKIT_CLOSED_FORM_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include "absl/strings/string_view.h"
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"
#include "pmlkit/density.h"
#include "pmlkit/distribution.h"
#include "pmlkit/leakage.h"
#include "pmlkit/status_macros.h"

namespace pmlkit {

struct AdditiveGaussian {
  double sigma_x = 1.0;
  double sigma_n = 1.0;
};

struct BivariateGaussian {
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double rho = 0.0;
};

struct GaussianMixture {
  double sigma = 1.0;
};

struct PoissonBinomial {
  double lambda = 2.0;
  double p = 0.5;
};

struct GeometricBinary {
  double p = 0.5;
  double q = 0.5;
};

using ClosedFormModel = std::variant<AdditiveGaussian, BivariateGaussian,
                                     GaussianMixture, PoissonBinomial,
                                     GeometricBinary>;

inline absl::string_view FamilyName(const ClosedFormModel& model) {
  struct Visitor {
    absl::string_view operator()(const AdditiveGaussian&) const {
      return "additive_gaussian";
    }
    absl::string_view operator()(const BivariateGaussian&) const {
      return "bivariate_gaussian";
    }
    absl::string_view operator()(const GaussianMixture&) const {
      return "gaussian_mixture";
    }
    absl::string_view operator()(const PoissonBinomial&) const {
      return "poisson_binomial";
    }
    absl::string_view operator()(const GeometricBinary&) const {
      return "geometric_binary";
    }
  };
  return std::visit(Visitor{}, model);
}

// Whether the family has a continuous X, so that a grid over x applies.
inline bool HasContinuousInput(const ClosedFormModel& model) {
  return std::holds_alternative<AdditiveGaussian>(model) ||
         std::holds_alternative<BivariateGaussian>(model);
}

namespace internal {

inline absl::Status ParameterError(absl::string_view family,
                                   absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("parameter error (", family, "): ", what));
}

inline bool InUnitInterval(double v) { return v > 0.0 && v < 1.0; }

inline double NormalPdf(double v, double mean, double sd) {
  const double z = (v - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

inline double NormalQuantile(double u, double sd) {
  return sd * boost::math::quantile(boost::math::normal_distribution<double>(),
                                    u);
}

}  // namespace internal

inline absl::Status ValidateClosedForm(const ClosedFormModel& model) {
  const absl::string_view family = FamilyName(model);
  if (const auto* m = std::get_if<AdditiveGaussian>(&model)) {
    if (!(m->sigma_x > 0.0 && m->sigma_n > 0.0)) {
      return internal::ParameterError(family, "sigma_x and sigma_n must be > 0");
    }
  } else if (const auto* m = std::get_if<BivariateGaussian>(&model)) {
    if (!(m->sigma_x > 0.0 && m->sigma_y > 0.0)) {
      return internal::ParameterError(family, "sigma_x and sigma_y must be > 0");
    }
    if (!(m->rho > -1.0 && m->rho < 1.0)) {
      return internal::ParameterError(family, "rho must lie in (-1, 1)");
    }
  } else if (const auto* m = std::get_if<GaussianMixture>(&model)) {
    if (!(m->sigma > 0.0)) {
      return internal::ParameterError(family, "sigma must be > 0");
    }
  } else if (const auto* m = std::get_if<PoissonBinomial>(&model)) {
    if (!(m->lambda > 1.0)) {
      return internal::ParameterError(family, "lambda must be > 1");
    }
    if (!internal::InUnitInterval(m->p)) {
      return internal::ParameterError(family, "p must lie in (0, 1)");
    }
    // The maximizing x is y whenever lambda (1 - p) <= 1; equality is
    // allowed so that (lambda, p) = (2, 0.5) is admissible.
    if (!(m->lambda * (1.0 - m->p) <= 1.0)) {
      return internal::ParameterError(family, "lambda (1 - p) must be <= 1");
    }
  } else if (const auto* m = std::get_if<GeometricBinary>(&model)) {
    if (!internal::InUnitInterval(m->p) || !internal::InUnitInterval(m->q)) {
      return internal::ParameterError(family, "p and q must lie in (0, 1)");
    }
  }
  return absl::OkStatus();
}

inline absl::StatusOr<LeakageValue> PmlClosedForm(const ClosedFormModel& model,
                                                  double y) {
  RETURN_IF_ERROR(ValidateClosedForm(model));
  if (!std::isfinite(y)) {
    return absl::InvalidArgumentError(absl::StrCat("outcome ", y, " is not finite"));
  }
  if (const auto* m = std::get_if<AdditiveGaussian>(&model)) {
    const double vx = m->sigma_x * m->sigma_x;
    const double vn = m->sigma_n * m->sigma_n;
    return LeakageValue::Nats(0.5 * std::log1p(vx / vn) +
                              y * y / (2.0 * (vx + vn)));
  }
  if (const auto* m = std::get_if<BivariateGaussian>(&model)) {
    if (m->rho == 0.0) return LeakageValue();
    return LeakageValue::Nats(y * y / (2.0 * m->sigma_y * m->sigma_y) -
                              0.5 * std::log1p(-m->rho * m->rho));
  }
  if (const auto* m = std::get_if<GaussianMixture>(&model)) {
    const double d = std::abs(y - 0.5) / (m->sigma * m->sigma);
    return LeakageValue::Nats(std::log(2.0 / (std::exp(-d) + 1.0)));
  }
  const bool integer = y >= 0.0 && std::floor(y) == y;
  if (const auto* m = std::get_if<PoissonBinomial>(&model)) {
    if (!integer) {
      return absl::InvalidArgumentError(absl::StrCat(
          "poisson_binomial outcomes are non-negative integers, got ", y));
    }
    return LeakageValue::Nats(m->lambda * m->p - y * std::log(m->lambda) +
                              std::lgamma(y + 1.0));
  }
  const auto& m = std::get<GeometricBinary>(model);
  if (!integer || y > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("geometric_binary outcomes are 0 or 1, got ", y));
  }
  const double normalizer = 1.0 - m.q + m.p * m.q;
  return LeakageValue::Nats(
      std::log(normalizer / (y == 0.0 ? m.p : 1.0 - m.q)));
}

// ln 2 - l(X -> y) for gaussian_mixture(sigma) at y = y_magnitude, evaluated
// as log1p(exp(-|y - 1/2| / sigma^2)) so the gap keeps full relative
// precision as it vanishes.
inline absl::StatusOr<double> MixtureLimitCheck(double sigma,
                                                double y_magnitude) {
  RETURN_IF_ERROR(ValidateClosedForm(GaussianMixture{sigma}));
  if (!(y_magnitude > 0.0)) {
    return absl::InvalidArgumentError("y_magnitude must be positive");
  }
  return std::log1p(std::exp(-std::abs(y_magnitude - 0.5) / (sigma * sigma)));
}

// The density model behind a continuous-input family.
inline absl::StatusOr<DensityModel> ToDensityModel(
    const ClosedFormModel& model) {
  RETURN_IF_ERROR(ValidateClosedForm(model));
  using internal::NormalPdf;
  using internal::NormalQuantile;
  if (const auto* m = std::get_if<AdditiveGaussian>(&model)) {
    const double sx = m->sigma_x;
    const double sn = m->sigma_n;
    const double sy = std::hypot(sx, sn);
    return DensityModel::WithQuantiles(
        [sx](double x) { return NormalPdf(x, 0.0, sx); },
        [sx](double u) { return NormalQuantile(u, sx); },
        [sn](double y, double x) { return NormalPdf(y, x, sn); },
        [sy](double y) { return NormalPdf(y, 0.0, sy); });
  }
  if (const auto* m = std::get_if<BivariateGaussian>(&model)) {
    const double sx = m->sigma_x;
    const double sy = m->sigma_y;
    const double slope = m->rho * sy / sx;
    const double sd = sy * std::sqrt(1.0 - m->rho * m->rho);
    return DensityModel::WithQuantiles(
        [sx](double x) { return NormalPdf(x, 0.0, sx); },
        [sx](double u) { return NormalQuantile(u, sx); },
        [slope, sd](double y, double x) { return NormalPdf(y, slope * x, sd); },
        [sy](double y) { return NormalPdf(y, 0.0, sy); });
  }
  return absl::UnimplementedError(absl::StrCat(
      "grid evaluation is unsupported for the discrete-input family ",
      FamilyName(model)));
}

struct IntegrabilityProbeResult {
  std::vector<std::size_t> counts;
  // Monte Carlo means of exp(l(X -> Y)), one per count.
  std::vector<double> estimates;
  bool strictly_increasing = false;
  // exp(l(X -> y)) grows like exp(a y^2) against a marginal exp(-b y^2); the
  // expectation diverges iff a >= b.
  bool analytic_divergence = false;
};

// Monte Carlo probe of E_{P_Y}[exp l(X -> Y)] for the Gaussian families.
//
// For each count N the outcomes are y_i = F_Y^{-1}((i + U) / N), i < N, with
// a single uniform shift U drawn from `seed` (a randomly shifted lattice).
// Every y_i is marginally distributed as P_Y, so each estimate is an
// unbiased-per-point mean; sharing U across counts makes the growth of the
// truncated integral visible instead of being masked by the i.i.d. variance
// of a heavy-tailed integrand.
inline absl::StatusOr<IntegrabilityProbeResult> IntegrabilityProbe(
    const ClosedFormModel& model, const std::vector<std::size_t>& counts,
    std::uint64_t seed) {
  RETURN_IF_ERROR(ValidateClosedForm(model));
  double marginal_sd = 0.0;
  double growth = 0.0;  // a in exp(l) ~ exp(a y^2)
  if (const auto* m = std::get_if<AdditiveGaussian>(&model)) {
    marginal_sd = std::hypot(m->sigma_x, m->sigma_n);
    growth = 1.0 / (2.0 * marginal_sd * marginal_sd);
  } else if (const auto* m = std::get_if<BivariateGaussian>(&model)) {
    marginal_sd = m->sigma_y;
    growth = m->rho == 0.0 ? 0.0 : 1.0 / (2.0 * marginal_sd * marginal_sd);
  } else {
    return absl::UnimplementedError(absl::StrCat(
        "integrability probe supports only the Gaussian families, got ",
        FamilyName(model)));
  }
  if (counts.size() < 3) {
    return absl::InvalidArgumentError("at least three sample counts required");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0 || (i > 0 && counts[i] <= counts[i - 1])) {
      return absl::InvalidArgumentError(
          "sample counts must be positive and strictly increasing");
    }
  }
  std::mt19937_64 rng(seed);
  const double shift = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  IntegrabilityProbeResult result;
  result.counts = counts;
  for (std::size_t n : counts) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double u = (static_cast<double>(i) + shift) / static_cast<double>(n);
      u = std::clamp(u, std::numeric_limits<double>::min(),
                     std::nextafter(1.0, 0.0));
      const double y = internal::NormalQuantile(u, marginal_sd);
      ASSIGN_OR_RETURN(LeakageValue leakage, PmlClosedForm(model, y));
      sum += std::exp(leakage.nats());
    }
    result.estimates.push_back(sum / static_cast<double>(n));
  }
  result.strictly_increasing = true;
  for (std::size_t i = 1; i < result.estimates.size(); ++i) {
    if (!(result.estimates[i] > result.estimates[i - 1])) {
      result.strictly_increasing = false;
    }
  }
  const double decay = 1.0 / (2.0 * marginal_sd * marginal_sd);
  result.analytic_divergence = growth >= decay;
  return result;
}

// Truncated discrete version of poisson_binomial: Poisson(lambda p) prior on
// {0..nx} with nx >= y_max, kernel P(Y = y | X = x) = Pois(lambda (1 - p))
// at y - x on the output alphabet {0..nx + n_noise}. The prior tail and every
// row tail are at most tail / 2, so the marginal deficit stays within `tail`.
// Outcomes y <= nx have exact posteriors Binom(y, p).
inline absl::StatusOr<JointModel> DiscretizePoissonBinomial(double lambda,
                                                            double p,
                                                            std::int64_t y_max,
                                                            double tail) {
  RETURN_IF_ERROR(ValidateClosedForm(PoissonBinomial{lambda, p}));
  if (y_max < 0) {
    return absl::InvalidArgumentError("y_max must be non-negative");
  }
  if (!(tail > 0.0) || tail > kMaxTruncationDeficit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tail bound ", tail, " outside (0, ", kMaxTruncationDeficit, "]"));
  }
  const double half = tail / 2.0;
  const double prior_rate = lambda * p;
  const double noise_rate = lambda * (1.0 - p);

  ASSIGN_OR_RETURN(DiscreteDistribution truncated,
                   TruncateCountable(CountableLaw::Poisson(prior_rate), half));
  const std::int64_t nx =
      std::max<std::int64_t>(static_cast<std::int64_t>(truncated.size()) - 1,
                             y_max);
  ASSIGN_OR_RETURN(DiscreteDistribution noise,
                   TruncateCountable(CountableLaw::Poisson(noise_rate), half));
  const auto n_noise = static_cast<std::int64_t>(noise.size()) - 1;
  const std::int64_t ny = nx + n_noise;

  std::vector<double> prior_probs(static_cast<std::size_t>(nx + 1));
  for (std::int64_t x = 0; x <= nx; ++x) {
    prior_probs[x] = std::exp(internal::PoissonLogPmf(prior_rate, x));
  }
  ASSIGN_OR_RETURN(
      DiscreteDistribution prior,
      DiscreteDistribution::Create(
          Alphabet::Integers(0, static_cast<std::size_t>(nx + 1)),
          std::move(prior_probs),
          internal::PoissonUpperTail(prior_rate, nx)));

  std::vector<std::vector<double>> rows;
  std::vector<double> deficits;
  for (std::int64_t x = 0; x <= nx; ++x) {
    std::vector<double> row(static_cast<std::size_t>(ny + 1), 0.0);
    for (std::int64_t y = x; y <= ny; ++y) {
      row[y] = std::exp(internal::PoissonLogPmf(noise_rate, y - x));
    }
    rows.push_back(std::move(row));
    deficits.push_back(internal::PoissonUpperTail(noise_rate, ny - x));
  }
  ASSIGN_OR_RETURN(
      DiscreteChannel channel,
      DiscreteChannel::Create(prior.alphabet(),
                              Alphabet::Integers(0, static_cast<std::size_t>(ny + 1)),
                              std::move(rows), std::move(deficits)));
  return JointModel::Create(std::move(prior), std::move(channel));
}

// Truncated discrete version of geometric_binary. The support {1..n} is long
// enough that both the dropped prior mass (1 - p)^n and the kernel tail q^n
// are at most `tolerance`; the second matters because l(X -> 1) is a
// supremum approached only as x grows.
inline absl::StatusOr<JointModel> MakeGeometricBinaryModel(double p, double q,
                                                           double tolerance) {
  RETURN_IF_ERROR(ValidateClosedForm(GeometricBinary{p, q}));
  if (!(tolerance > 0.0) || tolerance > kMaxTruncationDeficit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tolerance ", tolerance, " outside (0, ", kMaxTruncationDeficit, "]"));
  }
  const double log_keep = std::log1p(-p);
  const double log_q = std::log(q);
  const double log_tol = std::log(tolerance);
  auto n = static_cast<std::int64_t>(
      std::ceil(std::max(log_tol / log_keep, log_tol / log_q)));
  n = std::max<std::int64_t>(n, 1);
  while (static_cast<double>(n) * log_keep > log_tol ||
         static_cast<double>(n) * log_q > log_tol) {
    ++n;
  }
  std::vector<double> prior_probs(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> rows;
  for (std::int64_t x = 1; x <= n; ++x) {
    prior_probs[x - 1] = p * std::exp(static_cast<double>(x - 1) * log_keep);
    const double stay = std::exp(static_cast<double>(x) * log_q);
    rows.push_back({stay, -std::expm1(static_cast<double>(x) * log_q)});
  }
  const Alphabet support = Alphabet::Integers(1, static_cast<std::size_t>(n));
  ASSIGN_OR_RETURN(DiscreteDistribution prior,
                   DiscreteDistribution::Create(
                       support, std::move(prior_probs),
                       std::exp(static_cast<double>(n) * log_keep)));
  ASSIGN_OR_RETURN(DiscreteChannel channel,
                   DiscreteChannel::Create(support, Alphabet::Integers(0, 2),
                                           std::move(rows)));
  return JointModel::Create(std::move(prior), std::move(channel));
}

}  // namespace pmlkit

#endif  // PMLKIT_CLOSED_FORM_H_
