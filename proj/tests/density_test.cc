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

#include "pmlkit/density.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "gtest/gtest.h"
#include "pmlkit/closed_form.h"

namespace pmlkit {
namespace {

double Normal(double v, double mean, double sd) {
  const double z = (v - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

// Uniform prior on [0, 1]; Y = X + uniform noise on [0, 1].
DensityModel UniformSum() {
  return *DensityModel::OnInterval(
      0.0, 1.0, [](double) { return 1.0; },
      [](double y, double x) { return (y >= x && y <= x + 1.0) ? 1.0 : 0.0; });
}

TEST(GridSpecTest, Validation) {
  EXPECT_TRUE(ValidateGridSpec(GridSpec{}).ok());
  EXPECT_FALSE(ValidateGridSpec(GridSpec{1000, 1e-9, 16}).ok());
  EXPECT_FALSE(ValidateGridSpec(GridSpec{2048, 0.0, 16}).ok());
  EXPECT_FALSE(ValidateGridSpec(GridSpec{2048, 0.5, 16}).ok());
  EXPECT_FALSE(ValidateGridSpec(GridSpec{2048, 1e-9, 0}).ok());
}

TEST(PmlDensityTest, AdditiveGaussianAtZero) {
  auto model = *ToDensityModel(AdditiveGaussian{1.0, 1.0});
  auto result = PmlDensity(model, 0.0);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_NEAR(result->value.nats(), 0.34657359027997265, 1e-4);
  EXPECT_EQ(result->grid, GridSpec{});
  EXPECT_NEAR(result->argmax, 0.0, 1e-3);
}

TEST(PmlDensityTest, IndependenceGivesZero) {
  auto model = *DensityModel::OnInterval(
      0.0, 1.0, [](double) { return 1.0; },
      [](double y, double) { return Normal(y, 0.0, 1.0); },
      [](double y) { return Normal(y, 0.0, 1.0); });
  for (double y : {-2.0, 0.0, 0.7}) {
    auto result = PmlDensity(model, y);
    ASSERT_TRUE(result.ok()) << result.status();
    EXPECT_NEAR(result->value.nats(), 0.0, 1e-12);
  }
}

TEST(PmlDensityTest, UncorrelatedBivariateGivesZero) {
  auto model = *ToDensityModel(BivariateGaussian{1.0, 2.0, 0.0});
  for (double y : {-3.0, 0.0, 1.5}) {
    EXPECT_NEAR(PmlDensity(model, y)->value.nats(), 0.0, 1e-12);
  }
}

TEST(PmlDensityTest, NumericMarginalWithoutAnalyticForm) {
  // f_Y(y) = y on [0, 1], 2 - y on [1, 2]; at y = 0.5 the best x gives
  // f_{Y|X} = 1, so the leakage is log 2.
  auto result = PmlDensity(UniformSum(), 0.5, GridSpec{4097, 1e-9, 16});
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_NEAR(result->value.nats(), std::log(2.0), 1e-3);
}

TEST(PmlDensityTest, NullOutcomeIsUndefined) {
  EXPECT_EQ(PmlDensity(UniformSum(), 5.0).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(PmlDensityTest, NonFiniteDensityIsAModelError) {
  auto model = *DensityModel::OnInterval(
      0.0, 1.0, [](double) { return 1.0; },
      [](double, double x) {
        return x > 0.5 ? std::numeric_limits<double>::infinity() : 1.0;
      },
      [](double) { return 1.0; });
  auto result = PmlDensity(model, 0.2);
  EXPECT_EQ(result.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(PmlDensityTest, PriorMustCarryItsMass) {
  auto model = *DensityModel::OnInterval(
      0.0, 1.0, [](double) { return 0.5; },
      [](double y, double) { return Normal(y, 0.0, 1.0); });
  auto result = PmlDensity(model, 0.0);
  EXPECT_EQ(result.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(std::string(result.status().message()).find("prior"),
            std::string::npos);
}

TEST(PmlDensityTest, WrongAnalyticMarginalIsCaught) {
  auto model = *DensityModel::OnInterval(
      0.0, 1.0, [](double) { return 1.0; },
      [](double y, double x) { return Normal(y, x, 1.0); },
      [](double y) { return Normal(y, 0.0, 1.0); });
  EXPECT_EQ(PmlDensity(model, 0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(PmlDensityTest, RejectsBadInterval) {
  EXPECT_FALSE(DensityModel::OnInterval(
                   1.0, 0.0, [](double) { return 1.0; },
                   [](double, double) { return 1.0; })
                   .ok());
}

}  // namespace
}  // namespace pmlkit
