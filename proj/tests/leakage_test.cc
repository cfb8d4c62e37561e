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

#include "pmlkit/leakage.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pmlkit/closed_form.h"
#include "test_util.h"

namespace pmlkit {
namespace {

using ::pmlkit::testing::ColumnMaxLeakage;
using ::pmlkit::testing::LikelihoodRatioLeakage;
using ::pmlkit::testing::RandomChannel;
using ::pmlkit::testing::RandomModel;

constexpr double kLn2 = std::numbers::ln2;

DiscreteDistribution Dist(std::vector<double> p) {
  const Alphabet a = Alphabet::Integers(0, p.size());
  return *DiscreteDistribution::Create(a, std::move(p));
}

JointModel IdentityUniform(std::size_t n) {
  const Alphabet a = Alphabet::Integers(0, n);
  return *JointModel::Create(DiscreteDistribution::Uniform(a),
                             DiscreteChannel::Identity(a));
}

JointModel ConstantModel() {
  const Alphabet in = Alphabet::Integers(0, 3);
  const Alphabet out = Alphabet::Integers(0, 2);
  return *JointModel::Create(
      *DiscreteDistribution::Create(in, {0.5, 0.3, 0.2}),
      DiscreteChannel::Constant(in,
                                *DiscreteDistribution::Create(out, {0.4, 0.6})));
}

// Closed-form values for the geometric/binary model at (0.3, 0.5), to 17
// significant digits.
constexpr double kGeomLeak0 = 0.77318988823348176;  // ln(0.65 / 0.3)
constexpr double kGeomLeak1 = 0.26236426446749104;  // ln(0.65 / 0.5)
constexpr double kGeomPy0 = 0.23076923076923076;    // 0.15 / 0.65

TEST(LeakageValueTest, UnitsAndInfinity) {
  const LeakageValue v = LeakageValue::Nats(kLn2);
  EXPECT_DOUBLE_EQ(v.bits(), 1.0);
  EXPECT_DOUBLE_EQ(v.In(Units::kNats), kLn2);
  EXPECT_TRUE(LeakageValue::Infinite().is_infinite());
  EXPECT_TRUE(std::isinf(LeakageValue::Infinite().bits()));
  EXPECT_LT(v, LeakageValue::Infinite());
  EXPECT_EQ(LeakageValue::Nats(-1e-15).nats(), 0.0);
  EXPECT_LT(LeakageValue::Nats(-1e-3).nats(), 0.0);
}

TEST(RenyiInfTest, ZeroConventions) {
  EXPECT_EQ(RenyiInf(Dist({0.2, 0.8}), Dist({0.2, 0.8}))->nats(), 0.0);
  EXPECT_DOUBLE_EQ(RenyiInf(Dist({1.0, 0.0}), Dist({0.5, 0.5}))->nats(), kLn2);
  EXPECT_TRUE(RenyiInf(Dist({0.5, 0.5}), Dist({1.0, 0.0}))->is_infinite());
  // 0/0 = 1 on the shared null symbol.
  EXPECT_EQ(RenyiInf(Dist({0.0, 1.0}), Dist({0.0, 1.0}))->nats(), 0.0);
}

TEST(RenyiInfTest, RejectsAlphabetMismatch) {
  auto p = *DiscreteDistribution::Create(Alphabet::Integers(0, 2), {0.5, 0.5});
  auto q = *DiscreteDistribution::Create(Alphabet::Integers(1, 2), {0.5, 0.5});
  EXPECT_EQ(RenyiInf(p, q).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(PmlTest, IdentityUniformLeaksLogN) {
  for (std::size_t n : {2u, 4u, 7u}) {
    const JointModel model = IdentityUniform(n);
    for (std::size_t y = 0; y < n; ++y) {
      EXPECT_NEAR(PmlAt(model, y).nats(), std::log(static_cast<double>(n)),
                  1e-15);
    }
  }
}

TEST(PmlTest, ConstantChannelLeaksNothing) {
  const JointModel model = ConstantModel();
  EXPECT_EQ(Pml(model, Symbol(0))->nats(), 0.0);
  EXPECT_EQ(Pml(model, Symbol(1))->nats(), 0.0);
}

TEST(PmlTest, GeometricBinaryMatchesClosedForm) {
  auto model = MakeGeometricBinaryModel(0.3, 0.5, 1e-12);
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_NEAR(PmlAt(*model, 0).nats(), kGeomLeak0, 1e-10);
  EXPECT_NEAR(PmlAt(*model, 1).nats(), kGeomLeak1, 1e-10);
}

TEST(ProfileTest, IdentityAndGeometric) {
  const LeakageProfile identity = ComputeLeakageProfile(IdentityUniform(4));
  ASSERT_EQ(identity.size(), 4u);
  for (std::size_t y = 0; y < 4; ++y) {
    EXPECT_NEAR(identity.leakages()[y].nats(), std::log(4.0), 1e-15);
    EXPECT_EQ(identity.weights()[y], 0.25);
  }
  const LeakageProfile geom =
      ComputeLeakageProfile(*MakeGeometricBinaryModel(0.3, 0.5, 1e-12));
  EXPECT_NEAR(geom.weights()[0], kGeomPy0, 1e-12);
  EXPECT_NEAR(geom.weights()[1], 1.0 - kGeomPy0, 1e-11);
  EXPECT_NEAR(geom.leakages()[0].nats(), kGeomLeak0, 1e-10);
  EXPECT_NEAR(geom.leakages()[1].nats(), kGeomLeak1, 1e-10);
}

TEST(ProfileTest, ZeroProbabilityColumnHasZeroLeakage) {
  const Alphabet in = Alphabet::Integers(0, 2);
  const Alphabet out = Alphabet::Integers(0, 3);
  auto model = *JointModel::Create(
      *DiscreteDistribution::Create(in, {0.4, 0.6}),
      *DiscreteChannel::Create(in, out, {{0.9, 0.1, 0.0}, {0.2, 0.8, 0.0}}));
  const LeakageProfile profile = ComputeLeakageProfile(model);
  EXPECT_EQ(profile.weights()[2], 0.0);
  EXPECT_EQ(profile.leakages()[2].nats(), 0.0);
}

TEST(ProfileTest, CreateEnforcesZeroWeightConvention) {
  auto weights = Dist({1.0, 0.0});
  EXPECT_FALSE(LeakageProfile::Create(
                   weights, {LeakageValue(), LeakageValue::Nats(0.5)})
                   .ok());
  EXPECT_FALSE(LeakageProfile::Create(weights, {LeakageValue()}).ok());
}

TEST(ProfileTest, ParallelEvaluationKeepsAlphabetOrder) {
  std::mt19937_64 rng(11);
  const JointModel model = RandomModel(rng, 8, 8);
  const LeakageProfile serial = ComputeLeakageProfile(model, 1);
  const LeakageProfile parallel = ComputeLeakageProfile(model, 4);
  EXPECT_EQ(serial.leakages(), parallel.leakages());
}

TEST(MaximalLeakageTest, Examples) {
  EXPECT_NEAR(MaximalLeakage(ComputeLeakageProfile(IdentityUniform(5))).nats(),
              std::log(5.0), 1e-14);
  EXPECT_EQ(MaximalLeakage(ComputeLeakageProfile(ConstantModel())).nats(), 0.0);
  std::mt19937_64 rng(4);
  const Alphabet a = Alphabet::Integers(0, 4);
  auto model = *JointModel::Create(
      *DiscreteDistribution::Create(a, ::pmlkit::testing::RandomSimplex(rng, 4)),
      RandomChannel(rng, a, a));
  EXPECT_NEAR(MaximalLeakage(ComputeLeakageProfile(model)).nats(),
              ColumnMaxLeakage(model), 1e-12);
}

TEST(MaximalLeakageTest, InfiniteOnPositiveWeightIsInfinite) {
  auto profile = *LeakageProfileFromPosteriors(
      Dist({1.0, 0.0}), Dist({0.5, 0.5}), {Dist({1.0, 0.0}), Dist({0.0, 1.0})});
  EXPECT_TRUE(profile.leakages()[1].is_infinite());
  EXPECT_TRUE(MaximalLeakage(profile).is_infinite());
  EXPECT_TRUE(MeanLeakage(profile).is_infinite());
}

TEST(MeanLeakageTest, Examples) {
  EXPECT_EQ(MeanLeakage(ComputeLeakageProfile(ConstantModel())).nats(), 0.0);
  EXPECT_NEAR(MeanLeakage(ComputeLeakageProfile(IdentityUniform(6))).nats(),
              std::log(6.0), 1e-14);
  const LeakageProfile geom =
      ComputeLeakageProfile(*MakeGeometricBinaryModel(0.3, 0.5, 1e-12));
  EXPECT_NEAR(MeanLeakage(geom).nats(),
              kGeomPy0 * kGeomLeak0 + (1.0 - kGeomPy0) * kGeomLeak1, 1e-10);
}

TEST(MeanLeakageTest, ZeroTimesInfinityIsZero) {
  auto profile = *LeakageProfileFromPosteriors(
      Dist({0.5, 0.5}), Dist({1.0, 0.0}),
      {Dist({0.5, 0.5}), Dist({0.5, 0.5})});
  EXPECT_EQ(MeanLeakage(profile).nats(), 0.0);
}

TEST(TailTest, Examples) {
  const LeakageProfile constant = ComputeLeakageProfile(ConstantModel());
  EXPECT_EQ(*TailProbability(constant, 0.0), 0.0);
  EXPECT_EQ(*TailProbability(constant, 3.0), 0.0);
  const LeakageProfile identity = ComputeLeakageProfile(IdentityUniform(3));
  EXPECT_EQ(*TailProbability(identity, 0.0), 1.0);
  EXPECT_EQ(*TailProbability(identity, std::log(3.0)), 0.0);
  const LeakageProfile geom =
      ComputeLeakageProfile(*MakeGeometricBinaryModel(0.3, 0.5, 1e-12));
  EXPECT_NEAR(*TailProbability(geom, 0.5), kGeomPy0, 1e-12);
  EXPECT_FALSE(TailProbability(geom, -0.1).ok());
}

TEST(CdfTest, StepsAtDistinctValues) {
  const LeakageProfile geom =
      ComputeLeakageProfile(*MakeGeometricBinaryModel(0.3, 0.5, 1e-12));
  const auto cdf = LeakageCdf(geom);
  ASSERT_EQ(cdf.size(), 2u);
  EXPECT_NEAR(cdf[0].leakage.nats(), kGeomLeak1, 1e-10);
  EXPECT_NEAR(cdf[0].cumulative, 1.0 - kGeomPy0, 1e-11);
  EXPECT_NEAR(cdf[1].cumulative, 1.0, 1e-11);
  EXPECT_EQ(LeakageCdf(ComputeLeakageProfile(IdentityUniform(4))).size(), 1u);
}

TEST(AbsoluteContinuityTest, Examples) {
  std::mt19937_64 rng(5);
  const JointModel model = RandomModel(rng, 6, 6);
  for (std::size_t y = 0; y < model.output_alphabet().size(); ++y) {
    EXPECT_TRUE(
        CheckAbsoluteContinuity(model, model.output_alphabet()[y])->holds);
  }
  EXPECT_TRUE(CheckAbsoluteContinuity(Dist({0.0, 1.0}), Dist({0.0, 1.0}))->holds);
  auto result = *CheckAbsoluteContinuity(Dist({0.2, 0.3, 0.5}),
                                         Dist({0.5, 0.5, 0.0}));
  EXPECT_FALSE(result.holds);
  ASSERT_TRUE(result.witness.has_value());
  EXPECT_EQ(*result.witness, 2u);
}

class LeakagePropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(LeakagePropertyTest, NonNegativeAndLikelihoodRatioForm) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 100; ++trial) {
    const JointModel model = RandomModel(rng, 8, 8, trial % 3 == 0);
    for (std::size_t y = 0; y < model.output_alphabet().size(); ++y) {
      const LeakageValue v = PmlAt(model, y);
      EXPECT_GE(v.nats(), 0.0);
      if (model.marginal()[y] > 0.0) {
        EXPECT_NEAR(v.nats(), LikelihoodRatioLeakage(model, y), 1e-10);
      }
    }
  }
}

TEST_P(LeakagePropertyTest, MaximalLeakageIsColumnMaxSum) {
  std::mt19937_64 rng(GetParam() + 100);
  for (int trial = 0; trial < 100; ++trial) {
    const JointModel model = RandomModel(rng, 8, 8);
    EXPECT_NEAR(MaximalLeakage(ComputeLeakageProfile(model)).nats(),
                ColumnMaxLeakage(model), 1e-10);
  }
}

TEST_P(LeakagePropertyTest, DataProcessing) {
  std::mt19937_64 rng(GetParam() + 200);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const JointModel xy = RandomModel(rng, 6, 6, trial % 2 == 0);
    const Alphabet& ys = xy.output_alphabet();
    const Alphabet zs = Alphabet::Integers(0, size(rng));
    const DiscreteChannel post = RandomChannel(rng, ys, zs, trial % 3 == 0);
    std::vector<std::vector<double>> rows;
    for (std::size_t x = 0; x < xy.input_alphabet().size(); ++x) {
      std::vector<double> row(zs.size(), 0.0);
      for (std::size_t y = 0; y < ys.size(); ++y) {
        for (std::size_t z = 0; z < zs.size(); ++z) {
          row[z] += xy.channel()(x, y) * post(y, z);
        }
      }
      rows.push_back(std::move(row));
    }
    auto composed = DiscreteChannel::Create(xy.input_alphabet(), zs, rows);
    ASSERT_TRUE(composed.ok()) << composed.status();
    const JointModel xz = *JointModel::Create(xy.prior(), *composed);
    double max_y = 0.0;
    for (std::size_t y = 0; y < ys.size(); ++y) {
      max_y = std::max(max_y, PmlAt(xy, y).nats());
    }
    for (std::size_t z = 0; z < zs.size(); ++z) {
      EXPECT_LE(PmlAt(xz, z).nats(), max_y + 1e-10);
    }
  }
}

TEST_P(LeakagePropertyTest, TailIsMonotoneAndStepwise) {
  std::mt19937_64 rng(GetParam() + 300);
  for (int trial = 0; trial < 50; ++trial) {
    const LeakageProfile profile =
        ComputeLeakageProfile(RandomModel(rng, 8, 8));
    double top = 0.0;
    for (const auto& v : profile.leakages()) top = std::max(top, v.nats());
    double previous = 1.0;
    for (int i = 0; i < 50; ++i) {
      const double eps = top * 1.1 * i / 49.0;
      const double p = *TailProbability(profile, eps);
      EXPECT_LE(p, previous + 1e-15);
      previous = p;
    }
    // Constant between consecutive distinct values; right-continuous.
    const auto cdf = LeakageCdf(profile);
    for (std::size_t k = 0; k + 1 < cdf.size(); ++k) {
      const double a = cdf[k].leakage.nats();
      const double b = cdf[k + 1].leakage.nats();
      const double at_a = *TailProbability(profile, a);
      EXPECT_EQ(*TailProbability(profile, (a + b) / 2), at_a);
      EXPECT_NEAR(at_a, 1.0 - cdf[k].cumulative, 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LeakagePropertyTest, ::testing::Values(1, 2));

}  // namespace
}  // namespace pmlkit
