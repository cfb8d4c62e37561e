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

#include "pmlkit/model_io.h"

#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace pmlkit {
namespace {

using ::pmlkit::testing::Fixture;

std::string Message(const absl::Status& status) {
  return std::string(status.message());
}

TEST(ParseJsonTest, ReportsLineAndColumn) {
  auto j = ParseJson("{\n  \"a\": [1, 2,]\n}", "model.json");
  ASSERT_FALSE(j.ok());
  EXPECT_EQ(j.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(Message(j.status()).rfind("model.json:2:14:", 0), 0u)
      << j.status();
}

TEST(ChannelJsonTest, ParsesEmbeddedPrior) {
  auto spec = ParseChannelJson(R"({
    "alphabet_x": ["a", "b"], "alphabet_y": [0, 1],
    "prior": [0.25, 0.75], "channel": [[1, 0], [0.5, 0.5]]})",
                               "m.json");
  ASSERT_TRUE(spec.ok()) << spec.status();
  ASSERT_TRUE(spec->prior.has_value());
  auto model = AssembleModel(*std::move(spec), std::nullopt);
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_EQ(model->input_alphabet()[1], Symbol("b"));
  EXPECT_NEAR(model->marginal()[0], 0.25 + 0.375, 1e-15);
}

TEST(ChannelJsonTest, ShapeErrorsAreNamed) {
  auto missing = ParseChannelJson(R"({"alphabet_x": [0], "channel": [[1]]})",
                                  "m.json");
  EXPECT_NE(Message(missing.status()).find("alphabet_y"), std::string::npos);
  auto ragged = ParseChannelJson(
      R"({"alphabet_x": [0, 1], "alphabet_y": [0, 1], "channel": [[1, 0], [1]]})",
      "m.json");
  EXPECT_NE(Message(ragged.status()).find("channel[1]"), std::string::npos);
  auto symbols = ParseChannelJson(
      R"({"alphabet_x": [0.5], "alphabet_y": [0], "channel": [[1]]})", "m.json");
  EXPECT_FALSE(symbols.ok());
  auto dup = ParseChannelJson(
      R"({"alphabet_x": [0, 0], "alphabet_y": [0], "channel": [[1], [1]]})",
      "m.json");
  EXPECT_NE(Message(dup.status()).find("alphabet_x"), std::string::npos);
}

TEST(ChannelJsonTest, RowSumViolationIsNamed) {
  auto model = LoadModel(Fixture("models/malformed_row.json"));
  ASSERT_FALSE(model.ok());
  EXPECT_EQ(model.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(Message(model.status()).find("row 1"), std::string::npos);
  EXPECT_NE(Message(model.status()).find("sum"), std::string::npos);
}

TEST(ChannelJsonTest, TruncationDeficitsAreRead) {
  auto model = LoadModel(Fixture("models/geometric_binary_p0.3_q0.5.json"));
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_GT(model->prior().truncation_deficit(), 0.0);
  EXPECT_LE(model->prior().truncation_deficit(), 1e-12);
  EXPECT_EQ(model->input_alphabet().size(), 78u);
}

TEST(ChannelCsvTest, WithAndWithoutInputLabels) {
  auto labeled = ParseChannelCsv("y0,y1\nx0,0.5,0.5\nx1,1,0\n", "c.csv");
  ASSERT_TRUE(labeled.ok()) << labeled.status();
  EXPECT_EQ(labeled->channel.input_alphabet()[1], Symbol("x1"));
  EXPECT_EQ(labeled->channel.output_alphabet()[0], Symbol("y0"));
  auto plain = ParseChannelCsv("0,1\r\n0.5,0.5\r\n\r\n1e0,0\r\n", "c.csv");
  ASSERT_TRUE(plain.ok()) << plain.status();
  EXPECT_EQ(plain->channel.input_alphabet()[1], Symbol(std::int64_t{1}));
  EXPECT_EQ(plain->channel(1, 0), 1.0);
}

TEST(ChannelCsvTest, ErrorsCarryPositions) {
  auto bad_number = ParseChannelCsv("0,1\n0.5,abc\n", "c.csv");
  EXPECT_EQ(Message(bad_number.status()).rfind("c.csv:2:2:", 0), 0u)
      << bad_number.status();
  auto bad_width = ParseChannelCsv("0,1\n0.5,0.25,0.25,0\n", "c.csv");
  EXPECT_EQ(Message(bad_width.status()).rfind("c.csv:2:", 0), 0u);
  // Locale-style decimal commas are not numbers.
  auto comma = ParseChannelCsv("0\n\"1,0\"\n", "c.csv");
  EXPECT_FALSE(comma.ok());
}

TEST(PriorFileTest, Formats) {
  auto array = ParsePrior("[0.5, 0.5]", "p.json", false);
  ASSERT_TRUE(array.ok());
  EXPECT_FALSE(array->alphabet.has_value());
  auto object = ParsePrior(
      R"({"alphabet_x": [1, 2], "prior": [0.5, 0.5], "truncation_deficit": 0})",
      "p.json", false);
  ASSERT_TRUE(object.ok());
  EXPECT_TRUE(object->alphabet.has_value());
  auto csv = ParsePrior("a,b\n0.2,0.8\n", "p.csv", true);
  ASSERT_TRUE(csv.ok());
  EXPECT_EQ((*csv->alphabet)[0], Symbol("a"));
  EXPECT_EQ(csv->probs[1], 0.8);
  EXPECT_FALSE(ParsePrior("0.2,x\n", "p.csv", true).ok());
}

TEST(LoadModelTest, CsvChannelWithCsvPrior) {
  auto model = LoadModel(Fixture("models/identity4.csv"),
                         Fixture("models/uniform4_prior.csv"));
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_EQ(model->marginal()[2], 0.25);
}

TEST(LoadModelTest, PriorFileOverridesAndMustMatch) {
  auto mismatch = AssembleModel(
      *ParseChannelCsv("0,1\n1,0\n0,1\n", "c.csv"),
      *ParsePrior(R"({"alphabet_x": [5, 6], "prior": [0.5, 0.5]})", "p.json",
                  false));
  EXPECT_NE(Message(mismatch.status()).find("dimension mismatch"),
            std::string::npos);
  auto no_prior =
      AssembleModel(*ParseChannelCsv("0,1\n1,0\n0,1\n", "c.csv"), std::nullopt);
  EXPECT_NE(Message(no_prior.status()).find("no prior"), std::string::npos);
  auto bad_prior = AssembleModel(*ParseChannelCsv("0,1\n1,0\n0,1\n", "c.csv"),
                                 *ParsePrior("[0.5, 0.6]", "p.json", false));
  EXPECT_NE(Message(bad_prior.status()).find("prior"), std::string::npos);
  EXPECT_EQ(LoadModel(Fixture("models/does_not_exist.json")).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(FamilySpecTest, RoundTrip) {
  for (const char* family :
       {"additive_gaussian", "bivariate_gaussian", "gaussian_mixture",
        "poisson_binomial", "geometric_binary"}) {
    auto text = ReadFile(Fixture(std::string("families/") + family + ".json"));
    ASSERT_TRUE(text.ok()) << family;
    auto model = ParseFamilySpec(*ParseJson(*text, family));
    ASSERT_TRUE(model.ok()) << model.status();
    EXPECT_EQ(FamilyName(*model), family);
    EXPECT_EQ(FamilySpecToJson(*model), *ParseJson(*text, family));
  }
}

TEST(FamilySpecTest, Errors) {
  auto unknown = ParseFamilySpec(Json::parse(R"({"family": "cauchy"})"));
  EXPECT_NE(Message(unknown.status()).find("unknown family"), std::string::npos);
  auto missing = ParseFamilySpec(
      Json::parse(R"({"family": "additive_gaussian", "params": {"sigma_x": 1}})"));
  EXPECT_NE(Message(missing.status()).find("sigma_n"), std::string::npos);
  auto invalid = ParseFamilySpec(Json::parse(
      R"({"family": "gaussian_mixture", "params": {"sigma": -1}})"));
  EXPECT_NE(Message(invalid.status()).find("parameter error"),
            std::string::npos);
}

TEST(GridSpecTest, OverridesAndValidation) {
  auto grid = ParseGridSpec(Json::parse(R"({"points": 4096})"));
  ASSERT_TRUE(grid.ok());
  EXPECT_EQ(grid->points, 4096);
  EXPECT_EQ(grid->refine, 16);
  EXPECT_FALSE(ParseGridSpec(Json::parse(R"({"points": 10})")).ok());
  EXPECT_FALSE(ParseGridSpec(Json::parse(R"({"points": "many"})")).ok());
  EXPECT_EQ(GridSpecToJson(GridSpec{}),
            Json::parse(R"({"points":16384,"quantile_clip":1e-9,"refine":16})"));
}

}  // namespace
}  // namespace pmlkit
