// Copyright 2026 The privremap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privremap/analytic.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace privremap {
namespace {

const ModelParams kUnit{1.0, 1.0, 1.0, 1.0, 0.5};

ModelParams WithSigma2W(ModelParams params, double sigma2_w) {
  params.sigma2_w = sigma2_w;
  return params;
}

TEST(UtilityNoRemapTest, EqualsNoiseVariance) {
  EXPECT_EQ(UtilityNoRemap(WithSigma2W(kUnit, 0.0)), 0.0);
  EXPECT_EQ(UtilityNoRemap(WithSigma2W(kUnit, 1.0)), 1.0);
  EXPECT_EQ(UtilityNoRemap(WithSigma2W(kUnit, 0.5)), 0.5);
}

TEST(PrivacyLocPerfectNoRemapTest, KnownValues) {
  EXPECT_DOUBLE_EQ(PrivacyLocPerfectNoRemap(kUnit), 0.5);
  EXPECT_EQ(PrivacyLocPerfectNoRemap(WithSigma2W(kUnit, 0.0)), 0.0);
  // Large-noise limit is sigma2_s.
  EXPECT_NEAR(PrivacyLocPerfectNoRemap(WithSigma2W(kUnit, 1e9)), 1.0, 1e-6);
}

TEST(UtilityPrivacyPerfectRemapTest, UtilityEqualsPrivacy) {
  const UtilityPrivacyPair unit = UtilityPrivacyPerfectRemap(kUnit);
  EXPECT_DOUBLE_EQ(unit.u, 0.5);
  EXPECT_DOUBLE_EQ(unit.p_loc, 0.5);
  const UtilityPrivacyPair zero =
      UtilityPrivacyPerfectRemap(WithSigma2W(kUnit, 0.0));
  EXPECT_EQ(zero.u, 0.0);
  EXPECT_EQ(zero.p_loc, 0.0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    const UtilityPrivacyPair pair = UtilityPrivacyPerfectRemap(params);
    EXPECT_EQ(pair.u, pair.p_loc);
  }
}

TEST(PrivacyModelImperfectNoRemapTest, KnownValues) {
  EXPECT_DOUBLE_EQ(PrivacyModelImperfectNoRemap(kUnit), 0.4);
  ModelParams known_mean = kUnit;
  known_mean.sigma2_e = 0.0;
  EXPECT_EQ(PrivacyModelImperfectNoRemap(known_mean), 0.0);
  // With infinite noise the release is useless and the error reduces to the
  // prior-vs-prior-error combination sigma2_e*sigma2_mu/(sigma2_mu+sigma2_e).
  EXPECT_NEAR(PrivacyModelImperfectNoRemap(WithSigma2W(kUnit, 1e9)), 0.5,
              1e-6);
}

TEST(PrivacyLocImperfectNoRemapTest, KnownValues) {
  EXPECT_DOUBLE_EQ(PrivacyLocImperfectNoRemap(kUnit), 0.6);
  ModelParams known_mean = kUnit;
  known_mean.sigma2_e = 0.0;
  EXPECT_EQ(PrivacyLocImperfectNoRemap(known_mean),
            PrivacyLocPerfectNoRemap(known_mean));
  EXPECT_GE(PrivacyLocImperfectNoRemap(kUnit),
            PrivacyLocPerfectNoRemap(kUnit));
}

TEST(UtilityImperfectRemapTest, KnownValues) {
  EXPECT_DOUBLE_EQ(UtilityImperfectRemap(kUnit), 0.5);
  EXPECT_EQ(UtilityImperfectRemap(WithSigma2W(kUnit, 0.0)), 0.0);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    EXPECT_EQ(UtilityImperfectRemap(params),
              UtilityPrivacyPerfectRemap(params).u);
  }
}

TEST(PrivacyModelImperfectRemapTest, KnownValuesAndLeakageLimit) {
  EXPECT_DOUBLE_EQ(PrivacyModelImperfectRemap(kUnit), 0.25);
  // Complete model leakage as the noise grows.
  EXPECT_LT(PrivacyModelImperfectRemap(WithSigma2W(kUnit, 1e9)), 1e-8);
  const ModelParams noiseless = WithSigma2W(kUnit, 0.0);
  EXPECT_EQ(PrivacyModelImperfectRemap(noiseless),
            PrivacyModelImperfectNoRemap(noiseless));
}

TEST(PrivacyLocImperfectRemapTest, KnownValuesAndOrdering) {
  EXPECT_DOUBLE_EQ(PrivacyLocImperfectRemap(kUnit), 0.5);
  EXPECT_EQ(PrivacyLocImperfectRemap(WithSigma2W(kUnit, 0.0)), 0.0);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    EXPECT_LE(PrivacyLocImperfectRemap(params),
              PrivacyLocImperfectNoRemap(params) + 1e-15);
  }
}

TEST(UtilityRandomizedTest, MixtureOfEndpoints) {
  EXPECT_DOUBLE_EQ(UtilityRandomized(kUnit), 0.75);
  ModelParams params = kUnit;
  params.p_h = 0.0;
  EXPECT_EQ(UtilityRandomized(params), UtilityNoRemap(params));
  params.p_h = 1.0;
  EXPECT_EQ(UtilityRandomized(params), UtilityImperfectRemap(params));
}

TEST(EquivalentPriorErrorFromHistoryTest, PrecisionAddition) {
  EXPECT_DOUBLE_EQ(EquivalentPriorErrorFromHistory(1, kUnit), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(EquivalentPriorErrorFromHistory(2, kUnit), 0.5);
  EXPECT_LT(EquivalentPriorErrorFromHistory(1000000000, kUnit), 1e-8);
  ModelParams zero_prior = kUnit;
  zero_prior.sigma2_mu = 0.0;
  EXPECT_EQ(EquivalentPriorErrorFromHistory(1, zero_prior), 0.0);
  double previous = EquivalentPriorErrorFromHistory(1, kUnit);
  for (uint64_t n = 2; n <= 64; n *= 2) {
    const double current = EquivalentPriorErrorFromHistory(n, kUnit);
    EXPECT_LT(current, previous);
    previous = current;
  }
  EXPECT_THROW(EquivalentPriorErrorFromHistory(0, kUnit), Error);
}

// The two algebraic forms of the model-privacy expressions: the published
// quotients against the information-form (summed precisions) versions.
TEST(AnalyticPropertyTest, PrecisionFormIdentity) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    const double b = params.sigma2_s + params.sigma2_w;
    const double no_remap_precision_form =
        1.0 / (1.0 / params.sigma2_mu + 1.0 / params.sigma2_e + 1.0 / b);
    EXPECT_LE(testing::RelDiff(PrivacyModelImperfectNoRemap(params),
                               no_remap_precision_form),
              1e-12);
    const double remap_precision_form =
        1.0 / (1.0 / params.sigma2_mu + 1.0 / params.sigma2_e +
               b / (params.sigma2_s * params.sigma2_s));
    EXPECT_LE(testing::RelDiff(PrivacyModelImperfectRemap(params),
                               remap_precision_form),
              1e-12);
  }
}

TEST(AnalyticPropertyTest, ModelLeakageOrdering) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 500; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    const double remap = PrivacyModelImperfectRemap(params);
    const double no_remap = PrivacyModelImperfectNoRemap(params);
    EXPECT_LE(remap, no_remap * (1.0 + 1e-12));
    if (params.sigma2_w > 0.0) {
      EXPECT_LT(remap, no_remap);
    }
  }
}

TEST(AnalyticPropertyTest, LeakageMonotoneInNoise) {
  // Remapping leaks more about the model as noise grows; without remapping
  // more noise protects the model.
  for (double w = 0.1; w < 10.0; w *= 1.3) {
    const double next_w = w * 1.3;
    EXPECT_GT(PrivacyModelImperfectRemap(WithSigma2W(kUnit, w)),
              PrivacyModelImperfectRemap(WithSigma2W(kUnit, next_w)));
    EXPECT_LT(PrivacyModelImperfectNoRemap(WithSigma2W(kUnit, w)),
              PrivacyModelImperfectNoRemap(WithSigma2W(kUnit, next_w)));
  }
}

TEST(AnalyticPropertyTest, LocationPrivacyOrdering) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 500; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    const double tol = 1e-12 * (1.0 + params.sigma2_w);
    EXPECT_LE(PrivacyLocImperfectRemap(params),
              PrivacyLocImperfectNoRemap(params) + tol);
    EXPECT_LE(PrivacyLocImperfectNoRemap(params),
              UtilityNoRemap(params) + tol);
    EXPECT_LE(PrivacyLocPerfectNoRemap(params), UtilityNoRemap(params) + tol);
  }
}

TEST(AnalyticPropertyTest, PerfectPriorRecovery) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    ModelParams params = testing::RandomValidParams(rng);
    params.sigma2_e = 0.0;
    EXPECT_EQ(PrivacyLocImperfectNoRemap(params),
              PrivacyLocPerfectNoRemap(params));
    EXPECT_EQ(PrivacyModelImperfectNoRemap(params), 0.0);
    EXPECT_EQ(PrivacyModelImperfectRemap(params), 0.0);
    EXPECT_EQ(PrivacyLocImperfectRemap(params),
              UtilityPrivacyPerfectRemap(params).p_loc);
  }
}

TEST(MakeAnalyticReportTest, CaseLabelsAndFields) {
  const AnalyticReport imperfect_remap = MakeAnalyticReport(
      kUnit, MechanismKind::kRemap, AdversaryMode::kImperfect);
  EXPECT_EQ(imperfect_remap.case_label, CaseLabel::kImperfectRemap);
  EXPECT_DOUBLE_EQ(imperfect_remap.u, 0.5);
  EXPECT_DOUBLE_EQ(imperfect_remap.p_loc.value(), 0.5);
  EXPECT_DOUBLE_EQ(imperfect_remap.p_model.value(), 0.25);

  const AnalyticReport perfect_none = MakeAnalyticReport(
      kUnit, MechanismKind::kNoRemap, AdversaryMode::kPerfect);
  EXPECT_EQ(perfect_none.case_label, CaseLabel::kPerfectNoRemap);
  EXPECT_DOUBLE_EQ(perfect_none.u, 1.0);
  EXPECT_DOUBLE_EQ(perfect_none.p_loc.value(), 0.5);
  EXPECT_EQ(perfect_none.p_model.value(), 0.0);

  const AnalyticReport randomized = MakeAnalyticReport(
      kUnit, MechanismKind::kRandomized, AdversaryMode::kImperfect);
  EXPECT_EQ(randomized.case_label, CaseLabel::kRandomizedUtilityOnly);
  EXPECT_DOUBLE_EQ(randomized.u, 0.75);
  EXPECT_FALSE(randomized.p_loc.has_value());
  EXPECT_FALSE(randomized.p_model.has_value());
}

TEST(MakeAnalyticReportTest, AdversaryNeverWorseThanFriend) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 200; ++i) {
    const ModelParams params = testing::RandomValidParams(rng);
    for (const MechanismKind kind :
         {MechanismKind::kNoRemap, MechanismKind::kRemap}) {
      for (const AdversaryMode mode :
           {AdversaryMode::kPerfect, AdversaryMode::kImperfect}) {
        const AnalyticReport report = MakeAnalyticReport(params, kind, mode);
        ASSERT_TRUE(report.p_loc.has_value());
        EXPECT_LE(*report.p_loc, report.u * (1.0 + 1e-12));
      }
    }
  }
}

TEST(AnalyticReportJsonTest, FieldsAndOmissions) {
  const auto remap_json = nlohmann::json::parse(ToJson(MakeAnalyticReport(
      kUnit, MechanismKind::kRemap, AdversaryMode::kImperfect)));
  EXPECT_EQ(remap_json["case_label"], "imperfect_remap");
  EXPECT_DOUBLE_EQ(remap_json["u"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(remap_json["p_loc"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(remap_json["p_model"].get<double>(), 0.25);

  const auto randomized_json = nlohmann::json::parse(ToJson(MakeAnalyticReport(
      kUnit, MechanismKind::kRandomized, AdversaryMode::kPerfect)));
  EXPECT_EQ(randomized_json["case_label"], "randomized_utility_only");
  EXPECT_FALSE(randomized_json.contains("p_loc"));
  EXPECT_FALSE(randomized_json.contains("p_model"));
}

}  // namespace
}  // namespace privremap
