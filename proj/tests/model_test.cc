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

#include "privremap/model.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace privremap {
namespace {

void ExpectErrorCode(ErrorCode expected, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected error " << ErrorCodeName(expected);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
  }
}

TEST(ValidateParamsTest, AcceptsUnitParams) {
  const ModelParams params{1.0, 1.0, 1.0, 1.0, 0.5};
  EXPECT_NO_THROW(ValidateParams(params));
}

TEST(ValidateParamsTest, RejectsNegativeVariance) {
  ExpectErrorCode(ErrorCode::kNegativeVariance, [] {
    ValidateParams(ModelParams{1.0, 1.0, 1.0, -0.1, 0.5});
  });
}

TEST(ValidateParamsTest, RejectsDegenerateModel) {
  ExpectErrorCode(ErrorCode::kDegenerateModel, [] {
    ValidateParams(ModelParams{1.0, 0.0, 1.0, 0.0, 0.5});
  });
}

TEST(ValidateParamsTest, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  ExpectErrorCode(ErrorCode::kNonFiniteParameter, [&] {
    ValidateParams(ModelParams{nan, 1.0, 1.0, 1.0, 0.5});
  });
  ExpectErrorCode(ErrorCode::kNonFiniteParameter, [&] {
    ValidateParams(ModelParams{1.0, inf, 1.0, 1.0, 0.5});
  });
  ExpectErrorCode(ErrorCode::kNonFiniteParameter, [&] {
    ValidateParams(ModelParams{1.0, 1.0, 1.0, 1.0, nan});
  });
}

TEST(ValidateParamsTest, RejectsProbabilityOutOfRange) {
  ExpectErrorCode(ErrorCode::kProbabilityOutOfRange, [] {
    ValidateParams(ModelParams{1.0, 1.0, 1.0, 1.0, 1.5});
  });
  ExpectErrorCode(ErrorCode::kProbabilityOutOfRange, [] {
    ValidateParams(ModelParams{1.0, 1.0, 1.0, 1.0, -0.01});
  });
}

TEST(SampleWorldTest, AllZeroVariancesGiveZeroFields) {
  // Degenerate on purpose; SampleWorld does not re-validate.
  const ModelParams all_zero{0.0, 0.0, 0.0, 0.0, 0.5};
  RandomStream rng(1, 0);
  const WorldSample world = SampleWorld(all_zero, rng);
  EXPECT_EQ(world.mu, 0.0);
  EXPECT_EQ(world.s, 0.0);
  EXPECT_EQ(world.w, 0.0);
  EXPECT_EQ(world.e, 0.0);
  EXPECT_EQ(world.x, 0.0);
  EXPECT_EQ(world.y, 0.0);
  EXPECT_EQ(world.mu_check, 0.0);
  EXPECT_EQ(world.y_r, 0.0);
}

TEST(SampleWorldTest, ExactIdentitiesHoldPerSample) {
  std::mt19937_64 meta(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams params = testing::RandomValidParams(meta);
    RandomStream rng(meta(), static_cast<uint64_t>(trial));
    const WorldSample world = SampleWorld(params, rng);
    EXPECT_EQ(world.x, world.mu + world.s);
    EXPECT_EQ(world.y, world.x + world.w);
    EXPECT_EQ(world.mu_check, world.mu + world.e);
    EXPECT_EQ(world.y_r, Remap(world.y, world.mu, params));
  }
}

TEST(SampleWorldTest, MomentsMatchModel) {
  const ModelParams params{1.0, 1.0, 1.0, 1.0, 0.5};
  const int n = 1000000;
  std::vector<double> y(n);
  double sum_mu = 0.0, sum_s = 0.0, sum_w = 0.0, sum_e = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(2024, static_cast<uint64_t>(i));
    const WorldSample world = SampleWorld(params, rng);
    y[i] = world.y;
    sum_mu += world.mu;
    sum_s += world.s;
    sum_w += world.w;
    sum_e += world.e;
  }
  // Var(y) = sigma2_mu + sigma2_s + sigma2_w = 3; the sample variance of a
  // Gaussian has standard error var * sqrt(2/(n-1)).
  const double var_y = testing::SampleVariance(y);
  EXPECT_NEAR(var_y, 3.0, 3.0 * 3.0 * std::sqrt(2.0 / (n - 1.0)));
  const double mean_tol = 4.0 / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(sum_mu / n, 0.0, mean_tol);
  EXPECT_NEAR(sum_s / n, 0.0, mean_tol);
  EXPECT_NEAR(sum_w / n, 0.0, mean_tol);
  EXPECT_NEAR(sum_e / n, 0.0, mean_tol);
}

TEST(ApplyMechanismTest, NoRemapReleasesNoisyValue) {
  const ModelParams params{1.0, 1.0, 1.0, 1.0, 0.5};
  RandomStream rng(5, 0);
  const WorldSample world = SampleWorld(params, rng);
  const MechanismOutput out =
      ApplyMechanism(world, MechanismKind::kNoRemap, params, rng);
  EXPECT_EQ(out.z, world.y);
  EXPECT_FALSE(out.branch.has_value());
}

TEST(ApplyMechanismTest, RemapWithZeroNoiseReleasesTruth) {
  const ModelParams params{1.0, 1.0, 1.0, 0.0, 0.5};
  RandomStream rng(6, 0);
  const WorldSample world = SampleWorld(params, rng);
  const MechanismOutput out =
      ApplyMechanism(world, MechanismKind::kRemap, params, rng);
  EXPECT_EQ(out.z, world.x);
}

TEST(ApplyMechanismTest, RandomizedEndpointsMatchPureMechanisms) {
  ModelParams params{1.0, 1.0, 1.0, 1.0, 1.0};
  for (int i = 0; i < 200; ++i) {
    RandomStream rng(7, static_cast<uint64_t>(i));
    const WorldSample world = SampleWorld(params, rng);

    params.p_h = 1.0;
    RandomStream coin_rng(8, static_cast<uint64_t>(i));
    const MechanismOutput head =
        ApplyMechanism(world, MechanismKind::kRandomized, params, coin_rng);
    EXPECT_EQ(head.z, world.y_r);
    ASSERT_TRUE(head.branch.has_value());
    EXPECT_EQ(*head.branch, Branch::kHead);

    params.p_h = 0.0;
    RandomStream coin_rng2(8, static_cast<uint64_t>(i));
    const MechanismOutput tail =
        ApplyMechanism(world, MechanismKind::kRandomized, params, coin_rng2);
    EXPECT_EQ(tail.z, world.y);
    ASSERT_TRUE(tail.branch.has_value());
    EXPECT_EQ(*tail.branch, Branch::kTail);
  }
}

TEST(ApplyMechanismTest, HeadFractionMatchesCoinProbability) {
  const ModelParams params{1.0, 1.0, 1.0, 1.0, 0.5};
  RandomStream world_rng(9, 0);
  const WorldSample world = SampleWorld(params, world_rng);
  const int n = 1000000;
  int heads = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(10, static_cast<uint64_t>(i));
    const MechanismOutput out =
        ApplyMechanism(world, MechanismKind::kRandomized, params, rng);
    if (*out.branch == Branch::kHead) ++heads;
  }
  const double fraction = static_cast<double>(heads) / n;
  const double std_error = std::sqrt(0.25 / n);
  EXPECT_NEAR(fraction, 0.5, 3.0 * std_error);
}

TEST(MechanismNameTest, RoundTrips) {
  for (const MechanismKind kind :
       {MechanismKind::kNoRemap, MechanismKind::kRemap,
        MechanismKind::kRandomized}) {
    const auto parsed = ParseMechanism(MechanismName(kind));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, kind);
  }
  EXPECT_FALSE(ParseMechanism("bogus").has_value());
}

}  // namespace
}  // namespace privremap
