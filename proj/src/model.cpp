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

namespace privremap {

const char* MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kNoRemap:
      return "none";
    case MechanismKind::kRemap:
      return "remap";
    case MechanismKind::kRandomized:
      return "randomized";
  }
  return "unknown";
}

std::optional<MechanismKind> ParseMechanism(const std::string& name) {
  if (name == "none") return MechanismKind::kNoRemap;
  if (name == "remap") return MechanismKind::kRemap;
  if (name == "randomized") return MechanismKind::kRandomized;
  return std::nullopt;
}

ModelParams ValidateParams(const ModelParams& params) {
  const struct {
    const char* name;
    double value;
  } variances[] = {{"sigma2_mu", params.sigma2_mu},
                   {"sigma2_s", params.sigma2_s},
                   {"sigma2_e", params.sigma2_e},
                   {"sigma2_w", params.sigma2_w}};
  for (const auto& v : variances) {
    if (!std::isfinite(v.value)) {
      throw Error(ErrorCode::kNonFiniteParameter,
                  std::string(v.name) + " must be finite");
    }
    if (v.value < 0.0) {
      throw Error(ErrorCode::kNegativeVariance,
                  std::string(v.name) + " must be >= 0");
    }
  }
  if (!std::isfinite(params.p_h)) {
    throw Error(ErrorCode::kNonFiniteParameter, "p_h must be finite");
  }
  if (params.p_h < 0.0 || params.p_h > 1.0) {
    throw Error(ErrorCode::kProbabilityOutOfRange, "p_h must be in [0, 1]");
  }
  if (params.sigma2_s + params.sigma2_w == 0.0) {
    throw Error(ErrorCode::kDegenerateModel,
                "sigma2_s + sigma2_w must be > 0");
  }
  return params;
}

WorldSample SampleWorld(const ModelParams& params, RandomStream& rng) {
  WorldSample world;
  world.mu = std::sqrt(params.sigma2_mu) * rng.Normal();
  world.s = std::sqrt(params.sigma2_s) * rng.Normal();
  world.w = std::sqrt(params.sigma2_w) * rng.Normal();
  world.e = std::sqrt(params.sigma2_e) * rng.Normal();
  world.x = world.mu + world.s;
  world.y = world.x + world.w;
  world.mu_check = world.mu + world.e;
  world.y_r = Remap(world.y, world.mu, params);
  return world;
}

MechanismOutput ApplyMechanism(const WorldSample& world, MechanismKind kind,
                               const ModelParams& params, RandomStream& rng) {
  switch (kind) {
    case MechanismKind::kNoRemap:
      return MechanismOutput{world.y, std::nullopt};
    case MechanismKind::kRemap:
      return MechanismOutput{world.y_r, std::nullopt};
    case MechanismKind::kRandomized: {
      // Uniform() < 1 always holds, so p_h = 1 releases y_r on every call
      // and p_h = 0 never does.
      const bool head = rng.Uniform() < params.p_h;
      return MechanismOutput{head ? world.y_r : world.y,
                             head ? Branch::kHead : Branch::kTail};
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown mechanism kind");
}

}  // namespace privremap
