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

#ifndef PRIVREMAP_MODEL_HPP_
#define PRIVREMAP_MODEL_HPP_

#include <optional>
#include <string>

#include "privremap/error.hpp"
#include "privremap/random.hpp"

namespace privremap {

// The five scalars that govern every formula in the library.
//
// A user's true location is X = mu + S with mu ~ N(0, sigma2_mu) and
// S ~ N(0, sigma2_s). The released observation is Y = X + W with obfuscation
// noise W ~ N(0, sigma2_w). An adversary holds a noisy prior mean
// mu_check = mu + E with E ~ N(0, sigma2_e). p_h is the head probability of
// the randomized remapping coin.
struct ModelParams {
  double sigma2_mu = 1.0;
  double sigma2_s = 1.0;
  double sigma2_e = 1.0;
  double sigma2_w = 1.0;
  double p_h = 0.5;
};

// One realization of all latent and observed variables.
struct WorldSample {
  double mu;        // user mean
  double s;         // per-location deviation, X - mu
  double w;         // obfuscation noise draw
  double e;         // adversary prior-error draw
  double x;         // true location, mu + s
  double y;         // obfuscated release, x + w
  double mu_check;  // adversary prior mean, mu + e
  double y_r;       // remapped release
};

enum class MechanismKind { kNoRemap, kRemap, kRandomized };

enum class Branch { kHead, kTail };

// Released value plus which coin branch produced it. The branch is recorded
// for diagnostics only; no estimator ever reads it.
struct MechanismOutput {
  double z;
  std::optional<Branch> branch;  // present iff the mechanism is randomized
};

const char* MechanismName(MechanismKind kind);
std::optional<MechanismKind> ParseMechanism(const std::string& name);

// Returns params unchanged when all invariants hold; throws Error with code
// NonFiniteParameter, NegativeVariance, ProbabilityOutOfRange or
// DegenerateModel otherwise. DegenerateModel means sigma2_s + sigma2_w == 0,
// i.e. the released observation would be deterministic.
ModelParams ValidateParams(const ModelParams& params);

// Posterior-mean release for a known user mean:
//   (sigma2_w * mu + sigma2_s * y) / (sigma2_s + sigma2_w),
// a convex combination of the noisy observation and the mean. The degenerate
// all-zero-variance model (normally rejected by ValidateParams) has y = mu,
// so returning y keeps the convex-combination reading.
inline double Remap(double y, double mu, const ModelParams& params) {
  const double denom = params.sigma2_s + params.sigma2_w;
  if (denom == 0.0) return y;
  return (params.sigma2_w * mu + params.sigma2_s * y) / denom;
}

// Draws mu, S, W, E independently from zero-mean normals and fills in the
// derived fields. Does not validate params.
WorldSample SampleWorld(const ModelParams& params, RandomStream& rng);

// NoRemap releases y, Remap releases y_r, Randomized releases y_r with
// probability p_h (independent coin per call) and y otherwise.
MechanismOutput ApplyMechanism(const WorldSample& world, MechanismKind kind,
                               const ModelParams& params, RandomStream& rng);

}  // namespace privremap

#endif  // PRIVREMAP_MODEL_HPP_
