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

#ifndef PRIVREMAP_ESTIMATORS_HPP_
#define PRIVREMAP_ESTIMATORS_HPP_

#include <optional>

#include "privremap/gaussian.hpp"
#include "privremap/model.hpp"

namespace privremap {

// Posterior means of the true location X and the user mean mu, from the
// adversary's point of view. head_posterior is her posterior probability
// that the released value was remapped; present only for the randomized
// mechanism.
struct AdversaryEstimate {
  double x_hat;
  double mu_hat;
  std::optional<double> head_posterior;
};

// Coordinate order used by the observation joints below.
inline constexpr int kVarX = 0;
inline constexpr int kVarMu = 1;
inline constexpr int kVarRelease = 2;
inline constexpr int kVarMuCheck = 3;

// Zero-mean joint over (X, mu, release, mu_check) where the release is y for
// kNoRemap and y_r for kRemap. Everything an imperfect-prior adversary can
// do follows from conditioning this joint.
GaussianJoint ObservationJoint(const ModelParams& params,
                               MechanismKind released_kind);

// Joint over (X, Y) once mu is known exactly and folded into the means.
GaussianJoint PerfectPriorJoint(const ModelParams& params, double mu);

// Adversary who knows mu exactly and observes the released value of any
// mechanism. For the randomized mechanism the estimator is the
// branch-likelihood mixture of the two per-branch conditional means.
class PerfectAdversary {
 public:
  explicit PerfectAdversary(const ModelParams& params);

  AdversaryEstimate Estimate(double z, double mu,
                             MechanismKind mechanism) const;

 private:
  ModelParams params_;
  double var_tail_;  // Var(Z - mu) when the noisy value is released
  double var_head_;  // Var(Z - mu) when the remapped value is released
  double log_prior_ratio_;
};

// Adversary with prior mu_check = mu + E observing a fixed released kind
// (y or y_r) plus mu_check. Gains are precomputed once; Estimate is two dot
// products.
class ImperfectAdversary {
 public:
  ImperfectAdversary(const ModelParams& params, MechanismKind released_kind);

  AdversaryEstimate Estimate(double z, double mu_check) const;

  // Conditional covariance diagonal, i.e. this adversary's analytic MSEs.
  double PosteriorVarX() const { return posterior_var_x_; }
  double PosteriorVarMu() const { return posterior_var_mu_; }

 private:
  double gain_x_z_, gain_x_m_;
  double gain_mu_z_, gain_mu_m_;
  double posterior_var_x_, posterior_var_mu_;
};

// Bayes-optimal adversary for the randomized mechanism: she knows p_h and
// both branch models but never the coin outcome, so she weighs the two
// branch posteriors by their likelihoods on the observed (z, mu_check).
class MixtureAdversary {
 public:
  explicit MixtureAdversary(const ModelParams& params);

  AdversaryEstimate Estimate(double z, double mu_check) const;

 private:
  double p_h_;
  double log_prior_ratio_;  // log(p_h / (1 - p_h)) when defined
  ImperfectAdversary head_;
  ImperfectAdversary tail_;
  GaussianLogDensity head_density_;
  GaussianLogDensity tail_density_;
};

// One-shot conveniences mirroring the classes above.
AdversaryEstimate AdversaryPerfect(double y, double mu,
                                   const ModelParams& params);
AdversaryEstimate AdversaryImperfect(double z, double mu_check,
                                     const ModelParams& params,
                                     MechanismKind released_kind);
AdversaryEstimate AdversaryRandomized(double z, double mu_check,
                                      const ModelParams& params);

}  // namespace privremap

#endif  // PRIVREMAP_ESTIMATORS_HPP_
