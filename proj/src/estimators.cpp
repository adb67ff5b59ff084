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

#include "privremap/estimators.hpp"

#include <cmath>
#include <limits>

#include "privremap/error.hpp"

namespace privremap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mixes two branch estimates with head weight w.
AdversaryEstimate Blend(const AdversaryEstimate& head,
                        const AdversaryEstimate& tail, double w) {
  return AdversaryEstimate{w * head.x_hat + (1.0 - w) * tail.x_hat,
                           w * head.mu_hat + (1.0 - w) * tail.mu_hat, w};
}

// Head posterior from branch log likelihoods and log(p/(1-p)), as a logistic
// of the bounded difference so neither likelihood is ever exponentiated on
// its own. Infinite log likelihoods (degenerate branch covariances) resolve
// to whichever branch supports the observation.
double HeadPosterior(double log_lik_head, double log_lik_tail,
                     double log_prior_ratio, double p_h) {
  if (std::isinf(log_lik_head) || std::isinf(log_lik_tail)) {
    if (log_lik_head == log_lik_tail) {
      if (log_lik_head == -kInf) {
        throw Error(ErrorCode::kSingularObservation,
                    "observation impossible under both mechanism branches");
      }
      return p_h;  // both branches degenerate and consistent
    }
    return log_lik_head > log_lik_tail ? 1.0 : 0.0;
  }
  const double d = log_prior_ratio + log_lik_head - log_lik_tail;
  if (d >= 0.0) {
    return 1.0 / (1.0 + std::exp(-d));
  }
  const double e = std::exp(d);
  return e / (1.0 + e);
}

}  // namespace

GaussianJoint ObservationJoint(const ModelParams& params,
                               MechanismKind released_kind) {
  const double a = params.sigma2_mu;
  const double s = params.sigma2_s;
  const double c = params.sigma2_e;
  const double b = s + params.sigma2_w;

  // Var/Cov of the release: y = mu + S + W, or y_r = mu + beta (S + W) with
  // beta = sigma2_s / (sigma2_s + sigma2_w).
  double var_release, cov_x_release;
  switch (released_kind) {
    case MechanismKind::kNoRemap:
      var_release = a + b;
      cov_x_release = a + s;
      break;
    case MechanismKind::kRemap:
      var_release = a + s * s / b;
      cov_x_release = var_release;
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "released kind must be none or remap");
  }

  Eigen::MatrixXd cov(4, 4);
  // Order: X, mu, release, mu_check.
  cov << a + s, a, cov_x_release, a,
         a, a, a, a,
         cov_x_release, a, var_release, a,
         a, a, a, a + c;
  return MakeGaussianJoint(Eigen::VectorXd::Zero(4), cov);
}

GaussianJoint PerfectPriorJoint(const ModelParams& params, double mu) {
  const double s = params.sigma2_s;
  Eigen::MatrixXd cov(2, 2);
  cov << s, s,
         s, s + params.sigma2_w;
  Eigen::VectorXd mean(2);
  mean << mu, mu;
  return MakeGaussianJoint(mean, cov);
}

PerfectAdversary::PerfectAdversary(const ModelParams& params)
    : params_(params) {
  const double b = params.sigma2_s + params.sigma2_w;
  const double beta = params.sigma2_s / b;
  var_tail_ = b;
  var_head_ = beta * beta * b;
  log_prior_ratio_ = std::log(params.p_h) - std::log1p(-params.p_h);
}

AdversaryEstimate PerfectAdversary::Estimate(double z, double mu,
                                             MechanismKind mechanism) const {
  switch (mechanism) {
    case MechanismKind::kNoRemap:
      return AdversaryEstimate{Remap(z, mu, params_), mu, std::nullopt};
    case MechanismKind::kRemap:
      // Given mu the remapped release is an invertible function of y and
      // already equals E[X | y, mu], so it is its own posterior mean.
      return AdversaryEstimate{z, mu, std::nullopt};
    case MechanismKind::kRandomized: {
      const AdversaryEstimate head{z, mu, std::nullopt};
      const AdversaryEstimate tail{Remap(z, mu, params_), mu, std::nullopt};
      if (params_.p_h == 0.0) return Blend(head, tail, 0.0);
      if (params_.p_h == 1.0) return Blend(head, tail, 1.0);
      const double r = z - mu;
      const auto log_lik = [&](double var) {
        if (var > 0.0) {
          return -0.5 * (std::log(var) + r * r / var);
        }
        return std::abs(r) <= kConsistencyTol * (1.0 + std::abs(r)) ? kInf
                                                                    : -kInf;
      };
      const double w = HeadPosterior(log_lik(var_head_), log_lik(var_tail_),
                                     log_prior_ratio_, params_.p_h);
      return Blend(head, tail, w);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown mechanism kind");
}

ImperfectAdversary::ImperfectAdversary(const ModelParams& params,
                                       MechanismKind released_kind) {
  const GaussianJoint joint = ObservationJoint(params, released_kind);
  const GaussianConditioner conditioner(joint, {kVarRelease, kVarMuCheck});
  const Eigen::MatrixXd& gain = conditioner.gain();
  gain_x_z_ = gain(0, 0);
  gain_x_m_ = gain(0, 1);
  gain_mu_z_ = gain(1, 0);
  gain_mu_m_ = gain(1, 1);
  posterior_var_x_ = conditioner.Cov()(0, 0);
  posterior_var_mu_ = conditioner.Cov()(1, 1);
}

AdversaryEstimate ImperfectAdversary::Estimate(double z,
                                               double mu_check) const {
  return AdversaryEstimate{gain_x_z_ * z + gain_x_m_ * mu_check,
                           gain_mu_z_ * z + gain_mu_m_ * mu_check,
                           std::nullopt};
}

MixtureAdversary::MixtureAdversary(const ModelParams& params)
    : p_h_(params.p_h),
      log_prior_ratio_(std::log(params.p_h) - std::log1p(-params.p_h)),
      head_(params, MechanismKind::kRemap),
      tail_(params, MechanismKind::kNoRemap),
      head_density_(Marginal(ObservationJoint(params, MechanismKind::kRemap),
                             {kVarRelease, kVarMuCheck})),
      tail_density_(Marginal(ObservationJoint(params, MechanismKind::kNoRemap),
                             {kVarRelease, kVarMuCheck})) {}

AdversaryEstimate MixtureAdversary::Estimate(double z, double mu_check) const {
  // The p_h endpoints reproduce the pure-mechanism estimators bit for bit.
  if (p_h_ == 0.0) {
    AdversaryEstimate estimate = tail_.Estimate(z, mu_check);
    estimate.head_posterior = 0.0;
    return estimate;
  }
  if (p_h_ == 1.0) {
    AdversaryEstimate estimate = head_.Estimate(z, mu_check);
    estimate.head_posterior = 1.0;
    return estimate;
  }
  Eigen::VectorXd observed(2);
  observed << z, mu_check;
  const double w =
      HeadPosterior(head_density_.LogDensity(observed),
                    tail_density_.LogDensity(observed), log_prior_ratio_, p_h_);
  return Blend(head_.Estimate(z, mu_check), tail_.Estimate(z, mu_check), w);
}

AdversaryEstimate AdversaryPerfect(double y, double mu,
                                   const ModelParams& params) {
  return AdversaryEstimate{Remap(y, mu, params), mu, std::nullopt};
}

AdversaryEstimate AdversaryImperfect(double z, double mu_check,
                                     const ModelParams& params,
                                     MechanismKind released_kind) {
  return ImperfectAdversary(params, released_kind).Estimate(z, mu_check);
}

AdversaryEstimate AdversaryRandomized(double z, double mu_check,
                                      const ModelParams& params) {
  return MixtureAdversary(params).Estimate(z, mu_check);
}

}  // namespace privremap
