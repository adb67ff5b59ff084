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

#ifndef PRIVREMAP_ANALYTIC_HPP_
#define PRIVREMAP_ANALYTIC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "privremap/model.hpp"

namespace privremap {

// Closed-form mean-squared errors for every mechanism/adversary pairing.
//
// Naming: "utility" is the friend's MSE about X (the friend's estimate is
// the released value itself), "privacy_loc" the adversary's MSE about X,
// "privacy_model" the adversary's MSE about mu. "perfect" means the
// adversary knows mu exactly; "imperfect" means she holds mu_check = mu + E.
// Larger privacy values mean a less informed adversary.

// Friend MSE when the noisy observation y is released: sigma2_w.
double UtilityNoRemap(const ModelParams& params);

// Adversary MSE about X from y with known mu:
// sigma2_w * sigma2_s / (sigma2_s + sigma2_w).
double PrivacyLocPerfectNoRemap(const ModelParams& params);

// Releasing the remapped value hands the friend exactly the perfect-prior
// adversary's estimate, so both MSEs coincide.
struct UtilityPrivacyPair {
  double u;
  double p_loc;
};
UtilityPrivacyPair UtilityPrivacyPerfectRemap(const ModelParams& params);

// Adversary MSE about mu from (y, mu_check).
double PrivacyModelImperfectNoRemap(const ModelParams& params);

// Adversary MSE about X from (y, mu_check).
double PrivacyLocImperfectNoRemap(const ModelParams& params);

// Friend MSE when the remapped value is released.
double UtilityImperfectRemap(const ModelParams& params);

// Adversary MSE about mu from (y_r, mu_check). Strictly decreasing in
// sigma2_w: more obfuscation noise makes the remapped release track mu more
// closely, leaking more about the model.
double PrivacyModelImperfectRemap(const ModelParams& params);

// Adversary MSE about X from (y_r, mu_check); equals UtilityImperfectRemap,
// the remapped release already is the posterior mean of X.
double PrivacyLocImperfectRemap(const ModelParams& params);

// Friend MSE under the randomized mechanism:
//   p_h * sigma2_s*sigma2_w/(sigma2_s+sigma2_w) + (1-p_h) * sigma2_w,
// the coin-probability mixture of the remap and no-remap utilities.
double UtilityRandomized(const ModelParams& params);

// MMSE error variance of mu after n independent obfuscated observations:
// 1 / (1/sigma2_mu + n/(sigma2_s+sigma2_w)). Returns 0 when sigma2_mu = 0.
// Useful for picking a sigma2_e that corresponds to an adversary with a
// learning history of length n.
double EquivalentPriorErrorFromHistory(uint64_t n_observations,
                                       const ModelParams& params);

enum class CaseLabel {
  kPerfectNoRemap,
  kPerfectRemap,
  kImperfectNoRemap,
  kImperfectRemap,
  kRandomizedUtilityOnly,
};

const char* CaseLabelName(CaseLabel label);

enum class AdversaryMode { kPerfect, kImperfect };

const char* AdversaryModeName(AdversaryMode mode);
std::optional<AdversaryMode> ParseAdversaryMode(const std::string& name);

// The full closed-form triple for one mechanism/adversary pairing. p_loc and
// p_model are absent for the randomized mechanism (no closed form exists);
// p_model is 0 for a perfect-prior adversary (her model error is identically
// zero).
struct AnalyticReport {
  double u;
  std::optional<double> p_loc;
  std::optional<double> p_model;
  CaseLabel case_label;
};

AnalyticReport MakeAnalyticReport(const ModelParams& params,
                                  MechanismKind mechanism,
                                  AdversaryMode adversary);

std::string ToJson(const AnalyticReport& report);

}  // namespace privremap

#endif  // PRIVREMAP_ANALYTIC_HPP_
