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

#include "json.hpp"

namespace privremap {

double UtilityNoRemap(const ModelParams& params) { return params.sigma2_w; }

double PrivacyLocPerfectNoRemap(const ModelParams& params) {
  return params.sigma2_w * params.sigma2_s /
         (params.sigma2_s + params.sigma2_w);
}

UtilityPrivacyPair UtilityPrivacyPerfectRemap(const ModelParams& params) {
  const double mse = PrivacyLocPerfectNoRemap(params);
  return UtilityPrivacyPair{mse, mse};
}

double PrivacyModelImperfectNoRemap(const ModelParams& params) {
  const double a = params.sigma2_mu;
  const double c = params.sigma2_e;
  const double b = params.sigma2_s + params.sigma2_w;
  // Either a known mean (a = 0) or an exact prior (c = 0) leaves nothing to
  // learn; this also covers the 0/0 corner of the quotient.
  if (a * c == 0.0) return 0.0;
  return c * a * b / ((a + c) * b + c * a);
}

double PrivacyLocImperfectNoRemap(const ModelParams& params) {
  const double a = params.sigma2_mu;
  const double c = params.sigma2_e;
  const double s = params.sigma2_s;
  const double w = params.sigma2_w;
  const double b = s + w;
  const double base = s * w / b;
  if (a * c == 0.0) return base;  // reduces to the perfect-prior case
  return base + (w * w * c * a) / (b * ((a + c) * b + c * a));
}

double UtilityImperfectRemap(const ModelParams& params) {
  return params.sigma2_s * params.sigma2_w /
         (params.sigma2_s + params.sigma2_w);
}

double PrivacyModelImperfectRemap(const ModelParams& params) {
  const double a = params.sigma2_mu;
  const double c = params.sigma2_e;
  const double s = params.sigma2_s;
  const double b = params.sigma2_s + params.sigma2_w;
  if (a * c == 0.0) return 0.0;
  const double s4 = s * s;
  return s4 * c * a / (s4 * (a + c) + c * a * b);
}

double PrivacyLocImperfectRemap(const ModelParams& params) {
  return UtilityImperfectRemap(params);
}

double UtilityRandomized(const ModelParams& params) {
  return params.p_h * UtilityImperfectRemap(params) +
         (1.0 - params.p_h) * params.sigma2_w;
}

double EquivalentPriorErrorFromHistory(uint64_t n_observations,
                                       const ModelParams& params) {
  if (n_observations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_observations must be >= 1");
  }
  if (params.sigma2_mu == 0.0) return 0.0;
  const double b = params.sigma2_s + params.sigma2_w;
  return 1.0 /
         (1.0 / params.sigma2_mu + static_cast<double>(n_observations) / b);
}

const char* CaseLabelName(CaseLabel label) {
  switch (label) {
    case CaseLabel::kPerfectNoRemap:
      return "perfect_no_remap";
    case CaseLabel::kPerfectRemap:
      return "perfect_remap";
    case CaseLabel::kImperfectNoRemap:
      return "imperfect_no_remap";
    case CaseLabel::kImperfectRemap:
      return "imperfect_remap";
    case CaseLabel::kRandomizedUtilityOnly:
      return "randomized_utility_only";
  }
  return "unknown";
}

const char* AdversaryModeName(AdversaryMode mode) {
  return mode == AdversaryMode::kPerfect ? "perfect" : "imperfect";
}

std::optional<AdversaryMode> ParseAdversaryMode(const std::string& name) {
  if (name == "perfect") return AdversaryMode::kPerfect;
  if (name == "imperfect") return AdversaryMode::kImperfect;
  return std::nullopt;
}

AnalyticReport MakeAnalyticReport(const ModelParams& params,
                                  MechanismKind mechanism,
                                  AdversaryMode adversary) {
  AnalyticReport report;
  switch (mechanism) {
    case MechanismKind::kNoRemap:
      report.u = UtilityNoRemap(params);
      if (adversary == AdversaryMode::kPerfect) {
        report.p_loc = PrivacyLocPerfectNoRemap(params);
        report.p_model = 0.0;
        report.case_label = CaseLabel::kPerfectNoRemap;
      } else {
        report.p_loc = PrivacyLocImperfectNoRemap(params);
        report.p_model = PrivacyModelImperfectNoRemap(params);
        report.case_label = CaseLabel::kImperfectNoRemap;
      }
      break;
    case MechanismKind::kRemap:
      if (adversary == AdversaryMode::kPerfect) {
        const UtilityPrivacyPair pair = UtilityPrivacyPerfectRemap(params);
        report.u = pair.u;
        report.p_loc = pair.p_loc;
        report.p_model = 0.0;
        report.case_label = CaseLabel::kPerfectRemap;
      } else {
        report.u = UtilityImperfectRemap(params);
        report.p_loc = PrivacyLocImperfectRemap(params);
        report.p_model = PrivacyModelImperfectRemap(params);
        report.case_label = CaseLabel::kImperfectRemap;
      }
      break;
    case MechanismKind::kRandomized:
      report.u = UtilityRandomized(params);
      report.case_label = CaseLabel::kRandomizedUtilityOnly;
      break;
  }
  return report;
}

std::string ToJson(const AnalyticReport& report) {
  nlohmann::ordered_json j;
  j["case_label"] = CaseLabelName(report.case_label);
  j["u"] = report.u;
  if (report.p_loc) j["p_loc"] = *report.p_loc;
  if (report.p_model) j["p_model"] = *report.p_model;
  return j.dump();
}

}  // namespace privremap
