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

#include "privremap/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "privremap/format.hpp"
#include "privremap/random.hpp"

namespace privremap {

namespace {

void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.sigma2_w_grid.empty() || spec.p_h_list.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep grids must be non-empty");
  }
  for (size_t i = 0; i < spec.sigma2_w_grid.size(); ++i) {
    const double v = spec.sigma2_w_grid[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kNegativeVariance,
                  "sigma2_w grid values must be finite and >= 0");
    }
    if (i > 0 && v <= spec.sigma2_w_grid[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sigma2_w grid must be strictly increasing");
    }
  }
  for (const double p : spec.p_h_list) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kProbabilityOutOfRange,
                  "p_h list values must be in [0, 1]");
    }
  }
}

MechanismKind MechanismForHeadProbability(double p_h) {
  if (p_h == 0.0) return MechanismKind::kNoRemap;
  if (p_h == 1.0) return MechanismKind::kRemap;
  return MechanismKind::kRandomized;
}

}  // namespace

SweepSpec DefaultTradeoffSweep(uint64_t n_samples, uint64_t seed) {
  SweepSpec spec;
  spec.base_params = ModelParams{1.0, 1.0, 1.0, 1.0, 0.5};
  for (int i = 0; i <= 10; ++i) {
    spec.sigma2_w_grid.push_back(static_cast<double>(i) / 10.0);
  }
  spec.p_h_list = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  spec.n_samples = n_samples;
  spec.seed = seed;
  return spec;
}

std::vector<MetricsReport> RunSweep(const SweepSpec& spec, int workers) {
  ValidateSweepSpec(spec);

  std::vector<double> p_h_values = spec.p_h_list;
  std::sort(p_h_values.begin(), p_h_values.end());

  std::vector<MetricsReport> reports;
  reports.reserve(p_h_values.size() * spec.sigma2_w_grid.size());
  uint64_t cell = 0;
  for (const double p_h : p_h_values) {
    for (const double sigma2_w : spec.sigma2_w_grid) {
      ModelParams params = spec.base_params;
      params.sigma2_w = sigma2_w;
      params.p_h = p_h;
      reports.push_back(RunMonteCarlo(
          params, MechanismForHeadProbability(p_h), AdversaryMode::kImperfect,
          spec.n_samples, DeriveSeed(spec.seed, cell), workers));
      ++cell;
    }
  }
  return reports;
}

namespace {

constexpr char kCsvHeader[] =
    "mechanism,p_h,sigma2_mu,sigma2_s,sigma2_e,sigma2_w,n_samples,seed,"
    "u_analytic,u_empirical,u_stderr,p_loc_analytic,p_loc_empirical,"
    "p_loc_stderr,p_model_analytic,p_model_empirical,p_model_stderr";

void AppendTriple(std::string& out, const MetricTriple& triple) {
  out += ',';
  if (triple.analytic) out += FormatDouble(*triple.analytic);
  out += ',';
  out += FormatDouble(triple.empirical);
  out += ',';
  out += FormatDouble(triple.std_error);
}

}  // namespace

std::string EmitCsv(const std::vector<MetricsReport>& reports) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const MetricsReport& report : reports) {
    out += MechanismName(report.mechanism);
    out += ',';
    out += FormatDouble(report.params.p_h);
    out += ',';
    out += FormatDouble(report.params.sigma2_mu);
    out += ',';
    out += FormatDouble(report.params.sigma2_s);
    out += ',';
    out += FormatDouble(report.params.sigma2_e);
    out += ',';
    out += FormatDouble(report.params.sigma2_w);
    out += ',';
    out += std::to_string(report.n_samples);
    out += ',';
    out += std::to_string(report.seed);
    AppendTriple(out, report.u);
    AppendTriple(out, report.p_loc);
    AppendTriple(out, report.p_model);
    out += '\n';
  }
  return out;
}

std::string EmitJsonLines(const std::vector<MetricsReport>& reports) {
  std::string out;
  for (const MetricsReport& report : reports) {
    out += ToJson(report);
    out += '\n';
  }
  return out;
}

}  // namespace privremap
