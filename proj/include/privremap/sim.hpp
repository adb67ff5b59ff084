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

#ifndef PRIVREMAP_SIM_HPP_
#define PRIVREMAP_SIM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privremap/analytic.hpp"
#include "privremap/model.hpp"

namespace privremap {

// One metric as a closed-form value (when one exists) next to its
// Monte-Carlo estimate. std_error is the standard error of the empirical
// mean: sample std of the per-sample squared errors over sqrt(n).
struct MetricTriple {
  std::optional<double> analytic;
  double empirical = 0.0;
  double std_error = 0.0;
};

struct MetricsReport {
  ModelParams params;
  MechanismKind mechanism = MechanismKind::kNoRemap;
  AdversaryMode adversary = AdversaryMode::kImperfect;
  uint64_t n_samples = 0;
  uint64_t seed = 0;
  MetricTriple u;        // friend MSE about X
  MetricTriple p_loc;    // adversary MSE about X
  MetricTriple p_model;  // adversary MSE about mu
  double runtime_ms = 0.0;
};

// Seeded Monte-Carlo estimate of (u, p_loc, p_model) under one mechanism.
// Per-sample randomness is derived counter-style from (seed, sample index)
// and squared errors are accumulated per fixed-size block with compensated
// summation, so the report is bit-identical (runtime aside) for any worker
// count. workers < 0 defers to the PRIV_REMAP_THREADS environment variable
// (unset or 0 means auto).
MetricsReport RunMonteCarlo(const ModelParams& params, MechanismKind mechanism,
                            AdversaryMode adversary, uint64_t n_samples,
                            uint64_t seed, int workers = -1);

struct MetricComparison {
  std::string metric;
  std::optional<double> analytic;
  double empirical = 0.0;
  double std_error = 0.0;
  std::optional<double> deviation_sigmas;
  bool checked = false;  // false when no closed form exists
  bool pass = true;
};

struct VerifyReport {
  MetricsReport report;
  double tolerance_sigmas = 0.0;
  std::vector<MetricComparison> comparisons;
  bool pass = true;
};

// Checks |empirical - analytic| <= tolerance_sigmas * std_error for every
// metric that has a closed form.
VerifyReport CompareToAnalytic(const MetricsReport& report,
                               double tolerance_sigmas);

VerifyReport Verify(const ModelParams& params, MechanismKind mechanism,
                    AdversaryMode adversary, uint64_t n_samples, uint64_t seed,
                    double tolerance_sigmas, int workers = -1);

// Worker count resolution: explicit requests win, then PRIV_REMAP_THREADS,
// then hardware concurrency.
int ResolveWorkerCount(int requested);

std::string ToJson(const MetricsReport& report);
std::string ToJson(const VerifyReport& report);

}  // namespace privremap

#endif  // PRIVREMAP_SIM_HPP_
