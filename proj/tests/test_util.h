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

#ifndef PRIVREMAP_TESTS_TEST_UTIL_H_
#define PRIVREMAP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "privremap/model.hpp"

namespace privremap {
namespace testing {

// Log-uniform variances across a few decades, uniform coin probability.
inline ModelParams RandomValidParams(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_var(std::log(0.05),
                                                 std::log(20.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ModelParams params;
  params.sigma2_mu = std::exp(log_var(rng));
  params.sigma2_s = std::exp(log_var(rng));
  params.sigma2_e = std::exp(log_var(rng));
  params.sigma2_w = std::exp(log_var(rng));
  params.p_h = unit(rng);
  return params;
}

inline double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

inline double SampleVariance(const std::vector<double>& values) {
  const double mean = Mean(values);
  double sum_sq = 0.0;
  for (const double v : values) sum_sq += (v - mean) * (v - mean);
  return sum_sq / static_cast<double>(values.size() - 1);
}

inline double Correlation(const std::vector<double>& a,
                          const std::vector<double>& b) {
  const double mean_a = Mean(a);
  const double mean_b = Mean(b);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - mean_a) * (b[i] - mean_b);
    var_a += (a[i] - mean_a) * (a[i] - mean_a);
    var_b += (b[i] - mean_b) * (b[i] - mean_b);
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

// |x - y| relative to the larger magnitude; 0 when both are 0.
inline double RelDiff(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  if (scale == 0.0) return 0.0;
  return std::abs(x - y) / scale;
}

// Standard error of the mean of `values`.
inline double StdError(const std::vector<double>& values) {
  return std::sqrt(SampleVariance(values) /
                   static_cast<double>(values.size()));
}

}  // namespace testing
}  // namespace privremap

#endif  // PRIVREMAP_TESTS_TEST_UTIL_H_
