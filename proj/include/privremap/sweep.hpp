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

#ifndef PRIVREMAP_SWEEP_HPP_
#define PRIVREMAP_SWEEP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "privremap/sim.hpp"

namespace privremap {

// Parameter grid for a privacy-utility tradeoff experiment: one Monte-Carlo
// run per (sigma2_w, p_h) pair. p_h = 0 runs the plain noisy release,
// p_h = 1 the deterministic remap, anything in between the randomized
// mechanism; all cells use the imperfect-prior adversary.
struct SweepSpec {
  ModelParams base_params;
  std::vector<double> sigma2_w_grid;  // strictly increasing, non-empty
  std::vector<double> p_h_list;       // values in [0, 1], non-empty
  uint64_t n_samples = 100000;
  uint64_t seed = 0;
};

// Default grid: unit variances, sigma2_w from 0 to 1 in steps of 0.1,
// p_h in {0, 0.2, 0.4, 0.6, 0.8, 1}.
SweepSpec DefaultTradeoffSweep(uint64_t n_samples = 100000, uint64_t seed = 0);

// One report per grid cell, ordered by (p_h, sigma2_w). Cell seeds are
// derived from (seed, cell index), so any cell can be reproduced alone.
std::vector<MetricsReport> RunSweep(const SweepSpec& spec, int workers = -1);

// Fixed-schema CSV; analytic columns are empty where no closed form exists,
// numbers use the shortest round-trip decimal form.
std::string EmitCsv(const std::vector<MetricsReport>& reports);

// One MetricsReport JSON object per line.
std::string EmitJsonLines(const std::vector<MetricsReport>& reports);

}  // namespace privremap

#endif  // PRIVREMAP_SWEEP_HPP_
