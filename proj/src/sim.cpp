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

#include "privremap/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "json.hpp"
#include "privremap/estimators.hpp"
#include "privremap/random.hpp"

namespace privremap {

namespace {

// Samples per block. Blocks are the unit of work distribution and the unit
// of deterministic reduction: block partials are merged in index order, so
// totals do not depend on which worker produced them.
constexpr uint64_t kBlockSamples = 8192;

struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void Add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
};

struct BlockSums {
  KahanSum u, u2;
  KahanSum p_loc, p_loc2;
  KahanSum p_model, p_model2;
};

struct Totals {
  KahanSum u, u2;
  KahanSum p_loc, p_loc2;
  KahanSum p_model, p_model2;
};

MetricTriple FinishMetric(std::optional<double> analytic, const KahanSum& sum,
                          const KahanSum& sum_sq, uint64_t n) {
  MetricTriple triple;
  triple.analytic = analytic;
  const double nd = static_cast<double>(n);
  triple.empirical = sum.sum / nd;
  const double variance =
      std::max(0.0, (sum_sq.sum - sum.sum * sum.sum / nd) / (nd - 1.0));
  triple.std_error = std::sqrt(variance / nd);
  return triple;
}

}  // namespace

int ResolveWorkerCount(int requested) {
  int workers = requested;
  if (workers < 0) {
    workers = 0;
    if (const char* env = std::getenv("PRIV_REMAP_THREADS")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && parsed >= 0 && parsed <= 1024) {
        workers = static_cast<int>(parsed);
      }
    }
  }
  if (workers == 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::max(1, workers);
}

MetricsReport RunMonteCarlo(const ModelParams& params, MechanismKind mechanism,
                            AdversaryMode adversary, uint64_t n_samples,
                            uint64_t seed, int workers) {
  ValidateParams(params);
  if (n_samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 2");
  }
  const auto start = std::chrono::steady_clock::now();

  // Estimators are precomputed once and shared read-only by the workers.
  const PerfectAdversary perfect(params);
  const ImperfectAdversary imperfect_no_remap(params, MechanismKind::kNoRemap);
  const ImperfectAdversary imperfect_remap(params, MechanismKind::kRemap);
  const MixtureAdversary mixture(params);

  const auto estimate = [&](double z, const WorldSample& world) {
    if (adversary == AdversaryMode::kPerfect) {
      return perfect.Estimate(z, world.mu, mechanism);
    }
    switch (mechanism) {
      case MechanismKind::kNoRemap:
        return imperfect_no_remap.Estimate(z, world.mu_check);
      case MechanismKind::kRemap:
        return imperfect_remap.Estimate(z, world.mu_check);
      case MechanismKind::kRandomized:
        return mixture.Estimate(z, world.mu_check);
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown mechanism kind");
  };

  const uint64_t n_blocks = (n_samples + kBlockSamples - 1) / kBlockSamples;
  std::vector<BlockSums> blocks(n_blocks);

  const auto run_block = [&](uint64_t block) {
    BlockSums& sums = blocks[block];
    const uint64_t begin = block * kBlockSamples;
    const uint64_t end = std::min(begin + kBlockSamples, n_samples);
    for (uint64_t i = begin; i < end; ++i) {
      RandomStream rng(seed, i);
      const WorldSample world = SampleWorld(params, rng);
      const MechanismOutput out = ApplyMechanism(world, mechanism, params, rng);
      const AdversaryEstimate est = estimate(out.z, world);
      const double eu = out.z - world.x;
      const double ex = est.x_hat - world.x;
      const double em = est.mu_hat - world.mu;
      sums.u.Add(eu * eu);
      sums.u2.Add(eu * eu * eu * eu);
      sums.p_loc.Add(ex * ex);
      sums.p_loc2.Add(ex * ex * ex * ex);
      sums.p_model.Add(em * em);
      sums.p_model2.Add(em * em * em * em);
    }
  };

  const int n_workers =
      static_cast<int>(std::min<uint64_t>(ResolveWorkerCount(workers),
                                          n_blocks));
  if (n_workers <= 1) {
    for (uint64_t block = 0; block < n_blocks; ++block) run_block(block);
  } else {
    std::atomic<uint64_t> next_block{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const uint64_t block = next_block.fetch_add(1);
          if (block >= n_blocks) break;
          run_block(block);
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }

  // Deterministic merge in block order.
  Totals totals;
  for (const BlockSums& sums : blocks) {
    totals.u.Add(sums.u.sum);
    totals.u2.Add(sums.u2.sum);
    totals.p_loc.Add(sums.p_loc.sum);
    totals.p_loc2.Add(sums.p_loc2.sum);
    totals.p_model.Add(sums.p_model.sum);
    totals.p_model2.Add(sums.p_model2.sum);
  }

  const AnalyticReport analytic =
      MakeAnalyticReport(params, mechanism, adversary);
  std::optional<double> analytic_u = analytic.u;

  MetricsReport report;
  report.params = params;
  report.mechanism = mechanism;
  report.adversary = adversary;
  report.n_samples = n_samples;
  report.seed = seed;
  report.u = FinishMetric(analytic_u, totals.u, totals.u2, n_samples);
  report.p_loc =
      FinishMetric(analytic.p_loc, totals.p_loc, totals.p_loc2, n_samples);
  report.p_model = FinishMetric(analytic.p_model, totals.p_model,
                                totals.p_model2, n_samples);
  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

namespace {

MetricComparison CompareMetric(const std::string& name,
                               const MetricTriple& triple, double tolerance) {
  MetricComparison cmp;
  cmp.metric = name;
  cmp.analytic = triple.analytic;
  cmp.empirical = triple.empirical;
  cmp.std_error = triple.std_error;
  cmp.checked = triple.analytic.has_value();
  if (cmp.checked) {
    const double deviation = std::abs(triple.empirical - *triple.analytic);
    cmp.deviation_sigmas = triple.std_error > 0.0
                               ? deviation / triple.std_error
                               : (deviation == 0.0
                                      ? 0.0
                                      : std::numeric_limits<double>::infinity());
    cmp.pass = deviation <= tolerance * triple.std_error;
  }
  return cmp;
}

}  // namespace

VerifyReport CompareToAnalytic(const MetricsReport& report,
                               double tolerance_sigmas) {
  VerifyReport verify;
  verify.report = report;
  verify.tolerance_sigmas = tolerance_sigmas;
  verify.comparisons = {
      CompareMetric("u", report.u, tolerance_sigmas),
      CompareMetric("p_loc", report.p_loc, tolerance_sigmas),
      CompareMetric("p_model", report.p_model, tolerance_sigmas),
  };
  for (const MetricComparison& cmp : verify.comparisons) {
    verify.pass = verify.pass && cmp.pass;
  }
  return verify;
}

VerifyReport Verify(const ModelParams& params, MechanismKind mechanism,
                    AdversaryMode adversary, uint64_t n_samples, uint64_t seed,
                    double tolerance_sigmas, int workers) {
  return CompareToAnalytic(
      RunMonteCarlo(params, mechanism, adversary, n_samples, seed, workers),
      tolerance_sigmas);
}

namespace {

nlohmann::ordered_json ParamsToJson(const ModelParams& params) {
  return nlohmann::ordered_json{{"sigma2_mu", params.sigma2_mu},
                                {"sigma2_s", params.sigma2_s},
                                {"sigma2_e", params.sigma2_e},
                                {"sigma2_w", params.sigma2_w},
                                {"p_h", params.p_h}};
}

nlohmann::ordered_json TripleToJson(const MetricTriple& triple) {
  nlohmann::ordered_json j;
  if (triple.analytic) j["analytic"] = *triple.analytic;
  j["empirical"] = triple.empirical;
  j["stderr"] = triple.std_error;
  return j;
}

nlohmann::ordered_json ReportToJson(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["params"] = ParamsToJson(report.params);
  j["mechanism"] = MechanismName(report.mechanism);
  j["n_samples"] = report.n_samples;
  j["seed"] = report.seed;
  j["u"] = TripleToJson(report.u);
  j["p_loc"] = TripleToJson(report.p_loc);
  j["p_model"] = TripleToJson(report.p_model);
  j["runtime_ms"] = report.runtime_ms;
  return j;
}

}  // namespace

std::string ToJson(const MetricsReport& report) {
  return ReportToJson(report).dump();
}

std::string ToJson(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["report"] = ReportToJson(report.report);
  j["tolerance_sigmas"] = report.tolerance_sigmas;
  nlohmann::ordered_json comparisons = nlohmann::ordered_json::array();
  for (const MetricComparison& cmp : report.comparisons) {
    nlohmann::ordered_json c;
    c["metric"] = cmp.metric;
    if (cmp.checked) {
      c["analytic"] = *cmp.analytic;
      c["empirical"] = cmp.empirical;
      c["stderr"] = cmp.std_error;
      c["deviation_sigmas"] = *cmp.deviation_sigmas;
      c["pass"] = cmp.pass;
    } else {
      c["analytic"] = nullptr;
      c["empirical"] = cmp.empirical;
      c["stderr"] = cmp.std_error;
      c["note"] = "no closed form";
    }
    comparisons.push_back(c);
  }
  j["comparisons"] = comparisons;
  j["pass"] = report.pass;
  return j.dump();
}

}  // namespace privremap
