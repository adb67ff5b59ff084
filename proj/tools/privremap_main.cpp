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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privremap/analytic.hpp"
#include "privremap/error.hpp"
#include "privremap/sim.hpp"
#include "privremap/sweep.hpp"
#include "privremap/trace.hpp"

namespace {

using privremap::AdversaryMode;
using privremap::Error;
using privremap::ErrorCode;
using privremap::MechanismKind;
using privremap::ModelParams;

constexpr int kExitSuccess = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsageError = 2;
constexpr int kExitDataError = 3;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kNonMonotoneTimestamps:
    case ErrorCode::kRaggedRow:
    case ErrorCode::kNonNumericField:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kSingularObservation:
    case ErrorCode::kIoError:
      return kExitDataError;
    default:
      return kExitUsageError;
  }
}

struct ModelFlags {
  double sigma2_mu = 1.0;
  double sigma2_s = 0.0;
  double sigma2_e = 1.0;
  double sigma2_w = 0.0;
  double p_h = 0.5;
  std::string mechanism;
  std::string adversary = "imperfect";

  ModelParams Params() const {
    return privremap::ValidateParams(
        ModelParams{sigma2_mu, sigma2_s, sigma2_e, sigma2_w, p_h});
  }

  MechanismKind Mechanism() const {
    const auto kind = privremap::ParseMechanism(mechanism);
    if (!kind) {
      throw Error(ErrorCode::kUsageError,
                  "unknown mechanism '" + mechanism + "'");
    }
    return *kind;
  }

  AdversaryMode Adversary() const {
    const auto mode = privremap::ParseAdversaryMode(adversary);
    if (!mode) {
      throw Error(ErrorCode::kUsageError,
                  "unknown adversary '" + adversary + "'");
    }
    return *mode;
  }
};

void AddVarianceFlags(CLI::App* cmd, ModelFlags* flags, bool prior_required) {
  auto* mu = cmd->add_option("--sigma2-mu", flags->sigma2_mu,
                             "Variance of the user mean");
  auto* e = cmd->add_option("--sigma2-e", flags->sigma2_e,
                            "Adversary prior-error variance");
  if (prior_required) {
    mu->required();
    e->required();
  } else {
    mu->capture_default_str();
    e->capture_default_str();
  }
  cmd->add_option("--sigma2-s", flags->sigma2_s,
                  "Per-location variance around the mean")
      ->required();
}

void AddMechanismFlags(CLI::App* cmd, ModelFlags* flags) {
  cmd->add_option("--sigma2-w", flags->sigma2_w, "Obfuscation noise variance")
      ->required();
  cmd->add_option("--p-h", flags->p_h,
                  "Head probability of the randomized-remapping coin")
      ->capture_default_str();
  cmd->add_option("--mechanism", flags->mechanism,
                  "Release mechanism: none, remap or randomized")
      ->required()
      ->check(CLI::IsMember({"none", "remap", "randomized"}));
}

void AddAdversaryFlag(CLI::App* cmd, ModelFlags* flags) {
  cmd->add_option("--adversary", flags->adversary,
                  "Adversary prior: perfect (knows the mean exactly; ignores "
                  "--sigma2-e) or imperfect")
      ->capture_default_str()
      ->check(CLI::IsMember({"perfect", "imperfect"}));
}

// "start:stop:step"; stop is included when (stop - start) is an integer
// multiple of step within 1e-9.
std::vector<double> ParseGrid(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  std::istringstream in(text);
  char colon1 = 0, colon2 = 0;
  if (!(in >> start >> colon1 >> stop >> colon2 >> step) || colon1 != ':' ||
      colon2 != ':' || !in.eof()) {
    throw Error(ErrorCode::kUsageError,
                "grid must have the form start:stop:step, got '" + text + "'");
  }
  if (!(step > 0.0) || stop < start) {
    throw Error(ErrorCode::kUsageError,
                "grid needs step > 0 and stop >= start");
  }
  const double span = stop - start;
  const double whole_steps = std::round(span / step);
  const bool inclusive = std::abs(whole_steps * step - span) <= 1e-9;
  std::vector<double> grid;
  if (inclusive) {
    const int last = static_cast<int>(whole_steps);
    for (int i = 0; i <= last; ++i) {
      // Interpolated so grid points of round endpoints stay round.
      grid.push_back(last == 0 ? start
                               : start + span * static_cast<double>(i) /
                                             static_cast<double>(last));
    }
  } else {
    for (int i = 0; start + static_cast<double>(i) * step <= stop; ++i) {
      grid.push_back(start + static_cast<double>(i) * step);
    }
  }
  return grid;
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUsageError,
                  "'" + item + "' is not a number in list '" + text + "'");
    }
  }
  if (values.empty()) {
    throw Error(ErrorCode::kUsageError, "empty list '" + text + "'");
  }
  return values;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::kIoError, "failed writing '" + path + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Privacy-utility analysis of additive-Gaussian location obfuscation "
      "with remapping"};
  app.require_subcommand(1);

  // analytic
  ModelFlags analytic_flags;
  CLI::App* analytic_cmd = app.add_subcommand(
      "analytic", "Closed-form utility/privacy MSEs for one configuration");
  analytic_cmd->set_config("--config");
  AddVarianceFlags(analytic_cmd, &analytic_flags, /*prior_required=*/true);
  AddMechanismFlags(analytic_cmd, &analytic_flags);
  AddAdversaryFlag(analytic_cmd, &analytic_flags);

  // simulate
  ModelFlags simulate_flags;
  uint64_t simulate_samples = 1000000;
  uint64_t simulate_seed = 0;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo estimate of the utility/privacy MSEs");
  simulate_cmd->set_config("--config");
  AddVarianceFlags(simulate_cmd, &simulate_flags, /*prior_required=*/true);
  AddMechanismFlags(simulate_cmd, &simulate_flags);
  AddAdversaryFlag(simulate_cmd, &simulate_flags);
  simulate_cmd->add_option("--samples", simulate_samples, "Sample count")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_seed, "Random seed")
      ->capture_default_str();

  // sweep
  ModelFlags sweep_flags;
  std::string sweep_grid;
  std::string sweep_p_h_list;
  uint64_t sweep_samples = 100000;
  uint64_t sweep_seed = 0;
  std::string sweep_out;
  std::string sweep_jsonl_out;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Grid of Monte-Carlo runs over sigma2_w and p_h, as CSV");
  sweep_cmd->set_config("--config");
  AddVarianceFlags(sweep_cmd, &sweep_flags, /*prior_required=*/true);
  sweep_cmd
      ->add_option("--sigma2-w-grid", sweep_grid,
                   "Noise-variance grid as start:stop:step")
      ->required();
  sweep_cmd
      ->add_option("--p-h-list", sweep_p_h_list,
                   "Comma-separated head probabilities; 0 runs none, 1 remap")
      ->required();
  sweep_cmd->add_option("--samples", sweep_samples, "Samples per grid cell")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_seed, "Master seed")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep_cmd->add_option("--jsonl-out", sweep_jsonl_out,
                        "Optional JSON-lines mirror output path");

  // protect
  ModelFlags protect_flags;
  std::string protect_input;
  std::string protect_output;
  std::string protect_mu = "fit";
  uint64_t protect_seed = 0;
  CLI::App* protect_cmd = app.add_subcommand(
      "protect", "Obfuscate/remap a CSV location trace file");
  protect_cmd->set_config("--config");
  protect_cmd->add_option("--input", protect_input, "Input trace CSV")
      ->required();
  protect_cmd->add_option("--output", protect_output, "Output trace CSV")
      ->required();
  AddVarianceFlags(protect_cmd, &protect_flags, /*prior_required=*/false);
  AddMechanismFlags(protect_cmd, &protect_flags);
  protect_cmd
      ->add_option("--mu", protect_mu,
                   "User mean: 'fit' or per-coordinate values v1[,v2,...]")
      ->capture_default_str();
  protect_cmd->add_option("--seed", protect_seed, "Random seed")
      ->capture_default_str();

  // verify
  ModelFlags verify_flags;
  uint64_t verify_samples = 1000000;
  uint64_t verify_seed = 0;
  double verify_tolerance = 5.0;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify",
      "Monte-Carlo vs closed-form comparison; exit 0 on pass, 1 on fail");
  verify_cmd->set_config("--config");
  AddVarianceFlags(verify_cmd, &verify_flags, /*prior_required=*/true);
  AddMechanismFlags(verify_cmd, &verify_flags);
  AddAdversaryFlag(verify_cmd, &verify_flags);
  verify_cmd->add_option("--samples", verify_samples, "Sample count")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "Random seed")
      ->capture_default_str();
  verify_cmd
      ->add_option("--tolerance-sigmas", verify_tolerance,
                   "Allowed |empirical - analytic| in standard errors")
      ->capture_default_str();

  try {
    app.parse(argc, argv);

    if (analytic_cmd->parsed()) {
      const auto report = privremap::MakeAnalyticReport(
          analytic_flags.Params(), analytic_flags.Mechanism(),
          analytic_flags.Adversary());
      std::cout << privremap::ToJson(report) << "\n";
      return kExitSuccess;
    }

    if (simulate_cmd->parsed()) {
      const auto report = privremap::RunMonteCarlo(
          simulate_flags.Params(), simulate_flags.Mechanism(),
          simulate_flags.Adversary(), simulate_samples, simulate_seed);
      std::cout << privremap::ToJson(report) << "\n";
      return kExitSuccess;
    }

    if (sweep_cmd->parsed()) {
      privremap::SweepSpec spec;
      spec.base_params =
          ModelParams{sweep_flags.sigma2_mu, sweep_flags.sigma2_s,
                      sweep_flags.sigma2_e, 0.0, 0.5};
      spec.sigma2_w_grid = ParseGrid(sweep_grid);
      spec.p_h_list = ParseDoubleList(sweep_p_h_list);
      spec.n_samples = sweep_samples;
      spec.seed = sweep_seed;
      const auto reports = privremap::RunSweep(spec);
      const std::string csv = privremap::EmitCsv(reports);
      if (sweep_out.empty()) {
        std::cout << csv;
      } else {
        WriteFile(sweep_out, csv);
      }
      if (!sweep_jsonl_out.empty()) {
        WriteFile(sweep_jsonl_out, privremap::EmitJsonLines(reports));
      }
      return kExitSuccess;
    }

    if (protect_cmd->parsed()) {
      const auto trace = privremap::ReadTrace(ReadFile(protect_input));
      const auto mu_source =
          protect_mu == "fit"
              ? privremap::MuSource::Fitted()
              : privremap::MuSource::Provided(ParseDoubleList(protect_mu));
      const auto released =
          privremap::Protect(trace, protect_flags.Params(),
                             protect_flags.Mechanism(), mu_source,
                             protect_seed);
      WriteFile(protect_output, privremap::WriteTrace(released));
      return kExitSuccess;
    }

    if (verify_cmd->parsed()) {
      const auto report = privremap::Verify(
          verify_flags.Params(), verify_flags.Mechanism(),
          verify_flags.Adversary(), verify_samples, verify_seed,
          verify_tolerance);
      std::cout << privremap::ToJson(report) << "\n";
      return report.pass ? kExitSuccess : kExitVerifyFail;
    }
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) {
      target = target->get_subcommands().front();
    }
    std::cout << target->help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage_error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    std::cerr << e.code_name() << ": " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal_error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsageError;
}
