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

#ifndef PRIVREMAP_TRACE_HPP_
#define PRIVREMAP_TRACE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "privremap/model.hpp"

namespace privremap {

struct TraceRecord {
  int64_t t = 0;
  std::vector<double> coords;

  bool operator==(const TraceRecord&) const = default;
};

// Timestamped locations of uniform dimensionality. The scalar model is
// applied independently per coordinate; that is a documented simplification,
// not a claim of optimality for correlated coordinates.
struct Trace {
  size_t dim = 0;
  std::vector<TraceRecord> records;

  bool operator==(const Trace&) const = default;
};

// Parses CSV with header "t,x1[,x2,...]". Timestamps must be integers in
// strictly increasing order and every row must match the header's width.
// Errors carry the 1-based offending line number in their message.
Trace ReadTrace(std::string_view text);

// Canonical form: "\n" line endings, shortest round-trip decimals.
// WriteTrace(ReadTrace(text)) == text for canonically formatted input.
std::string WriteTrace(const Trace& trace);

struct UserModelFit {
  std::vector<double> mu;  // per-coordinate sample mean
  double sigma2_s = 0.0;   // pooled unbiased sample variance
};

// Needs at least two records.
UserModelFit FitUserModel(const Trace& trace);

// Where the user mean comes from when protecting a trace: fitted from the
// input itself, or supplied per coordinate.
struct MuSource {
  static MuSource Fitted() { return MuSource{true, {}}; }
  static MuSource Provided(std::vector<double> values) {
    return MuSource{false, std::move(values)};
  }

  bool fitted = true;
  std::vector<double> values;
};

// Obfuscates (and optionally remaps) every coordinate of every record.
// Noise and coin draws come from the (seed, record index, coordinate)
// stream, so output is deterministic and records may be processed in any
// order.
Trace Protect(const Trace& trace, const ModelParams& params,
              MechanismKind mechanism, const MuSource& mu_source,
              uint64_t seed);

}  // namespace privremap

#endif  // PRIVREMAP_TRACE_HPP_
