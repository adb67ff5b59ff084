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

#include "privremap/trace.hpp"

#include <charconv>
#include <cmath>

#include "privremap/format.hpp"
#include "privremap/random.hpp"

namespace privremap {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string LinePrefix(size_t line_number) {
  return "line " + std::to_string(line_number) + ": ";
}

int64_t ParseTimestamp(std::string_view field, size_t line_number) {
  int64_t value = 0;
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kNonNumericField,
                LinePrefix(line_number) + "timestamp '" + std::string(field) +
                    "' is not an integer");
  }
  return value;
}

double ParseCoordinate(std::string_view field, size_t line_number) {
  double value = 0.0;
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kNonNumericField,
                LinePrefix(line_number) + "coordinate '" + std::string(field) +
                    "' is not a number");
  }
  return value;
}

}  // namespace

Trace ReadTrace(std::string_view text) {
  Trace trace;
  size_t line_number = 0;
  size_t pos = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    const size_t newline = text.find('\n', pos);
    const std::string_view line =
        newline == std::string_view::npos ? text.substr(pos)
                                          : text.substr(pos, newline - pos);
    const bool last_segment = newline == std::string_view::npos;
    pos = last_segment ? text.size() + 1 : newline + 1;
    if (last_segment && line.empty()) break;  // trailing newline or empty tail
    ++line_number;

    const std::vector<std::string_view> fields = SplitFields(line);
    if (!saw_header) {
      if (fields.size() < 2 || fields[0] != "t") {
        throw Error(ErrorCode::kMalformedHeader,
                    LinePrefix(line_number) +
                        "expected header 't,x1[,x2,...]', got '" +
                        std::string(line) + "'");
      }
      for (size_t i = 1; i < fields.size(); ++i) {
        if (fields[i] != "x" + std::to_string(i)) {
          throw Error(ErrorCode::kMalformedHeader,
                      LinePrefix(line_number) + "expected column 'x" +
                          std::to_string(i) + "', got '" +
                          std::string(fields[i]) + "'");
        }
      }
      trace.dim = fields.size() - 1;
      saw_header = true;
      continue;
    }

    if (fields.size() != trace.dim + 1) {
      throw Error(ErrorCode::kRaggedRow,
                  LinePrefix(line_number) + "expected " +
                      std::to_string(trace.dim + 1) + " fields, got " +
                      std::to_string(fields.size()));
    }
    TraceRecord record;
    record.t = ParseTimestamp(fields[0], line_number);
    if (!trace.records.empty() && record.t <= trace.records.back().t) {
      throw Error(ErrorCode::kNonMonotoneTimestamps,
                  LinePrefix(line_number) + "timestamp " +
                      std::to_string(record.t) + " is not greater than " +
                      std::to_string(trace.records.back().t));
    }
    record.coords.reserve(trace.dim);
    for (size_t i = 1; i < fields.size(); ++i) {
      record.coords.push_back(ParseCoordinate(fields[i], line_number));
    }
    trace.records.push_back(std::move(record));
  }
  if (!saw_header) {
    throw Error(ErrorCode::kMalformedHeader, "line 1: missing header");
  }
  return trace;
}

std::string WriteTrace(const Trace& trace) {
  std::string out = "t";
  for (size_t i = 1; i <= trace.dim; ++i) {
    out += ",x" + std::to_string(i);
  }
  out += '\n';
  for (const TraceRecord& record : trace.records) {
    out += std::to_string(record.t);
    for (const double coord : record.coords) {
      out += ',';
      out += FormatDouble(coord);
    }
    out += '\n';
  }
  return out;
}

UserModelFit FitUserModel(const Trace& trace) {
  const size_t n = trace.records.size();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least 2 records to fit a user model, got " +
                    std::to_string(n));
  }
  UserModelFit fit;
  fit.mu.assign(trace.dim, 0.0);
  for (const TraceRecord& record : trace.records) {
    for (size_t c = 0; c < trace.dim; ++c) {
      fit.mu[c] += record.coords[c];
    }
  }
  for (double& m : fit.mu) {
    m /= static_cast<double>(n);
  }
  double sum_sq = 0.0;
  for (const TraceRecord& record : trace.records) {
    for (size_t c = 0; c < trace.dim; ++c) {
      const double d = record.coords[c] - fit.mu[c];
      sum_sq += d * d;
    }
  }
  fit.sigma2_s =
      sum_sq / (static_cast<double>(trace.dim) * static_cast<double>(n - 1));
  return fit;
}

Trace Protect(const Trace& trace, const ModelParams& params,
              MechanismKind mechanism, const MuSource& mu_source,
              uint64_t seed) {
  ValidateParams(params);
  std::vector<double> mu;
  if (mu_source.fitted) {
    mu = FitUserModel(trace).mu;
  } else {
    mu = mu_source.values;
    if (mu.size() != trace.dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "mu has " + std::to_string(mu.size()) +
                      " coordinates, trace has " + std::to_string(trace.dim));
    }
  }

  const double noise_scale = std::sqrt(params.sigma2_w);
  Trace out;
  out.dim = trace.dim;
  out.records.reserve(trace.records.size());
  for (size_t r = 0; r < trace.records.size(); ++r) {
    const TraceRecord& record = trace.records[r];
    TraceRecord released;
    released.t = record.t;
    released.coords.reserve(trace.dim);
    for (size_t c = 0; c < trace.dim; ++c) {
      RandomStream rng(seed, r, static_cast<uint32_t>(c));
      const double y = record.coords[c] + noise_scale * rng.Normal();
      double z = y;
      switch (mechanism) {
        case MechanismKind::kNoRemap:
          break;
        case MechanismKind::kRemap:
          z = Remap(y, mu[c], params);
          break;
        case MechanismKind::kRandomized:
          if (rng.Uniform() < params.p_h) {
            z = Remap(y, mu[c], params);
          }
          break;
      }
      released.coords.push_back(z);
    }
    out.records.push_back(std::move(released));
  }
  return out;
}

}  // namespace privremap
