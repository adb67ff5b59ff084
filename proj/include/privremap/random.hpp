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

#ifndef PRIVREMAP_RANDOM_HPP_
#define PRIVREMAP_RANDOM_HPP_

#include <cmath>
#include <cstdint>

namespace privremap {

// Counter-based randomness (Philox4x32-10, Salmon et al. SC 2011). Streams
// are addressed by (key, stream, substream), so any unit of work can derive
// its own independent stream from a run seed plus its index. Draws within a
// stream are reproducible and independent of execution order across streams,
// which is what makes parallel Monte Carlo runs bit-identical.
class RandomStream {
 public:
  RandomStream(uint64_t key, uint64_t stream, uint32_t substream = 0)
      : key0_(static_cast<uint32_t>(key)),
        key1_(static_cast<uint32_t>(key >> 32)),
        block_(0),
        substream_(substream),
        stream_lo_(static_cast<uint32_t>(stream)),
        stream_hi_(static_cast<uint32_t>(stream >> 32)),
        buffer_pos_(2),
        have_spare_normal_(false),
        spare_normal_(0.0) {}

  uint64_t NextUint64() {
    if (buffer_pos_ >= 2) {
      Refill();
    }
    return buffer_[buffer_pos_++];
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached, so consecutive calls consume uniforms in a fixed pattern.
  double Normal() {
    if (have_spare_normal_) {
      have_spare_normal_ = false;
      return spare_normal_;
    }
    const double u1 = 1.0 - Uniform();  // (0, 1], keeps the log finite
    const double u2 = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_normal_ = r * std::sin(theta);
    have_spare_normal_ = true;
    return r * std::cos(theta);
  }

 private:
  static void MultiplyHighLow(uint32_t a, uint32_t b, uint32_t* lo,
                              uint32_t* hi) {
    const uint64_t product = static_cast<uint64_t>(a) * b;
    *lo = static_cast<uint32_t>(product);
    *hi = static_cast<uint32_t>(product >> 32);
  }

  void Refill() {
    uint32_t ctr[4] = {block_, substream_, stream_lo_, stream_hi_};
    uint32_t key[2] = {key0_, key1_};
    for (int round = 0; round < 10; ++round) {
      uint32_t lo0, hi0, lo1, hi1;
      MultiplyHighLow(kMultiplierA, ctr[0], &lo0, &hi0);
      MultiplyHighLow(kMultiplierB, ctr[2], &lo1, &hi1);
      const uint32_t next[4] = {hi1 ^ ctr[1] ^ key[0], lo1,
                                hi0 ^ ctr[3] ^ key[1], lo0};
      ctr[0] = next[0];
      ctr[1] = next[1];
      ctr[2] = next[2];
      ctr[3] = next[3];
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    buffer_[0] = static_cast<uint64_t>(ctr[0]) |
                 (static_cast<uint64_t>(ctr[1]) << 32);
    buffer_[1] = static_cast<uint64_t>(ctr[2]) |
                 (static_cast<uint64_t>(ctr[3]) << 32);
    buffer_pos_ = 0;
    ++block_;
  }

  static constexpr uint32_t kMultiplierA = 0xD2511F53;
  static constexpr uint32_t kMultiplierB = 0xCD9E8D57;
  static constexpr uint32_t kWeylA = 0x9E3779B9;
  static constexpr uint32_t kWeylB = 0xBB67AE85;

  uint32_t key0_, key1_;
  uint32_t block_;
  uint32_t substream_;
  uint32_t stream_lo_, stream_hi_;
  uint64_t buffer_[2];
  int buffer_pos_;
  bool have_spare_normal_;
  double spare_normal_;
};

// SplitMix64 finalizer; used to derive per-cell seeds from a master seed.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  uint64_t x = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace privremap

#endif  // PRIVREMAP_RANDOM_HPP_
