// otcfst/rng.h

// Copyright 2026  The otcfst authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef OTCFST_RNG_H_
#define OTCFST_RNG_H_

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace otcfst {

// splitmix64 step; used to derive independent sub-streams from one seed.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for sub-stream `stream` of `seed` (e.g. one stream per utterance).
// Results are reproducible regardless of the order streams are consumed in.
inline std::uint64_t SplitSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream));
}

// mt19937_64 with hand-rolled sampling.  The engine's output sequence is
// pinned by the C++ standard and the samplers below avoid
// std::*_distribution, whose results vary across standard libraries, so
// identical seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t UniformInt(std::uint64_t n) {
    assert(n > 0);
    return engine_() % n;  // modulo bias is negligible for small n
  }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t UniformRange(std::int64_t lo, std::int64_t hi) {
    assert(hi >= lo);
    return lo + static_cast<std::int64_t>(
                    UniformInt(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Standard normal via Box-Muller.
  double Gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = Uniform01();
    } while (u1 == 0.0);
    double u2 = Uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[UniformInt(i)]);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace otcfst

#endif  // OTCFST_RNG_H_
