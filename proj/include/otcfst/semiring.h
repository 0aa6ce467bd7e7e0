// otcfst/semiring.h

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

#ifndef OTCFST_SEMIRING_H_
#define OTCFST_SEMIRING_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace otcfst {

// Weights live on the log semiring: a weight is a log probability,
// path extension is +, path combination is log-sum-exp.
using LogWeight = double;

inline constexpr LogWeight kLogZero =
    -std::numeric_limits<double>::infinity();  // additive identity
inline constexpr LogWeight kLogOne = 0.0;      // multiplicative identity

// log(e^a + e^b), shifted by the max so the exp never overflows.
inline LogWeight LogAdd(LogWeight a, LogWeight b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  LogWeight hi = std::max(a, b);
  LogWeight lo = std::min(a, b);
  if (std::isinf(hi)) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

inline LogWeight LogSumExp(std::span<const LogWeight> values) {
  LogWeight hi = kLogZero;
  for (LogWeight v : values) hi = std::max(hi, v);
  if (hi == kLogZero || std::isinf(hi)) return hi;
  double sum = 0.0;
  for (LogWeight v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

}  // namespace otcfst

#endif  // OTCFST_SEMIRING_H_
