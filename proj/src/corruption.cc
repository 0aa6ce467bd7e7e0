// src/corruption.cc

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

#include "otcfst/corruption.h"

#include "otcfst/error.h"
#include "otcfst/rng.h"

namespace otcfst {

ErrorSpec MixtureSpec(double total) {
  if (total < 0.0 || total > 1.0)
    throw Error("mixture rate must lie in [0, 1]");
  ErrorSpec spec;
  spec.p_sub = spec.p_ins = spec.p_del = total / 3.0;
  return spec;
}

namespace {

Label DrawFromPool(Rng& rng, std::span<const Label> pool, Label exclude) {
  int candidates = 0;
  for (Label w : pool)
    if (w != exclude) ++candidates;
  if (candidates == 0) throw EmptyPoolError("no replacement candidates");
  auto k = rng.UniformInt(static_cast<std::uint64_t>(candidates));
  for (Label w : pool) {
    if (w == exclude) continue;
    if (k-- == 0) return w;
  }
  return pool.back();  // unreachable
}

}  // namespace

std::pair<std::vector<Label>, CorruptionReport> CorruptTranscript(
    std::span<const Label> words, const ErrorSpec& spec,
    std::span<const Label> pool, std::uint64_t stream_id) {
  if (spec.p_sub < 0 || spec.p_ins < 0 || spec.p_del < 0 ||
      spec.p_sub > 1 || spec.p_ins > 1 || spec.p_del > 1 ||
      spec.p_sub + spec.p_del > 1.0)
    throw Error("invalid error probabilities");

  Rng rng(SplitSeed(spec.seed, stream_id));
  std::vector<Label> out;
  CorruptionReport report;
  report.input_tokens = static_cast<int>(words.size());

  for (Label w : words) {
    double u = rng.Uniform01();
    if (u < spec.p_sub) {
      out.push_back(DrawFromPool(rng, pool, w));
      ++report.substituted;
    } else if (u < spec.p_sub + spec.p_del) {
      ++report.deleted;
    } else {
      out.push_back(w);
    }
    if (rng.Uniform01() < spec.p_ins) {
      out.push_back(DrawFromPool(rng, pool, kEpsilon));
      ++report.inserted;
    }
  }
  report.output_tokens = static_cast<int>(out.size());
  return {std::move(out), report};
}

ErrorRateResult ErrorRate(std::span<const Label> ref,
                          std::span<const Label> hyp) {
  const int n = static_cast<int>(ref.size());
  const int m = static_cast<int>(hyp.size());
  ErrorRateResult r;
  r.ref_len = n;
  r.hyp_len = m;
  if (n == 0) {
    r.ins = m;
    r.rate = static_cast<double>(m);
    r.empty_ref = m > 0;
    return r;
  }

  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (int i = 0; i <= n; ++i) d[i][0] = i;
  for (int j = 0; j <= m; ++j) d[0][j] = j;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      int sub = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int del = d[i - 1][j] + 1;
      int ins = d[i][j - 1] + 1;
      d[i][j] = std::min({sub, del, ins});
    }

  // Backtrace, taking the diagonal whenever it ties so a substitution is
  // reported rather than an insertion-deletion pair.
  int i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++r.sub;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++r.del;
      --i;
    } else {
      ++r.ins;
      --j;
    }
  }
  r.rate = static_cast<double>(r.sub + r.ins + r.del) / n;
  return r;
}

}  // namespace otcfst
