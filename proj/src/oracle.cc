// src/oracle.cc

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

#include "otcfst/oracle.h"

#include <cmath>
#include <map>

#include "otcfst/error.h"
#include "otcfst/semiring.h"

namespace otcfst {

std::vector<Label> Collapse(std::span<const Label> pi, Label blank) {
  std::vector<Label> out;
  Label prev = kEpsilon;
  for (Label l : pi) {
    if (l != prev) out.push_back(l);
    prev = l;
  }
  std::erase(out, blank);
  return out;
}

namespace {

// Sums, over every way of reading `z` through the transcript (for OTC:
// with star self-loops costing lambda1 and star bypasses costing lambda2
// per use), the log weight of the parse.  Recursion over (position in z,
// position in y); small inputs only.
class ParseScorer {
 public:
  ParseScorer(const std::vector<Label>& z, const Transcript& y,
              const LossConfig& cfg, const PenaltyPair& p)
      : z_(z), y_(y), cfg_(cfg), penalties_(p),
        star_(cfg.vocab.star_id()),
        otc_(cfg.mode == LossMode::kOtc) {}

  double Score() { return At(0, 0); }

 private:
  double At(std::size_t i, std::size_t u) {
    auto key = std::make_pair(i, u);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double w = kLogZero;
    if (i == z_.size()) {
      if (u == y_.size()) w = kLogOne;
    } else {
      if (otc_ && z_[i] == star_) {
        w = LogAdd(w, -penalties_.lambda1 + At(i + 1, u));  // self-loop
        if (u < y_.size())
          w = LogAdd(w, -penalties_.lambda2 + At(i + 1, u + 1));  // bypass
      }
      if (u < y_.size()) {
        const auto& pron = cfg_.lexicon.Pronunciation(y_.words[u]);
        if (i + pron.size() <= z_.size() &&
            std::equal(pron.begin(), pron.end(), z_.begin() + i))
          w = LogAdd(w, At(i + pron.size(), u + 1));
      }
    }
    memo_.emplace(key, w);
    return w;
  }

  const std::vector<Label>& z_;
  const Transcript& y_;
  const LossConfig& cfg_;
  PenaltyPair penalties_;
  Label star_;
  bool otc_;
  std::map<std::pair<std::size_t, std::size_t>, double> memo_;
};

}  // namespace

double BrutePosterior(const EmissionMatrix& emissions, const Transcript& y,
                      const LossConfig& cfg, int epoch,
                      std::int64_t max_alignments) {
  const Vocabulary& vocab = cfg.vocab;
  const bool otc = cfg.mode == LossMode::kOtc;
  const int frames = emissions.frames();
  const int n = vocab.num_units();

  std::vector<Label> labels;
  for (int i = 0; i < n; ++i) labels.push_back(vocab.unit_id(i));
  labels.push_back(vocab.blank_id());
  if (otc) labels.push_back(vocab.star_id());

  double count = std::pow(static_cast<double>(labels.size()), frames);
  if (count > static_cast<double>(max_alignments))
    throw PathExplosionError("alignment space too large to enumerate");

  // Per-frame log probability of each candidate label, recomputed here
  // from the raw matrix (including the average-mode star score).
  Eigen::MatrixXd lp(frames, labels.size());
  for (int t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      Label l = labels[k];
      if (l == vocab.star_id() && cfg.star_mode == StarMode::kAverage) {
        double acc = kLogZero;
        for (int u = 1; u <= n; ++u)
          acc = LogAdd(acc, emissions.log_probs(t, u));
        lp(t, k) = acc - std::log(static_cast<double>(n));
      } else {
        lp(t, k) = emissions.log_probs(t, vocab.ColOf(l, cfg.star_mode));
      }
    }
  }

  PenaltyPair penalties;
  if (otc) penalties = PenaltyAt(cfg.schedule, epoch);

  std::map<std::vector<Label>, double> parse_weight;
  std::vector<int> digits(frames, 0);
  std::vector<Label> pi(frames);
  double total = kLogZero;
  while (true) {
    double score = 0.0;
    for (int t = 0; t < frames; ++t) {
      pi[t] = labels[digits[t]];
      score += lp(t, digits[t]);
    }
    std::vector<Label> z = Collapse(pi, vocab.blank_id());
    auto it = parse_weight.find(z);
    if (it == parse_weight.end())
      it = parse_weight.emplace(z, ParseScorer(z, y, cfg, penalties).Score())
               .first;
    if (it->second != kLogZero) total = LogAdd(total, score + it->second);

    int t = 0;
    for (; t < frames; ++t) {
      if (++digits[t] < static_cast<int>(labels.size())) break;
      digits[t] = 0;
    }
    if (t == frames) break;
  }
  return total;
}

}  // namespace otcfst
