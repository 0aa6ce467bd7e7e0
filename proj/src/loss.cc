// src/loss.cc

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

#include "otcfst/loss.h"

#include <cassert>
#include <cmath>
#include <limits>

#include "otcfst/compose.h"
#include "otcfst/error.h"

namespace otcfst {

PenaltyPair PenaltyAt(const PenaltySchedule& s, int epoch) {
  if (!(s.tau1 > 0.0 && s.tau1 < 1.0) || !(s.tau2 > 0.0 && s.tau2 < 1.0))
    throw Error("penalty decay factors must lie strictly inside (0, 1)");
  if (epoch < 0) throw Error("epoch must be non-negative");
  return PenaltyPair{s.beta1 * std::pow(s.tau1, epoch),
                     s.beta2 * std::pow(s.tau2, epoch)};
}

Wfst BuildTrainingGraph(const LossConfig& cfg, const Transcript& y,
                        const PenaltyPair& penalties) {
  const bool star = cfg.mode == LossMode::kOtc;
  Wfst t = BuildCtcTopology(cfg.vocab, star);
  Wfst l = BuildLexiconFst(cfg.lexicon, cfg.vocab, star);
  Wfst g = star ? BuildOtcG(y, penalties, cfg.lexicon.star_word_id())
                : BuildLinearG(y);
  return Connect(Compose(t, Compose(l, g)));
}

LossResult LatticeLoss(const EmissionMatrix& emissions,
                       const Wfst& training_graph, const LossConfig& cfg) {
  const Vocabulary& vocab = cfg.vocab;
  const bool star = cfg.mode == LossMode::kOtc;

  Wfst e = BuildEmissionFst(emissions, vocab, cfg.star_mode, star);
  std::vector<ComposeStateInfo> info;
  Wfst lattice = Compose(e, training_graph, &info);

  LossResult result;
  result.grad = Eigen::MatrixXd::Zero(emissions.frames(), emissions.cols());

  if (lattice.Empty()) {
    result.nll = std::numeric_limits<double>::infinity();
    result.no_path = true;
    return result;
  }

  // The training graph has no epsilon input labels and the emission chain
  // no epsilon outputs, so every lattice arc consumes exactly one frame:
  // the frame is the e-side state of its source and the label its ilabel.
  auto order = TopologicalOrder(lattice);
  auto alpha = ForwardWeights(lattice, order);
  auto beta = BackwardWeights(lattice, order);
  const double total = beta[lattice.Start()];
  if (total == kLogZero) {
    result.nll = std::numeric_limits<double>::infinity();
    result.no_path = true;
    return result;
  }
  result.nll = -total;

  // Occupancy of star arcs per frame, redistributed below in average mode.
  Eigen::VectorXd star_occ;
  if (star && cfg.star_mode == StarMode::kAverage)
    star_occ = Eigen::VectorXd::Zero(emissions.frames());

  for (StateId s = 0; s < lattice.NumStates(); ++s) {
    if (alpha[s] == kLogZero) continue;
    const int frame = info[s].a_state;
    for (const Arc& a : lattice.ArcsFrom(s)) {
      if (beta[a.dst] == kLogZero) continue;
      assert(a.ilabel != kEpsilon);
      double occ = std::exp(alpha[s] + a.weight + beta[a.dst] - total);
      if (a.ilabel == vocab.star_id() && cfg.star_mode == StarMode::kAverage)
        star_occ(frame) += occ;
      else
        result.grad(frame, vocab.ColOf(a.ilabel, cfg.star_mode)) -= occ;
    }
  }

  if (star && cfg.star_mode == StarMode::kAverage) {
    const int n = vocab.num_units();
    for (int t = 0; t < emissions.frames(); ++t) {
      if (star_occ(t) == 0.0) continue;
      // d star_logprob / d log_probs(t, u) = p(u) / sum of unit probs.
      Eigen::ArrayXd p =
          emissions.log_probs.row(t).segment(1, n).array().exp();
      result.grad.row(t).segment(1, n) -=
          (star_occ(t) * (p / p.sum())).matrix().transpose();
    }
  }
  return result;
}

LossResult CtcLoss(const EmissionMatrix& emissions, const Transcript& y,
                   const LossConfig& cfg) {
  LossConfig ctc_cfg = cfg;
  ctc_cfg.mode = LossMode::kCtc;
  return LatticeLoss(emissions, BuildTrainingGraph(ctc_cfg, y), ctc_cfg);
}

LossResult OtcLoss(const EmissionMatrix& emissions, const Transcript& y,
                   const LossConfig& cfg, int epoch) {
  LossConfig otc_cfg = cfg;
  otc_cfg.mode = LossMode::kOtc;
  PenaltyPair p = PenaltyAt(otc_cfg.schedule, epoch);
  return LatticeLoss(emissions, BuildTrainingGraph(otc_cfg, y, p), otc_cfg);
}

namespace {

LossResult Evaluate(const EmissionMatrix& e, const Transcript& y,
                    const LossConfig& cfg, int epoch) {
  return cfg.mode == LossMode::kOtc ? OtcLoss(e, y, cfg, epoch)
                                    : CtcLoss(e, y, cfg);
}

void RenormalizeRow(Eigen::MatrixXd& m, int row) {
  double hi = m.row(row).maxCoeff();
  double lse = hi + std::log((m.row(row).array() - hi).exp().sum());
  m.row(row).array() -= lse;
}

}  // namespace

double GradCheck(const EmissionMatrix& emissions, const Transcript& y,
                 const LossConfig& cfg, int epoch, double step) {
  LossResult base = Evaluate(emissions, y, cfg, epoch);
  if (base.no_path) return 0.0;

  // Perturbing one entry and re-normalizing moves along the simplex, so the
  // finite difference estimates the gradient projected onto that tangent:
  // g(v) - p(v) * sum_k g(k).  Map the analytic gradient the same way.
  Eigen::MatrixXd probs = emissions.log_probs.array().exp();
  Eigen::VectorXd row_sums = base.grad.rowwise().sum();
  Eigen::MatrixXd projected =
      base.grad - (probs.array().colwise() * row_sums.array()).matrix();

  double max_rel = 0.0;
  for (int t = 0; t < emissions.frames(); ++t) {
    for (int c = 0; c < emissions.cols(); ++c) {
      EmissionMatrix plus = emissions;
      plus.log_probs(t, c) += step;
      RenormalizeRow(plus.log_probs, t);
      EmissionMatrix minus = emissions;
      minus.log_probs(t, c) -= step;
      RenormalizeRow(minus.log_probs, t);
      double fd = (Evaluate(plus, y, cfg, epoch).nll -
                   Evaluate(minus, y, cfg, epoch).nll) /
                  (2.0 * step);
      double an = projected(t, c);
      double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1.0});
      max_rel = std::max(max_rel, rel);
    }
  }
  return max_rel;
}

}  // namespace otcfst
