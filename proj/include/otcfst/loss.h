// otcfst/loss.h

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

#ifndef OTCFST_LOSS_H_
#define OTCFST_LOSS_H_

#include <Eigen/Dense>

#include "otcfst/emission.h"
#include "otcfst/graphs.h"
#include "otcfst/vocab.h"

namespace otcfst {

enum class LossMode { kCtc, kOtc };

// Epoch-indexed penalty schedule: lambda_k(i) = beta_k * tau_k^i.  The
// initial value beta sets how strongly star arcs are discouraged (or, when
// negative, favored) at the start of training; tau in (0, 1) decays the
// magnitude toward zero as epochs pass.
struct PenaltySchedule {
  double beta1 = 3.75;
  double tau1 = 0.999;
  double beta2 = -19.0;
  double tau2 = 0.975;
};

PenaltyPair PenaltyAt(const PenaltySchedule& s, int epoch);

struct LossConfig {
  LossMode mode = LossMode::kCtc;
  StarMode star_mode = StarMode::kAverage;
  PenaltySchedule schedule;  // used only in OTC mode
  Vocabulary vocab;
  Lexicon lexicon;
};

struct LossResult {
  // -log P(y | x).  +infinity (with no_path set) when no alignment exists,
  // e.g. when the transcript needs more frames than the emissions have.
  double nll = 0.0;
  // d nll / d log_probs(t, col); zero when no_path.  Entries are minus the
  // arc occupancy accumulated onto each emission entry, so label entries
  // lie in [-1, 0] and each row sums to -1 on feasible inputs.
  Eigen::MatrixXd grad;
  bool no_path = false;
};

// Emission-independent training graph S(y) = T o L o G(y), trimmed.  In
// OTC mode G is the star-augmented transcript graph with the given
// penalties and T/L pass the star token through; `penalties` is ignored in
// CTC mode.  Cacheable across evaluations of the same transcript (and, for
// OTC, the same penalties).
Wfst BuildTrainingGraph(const LossConfig& cfg, const Transcript& y,
                        const PenaltyPair& penalties = {});

// Negative log-likelihood and exact emission gradient of the lattice
// E(x) o S, computed by forward-backward arc occupancies.  `training_graph`
// must come from BuildTrainingGraph with the same config.  In average star
// mode the occupancy of star arcs is redistributed over the frame's unit
// entries by the chain rule of the mean.
LossResult LatticeLoss(const EmissionMatrix& emissions,
                       const Wfst& training_graph, const LossConfig& cfg);

LossResult CtcLoss(const EmissionMatrix& emissions, const Transcript& y,
                   const LossConfig& cfg);
// Penalties follow PenaltyAt(cfg.schedule, epoch).  With both penalties
// +infinity this degenerates to CtcLoss.
LossResult OtcLoss(const EmissionMatrix& emissions, const Transcript& y,
                   const LossConfig& cfg, int epoch);

// Compares the analytic gradient against central finite differences taken
// through row re-normalization (both sides mapped to the tangent of the
// normalized simplex) and returns the largest relative discrepancy.
// Intended for small instances.
double GradCheck(const EmissionMatrix& emissions, const Transcript& y,
                 const LossConfig& cfg, int epoch = 0, double step = 1e-5);

}  // namespace otcfst

#endif  // OTCFST_LOSS_H_
