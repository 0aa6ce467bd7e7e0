// otcfst/emission.h

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

#ifndef OTCFST_EMISSION_H_
#define OTCFST_EMISSION_H_

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "otcfst/vocab.h"

namespace otcfst {

// Per-frame log probabilities over the model's output units.  Row t is
// frame t; columns follow Vocabulary::ColOf (blank first, then units, then
// star in dedicated mode).  Every row must be a normalized distribution.
struct EmissionMatrix {
  Eigen::MatrixXd log_probs;  // frames x cols

  int frames() const { return static_cast<int>(log_probs.rows()); }
  int cols() const { return static_cast<int>(log_probs.cols()); }
};

// Throws UnnormalizedRowError unless logsumexp of every row is 0 within
// `tol`.
void ValidateNormalized(const EmissionMatrix& e, double tol = 1e-6);

// log of the mean probability of the non-blank units of `frame`:
// log((1/N) * sum_u p(u)).  This is the average-mode star score.
double StarLogProb(const EmissionMatrix& e, const Vocabulary& vocab,
                   int frame);

// Tab-separated text with a header row of column names (<blk>, units, and
// <star> in dedicated mode) and one row of natural-log values per frame.
// Columns may appear in any order in the input; output uses column order.
EmissionMatrix ReadEmissionTsv(std::istream& in, const Vocabulary& vocab,
                               StarMode mode);
EmissionMatrix ReadEmissionTsvFile(const std::string& path,
                                   const Vocabulary& vocab, StarMode mode);
void WriteEmissionTsv(std::ostream& out, const EmissionMatrix& e,
                      const Vocabulary& vocab, StarMode mode);

}  // namespace otcfst

#endif  // OTCFST_EMISSION_H_
