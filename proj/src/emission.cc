// src/emission.cc

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

#include "otcfst/emission.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "otcfst/error.h"
#include "otcfst/semiring.h"

namespace otcfst {

namespace {

double RowLogSumExp(const Eigen::MatrixXd& m, int row) {
  double hi = m.row(row).maxCoeff();
  if (hi == kLogZero) return kLogZero;
  double sum = (m.row(row).array() - hi).exp().sum();
  return hi + std::log(sum);
}

}  // namespace

void ValidateNormalized(const EmissionMatrix& e, double tol) {
  for (int t = 0; t < e.frames(); ++t) {
    double lse = RowLogSumExp(e.log_probs, t);
    if (!(std::abs(lse) <= tol))
      throw UnnormalizedRowError("emission row " + std::to_string(t) +
                                 " has log mass " + std::to_string(lse));
  }
}

double StarLogProb(const EmissionMatrix& e, const Vocabulary& vocab,
                   int frame) {
  const int n = vocab.num_units();
  // Unit columns are 1..n regardless of star mode.
  double hi = e.log_probs.row(frame).segment(1, n).maxCoeff();
  if (hi == kLogZero) return kLogZero;
  double sum =
      (e.log_probs.row(frame).segment(1, n).array() - hi).exp().sum();
  return hi + std::log(sum) - std::log(static_cast<double>(n));
}

EmissionMatrix ReadEmissionTsv(std::istream& in, const Vocabulary& vocab,
                               StarMode mode) {
  const int cols = vocab.NumEmissionCols(mode);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("missing header row", 1);
  ++line_no;
  std::istringstream header(line);
  std::string name;
  std::vector<int> col_of_field;
  while (header >> name) {
    auto label = vocab.Find(name);
    if (!label) throw ParseError("unknown column '" + name + "'", line_no);
    col_of_field.push_back(vocab.ColOf(*label, mode));
  }
  if (static_cast<int>(col_of_field.size()) != cols)
    throw ParseError("expected " + std::to_string(cols) + " columns, got " +
                     std::to_string(col_of_field.size()),
                     line_no);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<double> row(cols, 0.0);
    int k = 0;
    std::string tok;
    while (fields >> tok) {
      if (k >= cols) throw ParseError("too many fields", line_no);
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        throw ParseError("bad number '" + tok + "'", line_no);
      row[col_of_field[k++]] = v;
    }
    if (k == 0) continue;
    if (k != cols) throw ParseError("expected " + std::to_string(cols) +
                                    " fields, got " + std::to_string(k),
                                    line_no);
    rows.push_back(std::move(row));
  }

  EmissionMatrix e;
  e.log_probs.resize(static_cast<int>(rows.size()), cols);
  for (int t = 0; t < static_cast<int>(rows.size()); ++t)
    for (int c = 0; c < cols; ++c) e.log_probs(t, c) = rows[t][c];
  return e;
}

EmissionMatrix ReadEmissionTsvFile(const std::string& path,
                                   const Vocabulary& vocab, StarMode mode) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open emission file: " + path);
  return ReadEmissionTsv(in, vocab, mode);
}

void WriteEmissionTsv(std::ostream& out, const EmissionMatrix& e,
                      const Vocabulary& vocab, StarMode mode) {
  const int cols = vocab.NumEmissionCols(mode);
  for (int c = 0; c < cols; ++c)
    out << (c ? "\t" : "") << vocab.NameOf(vocab.LabelOfCol(c, mode));
  out << '\n';
  char buf[64];
  for (int t = 0; t < e.frames(); ++t) {
    for (int c = 0; c < cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", e.log_probs(t, c));
      out << (c ? "\t" : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace otcfst
