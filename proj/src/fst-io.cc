// src/fst-io.cc

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

#include "otcfst/fst-io.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "otcfst/error.h"

namespace otcfst {

std::string FormatWeight(double w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  std::string s(buf, ptr);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

std::string WriteFstText(const Wfst& w) {
  std::string out;
  for (StateId s = 0; s < w.NumStates(); ++s)
    for (const Arc& a : w.ArcsFrom(s)) {
      out += std::to_string(a.src) + ' ' + std::to_string(a.dst) + ' ' +
             std::to_string(a.ilabel) + ' ' + std::to_string(a.olabel) + ' ' +
             FormatWeight(a.weight) + '\n';
    }
  for (StateId s = 0; s < w.NumStates(); ++s)
    if (w.IsFinal(s))
      out += std::to_string(s) + ' ' + FormatWeight(w.FinalWeight(s)) + '\n';
  return out;
}

namespace {

std::vector<std::string> SplitWs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long ParseInt(const std::string& tok, int line) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || v < 0)
    throw ParseError("expected a non-negative integer, got '" + tok + "'",
                     line);
  return v;
}

double ParseDouble(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("expected a number, got '" + tok + "'", line);
  return v;
}

}  // namespace

Wfst ReadFstText(std::string_view text) {
  struct FinalLine {
    StateId state;
    double weight;
  };
  std::vector<Arc> arcs;
  std::vector<FinalLine> finals;
  StateId max_state = kNoState;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    auto toks = SplitWs(line);
    if (toks.empty()) continue;
    if (toks.size() == 5) {
      Arc a;
      a.src = static_cast<StateId>(ParseInt(toks[0], line_no));
      a.dst = static_cast<StateId>(ParseInt(toks[1], line_no));
      a.ilabel = static_cast<Label>(ParseInt(toks[2], line_no));
      a.olabel = static_cast<Label>(ParseInt(toks[3], line_no));
      a.weight = ParseDouble(toks[4], line_no);
      max_state = std::max({max_state, a.src, a.dst});
      arcs.push_back(a);
    } else if (toks.size() == 2) {
      StateId s = static_cast<StateId>(ParseInt(toks[0], line_no));
      double wgt = ParseDouble(toks[1], line_no);
      max_state = std::max(max_state, s);
      finals.push_back(FinalLine{s, wgt});
    } else {
      throw ParseError("expected 5 fields (arc) or 2 fields (final state), "
                       "got " + std::to_string(toks.size()),
                       line_no);
    }
  }

  Wfst w(max_state + 1);
  for (const Arc& a : arcs) w.AddArc(a.src, a.dst, a.ilabel, a.olabel, a.weight);
  for (const FinalLine& f : finals) w.SetFinal(f.state, f.weight);
  return w;
}

namespace {

std::string LabelName(Label l, const std::vector<std::string>* syms) {
  if (syms && l >= 0 && static_cast<std::size_t>(l) < syms->size() &&
      !(*syms)[l].empty())
    return (*syms)[l];
  return std::to_string(l);
}

}  // namespace

std::string WriteDot(const Wfst& w, const std::vector<std::string>* isyms,
                     const std::vector<std::string>* osyms) {
  std::ostringstream os;
  os << "digraph wfst {\n  rankdir = LR;\n  node [shape = circle];\n";
  for (StateId s = 0; s < w.NumStates(); ++s) {
    os << "  " << s << " [";
    if (w.IsFinal(s)) {
      os << "shape = doublecircle";
      if (w.FinalWeight(s) != kLogOne)
        os << ", label = \"" << s << "/" << FormatWeight(w.FinalWeight(s))
           << "\"";
    } else {
      os << "shape = circle";
    }
    if (s == w.Start()) os << ", style = bold";
    os << "];\n";
  }
  for (StateId s = 0; s < w.NumStates(); ++s)
    for (const Arc& a : w.ArcsFrom(s))
      os << "  " << a.src << " -> " << a.dst << " [label = \""
         << LabelName(a.ilabel, isyms) << ":" << LabelName(a.olabel, osyms)
         << "/" << FormatWeight(a.weight) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace otcfst
