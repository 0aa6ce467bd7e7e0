// otcfst/fst-io.h

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

#ifndef OTCFST_FST_IO_H_
#define OTCFST_FST_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "otcfst/fst.h"

namespace otcfst {

// Shortest decimal string that parses back to exactly the same double;
// integral values get a trailing ".0" so weights are visibly floats.
std::string FormatWeight(double w);

// AT&T text format: one arc per line "src dst ilabel olabel weight",
// followed by one "state weight" line per final state.  State ids are
// implicit (max mentioned id + 1 states); state 0 is the start.
std::string WriteFstText(const Wfst& w);

// Inverse of WriteFstText.  Throws ParseError (with line number) on
// malformed input.  ReadFstText(WriteFstText(w)) == w for every graph
// whose states all carry an arc or a final weight.
Wfst ReadFstText(std::string_view text);

// Graphviz rendering: node 0 is the start (bold), final states are drawn
// with a double circle, arcs are labeled "i:o/w".  Optional tables map
// label ids to names (index = id); missing entries print numerically.
std::string WriteDot(const Wfst& w,
                     const std::vector<std::string>* isyms = nullptr,
                     const std::vector<std::string>* osyms = nullptr);

}  // namespace otcfst

#endif  // OTCFST_FST_IO_H_
