// src/vocab.cc

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

#include "otcfst/vocab.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "otcfst/error.h"

namespace otcfst {

namespace {

std::string Strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool IsReservedName(const std::string& s) {
  return s == kEpsilonName || s == kBlankName || s == kStarName;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> units) : units_(std::move(units)) {
  std::unordered_set<std::string> seen;
  for (const auto& u : units_) {
    if (u.empty()) throw Error("empty unit name");
    if (IsReservedName(u)) throw Error("unit name '" + u + "' is reserved");
    if (!seen.insert(u).second) throw Error("duplicate unit name '" + u + "'");
  }
}

Vocabulary Vocabulary::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary file: " + path);
  std::vector<std::string> units;
  std::string line;
  while (std::getline(in, line)) {
    std::string u = Strip(line);
    if (!u.empty()) units.push_back(u);
  }
  return Vocabulary(std::move(units));
}

std::optional<Label> Vocabulary::Find(const std::string& name) const {
  if (name == kBlankName) return blank_id();
  if (name == kStarName) return star_id();
  for (int i = 0; i < num_units(); ++i)
    if (units_[i] == name) return unit_id(i);
  return std::nullopt;
}

std::string Vocabulary::NameOf(Label l) const {
  if (l == kEpsilon) return kEpsilonName;
  if (l == blank_id()) return kBlankName;
  if (l == star_id()) return kStarName;
  if (IsUnit(l)) return units_[l - 1];
  return std::to_string(l);
}

std::vector<std::string> Vocabulary::LabelNames() const {
  std::vector<std::string> names;
  names.reserve(num_units() + 3);
  for (Label l = 0; l <= star_id(); ++l) names.push_back(NameOf(l));
  return names;
}

int Vocabulary::ColOf(Label l, StarMode mode) const {
  if (l == blank_id()) return 0;
  if (IsUnit(l)) return l;
  if (l == star_id() && mode == StarMode::kDedicated) return num_units() + 1;
  throw Error("label " + std::to_string(l) + " has no emission column");
}

Label Vocabulary::LabelOfCol(int col, StarMode mode) const {
  if (col == 0) return blank_id();
  if (col >= 1 && col <= num_units()) return col;
  if (mode == StarMode::kDedicated && col == num_units() + 1) return star_id();
  throw Error("emission column " + std::to_string(col) + " out of range");
}

Lexicon Lexicon::Identity(const Vocabulary& vocab) {
  Lexicon lex;
  for (int i = 0; i < vocab.num_units(); ++i)
    lex.AddWord(vocab.unit_name(vocab.unit_id(i)), {vocab.unit_id(i)});
  return lex;
}

Lexicon Lexicon::FromFile(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path);
  Lexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = Strip(line);
    if (stripped.empty()) continue;
    std::size_t tab = stripped.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected 'word<TAB>unit unit ...'", line_no);
    std::string word = Strip(stripped.substr(0, tab));
    std::istringstream units_in(stripped.substr(tab + 1));
    std::vector<Label> units;
    std::string tok;
    while (units_in >> tok) {
      auto id = vocab.Find(tok);
      if (!id || !vocab.IsUnit(*id))
        throw ParseError("unknown unit '" + tok + "'", line_no);
      units.push_back(*id);
    }
    if (word.empty() || units.empty())
      throw ParseError("empty word or pronunciation", line_no);
    lex.AddWord(word, std::move(units));
  }
  if (lex.num_words() == 0) throw Error("empty lexicon: " + path);
  return lex;
}

void Lexicon::AddWord(const std::string& name, std::vector<Label> units) {
  if (name.empty()) throw Error("empty word name");
  if (IsReservedName(name)) throw Error("word name '" + name + "' is reserved");
  if (units.empty()) throw Error("word '" + name + "' has no pronunciation");
  if (FindWord(name)) throw Error("duplicate word '" + name + "'");
  names_.push_back(name);
  prons_.push_back(std::move(units));
}

std::optional<Label> Lexicon::FindWord(const std::string& name) const {
  for (int i = 0; i < num_words(); ++i)
    if (names_[i] == name) return i + 1;
  return std::nullopt;
}

std::vector<std::string> Lexicon::WordNames() const {
  std::vector<std::string> names;
  names.reserve(num_words() + 2);
  names.push_back(kEpsilonName);
  for (const auto& n : names_) names.push_back(n);
  names.push_back(kStarName);
  return names;
}

Transcript Lexicon::ParseTranscript(const std::string& line) const {
  Transcript y;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto id = FindWord(tok);
    if (!id) throw Error("unknown word '" + tok + "'");
    y.words.push_back(*id);
  }
  return y;
}

}  // namespace otcfst
