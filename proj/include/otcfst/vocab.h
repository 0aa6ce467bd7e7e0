// otcfst/vocab.h

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

#ifndef OTCFST_VOCAB_H_
#define OTCFST_VOCAB_H_

#include <optional>
#include <string>
#include <vector>

#include "otcfst/fst.h"

namespace otcfst {

inline constexpr char kEpsilonName[] = "<eps>";
inline constexpr char kBlankName[] = "<blk>";
inline constexpr char kStarName[] = "<star>";

// How the star token is scored by the emission graph:
//   kAverage   - star weight is the log mean probability of the non-blank
//                units of the same frame; the model has no star output.
//   kDedicated - star is a model output with its own column.
enum class StarMode { kAverage, kDedicated };

// Unit inventory.  Units get labels 1..N (0 is epsilon); the reserved
// blank gets label N+1 and the reserved star label N+2.
//
// Emission matrices use one column per model output: column 0 is blank,
// column u (1..N) is unit u, and in dedicated star mode column N+1 is star.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> units);

  // One unit name per line; blank lines ignored.  Reserved names are
  // rejected.
  static Vocabulary FromFile(const std::string& path);

  int num_units() const { return static_cast<int>(units_.size()); }
  Label blank_id() const { return num_units() + 1; }
  Label star_id() const { return num_units() + 2; }

  Label unit_id(int index) const { return index + 1; }
  const std::string& unit_name(Label unit) const { return units_[unit - 1]; }
  bool IsUnit(Label l) const { return l >= 1 && l <= num_units(); }

  // Label id for a unit/blank/star name, or nullopt.
  std::optional<Label> Find(const std::string& name) const;
  // Printable name for any label in this inventory (including 0, blank,
  // star).
  std::string NameOf(Label l) const;
  // id -> name table covering epsilon..star, for DOT output.
  std::vector<std::string> LabelNames() const;

  int NumEmissionCols(StarMode mode) const {
    return num_units() + (mode == StarMode::kDedicated ? 2 : 1);
  }
  // Emission column of a label (blank, unit, or star in dedicated mode).
  int ColOf(Label l, StarMode mode) const;
  Label LabelOfCol(int col, StarMode mode) const;

 private:
  std::vector<std::string> units_;
};

// A sequence of word ids.
struct Transcript {
  std::vector<Label> words;

  std::size_t size() const { return words.size(); }
};

// Word id -> unit pronunciation.  Word ids are 1..num_words(); the word
// ids one past that range is reserved for the star "word" used by the
// OTC transcript graph (see star_word_id).
class Lexicon {
 public:
  Lexicon() = default;

  // Each unit becomes a word pronouncing itself; word ids equal unit ids.
  static Lexicon Identity(const Vocabulary& vocab);

  // One entry per line: "word<TAB>unit unit ...".  Word ids are assigned
  // in file order starting at 1.  Homophones (two words with the same
  // pronunciation) are allowed; duplicate word names are not.
  static Lexicon FromFile(const std::string& path, const Vocabulary& vocab);

  void AddWord(const std::string& name, std::vector<Label> units);

  int num_words() const { return static_cast<int>(prons_.size()); }
  Label star_word_id() const { return num_words() + 1; }

  const std::vector<Label>& Pronunciation(Label word) const {
    return prons_[word - 1];
  }
  const std::string& word_name(Label word) const { return names_[word - 1]; }
  std::optional<Label> FindWord(const std::string& name) const;
  // id -> name table covering epsilon..star_word, for DOT output.
  std::vector<std::string> WordNames() const;

  // Parses a space-separated line of word names.  Throws Error on unknown
  // words.
  Transcript ParseTranscript(const std::string& line) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Label>> prons_;
};

}  // namespace otcfst

#endif  // OTCFST_VOCAB_H_
