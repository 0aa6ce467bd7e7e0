// otcfst/error.h

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

#ifndef OTCFST_ERROR_H_
#define OTCFST_ERROR_H_

#include <stdexcept>
#include <string>

namespace otcfst {

// Base class for all domain errors raised by this library.  Callers that
// only want "the run failed" can catch this; tests catch the subclasses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation that requires an acyclic graph was given a cyclic one.
class CyclicGraphError : public Error {
 public:
  using Error::Error;
};

// Path enumeration exceeded its configured bound.
class PathExplosionError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// An emission row whose probabilities do not sum to 1.
class UnnormalizedRowError : public Error {
 public:
  using Error::Error;
};

// Transcript corruption was asked to substitute or insert with no
// replacement candidates.
class EmptyPoolError : public Error {
 public:
  using Error::Error;
};

}  // namespace otcfst

#endif  // OTCFST_ERROR_H_
