// tests/test_compose.cc

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

#include <cmath>

#include "doctest.h"
#include "otcfst/compose.h"
#include "otcfst/fst.h"
#include "test_util.h"

using namespace otcfst;
using namespace otcfst::test;

namespace {

Wfst Identity(const std::vector<Label>& alphabet) {
  Wfst w(1);
  w.SetFinal(0);
  for (Label l : alphabet) w.AddArc(0, 0, l, l, kLogOne);
  return w;
}

Wfst LinearAcceptor(const std::vector<Label>& labels, double arc_weight) {
  Wfst w(static_cast<StateId>(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i)
    w.AddArc(static_cast<StateId>(i), static_cast<StateId>(i) + 1, labels[i],
             labels[i], arc_weight);
  w.SetFinal(static_cast<StateId>(labels.size()));
  return w;
}

// Independent oracle: enumerate both path sets and sum weights over every
// pair whose epsilon-free olabels/ilabels match.
double PairwisePathSum(const Wfst& a, const Wfst& b) {
  double total = kLogZero;
  for (const auto& pa : EnumeratePaths(a))
    for (const auto& pb : EnumeratePaths(b))
      if (pa.olabels == pb.ilabels)
        total = LogAdd(total, pa.weight + pb.weight);
  return total;
}

}  // namespace

TEST_CASE("composing with the identity preserves paths and weight") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Wfst a = RandomAcyclicFst(rng, 6, 2);
    Wfst id = Identity({1, 2});
    Wfst c = Compose(a, id);
    auto pa = EnumeratePaths(a);
    auto pc = EnumeratePaths(c);
    CHECK(pa.size() == pc.size());
    double wa = TotalWeight(a);
    double wc = TotalWeight(c);
    if (wa == kLogZero)
      CHECK(wc == kLogZero);
    else
      CHECK(wc == doctest::Approx(wa).epsilon(1e-12));
  }
}

TEST_CASE("linear acceptor through a relabeling transducer") {
  Wfst acc = LinearAcceptor({1, 2}, -1.0);  // "a b", each arc -1.0
  Wfst relabel(1);                          // a->A/-0.5, b->B/-0.5
  relabel.SetFinal(0);
  relabel.AddArc(0, 0, 1, 11, -0.5);
  relabel.AddArc(0, 0, 2, 12, -0.5);
  Wfst c = Compose(acc, relabel);
  auto paths = EnumeratePaths(c);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].olabels == std::vector<Label>{11, 12});
  CHECK(paths[0].weight == doctest::Approx(-3.0));
  CHECK(TotalWeight(c) == doctest::Approx(-3.0));
}

TEST_CASE("empty intersection yields a graph with no accepted path") {
  Wfst a = LinearAcceptor({1}, 0.0);
  Wfst b = LinearAcceptor({2}, 0.0);
  CHECK(TotalWeight(Compose(a, b)) == kLogZero);
}

TEST_CASE("composition matches the pairwise path oracle") {
  Rng rng(37);
  int nonempty = 0;
  for (int trial = 0; trial < 400; ++trial) {
    // labels in [0,2]: epsilon appears on both tapes to exercise the filter
    Wfst a = RandomAcyclicFst(rng, 5, 2);
    Wfst b = RandomAcyclicFst(rng, 5, 2);
    double expected = PairwisePathSum(a, b);
    double got = TotalWeight(Compose(a, b));
    if (expected == kLogZero) {
      CHECK(got == kLogZero);
    } else {
      ++nonempty;
      CHECK(std::abs(got - expected) <=
            1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
  // make sure the property was actually exercised
  CHECK(nonempty > 50);
}

TEST_CASE("epsilon filter counts each matching path pair exactly once") {
  // a: one path with an epsilon output in the middle; b: one path with an
  // epsilon input in the middle.  Naive composition would find two
  // interleavings.
  Wfst a(3);
  a.AddArc(0, 1, 1, 1, -0.25);
  a.AddArc(1, 2, 5, kEpsilon, -0.25);  // epsilon output
  a.SetFinal(2);
  Wfst b(3);
  b.AddArc(0, 1, 1, 1, -0.25);
  b.AddArc(1, 2, kEpsilon, 7, -0.25);  // epsilon input
  b.SetFinal(2);
  Wfst c = Compose(a, b);
  auto paths = EnumeratePaths(c);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].weight == doctest::Approx(-1.0));
  CHECK(paths[0].ilabels == std::vector<Label>{1, 5});
  CHECK(paths[0].olabels == std::vector<Label>{1, 7});
}

TEST_CASE("state info maps composed states to source pairs") {
  Wfst a = LinearAcceptor({1, 2}, 0.0);
  Wfst b = Identity({1, 2});
  std::vector<ComposeStateInfo> info;
  Wfst c = Compose(a, b, &info);
  REQUIRE(static_cast<StateId>(info.size()) == c.NumStates());
  CHECK(info[0].a_state == 0);
  CHECK(info[0].b_state == 0);
  for (StateId s = 0; s < c.NumStates(); ++s)
    for (const Arc& arc : c.ArcsFrom(s))
      CHECK(info[arc.dst].a_state == info[arc.src].a_state + 1);
}
