#pragma once

#include <optional>

#include "multitrans/hitting.hpp"
#include "multitrans/systems.hpp"
#include "multitrans/verdict.hpp"

namespace mtv {

struct ClassifyBounds {
  /// Total transitivity is checked for f^k, k = 1..total_up_to.
  int total_up_to = 4;
  int depth = 3;
  Int horizon = kDefaultHorizon;
};

struct PropertyRecord {
  Verdict transitive;
  Verdict totally_transitive;
  Verdict weakly_mixing;
  Verdict mixing;
  Verdict dense_small_periodic_sets;
  /// Totally transitive with dense small periodic sets.
  Verdict hy_candidate;

  int total_up_to = 0;
  /// Period of an irreducible SFT.
  std::optional<Int> period;
  /// SFTs: weak mixing was re-derived from strong connectivity of the square graph.
  bool weak_mixing_cross_checked = false;
};

PropertyRecord classify(const DynSystem& sys, const ClassifyBounds& bounds = {});

/// The square graph of an SFT (edges of A^e on pairs of vertices) is strongly connected.
bool square_graph_strongly_connected(const Sft& s, Int exponent = 1);

}  // namespace mtv
