#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multitrans/families.hpp"
#include "multitrans/systems.hpp"
#include "multitrans/verify.hpp"

namespace mtv {

/// Every table on {0..n-1} for n = 1..max_size, by size and then lexicographically.
std::vector<FiniteMap> all_finite_maps(int max_size);

/// Strongly connected graphs on exactly n vertices for n = 1..max_vertices (self-loops
/// allowed), in increasing order of the adjacency bitmask with bit u*n+v for the edge u->v.
std::vector<Sft> irreducible_sfts(int max_vertices);

/// Named corpora: "maps<N>" (all_finite_maps(N)) and "sft<N>" (irreducible_sfts(N)).
/// Throws ParseError on an unknown name.
std::vector<DynSystem> named_corpus(const std::string& name);

struct CorpusOptions {
  int r_max = 3;
  Int entry_max = 4;
  int depth = 3;
  FamilyBounds bounds;
  /// Stop at the first exact-lane disagreement.
  bool stop_on_fatal = true;
  /// Store agreeing cases; otherwise they are only counted.
  bool keep_agreeing = true;
};

/// Runs verify_thm_42 for every system and every vector of the options, building each
/// hitting catalog once.
AgreementReport run_thm42_corpus(const std::vector<DynSystem>& systems, const CorpusOptions& opt,
                                 const std::function<void(std::size_t)>& progress = {});

}  // namespace mtv
