#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "multitrans/index_set.hpp"
#include "multitrans/int_vector.hpp"
#include "multitrans/systems.hpp"
#include "multitrans/verdict.hpp"

namespace mtv {

inline constexpr Int kDefaultHorizon = 4096;

/// N(U,V) = {n >= 1 : f^n(U) meets V} for point sets of a finite map.
IndexSet hitting_finite(const FiniteMap& f, const Cylinder& u, const Cylinder& v);

/// N([u],[v]) for the one-sided vertex shift: n is a hitting time iff some admissible
/// sequence starts with u and reads v from position n on.
IndexSet hitting_sft(const Sft& s, const Cylinder& u, const Cylinder& v);

/// N([u],[v]) on [1, horizon]. Requires horizon <= the shift's own horizon.
IndexSet hitting_spacing(const SpacingShift& s, const Cylinder& u, const Cylinder& v, Int horizon);

/// Dispatches on the system kind and applies the exponent of the handle. The horizon is
/// used only by spacing shifts.
IndexSet hitting(const DynSystem& sys, const Cylinder& u, const Cylinder& v, Int horizon = kDefaultHorizon);

/// Hitting sets for all pairs of cylinders up to a depth, deduplicated.
class HittingCatalog {
 public:
  HittingCatalog(DynSystem sys, int depth, Int horizon = kDefaultHorizon);

  const DynSystem& system() const { return sys_; }
  int depth() const { return depth_; }
  Int horizon() const { return horizon_; }

  const std::vector<Cylinder>& cylinders() const { return cylinders_; }
  /// Distinct hitting sets in order of first appearance over pairs (u, v) in lex order.
  const std::vector<IndexSet>& sets() const { return sets_; }
  std::size_t set_index(std::size_t u, std::size_t v) const { return table_[u * cylinders_.size() + v]; }
  const IndexSet& set(std::size_t u, std::size_t v) const { return sets_[set_index(u, v)]; }
  /// First cylinder pair (u, v) producing the given set.
  std::pair<std::size_t, std::size_t> representative(std::size_t set) const { return reps_[set]; }

  /// Distinct sets among pairs of depth-1 cylinders (single points or single symbols).
  const std::vector<std::size_t>& singleton_sets() const { return singleton_sets_; }

 private:
  std::size_t intern(IndexSet s, std::size_t u, std::size_t v);

  DynSystem sys_;
  int depth_;
  Int horizon_;
  std::vector<Cylinder> cylinders_;
  std::vector<IndexSet> sets_;
  std::vector<std::pair<std::size_t, std::size_t>> reps_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> singleton_sets_;
};

/// Lexicographically first c in (Z/p)^r such that no k satisfies a_i k = c_i (mod p) for
/// every i, or nullopt if every residue vector is reachable.
std::optional<std::vector<Int>> residue_obstruction(Int p, const IntVector& a);

struct ATransitiveOptions {
  int depth = 3;
  Int horizon = kDefaultHorizon;
  /// Upper bound on the number of product boxes examined by brute force.
  Int box_cap = 250'000;
};

/// Is f^{a_1} x ... x f^{a_r} transitive? Exact for finite maps and SFTs, bounded for
/// spacing shifts. For SFTs the residue criterion is cross-checked against the hitting sets
/// of the catalog; a disagreement throws InvariantViolation.
Verdict a_transitive(const DynSystem& sys, const IntVector& a, const ATransitiveOptions& opt = {});
Verdict a_transitive(const HittingCatalog& catalog, const IntVector& a, Int box_cap = ATransitiveOptions{}.box_cap);

}  // namespace mtv
