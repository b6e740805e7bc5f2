#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "multitrans/index_set.hpp"
#include "multitrans/int_vector.hpp"

namespace mtv {

/// A word over the alphabet of a shift, or a list of points of a finite map.
using Word = std::vector<int>;

/// A self-map of {0, ..., size-1}.
class FiniteMap {
 public:
  explicit FiniteMap(std::vector<int> table);

  static FiniteMap cycle(int size);
  static FiniteMap identity(int size);

  int size() const { return static_cast<int>(table_.size()); }
  int operator()(int x) const { return table_[static_cast<std::size_t>(x)]; }
  int iterate(int x, Int n) const;
  const std::vector<int>& table() const { return table_; }

  struct OrbitShape {
    int preperiod;  // first index of the eventual cycle
    int period;
  };
  OrbitShape orbit_shape(int x) const;

  bool is_periodic(int x) const;
  /// The functional graph is one cycle through every point.
  bool is_single_cycle() const;
  /// The orbit of x visits every point.
  bool is_transitive_point(int x) const;
  /// Explicit f^k.
  FiniteMap power(Int k) const;

  bool operator==(const FiniteMap&) const = default;

 private:
  std::vector<int> table_;
};

/// One-sided vertex shift of a directed graph. Vertices with no path to and from a cycle
/// are pruned on construction (iteratively, until every surviving vertex has in- and
/// out-degree >= 1); an SFT that prunes to nothing is rejected with InvalidSystem.
class Sft {
 public:
  using Mask = std::uint64_t;
  static constexpr int kMaxVertices = 64;

  Sft(int vertices, const std::vector<std::pair<int, int>>& edges);

  static Sft full_shift(int symbols);
  static Sft from_adjacency(int vertices, std::uint64_t bits);

  int vertex_count() const { return n_; }
  bool alive(int v) const { return (alive_ >> v) & 1U; }
  Mask alive_mask() const { return alive_; }
  Mask successors(int v) const { return succ_[static_cast<std::size_t>(v)]; }
  bool has_edge(int u, int v) const { return (succ_[static_cast<std::size_t>(u)] >> v) & 1U; }
  std::vector<std::pair<int, int>> edges() const;

  bool admissible(const Word& w) const;

  /// The surviving graph is a single strongly connected component.
  bool irreducible() const { return sccs_.size() == 1; }
  const std::vector<std::vector<int>>& components() const { return sccs_; }
  int component_of(int v) const { return scc_of_[static_cast<std::size_t>(v)]; }
  /// gcd of cycle lengths within the component (0 for a component without a cycle).
  int component_period(int c) const { return scc_period_[static_cast<std::size_t>(c)]; }
  /// Period of an irreducible SFT.
  int period() const;
  /// Cyclic class of v inside its component: every edge advances it by 1 mod period.
  int cyclic_class(int v) const { return class_[static_cast<std::size_t>(v)]; }

  /// Some path of length >= 1 leads from s to t.
  bool reaches(int s, int t) const;
  /// {l >= 1 : there is a walk with l edges from s to t}, exactly.
  IndexSet walk_lengths(int s, int t) const;
  /// Same set through the generic eventually-periodic reach-set iteration (any graph).
  IndexSet walk_lengths_by_iteration(int s, int t) const;

 private:
  IndexSet walk_lengths_primitive(int s, int t) const;
  void analyze();

  int n_;
  std::vector<Mask> succ_;
  Mask alive_ = 0;
  std::vector<std::vector<int>> sccs_;
  std::vector<int> scc_of_;
  std::vector<int> scc_period_;
  std::vector<int> class_;
};

/// Spacing shift over {0,1}: the gap between any two consecutive 1s lies in `gaps`.
/// Only words of length <= horizon are ever examined.
class SpacingShift {
 public:
  SpacingShift(std::vector<Int> gaps, Int horizon);

  const std::vector<Int>& gaps() const { return gaps_; }
  Int horizon() const { return horizon_; }
  Int max_gap() const { return gaps_.empty() ? 0 : gaps_.back(); }
  bool allowed_gap(Int g) const;
  bool admissible(const Word& w) const;

  /// Reading automaton. State 0: no 1 read yet; state s+1: the last 1 was s symbols ago
  /// (s < max_gap); state max_gap+1: no further 1 is possible. step returns -1 on a
  /// forbidden symbol; every state accepts 0.
  int automaton_states() const { return static_cast<int>(max_gap()) + 2; }
  int step(int state, int symbol) const;
  /// State after reading w from state 0, or -1.
  int run(const Word& w, int state = 0) const;

 private:
  std::vector<Int> gaps_;
  std::vector<char> allowed_;
  Int horizon_;
};

using System = std::variant<FiniteMap, Sft, SpacingShift>;

/// A dynamical system together with an exponent: the handle stands for f^exponent.
/// Finite maps are always composed explicitly; shifts keep the exponent lazily so that a
/// query of length n against f^k resolves to length k*n against f.
class DynSystem {
 public:
  DynSystem(FiniteMap f) : base_(std::move(f)) {}
  DynSystem(Sft s) : base_(std::move(s)) {}
  DynSystem(SpacingShift s) : base_(std::move(s)) {}
  DynSystem(System base, Int exponent);

  const System& base() const { return base_; }
  Int exponent() const { return exponent_; }

  const FiniteMap* finite_map() const { return std::get_if<FiniteMap>(&base_); }
  const Sft* sft() const { return std::get_if<Sft>(&base_); }
  const SpacingShift* spacing() const { return std::get_if<SpacingShift>(&base_); }

  /// Exact lanes are finite maps and SFTs.
  bool exact_lane() const { return !spacing(); }
  std::string kind() const;
  std::string describe() const;

 private:
  System base_;
  Int exponent_ = 1;
};

/// Basic open set. For finite maps a non-empty set of points, for shifts an admissible
/// word anchored at coordinate 0.
struct Cylinder {
  Word symbols;

  bool operator==(const Cylinder&) const = default;
  auto operator<=>(const Cylinder&) const = default;
};

/// Throws std::invalid_argument if `c` is not a basic open set of `sys`.
void validate_cylinder(const DynSystem& sys, const Cylinder& c);

/// All basic opens of depth <= depth: point sets of size <= depth for finite maps
/// (sorted, by size then lexicographically), admissible words of length 1..depth for shifts.
std::vector<Cylinder> enumerate_cylinders(const DynSystem& sys, int depth);

DynSystem power(const DynSystem& sys, Int k);

/// f^{a_1} x ... x f^{a_r} in factored form.
class ProductHandle {
 public:
  ProductHandle(DynSystem base, IntVector a) : base_(std::move(base)), a_(std::move(a)) {}
  const DynSystem& base() const { return base_; }
  const IntVector& vector() const { return a_; }

  /// Materializes the product as one finite map on size^r states, coordinate 0 most
  /// significant. Finite maps only; refuses (FactoredFormRequired) above `state_cap`.
  FiniteMap materialize(Int state_cap = kDefaultStateCap) const;
  Int encode(const std::vector<int>& coords) const;
  std::vector<int> decode(Int state) const;

  static constexpr Int kDefaultStateCap = 1'000'000;

 private:
  DynSystem base_;
  IntVector a_;
};

ProductHandle vector_system(const DynSystem& sys, const IntVector& a);

/// Tower over `base` with k floors: (x, i) -> (x, i+1) for i < k-1, (x, k-1) -> (g(x), 0).
/// State (x, i) is encoded as x * k + i.
FiniteMap tower(const FiniteMap& base, int k);

/// A single cycle carrying the uniform (invariant, fully supported) probability measure.
class ESystemWitness {
 public:
  explicit ESystemWitness(FiniteMap cycle);
  static ESystemWitness cycle(int size) { return ESystemWitness(FiniteMap::cycle(size)); }

  const FiniteMap& system() const { return system_; }
  double measure(const std::vector<int>& points) const;
  /// mu(f^{-1}(A)) == mu(A) for every singleton A and every point has positive mass.
  bool measure_invariant() const;

 private:
  FiniteMap system_;
};

}  // namespace mtv
