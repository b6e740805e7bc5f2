#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "multitrans/int_vector.hpp"

namespace mtv {

/// A subset of the positive integers.
///
/// Exact sets are ultimately periodic:
///   F = exceptional U { n >= threshold : n mod modulus in residues }
/// and are always kept in canonical form (minimal modulus, then minimal threshold for that
/// modulus, exceptional part inside [1, threshold)). Two Exact sets are equal as sets iff
/// their canonical forms are equal.
///
/// Explicit sets only know membership on [1, horizon].
class IndexSet {
 public:
  struct Exact {
    std::vector<Int> exceptional;
    Int modulus = 1;
    std::vector<Int> residues;
    Int threshold = 1;

    bool operator==(const Exact&) const = default;
    auto operator<=>(const Exact&) const = default;
  };

  struct Explicit {
    std::vector<Int> elements;
    Int horizon = 0;

    bool operator==(const Explicit&) const = default;
    auto operator<=>(const Explicit&) const = default;
  };

  /// Builds and canonicalizes exceptional U {n >= threshold : n mod modulus in residues}.
  /// Exceptional entries at or above the threshold are accepted and folded in.
  static IndexSet exact(std::vector<Int> exceptional, Int modulus, std::vector<Int> residues, Int threshold);
  static IndexSet explicit_set(std::vector<Int> elements, Int horizon);

  static IndexSet empty();
  static IndexSet naturals();
  /// {n >= from}
  static IndexSet tail(Int from);
  /// {n >= from : n = residue mod modulus}
  static IndexSet residue_class(Int residue, Int modulus, Int from = 1);
  static IndexSet finite(std::vector<Int> elements);

  bool is_exact() const { return std::holds_alternative<Exact>(rep_); }
  const Exact& exact_form() const;
  const Explicit& explicit_form() const;

  /// nullopt when n lies beyond an Explicit horizon.
  std::optional<bool> contains(Int n) const;
  /// Horizon of an Explicit set; nullopt for Exact sets.
  std::optional<Int> horizon() const;

  /// The restriction to [1, horizon], as an Explicit set.
  IndexSet truncated(Int horizon) const;

  /// No known members. For Exact sets this is exact emptiness.
  bool known_empty() const;
  std::optional<Int> first() const;

  /// Exact sets only: the set contains every n >= some N.
  bool cofinite() const;
  /// Exact sets only.
  bool infinite() const;

  std::string str() const;

  bool operator==(const IndexSet&) const = default;
  auto operator<=>(const IndexSet&) const = default;

 private:
  explicit IndexSet(Exact e) : rep_(std::move(e)) {}
  explicit IndexSet(Explicit e) : rep_(std::move(e)) {}

  std::variant<Exact, Explicit> rep_;
};

IndexSet intersect(const IndexSet& a, const IndexSet& b);
IndexSet unite(const IndexSet& a, const IndexSet& b);
/// {k >= 1 : factor * k in s}
IndexSet dilation_preimage(const IndexSet& s, Int factor);
/// {n + offset : n in s}, offset >= 0
IndexSet shifted(const IndexSet& s, Int offset);

/// {k >= 1 : a_i * k in sets[i] for all i}. Exact inputs give an Exact result; any
/// Explicit input makes the result Explicit with horizon min_i(H_i / a_i).
IndexSet intersect_dilations(const std::vector<IndexSet>& sets, const IntVector& a);

/// Exact-only subset test; Explicit operands are compared on the common horizon.
bool is_subset(const IndexSet& small, const IndexSet& large);

/// Upper bound on the modulus of any Exact set this library builds.
inline constexpr Int kMaxModulus = Int{1} << 22;

}  // namespace mtv
