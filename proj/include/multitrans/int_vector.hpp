#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace mtv {

using Int = std::int64_t;

/// The exponent vector a = (a_1, ..., a_r) of a product system f^{a_1} x ... x f^{a_r}.
/// Entries are positive and r >= 1.
class IntVector {
 public:
  IntVector(std::initializer_list<Int> entries);
  explicit IntVector(std::vector<Int> entries);

  /// (1, 2, ..., r)
  static IntVector iota(int r);
  /// (1, 1, ..., 1)
  static IntVector ones(int r);
  /// Parses "1,2,3".
  static IntVector parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  Int operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Int>& entries() const { return entries_; }

  Int max() const;
  IntVector scaled(Int factor) const;
  IntVector prefix(std::size_t length) const;
  std::string str() const;

  bool operator==(const IntVector&) const = default;
  auto operator<=>(const IntVector&) const = default;

 private:
  std::vector<Int> entries_;
};

/// All vectors of length 1..max_length with entries in 1..max_entry, shortest first,
/// lexicographic within a length.
std::vector<IntVector> enumerate_vectors(int max_length, Int max_entry);

}  // namespace mtv
