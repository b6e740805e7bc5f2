#include "multitrans/int_vector.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

IntVector::IntVector(std::initializer_list<Int> entries) : IntVector(std::vector<Int>(entries)) {}

IntVector::IntVector(std::vector<Int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("IntVector must have length >= 1");
  for (Int e : entries_) {
    if (e < 1) throw std::invalid_argument("IntVector entries must be positive");
  }
}

IntVector IntVector::iota(int r) {
  std::vector<Int> v(static_cast<std::size_t>(std::max(r, 0)));
  for (int i = 0; i < r; ++i) v[i] = i + 1;
  return IntVector(std::move(v));
}

IntVector IntVector::ones(int r) { return IntVector(std::vector<Int>(static_cast<std::size_t>(std::max(r, 0)), 1)); }

IntVector IntVector::parse(std::string_view text) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto piece = text.substr(pos, comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    Int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ParseError("cannot parse integer vector '" + std::string(text) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return IntVector(std::move(out));
}

Int IntVector::max() const { return *std::max_element(entries_.begin(), entries_.end()); }

IntVector IntVector::scaled(Int factor) const {
  std::vector<Int> v = entries_;
  for (auto& e : v) e *= factor;
  return IntVector(std::move(v));
}

IntVector IntVector::prefix(std::size_t length) const {
  return IntVector(std::vector<Int>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(length)));
}

std::string IntVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

std::vector<IntVector> enumerate_vectors(int max_length, Int max_entry) {
  std::vector<IntVector> out;
  for (int r = 1; r <= max_length; ++r) {
    std::vector<Int> cur(static_cast<std::size_t>(r), 1);
    while (true) {
      out.emplace_back(cur);
      int i = r - 1;
      while (i >= 0 && cur[i] == max_entry) cur[i--] = 1;
      if (i < 0) break;
      ++cur[i];
    }
  }
  return out;
}

}  // namespace mtv
