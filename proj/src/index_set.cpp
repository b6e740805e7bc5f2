#include "multitrans/index_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

namespace {

struct TailForm {
  Int modulus;
  std::vector<char> tail;  // tail[r] for r in [0, modulus)
  Int threshold;
  std::vector<char> below;  // below[n] for n in [0, threshold)
};

IndexSet::Exact canonical(TailForm f) {
  const Int p = f.modulus;
  Int period = p;
  for (Int d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool invariant = true;
    for (Int i = 0; i < p && invariant; ++i) invariant = f.tail[i] == f.tail[(i + d) % p];
    if (invariant) {
      period = d;
      break;
    }
  }
  Int n0 = f.threshold;
  while (n0 > 1 && f.below[n0 - 1] == f.tail[(n0 - 1) % period]) --n0;

  IndexSet::Exact e;
  e.modulus = period;
  e.threshold = n0;
  for (Int r = 0; r < period; ++r) {
    if (f.tail[r]) e.residues.push_back(r);
  }
  for (Int n = 1; n < n0; ++n) {
    if (f.below[n]) e.exceptional.push_back(n);
  }
  return e;
}

bool exact_contains(const IndexSet::Exact& e, Int n) {
  if (n < 1) return false;
  if (n < e.threshold) return std::binary_search(e.exceptional.begin(), e.exceptional.end(), n);
  return std::binary_search(e.residues.begin(), e.residues.end(), n % e.modulus);
}

std::vector<char> tail_mask(const IndexSet::Exact& e) {
  std::vector<char> t(static_cast<std::size_t>(e.modulus), 0);
  for (Int r : e.residues) t[r] = 1;
  return t;
}

Int checked_lcm(Int a, Int b) {
  Int l = std::lcm(a, b);
  if (l > kMaxModulus) throw CapabilityError("index set modulus exceeds " + std::to_string(kMaxModulus));
  return l;
}

template <class Combine>
IndexSet combine_exact(const IndexSet::Exact& a, const IndexSet::Exact& b, Combine op) {
  TailForm f;
  f.modulus = checked_lcm(a.modulus, b.modulus);
  f.threshold = std::max(a.threshold, b.threshold);
  auto ta = tail_mask(a);
  auto tb = tail_mask(b);
  f.tail.resize(static_cast<std::size_t>(f.modulus));
  for (Int r = 0; r < f.modulus; ++r) f.tail[r] = op(ta[r % a.modulus] != 0, tb[r % b.modulus] != 0);
  f.below.assign(static_cast<std::size_t>(f.threshold), 0);
  for (Int n = 1; n < f.threshold; ++n) f.below[n] = op(exact_contains(a, n), exact_contains(b, n));
  std::vector<Int> exc;
  for (Int n = 1; n < f.threshold; ++n) {
    if (f.below[n]) exc.push_back(n);
  }
  std::vector<Int> res;
  for (Int r = 0; r < f.modulus; ++r) {
    if (f.tail[r]) res.push_back(r);
  }
  return IndexSet::exact(std::move(exc), f.modulus, std::move(res), f.threshold);
}

std::vector<char> membership(const IndexSet& s, Int horizon) {
  std::vector<char> m(static_cast<std::size_t>(horizon + 1), 0);
  if (s.is_exact()) {
    for (Int n = 1; n <= horizon; ++n) m[n] = exact_contains(s.exact_form(), n);
  } else {
    for (Int n : s.explicit_form().elements) {
      if (n <= horizon) m[n] = 1;
    }
  }
  return m;
}

IndexSet from_membership(const std::vector<char>& m, Int horizon) {
  std::vector<Int> el;
  for (Int n = 1; n <= horizon; ++n) {
    if (m[n]) el.push_back(n);
  }
  return IndexSet::explicit_set(std::move(el), horizon);
}

Int common_horizon(const IndexSet& a, const IndexSet& b) {
  auto ha = a.horizon();
  auto hb = b.horizon();
  if (ha && hb) return std::min(*ha, *hb);
  return ha ? *ha : *hb;
}

}  // namespace

IndexSet IndexSet::exact(std::vector<Int> exceptional, Int modulus, std::vector<Int> residues, Int threshold) {
  if (modulus < 1) throw std::invalid_argument("index set modulus must be >= 1");
  if (modulus > kMaxModulus) throw CapabilityError("index set modulus exceeds " + std::to_string(kMaxModulus));
  if (threshold < 1) throw std::invalid_argument("index set threshold must be >= 1");
  TailForm f;
  f.modulus = modulus;
  f.tail.assign(static_cast<std::size_t>(modulus), 0);
  for (Int r : residues) {
    if (r < 0 || r >= modulus) throw std::invalid_argument("residue out of range");
    f.tail[r] = 1;
  }
  Int top = threshold;
  for (Int e : exceptional) {
    if (e < 1) throw std::invalid_argument("index sets hold positive integers only");
    top = std::max(top, e + 1);
  }
  f.threshold = top;
  f.below.assign(static_cast<std::size_t>(top), 0);
  for (Int n = threshold; n < top; ++n) f.below[n] = f.tail[n % modulus];
  for (Int e : exceptional) f.below[e] = 1;
  return IndexSet(canonical(std::move(f)));
}

IndexSet IndexSet::explicit_set(std::vector<Int> elements, Int horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && (elements.front() < 1 || elements.back() > horizon)) {
    throw std::invalid_argument("explicit elements must lie in [1, horizon]");
  }
  return IndexSet(Explicit{std::move(elements), horizon});
}

IndexSet IndexSet::empty() { return exact({}, 1, {}, 1); }
IndexSet IndexSet::naturals() { return exact({}, 1, {0}, 1); }
IndexSet IndexSet::tail(Int from) { return exact({}, 1, {0}, std::max<Int>(from, 1)); }

IndexSet IndexSet::residue_class(Int residue, Int modulus, Int from) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  Int r = ((residue % modulus) + modulus) % modulus;
  return exact({}, modulus, {r}, std::max<Int>(from, 1));
}

IndexSet IndexSet::finite(std::vector<Int> elements) { return exact(std::move(elements), 1, {}, 1); }

const IndexSet::Exact& IndexSet::exact_form() const {
  if (!is_exact()) throw std::logic_error("index set is not exact");
  return std::get<Exact>(rep_);
}

const IndexSet::Explicit& IndexSet::explicit_form() const {
  if (is_exact()) throw std::logic_error("index set is not explicit");
  return std::get<Explicit>(rep_);
}

std::optional<bool> IndexSet::contains(Int n) const {
  if (is_exact()) return exact_contains(exact_form(), n);
  const auto& e = explicit_form();
  if (n < 1) return false;
  if (n > e.horizon) return std::nullopt;
  return std::binary_search(e.elements.begin(), e.elements.end(), n);
}

std::optional<Int> IndexSet::horizon() const {
  if (is_exact()) return std::nullopt;
  return explicit_form().horizon;
}

IndexSet IndexSet::truncated(Int h) const {
  if (h < 0) throw std::invalid_argument("horizon must be non-negative");
  if (!is_exact() && h > explicit_form().horizon) {
    throw std::invalid_argument("cannot extend an explicit set beyond its horizon");
  }
  return from_membership(membership(*this, h), h);
}

bool IndexSet::known_empty() const {
  if (is_exact()) return exact_form().exceptional.empty() && exact_form().residues.empty();
  return explicit_form().elements.empty();
}

std::optional<Int> IndexSet::first() const {
  if (is_exact()) {
    const auto& e = exact_form();
    if (!e.exceptional.empty()) return e.exceptional.front();
    if (e.residues.empty()) return std::nullopt;
    for (Int n = e.threshold;; ++n) {
      if (exact_contains(e, n)) return n;
    }
  }
  const auto& el = explicit_form().elements;
  if (el.empty()) return std::nullopt;
  return el.front();
}

bool IndexSet::cofinite() const {
  const auto& e = exact_form();
  return static_cast<Int>(e.residues.size()) == e.modulus;
}

bool IndexSet::infinite() const { return !exact_form().residues.empty(); }

std::string IndexSet::str() const {
  auto list = [](const std::vector<Int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + "}";
  };
  if (is_exact()) {
    const auto& e = exact_form();
    return list(e.exceptional) + " U {n>=" + std::to_string(e.threshold) + " : n mod " + std::to_string(e.modulus) +
           " in " + list(e.residues) + "}";
  }
  const auto& x = explicit_form();
  return list(x.elements) + " within [1," + std::to_string(x.horizon) + "]";
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  if (a.is_exact() && b.is_exact()) {
    return combine_exact(a.exact_form(), b.exact_form(), [](bool x, bool y) { return x && y; });
  }
  Int h = common_horizon(a, b);
  auto ma = membership(a, h);
  auto mb = membership(b, h);
  for (Int n = 1; n <= h; ++n) ma[n] = ma[n] && mb[n];
  return from_membership(ma, h);
}

IndexSet unite(const IndexSet& a, const IndexSet& b) {
  if (a.is_exact() && b.is_exact()) {
    return combine_exact(a.exact_form(), b.exact_form(), [](bool x, bool y) { return x || y; });
  }
  Int h = common_horizon(a, b);
  auto ma = membership(a, h);
  auto mb = membership(b, h);
  for (Int n = 1; n <= h; ++n) ma[n] = ma[n] || mb[n];
  return from_membership(ma, h);
}

IndexSet dilation_preimage(const IndexSet& s, Int factor) {
  if (factor < 1) throw std::invalid_argument("dilation factor must be >= 1");
  if (factor == 1) return s;
  if (s.is_exact()) {
    const auto& e = s.exact_form();
    Int n0 = (e.threshold + factor - 1) / factor;
    std::vector<Int> exc;
    for (Int k = 1; k < n0; ++k) {
      if (exact_contains(e, factor * k)) exc.push_back(k);
    }
    auto t = tail_mask(e);
    std::vector<Int> res;
    for (Int k = 0; k < e.modulus; ++k) {
      if (t[(factor % e.modulus) * k % e.modulus]) res.push_back(k);
    }
    return IndexSet::exact(std::move(exc), e.modulus, std::move(res), std::max<Int>(n0, 1));
  }
  const auto& x = s.explicit_form();
  std::vector<Int> el;
  for (Int n : x.elements) {
    if (n % factor == 0) el.push_back(n / factor);
  }
  return IndexSet::explicit_set(std::move(el), x.horizon / factor);
}

IndexSet shifted(const IndexSet& s, Int offset) {
  if (offset < 0) throw std::invalid_argument("shift offset must be >= 0");
  if (offset == 0) return s;
  if (s.is_exact()) {
    const auto& e = s.exact_form();
    std::vector<Int> exc = e.exceptional;
    for (auto& n : exc) n += offset;
    std::vector<Int> res;
    for (Int r : e.residues) res.push_back((r + offset) % e.modulus);
    std::sort(res.begin(), res.end());
    return IndexSet::exact(std::move(exc), e.modulus, std::move(res), e.threshold + offset);
  }
  const auto& x = s.explicit_form();
  std::vector<Int> el = x.elements;
  for (auto& n : el) n += offset;
  return IndexSet::explicit_set(std::move(el), x.horizon + offset);
}

IndexSet intersect_dilations(const std::vector<IndexSet>& sets, const IntVector& a) {
  if (sets.size() != a.size()) throw std::invalid_argument("intersect_dilations: length mismatch");
  IndexSet acc = dilation_preimage(sets[0], a[0]);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (acc.is_exact() && acc.known_empty()) return acc;
    acc = intersect(acc, dilation_preimage(sets[i], a[i]));
  }
  return acc;
}

bool is_subset(const IndexSet& small, const IndexSet& large) {
  Int h;
  if (small.is_exact() && large.is_exact()) {
    const auto& s = small.exact_form();
    const auto& l = large.exact_form();
    h = std::max(s.threshold, l.threshold) + checked_lcm(s.modulus, l.modulus);
  } else {
    h = common_horizon(small, large);
  }
  auto ms = membership(small, h);
  auto ml = membership(large, h);
  for (Int n = 1; n <= h; ++n) {
    if (ms[n] && !ml[n]) return false;
  }
  return true;
}

}  // namespace mtv
