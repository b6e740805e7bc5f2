#include "multitrans/families.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

namespace {

std::vector<char> member_mask(const IndexSet& f, Int horizon) {
  std::vector<char> m(static_cast<std::size_t>(horizon + 1), 0);
  if (f.is_exact()) {
    for (Int n = 1; n <= horizon; ++n) m[n] = *f.contains(n);
  } else {
    for (Int n : f.explicit_form().elements) {
      if (n <= horizon) m[n] = 1;
    }
  }
  return m;
}

// Advances n through [0, top]^r in lex order; false after the last vector.
bool next_vector(std::vector<Int>& n, Int top) {
  std::size_t i = n.size();
  while (i > 0 && n[i - 1] == top) n[--i] = 0;
  if (i == 0) return false;
  ++n[i - 1];
  return true;
}

std::string bounds_note(Int n_max, Int k_max, Int h) {
  return "n <= " + std::to_string(n_max) + ", k <= " + std::to_string(k_max) + ", horizon " + std::to_string(h);
}

}  // namespace

std::optional<std::vector<Int>> family_obstruction(Int p, const std::vector<Int>& residues, const IntVector& a) {
  const std::size_t r = a.size();
  Int work = p;
  for (std::size_t i = 0; i < r; ++i) {
    work *= p;
    if (work > 200'000'000) throw CapabilityError("residue enumeration too large for modulus " + std::to_string(p));
  }
  std::vector<char> in_r(static_cast<std::size_t>(p), 0);
  for (Int x : residues) in_r[x] = 1;
  if (residues.empty()) return std::vector<Int>(r, 0);
  std::vector<Int> am(r);
  for (std::size_t i = 0; i < r; ++i) am[i] = a[i] % p;
  std::vector<Int> m(r, 0);
  do {
    bool found = false;
    for (Int k = 0; k < p && !found; ++k) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) ok = in_r[(am[i] * k + m[i]) % p];
      found = ok;
    }
    if (!found) return m;
  } while (next_vector(m, p - 1));
  return std::nullopt;
}

Verdict member_exact(const IndexSet& f, const IntVector& a) {
  if (!f.is_exact()) throw std::invalid_argument("member_exact needs an exact set");
  const auto& e = f.exact_form();
  const Int p = e.modulus;
  auto obstruction = family_obstruction(p, e.residues, a);
  if (!obstruction) return Verdict::holds();

  // Beyond the threshold only n mod p matters, so the least refuting n lies in [0, N0+p-1]^r.
  // For a fixed n, k > ceil(N0 / a_i) + p repeats earlier k modulo p in every coordinate.
  const std::size_t r = a.size();
  const Int top = e.threshold + p - 1;
  Int k_top = 0;
  for (Int ai : a) k_top = std::max(k_top, (e.threshold + ai - 1) / ai + p);
  Int box = 1;
  for (std::size_t i = 0; i < r && box <= 2'000'000; ++i) box *= top + 1;
  if (box > 2'000'000) {
    std::vector<Int> n(r);
    for (std::size_t i = 0; i < r; ++i) n[i] = e.threshold + (((*obstruction)[i] - e.threshold) % p + p) % p;
    return Verdict::fails(n, "translate", true, "representative refuting n (least one not searched)");
  }
  std::vector<Int> n(r, 0);
  do {
    bool found = false;
    for (Int k = 1; k <= k_top && !found; ++k) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) ok = *f.contains(a[i] * k + n[i]);
      found = ok;
    }
    if (!found) return Verdict::fails(n, "translate");
  } while (next_vector(n, top));
  throw InvariantViolation("residue obstruction without a refuting translate vector");
}

Verdict member_bounded(const IndexSet& f, const IntVector& a, const FamilyBounds& bounds) {
  if (bounds.n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (bounds.k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const Int h = f.is_exact() ? bounds.horizon : *f.horizon();
  const Int amax = a.max();
  if (bounds.n_max + amax > h) {
    throw std::invalid_argument("bounds exceed the horizon: n_max + max(a) = " + std::to_string(bounds.n_max + amax) +
                                " > " + std::to_string(h));
  }
  if (bounds.k_max > 0 && amax * bounds.k_max + bounds.n_max > h) {
    throw std::invalid_argument("bounds exceed the horizon: max(a) k_max + n_max > " + std::to_string(h));
  }
  const Int k_max = bounds.k_max > 0 ? bounds.k_max : h / amax;
  const auto mask = member_mask(f, h);
  const std::size_t r = a.size();
  const std::string note = bounds_note(bounds.n_max, k_max, h);
  bool incomplete = false;
  std::vector<Int> n(r, 0);
  do {
    Int kcap = k_max;
    for (std::size_t i = 0; i < r; ++i) kcap = std::min(kcap, (h - n[i]) / a[i]);
    Int horizon_cap = h;
    for (std::size_t i = 0; i < r; ++i) horizon_cap = std::min(horizon_cap, (h - n[i]) / a[i]);
    bool found = false;
    for (Int k = 1; k <= kcap && !found; ++k) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) ok = mask[a[i] * k + n[i]];
      found = ok;
    }
    if (!found) {
      if (kcap >= horizon_cap) return Verdict::fails(n, "translate", false, note);
      incomplete = true;
    }
  } while (next_vector(n, bounds.n_max));
  if (incomplete) return Verdict::unknown("some translate had no k within the k bound " + note);
  return Verdict::holds(false, note);
}

Verdict member(const IndexSet& f, const IntVector& a, const FamilyBounds& bounds) {
  return f.is_exact() ? member_exact(f, a) : member_bounded(f, a, bounds);
}

Verdict is_cofinite(const IndexSet& f) {
  if (f.is_exact()) {
    const auto& e = f.exact_form();
    if (f.cofinite()) return Verdict::holds();
    for (Int r = 0; r < e.modulus; ++r) {
      if (!std::binary_search(e.residues.begin(), e.residues.end(), r)) {
        return Verdict::fails({e.modulus, r}, "missing_residue");
      }
    }
  }
  const auto& x = f.explicit_form();
  const Int h = x.horizon;
  const Int half = h / 2;
  Int count = 0;
  for (Int n : x.elements) count += n > half;
  if (h >= 2 && count == h - half) return Verdict::holds(false, "(" + std::to_string(half) + "," + std::to_string(h) + "] is full");
  return Verdict::unknown("upper half of [1," + std::to_string(h) + "] has gaps");
}

Verdict is_infinite(const IndexSet& f) {
  if (f.is_exact()) {
    if (f.infinite()) return Verdict::holds();
    const auto& e = f.exact_form();
    Int top = e.exceptional.empty() ? 0 : e.exceptional.back();
    return Verdict::fails({top}, "largest_element");
  }
  const auto& x = f.explicit_form();
  if (!x.elements.empty() && x.elements.back() > x.horizon / 2) {
    return Verdict::holds(false, "element " + std::to_string(x.elements.back()) + " in the upper half of the horizon");
  }
  return Verdict::unknown("no element in the upper half of [1," + std::to_string(x.horizon) + "]");
}

Verdict is_thick(const IndexSet& f) {
  // An ultimately periodic set contains arbitrarily long runs only if it is cofinite.
  if (f.is_exact()) {
    Verdict v = is_cofinite(f);
    if (v.is_fails()) v.witness_kind = "missing_residue";
    return v;
  }
  const auto& x = f.explicit_form();
  Int best = 0, best_start = 0, run = 0, start = 0;
  Int prev = -1;
  for (Int n : x.elements) {
    if (n == prev + 1 && run > 0) {
      ++run;
    } else {
      run = 1;
      start = n;
    }
    if (run > best) {
      best = run;
      best_start = start;
    }
    prev = n;
  }
  std::string note = "longest run " + std::to_string(best) + " within [1," + std::to_string(x.horizon) + "]";
  if (x.horizon >= 4 && best >= x.horizon / 4) {
    Verdict v = Verdict::holds(false, note);
    v.witness = {best_start, best};
    v.witness_kind = "run";
    return v;
  }
  Verdict v = Verdict::unknown(note);
  v.witness = {best_start, best};
  v.witness_kind = "run";
  return v;
}

Verdict member_infty(const IndexSet& f, int r_max, const FamilyBounds& bounds) {
  if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  const std::string depth = "truncated at r = " + std::to_string(r_max);
  std::vector<Verdict> parts;
  for (int r = 1; r <= r_max; ++r) {
    Verdict v = member(f, IntVector::iota(r), bounds);
    if (v.is_fails()) {
      v.note = "fails for a = " + IntVector::iota(r).str() + "; " + depth;
      return v;
    }
    parts.push_back(std::move(v));
  }
  Verdict v = all_of(parts);
  v.note = v.note.empty() ? depth : v.note + "; " + depth;
  return v;
}

Verdict member_seq(const IndexSet& f, const std::vector<Int>& prefix, const FamilyBounds& bounds) {
  if (prefix.empty()) throw std::invalid_argument("sequence prefix must be non-empty");
  const IntVector full(prefix);
  const std::string depth = "truncated at prefix length " + std::to_string(prefix.size());
  std::vector<Verdict> parts;
  for (std::size_t i = 1; i <= prefix.size(); ++i) {
    Verdict v = member(f, full.prefix(i), bounds);
    if (v.is_fails()) {
      v.note = "fails for a = " + full.prefix(i).str() + "; " + depth;
      return v;
    }
    parts.push_back(std::move(v));
  }
  Verdict v = all_of(parts);
  v.note = v.note.empty() ? depth : v.note + "; " + depth;
  return v;
}

Verdict find_difference_subset(const IndexSet& a, int m, Int search_bound) {
  if (m < 2) throw std::invalid_argument("difference subset size must be >= 2");
  auto check = [&](const std::vector<Int>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        auto c = a.contains(b[j] - b[i]);
        if (!c || !*c) return false;
      }
    }
    return true;
  };

  if (a.is_exact()) {
    const auto& e = a.exact_form();
    const Int p = e.modulus;
    if (std::binary_search(e.residues.begin(), e.residues.end(), Int{0})) {
      const Int d = p * ((e.threshold + p - 1) / p);
      std::vector<Int> b;
      for (int i = 1; i <= m; ++i) b.push_back(d * i);
      if (!check(b)) throw InvariantViolation("arithmetic progression is not a difference subset");
      Verdict v = Verdict::holds(true, "arithmetic progression with step " + std::to_string(d));
      v.witness = std::move(b);
      v.witness_kind = "subset";
      return v;
    }
    // Residues of b_j - b_i must lie in R or be residues of exceptional elements.
    std::vector<char> allowed(static_cast<std::size_t>(p), 0);
    for (Int r : e.residues) allowed[r] = 1;
    for (Int x : e.exceptional) allowed[x % p] = 1;
    Int space = 1;
    for (int i = 1; i < m && space <= 5'000'000; ++i) space *= p;
    if (space <= 5'000'000) {
      std::vector<Int> c(static_cast<std::size_t>(m), 0);
      bool possible = false;
      std::function<void(int)> extend = [&](int i) {
        if (possible) return;
        if (i == m) {
          possible = true;
          return;
        }
        for (Int x = 0; x < p && !possible; ++x) {
          bool ok = true;
          for (int j = 0; j < i && ok; ++j) ok = allowed[((x - c[j]) % p + p) % p];
          if (ok) {
            c[i] = x;
            extend(i + 1);
          }
        }
      };
      extend(1);
      if (!possible) return Verdict::fails({p}, "residue_refutation", true, "no residue pattern mod " + std::to_string(p));
    }
  }

  // b_1 = 1 without loss of generality; differences to b_1 must already be in A.
  Int bound = search_bound;
  if (!a.is_exact()) bound = std::min(bound, *a.horizon() + 1);
  std::vector<Int> b{1};
  std::optional<std::vector<Int>> found;
  std::function<void()> dfs = [&]() {
    if (found) return;
    if (static_cast<int>(b.size()) == m) {
      found = b;
      return;
    }
    for (Int x = b.back() + 1; x <= bound && !found; ++x) {
      bool ok = true;
      for (Int y : b) {
        auto c = a.contains(x - y);
        ok = ok && c && *c;
        if (!ok) break;
      }
      if (ok) {
        b.push_back(x);
        dfs();
        b.pop_back();
      }
    }
  };
  dfs();
  if (found) {
    if (!check(*found)) throw InvariantViolation("difference subset failed its recheck");
    Verdict v = Verdict::holds(true, "found by search");
    v.witness = *found;
    v.witness_kind = "subset";
    return v;
  }
  return Verdict::unknown("no subset with elements <= " + std::to_string(bound));
}

Verdict upward_closure_check(const std::vector<std::pair<IndexSet, IndexSet>>& pairs, const IntVector& a,
                             const FamilyBounds& bounds) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [small, large] = pairs[i];
    if (!is_subset(small, large)) throw std::invalid_argument("pair " + std::to_string(i) + " is not an inclusion");
    Verdict vs = member(small, a, bounds);
    if (!vs.is_holds()) continue;
    Verdict vl = member(large, a, bounds);
    if (vl.is_fails()) return Verdict::fails({static_cast<Int>(i)}, "pair_index", vs.exact && vl.exact);
  }
  return Verdict::holds(true, std::to_string(pairs.size()) + " pairs");
}

}  // namespace mtv
