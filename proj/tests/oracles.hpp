#pragma once

// Brute-force reference computations. Nothing here calls into the algorithms under test
// beyond the plain data accessors of the system types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "multitrans/index_set.hpp"
#include "multitrans/systems.hpp"

namespace oracle {

using mtv::Int;
using mtv::Word;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline int uniform(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline mtv::FiniteMap random_map(std::mt19937_64& g, int size) {
  std::vector<int> t(static_cast<std::size_t>(size));
  for (auto& x : t) x = uniform(g, 0, size - 1);
  return mtv::FiniteMap(t);
}

inline int step(const mtv::FiniteMap& f, int x, Int n) {
  for (Int i = 0; i < n; ++i) x = f.table()[static_cast<std::size_t>(x)];
  return x;
}

/// {n in [1, horizon] : f^n(U) meets V} by simulation.
inline std::vector<Int> hitting_finite(const mtv::FiniteMap& f, const Word& u, const Word& v, Int horizon) {
  std::vector<Int> out;
  std::vector<int> cur = u;
  for (Int n = 1; n <= horizon; ++n) {
    for (auto& x : cur) x = f.table()[static_cast<std::size_t>(x)];
    if (std::any_of(cur.begin(), cur.end(), [&](int x) { return std::find(v.begin(), v.end(), x) != v.end(); })) {
      out.push_back(n);
    }
  }
  return out;
}

inline bool edge(const mtv::Sft& s, int a, int b) { return (s.successors(a) >> b) & 1U; }

/// Some walk of exactly `len` edges from a to b.
inline bool walk(const mtv::Sft& s, int a, int b, Int len) {
  const int n = s.vertex_count();
  std::vector<char> cur(static_cast<std::size_t>(n), 0);
  cur[a] = 1;
  for (Int i = 0; i < len; ++i) {
    std::vector<char> nxt(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
      if (!cur[x] || !s.alive(x)) continue;
      for (int y = 0; y < n; ++y) {
        if (s.alive(y) && edge(s, x, y)) nxt[y] = 1;
      }
    }
    cur = std::move(nxt);
  }
  return cur[b] && s.alive(b);
}

/// Position-by-position DP over a word of length max(|u|, n+|v|) constrained by u at 0 and
/// v at n. Every finite path in an essential graph extends to an infinite one.
inline bool sft_hits(const mtv::Sft& s, const Word& u, const Word& v, Int n) {
  const Int len = std::max<Int>(static_cast<Int>(u.size()), n + static_cast<Int>(v.size()));
  const int m = s.vertex_count();
  auto allowed = [&](Int pos, int x) {
    if (!s.alive(x)) return false;
    if (pos < static_cast<Int>(u.size()) && u[static_cast<std::size_t>(pos)] != x) return false;
    if (pos >= n && pos - n < static_cast<Int>(v.size()) && v[static_cast<std::size_t>(pos - n)] != x) return false;
    return true;
  };
  std::vector<char> cur(static_cast<std::size_t>(m), 0);
  for (int x = 0; x < m; ++x) cur[x] = allowed(0, x);
  for (Int pos = 1; pos < len; ++pos) {
    std::vector<char> nxt(static_cast<std::size_t>(m), 0);
    for (int x = 0; x < m; ++x) {
      if (!cur[x]) continue;
      for (int y = 0; y < m; ++y) {
        if (edge(s, x, y) && allowed(pos, y)) nxt[y] = 1;
      }
    }
    cur = std::move(nxt);
  }
  return std::any_of(cur.begin(), cur.end(), [](char c) { return c != 0; });
}

inline std::vector<Int> hitting_sft(const mtv::Sft& s, const Word& u, const Word& v, Int horizon) {
  std::vector<Int> out;
  for (Int n = 1; n <= horizon; ++n) {
    if (sft_hits(s, u, v, n)) out.push_back(n);
  }
  return out;
}

/// Members of an index set on [1, horizon] through contains().
inline std::vector<Int> members(const mtv::IndexSet& s, Int horizon) {
  std::vector<Int> out;
  for (Int n = 1; n <= horizon; ++n) {
    if (s.contains(n).value_or(false)) out.push_back(n);
  }
  return out;
}

/// Members of an Exact set read straight off its fields.
inline bool exact_member(const mtv::IndexSet::Exact& e, Int n) {
  if (std::find(e.exceptional.begin(), e.exceptional.end(), n) != e.exceptional.end()) return true;
  if (n < e.threshold) return false;
  return std::find(e.residues.begin(), e.residues.end(), n % e.modulus) != e.residues.end();
}

/// Transitivity of a finite map in the discrete topology: every y is reached from every x
/// in n >= 1 steps.
inline bool finite_transitive(const std::vector<int>& table) {
  const int n = static_cast<int>(table.size());
  for (int x = 0; x < n; ++x) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int y = table[x];
    for (int i = 0; i < n && !seen[y]; ++i) {
      seen[y] = 1;
      y = table[y];
    }
    if (std::count(seen.begin(), seen.end(), 1) != n) return false;
  }
  return true;
}

/// The product f^{a_1} x ... x f^{a_r} built coordinatewise, coordinate 0 most significant.
inline std::vector<int> product_table(const mtv::FiniteMap& f, const std::vector<Int>& a) {
  const int n = f.size();
  int states = 1;
  for (std::size_t i = 0; i < a.size(); ++i) states *= n;
  std::vector<int> t(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) {
    std::vector<int> c(a.size());
    int rest = s;
    for (std::size_t i = a.size(); i-- > 0;) {
      c[i] = rest % n;
      rest /= n;
    }
    int out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out = out * n + step(f, c[i], a[i]);
    t[s] = out;
  }
  return t;
}

/// a-transitivity of an irreducible SFT: the graph on vertex tuples with an edge when each
/// coordinate has a walk of length a_i is strongly connected.
inline bool sft_product_transitive(const mtv::Sft& s, const std::vector<Int>& a) {
  std::vector<int> verts;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (s.alive(v)) verts.push_back(v);
  }
  const int m = static_cast<int>(verts.size());
  const std::size_t r = a.size();
  int states = 1;
  for (std::size_t i = 0; i < r; ++i) states *= m;
  std::vector<std::vector<std::vector<char>>> pw(r, std::vector<std::vector<char>>(m, std::vector<char>(m, 0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) pw[i][x][y] = walk(s, verts[x], verts[y], a[i]);
    }
  }
  std::vector<std::vector<int>> coords(static_cast<std::size_t>(states), std::vector<int>(r));
  for (int st = 0; st < states; ++st) {
    int rest = st;
    for (std::size_t i = r; i-- > 0;) {
      coords[st][i] = rest % m;
      rest /= m;
    }
  }
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(states), std::vector<char>(static_cast<std::size_t>(states), 0));
  for (int p = 0; p < states; ++p) {
    for (int q = 0; q < states; ++q) {
      bool e = true;
      for (std::size_t i = 0; i < r && e; ++i) e = pw[i][coords[p][i]][coords[q][i]];
      adj[p][q] = e;
    }
  }
  auto covers = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(states), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      for (int q = 0; q < states; ++q) {
        if (!seen[q] && (forward ? adj[p][q] : adj[q][p])) {
          seen[q] = 1;
          ++reached;
          stack.push_back(q);
        }
      }
    }
    return reached == states;
  };
  return covers(true) && covers(false);
}

/// Every n in [0, n_max]^r has some k in [1, k_max] with k a + n inside F, by enumeration.
/// Returns the lexicographically first refuting n, or an empty vector.
template <class Member>
std::vector<Int> refute_family(const std::vector<Int>& a, Int n_max, Int k_max, Member in_f) {
  const std::size_t r = a.size();
  std::vector<Int> n(r, 0);
  while (true) {
    bool ok = false;
    for (Int k = 1; k <= k_max && !ok; ++k) {
      ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) ok = in_f(k * a[i] + n[i]);
    }
    if (!ok) return n;
    std::size_t i = r;
    while (i > 0 && n[i - 1] == n_max) n[--i] = 0;
    if (i == 0) return {};
    ++n[i - 1];
  }
}

/// Random canonical-or-not Exact set with small parameters.
inline mtv::IndexSet random_exact(std::mt19937_64& g, Int max_modulus = 6, Int max_threshold = 12) {
  const Int p = uniform(g, 1, static_cast<int>(max_modulus));
  std::vector<Int> res;
  for (Int r = 0; r < p; ++r) {
    if (uniform(g, 0, 2) == 0) res.push_back(r);
  }
  const Int th = uniform(g, 1, static_cast<int>(max_threshold));
  std::vector<Int> exc;
  for (Int e = 1; e < th; ++e) {
    if (uniform(g, 0, 3) == 0) exc.push_back(e);
  }
  return mtv::IndexSet::exact(exc, p, res, th);
}

/// Orbits of x and y under the discrete metric: meet eventually / differ infinitely often.
inline std::pair<bool, bool> pair_behaviour(const mtv::FiniteMap& f, int x, int y) {
  const int n = f.size();
  bool meet = false, differ_late = false;
  for (int t = 0; t <= 2 * n * n + 2; ++t) {
    if (x == y) meet = true;
    if (t > n * n && x != y) differ_late = true;
    x = f.table()[x];
    y = f.table()[y];
  }
  return {meet, differ_late};
}

}  // namespace oracle
