#include "multitrans/classify.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "multitrans/errors.hpp"
#include "multitrans/families.hpp"

namespace mtv {

namespace {

using Mask = Sft::Mask;

// Successor masks of A^e.
std::vector<Mask> power_successors(const Sft& s, Int e) {
  const int n = s.vertex_count();
  std::vector<Mask> out(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (!s.alive(v)) continue;
    Mask cur = Mask{1} << v;
    for (Int i = 0; i < e; ++i) {
      Mask next = 0;
      for (Mask m = cur; m; m &= m - 1) next |= s.successors(std::countr_zero(m));
      cur = next;
    }
    out[v] = cur;
  }
  return out;
}

PropertyRecord classify_finite(const FiniteMap& f, const ClassifyBounds& b) {
  PropertyRecord rec;
  rec.total_up_to = b.total_up_to;
  const int n = f.size();

  if (f.is_single_cycle()) {
    rec.transitive = Verdict::holds();
  } else {
    rec.transitive = Verdict::unknown("");
    for (int x = 0; x < n && !rec.transitive.is_fails(); ++x) {
      for (int y = 0; y < n; ++y) {
        if (hitting_finite(f, Cylinder{{x}}, Cylinder{{y}}).known_empty()) {
          rec.transitive = Verdict::fails({x, y}, "point_pair");
          rec.transitive.cylinders = {{x}, {y}};
          break;
        }
      }
    }
  }

  rec.totally_transitive = Verdict::holds(true, "k <= " + std::to_string(b.total_up_to));
  for (int k = 1; k <= b.total_up_to; ++k) {
    if (!f.power(k).is_single_cycle()) {
      rec.totally_transitive = Verdict::fails({k}, "power");
      break;
    }
  }

  rec.weakly_mixing = a_transitive(DynSystem(f), IntVector{1, 1});

  HittingCatalog cat(DynSystem(f), 1);
  rec.mixing = Verdict::holds();
  for (std::size_t i = 0; i < cat.cylinders().size() && rec.mixing.is_holds(); ++i) {
    for (std::size_t j = 0; j < cat.cylinders().size(); ++j) {
      if (!cat.set(i, j).cofinite()) {
        rec.mixing = Verdict::fails({cat.cylinders()[i].symbols[0], cat.cylinders()[j].symbols[0]}, "point_pair");
        break;
      }
    }
  }

  rec.dense_small_periodic_sets = Verdict::holds();
  for (int x = 0; x < n; ++x) {
    if (!f.is_periodic(x)) {
      rec.dense_small_periodic_sets = Verdict::fails({x}, "non_periodic_point");
      break;
    }
  }
  rec.hy_candidate = all_of({rec.totally_transitive, rec.dense_small_periodic_sets});
  return rec;
}

PropertyRecord classify_sft(const Sft& s, Int e, const ClassifyBounds& b) {
  PropertyRecord rec;
  rec.total_up_to = b.total_up_to;
  DynSystem sys(s, e);
  rec.transitive = a_transitive(sys, IntVector{1}, {.depth = 1});

  if (s.irreducible()) {
    const Int p = s.period();
    rec.period = p;
    rec.totally_transitive = Verdict::holds(true, "k <= " + std::to_string(b.total_up_to));
    for (int k = 1; k <= b.total_up_to; ++k) {
      if (std::gcd(Int{k} * e, p) != 1) {
        rec.totally_transitive = Verdict::fails({k}, "power", true, "period " + std::to_string(p));
        break;
      }
    }
    rec.mixing = p == 1 ? Verdict::holds() : Verdict::fails({p}, "period");
  } else {
    rec.totally_transitive = rec.transitive;
    rec.mixing = rec.transitive;
  }

  // Weak mixing and mixing coincide for SFTs; the square graph gives an independent answer.
  rec.weakly_mixing = rec.mixing;
  const bool square = square_graph_strongly_connected(s, e);
  if (square != rec.mixing.is_holds()) {
    throw InvariantViolation("weak mixing of " + sys.describe() + " disagrees with its square graph");
  }
  rec.weak_mixing_cross_checked = true;

  rec.dense_small_periodic_sets = Verdict::holds();
  for (auto [u, v] : s.edges()) {
    if (s.component_of(u) != s.component_of(v)) {
      rec.dense_small_periodic_sets = Verdict::fails({u, v}, "transient_edge");
      rec.dense_small_periodic_sets.cylinders = {{u, v}};
      break;
    }
  }
  rec.hy_candidate = all_of({rec.totally_transitive, rec.dense_small_periodic_sets});
  return rec;
}

// A cylinder [w] with a 1 holds a periodic point iff some allowed gap exceeds both the
// zeros before the first 1 and the zeros after the last 1.
Verdict spacing_periodic_points(const SpacingShift& s, const DynSystem& sys, int depth) {
  for (const auto& c : enumerate_cylinders(sys, depth)) {
    const Word& w = c.symbols;
    auto first = std::find(w.begin(), w.end(), 1);
    if (first == w.end()) continue;
    const Int lead = first - w.begin();
    const Int trail = static_cast<Int>(std::find(w.rbegin(), w.rend(), 1) - w.rbegin());
    if (s.max_gap() < std::max(lead, trail) + 1) {
      Verdict v = Verdict::fails({lead, trail}, "cylinder_without_periodic_point", false);
      v.cylinders = {w};
      return v;
    }
  }
  return Verdict::holds(false, "cylinders of depth <= " + std::to_string(depth));
}

PropertyRecord classify_spacing(const DynSystem& sys, const ClassifyBounds& b) {
  PropertyRecord rec;
  rec.total_up_to = b.total_up_to;
  HittingCatalog cat(sys, b.depth, b.horizon);
  rec.transitive = a_transitive(cat, IntVector{1});
  std::vector<Verdict> powers;
  for (int k = 1; k <= b.total_up_to; ++k) {
    Verdict v = a_transitive(cat, IntVector{k});
    if (v.is_fails()) v.witness = {k};
    v.witness_kind = v.is_fails() ? "power" : v.witness_kind;
    powers.push_back(std::move(v));
  }
  rec.totally_transitive = all_of(powers);
  rec.totally_transitive.exact = false;
  rec.weakly_mixing = a_transitive(cat, IntVector{1, 1});

  bool all_full = true;
  for (const auto& hs : cat.sets()) all_full = all_full && is_cofinite(hs).is_holds();
  rec.mixing = all_full ? Verdict::holds(false, "every hitting set fills the upper half of the horizon")
                        : Verdict::unknown("some hitting set has gaps near the horizon");

  rec.dense_small_periodic_sets = spacing_periodic_points(*sys.spacing(), sys, b.depth);
  rec.hy_candidate = all_of({rec.totally_transitive, rec.dense_small_periodic_sets});
  rec.hy_candidate.exact = false;
  return rec;
}

}  // namespace

bool square_graph_strongly_connected(const Sft& s, Int exponent) {
  const int n = s.vertex_count();
  const auto succ = power_successors(s, exponent);
  std::vector<int> nodes;
  for (int v = 0; v < n; ++v) {
    if (s.alive(v)) nodes.push_back(v);
  }
  const std::size_t m = nodes.size();
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < m; ++i) pos[nodes[i]] = static_cast<int>(i);
  auto reach_all = [&](bool reverse) {
    std::vector<char> seen(m * m, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const int u = nodes[cur / m], v = nodes[cur % m];
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const int x = nodes[i], y = nodes[j];
          bool edge = reverse ? ((succ[x] >> u) & 1U) && ((succ[y] >> v) & 1U)
                              : ((succ[u] >> x) & 1U) && ((succ[v] >> y) & 1U);
          const std::size_t id = i * m + j;
          if (edge && !seen[id]) {
            seen[id] = 1;
            ++count;
            stack.push_back(id);
          }
        }
      }
    }
    return count == m * m;
  };
  return reach_all(false) && reach_all(true);
}

PropertyRecord classify(const DynSystem& sys, const ClassifyBounds& bounds) {
  if (bounds.total_up_to < 1) throw std::invalid_argument("total_up_to must be >= 1");
  if (auto* f = sys.finite_map()) return classify_finite(*f, bounds);
  if (auto* s = sys.sft()) return classify_sft(*s, sys.exponent(), bounds);
  return classify_spacing(sys, bounds);
}

}  // namespace mtv
