#include "multitrans/hitting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "multitrans/errors.hpp"

namespace mtv {

namespace {

IndexSet orbit_hits(const FiniteMap& f, int x, const std::vector<char>& in_v) {
  auto shape = f.orbit_shape(x);
  const Int start = std::max(shape.preperiod, 1);
  std::vector<Int> exc;
  std::vector<Int> res;
  int y = f(x);
  for (Int n = 1; n < start + shape.period; ++n, y = f(y)) {
    if (!in_v[y]) continue;
    if (n < start) {
      exc.push_back(n);
    } else {
      res.push_back(n % shape.period);
    }
  }
  std::sort(res.begin(), res.end());
  return IndexSet::exact(std::move(exc), shape.period, std::move(res), start);
}

bool overlap_consistent(const Word& u, const Word& v, std::size_t n) {
  for (std::size_t j = 0; n + j < u.size() && j < v.size(); ++j) {
    if (u[n + j] != v[j]) return false;
  }
  return true;
}

Word overlap_word(const Word& u, const Word& v, std::size_t n) {
  Word w = u;
  for (std::size_t j = u.size() - n; j < v.size(); ++j) w.push_back(v[j]);
  return w;
}

}  // namespace

IndexSet hitting_finite(const FiniteMap& f, const Cylinder& u, const Cylinder& v) {
  validate_cylinder(DynSystem(f), u);
  validate_cylinder(DynSystem(f), v);
  std::vector<char> in_v(static_cast<std::size_t>(f.size()), 0);
  for (int y : v.symbols) in_v[y] = 1;
  IndexSet acc = IndexSet::empty();
  for (int x : u.symbols) acc = unite(acc, orbit_hits(f, x, in_v));
  return acc;
}

IndexSet hitting_sft(const Sft& s, const Cylinder& u, const Cylinder& v) {
  if (!s.admissible(u.symbols) || !s.admissible(v.symbols)) throw std::invalid_argument("cylinder word is not admissible");
  const Word& uw = u.symbols;
  const Word& vw = v.symbols;
  std::vector<Int> overlap;
  for (std::size_t n = 1; n < uw.size(); ++n) {
    if (overlap_consistent(uw, vw, n)) overlap.push_back(static_cast<Int>(n));
  }
  IndexSet tail = shifted(s.walk_lengths(uw.back(), vw.front()), static_cast<Int>(uw.size()) - 1);
  return unite(IndexSet::finite(std::move(overlap)), tail);
}

IndexSet hitting_spacing(const SpacingShift& s, const Cylinder& u, const Cylinder& v, Int horizon) {
  if (horizon > s.horizon()) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) + " exceeds the spacing shift capacity " +
                                std::to_string(s.horizon()));
  }
  if (!s.admissible(u.symbols) || !s.admissible(v.symbols)) throw std::invalid_argument("cylinder word is not admissible");
  const Word& uw = u.symbols;
  const Word& vw = v.symbols;
  std::vector<Int> el;
  for (std::size_t n = 1; n < uw.size() && static_cast<Int>(n) <= horizon; ++n) {
    if (overlap_consistent(uw, vw, n) && s.run(overlap_word(uw, vw, n)) >= 0) el.push_back(static_cast<Int>(n));
  }
  // Forward pass over the automaton states reachable after the free positions.
  const int states = s.automaton_states();
  std::vector<char> ok_v(static_cast<std::size_t>(states));
  for (int st = 0; st < states; ++st) ok_v[st] = s.run(vw, st) >= 0;
  std::vector<char> cur(static_cast<std::size_t>(states), 0), next(cur.size());
  cur[s.run(uw)] = 1;
  for (Int n = static_cast<Int>(uw.size()); n <= horizon; ++n) {
    bool hit = false;
    for (int st = 0; st < states && !hit; ++st) hit = cur[st] && ok_v[st];
    if (hit) el.push_back(n);
    std::fill(next.begin(), next.end(), 0);
    for (int st = 0; st < states; ++st) {
      if (!cur[st]) continue;
      next[s.step(st, 0)] = 1;
      int o = s.step(st, 1);
      if (o >= 0) next[o] = 1;
    }
    cur.swap(next);
  }
  return IndexSet::explicit_set(std::move(el), horizon);
}

IndexSet hitting(const DynSystem& sys, const Cylinder& u, const Cylinder& v, Int horizon) {
  const Int e = sys.exponent();
  if (auto* f = sys.finite_map()) return hitting_finite(*f, u, v);
  if (auto* s = sys.sft()) return dilation_preimage(hitting_sft(*s, u, v), e);
  const auto* sp = sys.spacing();
  const Int base_h = std::min(sp->horizon(), horizon > sp->horizon() / e ? sp->horizon() : horizon * e);
  return dilation_preimage(hitting_spacing(*sp, u, v, base_h), e);
}

// ---------------------------------------------------------------------------

HittingCatalog::HittingCatalog(DynSystem sys, int depth, Int horizon) : sys_(std::move(sys)), depth_(depth), horizon_(horizon) {
  if (depth < 1) throw std::invalid_argument("catalog depth must be >= 1");
  if (auto* sp = sys_.spacing()) {
    horizon_ = std::min(horizon, sp->horizon()) / sys_.exponent();
    if (horizon_ < 1) throw std::invalid_argument("horizon too small for this exponent");
  }
  cylinders_ = enumerate_cylinders(sys_, depth);
  const std::size_t nc = cylinders_.size();
  table_.assign(nc * nc, 0);

  if (auto* f = sys_.finite_map()) {
    // Subsets come after the singletons; their sets are unions of singleton sets.
    const int n = f->size();
    std::vector<IndexSet> single;
    single.reserve(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) single.push_back(hitting_finite(*f, Cylinder{{x}}, Cylinder{{y}}));
    }
    std::map<IndexSet, std::size_t> seen;
    for (std::size_t i = 0; i < nc; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        IndexSet acc = IndexSet::empty();
        bool first = true;
        for (int x : cylinders_[i].symbols) {
          for (int y : cylinders_[j].symbols) {
            const auto& s = single[static_cast<std::size_t>(x) * n + y];
            acc = first ? s : unite(acc, s);
            first = false;
          }
        }
        auto it = seen.find(acc);
        if (it == seen.end()) it = seen.emplace(acc, intern(acc, i, j)).first;
        table_[i * nc + j] = it->second;
      }
    }
  } else if (auto* s = sys_.sft()) {
    // N([u],[v]) depends only on |u|, the last symbol of u, the first symbol of v and which
    // overlaps are consistent, so the work is keyed on that.
    const Int n = s->vertex_count();
    const Int key_space = depth < 20 ? (Int{1} << (depth - 1)) * (depth + 1) * n * n : -1;
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> flat(key_space >= 0 && key_space <= (1 << 16) ? static_cast<std::size_t>(key_space) : 0, kUnset);
    std::map<std::pair<Word, Word>, std::size_t> by_pair;  // only for very deep catalogs
    std::map<IndexSet, std::size_t> seen;
    for (std::size_t i = 0; i < nc; ++i) {
      const Word& uw = cylinders_[i].symbols;
      for (std::size_t j = 0; j < nc; ++j) {
        const Word& vw = cylinders_[j].symbols;
        std::size_t* slot = nullptr;
        if (!flat.empty()) {
          Int mask = 0;
          for (std::size_t k = 1; k < uw.size(); ++k) mask |= Int{overlap_consistent(uw, vw, k)} << (k - 1);
          slot = &flat[static_cast<std::size_t>(((mask * (depth + 1) + static_cast<Int>(uw.size())) * n + uw.back()) * n + vw.front())];
        } else {
          Word head(uw.begin(), uw.end());
          Word tail(vw.begin(), vw.begin() + static_cast<std::ptrdiff_t>(std::min(vw.size(), uw.size())));
          auto [it, fresh] = by_pair.emplace(std::make_pair(std::move(head), std::move(tail)), kUnset);
          slot = &it->second;
        }
        if (*slot == kUnset) {
          IndexSet hs = dilation_preimage(hitting_sft(*s, cylinders_[i], cylinders_[j]), sys_.exponent());
          auto it = seen.find(hs);
          if (it == seen.end()) it = seen.emplace(hs, intern(hs, i, j)).first;
          *slot = it->second;
        }
        table_[i * nc + j] = *slot;
      }
    }
  } else {
    std::map<IndexSet, std::size_t> seen;
    for (std::size_t i = 0; i < nc; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        IndexSet hs = hitting(sys_, cylinders_[i], cylinders_[j], horizon_);
        auto it = seen.find(hs);
        if (it == seen.end()) it = seen.emplace(hs, intern(hs, i, j)).first;
        table_[i * nc + j] = it->second;
      }
    }
  }

  std::vector<char> taken(sets_.size(), 0);
  for (std::size_t i = 0; i < nc && cylinders_[i].symbols.size() == 1; ++i) {
    for (std::size_t j = 0; j < nc && cylinders_[j].symbols.size() == 1; ++j) {
      const std::size_t s = table_[i * nc + j];
      if (!taken[s]) {
        taken[s] = 1;
        singleton_sets_.push_back(s);
      }
    }
  }
}

std::size_t HittingCatalog::intern(IndexSet s, std::size_t u, std::size_t v) {
  sets_.push_back(std::move(s));
  reps_.emplace_back(u, v);
  return sets_.size() - 1;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<Int>> residue_obstruction(Int p, const IntVector& a) {
  if (p < 1) throw std::invalid_argument("modulus must be >= 1");
  const std::size_t r = a.size();
  std::set<std::vector<Int>> reachable;
  for (Int k = 0; k < p; ++k) {
    std::vector<Int> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = (a[i] % p) * k % p;
    reachable.insert(std::move(c));
  }
  // The first missing vector in lex order is among the first |reachable| + 1 vectors.
  std::vector<Int> c(r, 0);
  while (true) {
    if (!reachable.count(c)) return c;
    std::size_t i = r;
    while (i > 0 && c[i - 1] == p - 1) c[--i] = 0;
    if (i == 0) return std::nullopt;
    ++c[i - 1];
  }
}

namespace {

Int box_count(std::size_t d, std::size_t r, Int cap) {
  Int total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total *= static_cast<Int>(d);
    if (total > cap) return cap + 1;
  }
  return total;
}

// Lex-first box over pool^r whose dilated intersection is empty (for exact sets) or has no
// element within its horizon (for explicit sets).
std::optional<std::vector<std::size_t>> first_empty_box(const HittingCatalog& cat, const std::vector<std::size_t>& pool,
                                                        const IntVector& a) {
  const std::size_t r = a.size();
  std::vector<std::size_t> idx(r, 0);
  std::vector<IndexSet> sets(r, cat.sets()[pool[0]]);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) sets[i] = cat.sets()[pool[idx[i]]];
    if (intersect_dilations(sets, a).known_empty()) {
      std::vector<std::size_t> box(r);
      for (std::size_t i = 0; i < r; ++i) box[i] = pool[idx[i]];
      return box;
    }
    std::size_t i = r;
    while (i > 0 && idx[i - 1] + 1 == pool.size()) idx[--i] = 0;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
  }
}

void attach_box(Verdict& v, const HittingCatalog& cat, const std::vector<std::size_t>& box) {
  for (std::size_t s : box) v.cylinders.push_back(cat.cylinders()[cat.representative(s).first].symbols);
  for (std::size_t s : box) v.cylinders.push_back(cat.cylinders()[cat.representative(s).second].symbols);
}

Verdict a_transitive_finite(const HittingCatalog& cat, const FiniteMap& f, const IntVector& a, Int box_cap) {
  const auto& pool = cat.singleton_sets();
  if (box_count(pool.size(), a.size(), box_cap) > box_cap) {
    // Too many boxes: the product of finite maps is transitive iff it is one cycle.
    bool holds = f.size() == 1;
    if (!holds && a.size() == 1 && f.is_single_cycle()) holds = std::gcd(a[0], Int{f.size()}) == 1;
    if (holds) return Verdict::holds(true, "decided from the cycle structure");
    return Verdict::fails({}, "cycle_structure", true, "product map is not a single cycle");
  }
  auto box = first_empty_box(cat, pool, a);
  if (!box) return Verdict::holds();
  Verdict v;
  if (f.is_single_cycle()) {
    std::vector<Int> c;
    for (std::size_t s : *box) {
      auto [u, w] = cat.representative(s);
      const int x = cat.cylinders()[u].symbols[0];
      const int y = cat.cylinders()[w].symbols[0];
      c.push_back(((y - x) % f.size() + f.size()) % f.size());
    }
    v = Verdict::fails(std::move(c), "residue_vector");
  } else {
    std::vector<Int> w;
    for (std::size_t s : *box) w.push_back(cat.cylinders()[cat.representative(s).first].symbols[0]);
    for (std::size_t s : *box) w.push_back(cat.cylinders()[cat.representative(s).second].symbols[0]);
    v = Verdict::fails(std::move(w), "box");
  }
  attach_box(v, cat, *box);
  return v;
}

Verdict a_transitive_sft(const HittingCatalog& cat, const Sft& s, const IntVector& a, Int box_cap) {
  const std::size_t r = a.size();
  const Int e = cat.system().exponent();
  if (!s.irreducible()) {
    for (int x = 0; x < s.vertex_count(); ++x) {
      if (!s.alive(x)) continue;
      for (int y = 0; y < s.vertex_count(); ++y) {
        if (!s.alive(y) || s.reaches(x, y)) continue;
        if (!hitting(cat.system(), Cylinder{{x}}, Cylinder{{y}}).known_empty()) {
          throw InvariantViolation("unreachable vertex pair with a non-empty hitting set");
        }
        Verdict v = Verdict::fails({x, y}, "unreachable_pair", true, "reducible SFT");
        for (std::size_t i = 0; i < r; ++i) v.cylinders.push_back({x});
        for (std::size_t i = 0; i < r; ++i) v.cylinders.push_back({y});
        return v;
      }
    }
    throw InvariantViolation("reducible SFT without an unreachable vertex pair");
  }

  const Int p = s.period();
  auto obstruction = residue_obstruction(p, a.scaled(e));
  if (obstruction) {
    // Box with N_i inside the residue class c_i (mod p), read off the cyclic classes.
    const int root = s.components()[0].front();
    std::vector<IndexSet> sets;
    Verdict v = Verdict::fails(*obstruction, "residue_vector", true,
                               e == 1 ? std::string{} : "residues of the base shift for exponents " + a.scaled(e).str());
    std::vector<Word> targets;
    for (Int c : *obstruction) {
      int t = -1;
      for (int y : s.components()[0]) {
        if (s.cyclic_class(y) == c) {
          t = y;
          break;
        }
      }
      sets.push_back(hitting(cat.system(), Cylinder{{root}}, Cylinder{{t}}));
      v.cylinders.push_back({root});
      targets.push_back({t});
    }
    v.cylinders.insert(v.cylinders.end(), targets.begin(), targets.end());
    if (!intersect_dilations(sets, a).known_empty()) {
      throw InvariantViolation("residue obstruction " + a.str() + " not confirmed by hitting sets");
    }
    return v;
  }

  bool all_cofinite = true;
  for (const auto& hs : cat.sets()) all_cofinite = all_cofinite && hs.cofinite();
  if (all_cofinite) return Verdict::holds();
  std::vector<std::size_t> pool(cat.sets().size());
  std::iota(pool.begin(), pool.end(), 0);
  if (box_count(pool.size(), r, box_cap) > box_cap) {
    return Verdict::holds(true, "brute-force box check skipped above " + std::to_string(box_cap) + " boxes");
  }
  if (auto box = first_empty_box(cat, pool, a)) {
    throw InvariantViolation("residue criterion holds for " + a.str() + " but a cylinder box has no common hitting time");
  }
  return Verdict::holds();
}

Verdict a_transitive_spacing(const HittingCatalog& cat, const IntVector& a, Int box_cap) {
  std::vector<std::size_t> pool(cat.sets().size());
  std::iota(pool.begin(), pool.end(), 0);
  const std::string at = "at horizon " + std::to_string(cat.horizon()) + ", depth " + std::to_string(cat.depth());
  if (cat.horizon() / a.max() < 1) return Verdict::unknown("horizon too small for " + a.str());
  if (box_count(pool.size(), a.size(), box_cap) > box_cap) return Verdict::unknown("too many cylinder boxes " + at);
  if (auto box = first_empty_box(cat, pool, a)) {
    Verdict v = Verdict::fails({}, "box", false, "no common hitting time " + at);
    attach_box(v, cat, *box);
    return v;
  }
  return Verdict::holds(false, at);
}

}  // namespace

Verdict a_transitive(const HittingCatalog& catalog, const IntVector& a, Int box_cap) {
  const DynSystem& sys = catalog.system();
  if (auto* f = sys.finite_map()) return a_transitive_finite(catalog, *f, a, box_cap);
  if (auto* s = sys.sft()) return a_transitive_sft(catalog, *s, a, box_cap);
  return a_transitive_spacing(catalog, a, box_cap);
}

Verdict a_transitive(const DynSystem& sys, const IntVector& a, const ATransitiveOptions& opt) {
  const int depth = sys.finite_map() ? 1 : opt.depth;
  return a_transitive(HittingCatalog(sys, depth, opt.horizon), a, opt.box_cap);
}

}  // namespace mtv
