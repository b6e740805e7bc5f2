#include "multitrans/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree:
      return "agree";
    case Agreement::Disagree:
      return "disagree";
    case Agreement::Inconclusive:
      return "inconclusive";
    case Agreement::Skipped:
      return "skipped";
  }
  return "inconclusive";
}

std::size_t AgreementReport::count(Agreement a) const {
  return (a == Agreement::Agree ? omitted_agree : 0) + static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [&](const CaseReport& c) { return c.agreement == a; }));
}

bool AgreementReport::any_fatal() const {
  return std::any_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.fatal(); });
}

void AgreementReport::append(const AgreementReport& other) {
  cases.insert(cases.end(), other.cases.begin(), other.cases.end());
  omitted_agree += other.omitted_agree;
}

Agreement compare(const Verdict& l, const Verdict& r) {
  if (l.is_unknown() || r.is_unknown()) return Agreement::Inconclusive;
  return l.outcome == r.outcome ? Agreement::Agree : Agreement::Disagree;
}

bool MemberCache::holds(const IndexSet& exact, const IntVector& a) {
  const auto& e = exact.exact_form();
  auto key = std::make_tuple(e.modulus, e.residues, a.entries());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const bool h = !family_obstruction(e.modulus, e.residues, a).has_value();
  memo_.emplace(std::move(key), h);
  return h;
}

// ---------------------------------------------------------------------------

Thm42Runner::Thm42Runner(DynSystem sys, int depth, FamilyBounds bounds, MemberCache* cache)
    : catalog_(std::move(sys), depth, bounds.horizon), bounds_(bounds), cache_(cache ? cache : &own_cache_) {}

Verdict Thm42Runner::family_side(const IntVector& a) {
  bool exact = true;
  std::optional<Verdict> unknown;
  const auto& sets = catalog_.sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Verdict v;
    if (sets[i].is_exact()) {
      if (cache_->holds(sets[i], a)) continue;
      v = member_exact(sets[i], a);
    } else {
      v = member_bounded(sets[i], a, bounds_);
      exact = false;
    }
    if (v.is_holds()) continue;
    auto [u, w] = catalog_.representative(i);
    v.cylinders = {catalog_.cylinders()[u].symbols, catalog_.cylinders()[w].symbols};
    if (v.is_fails()) {
      v.note = "hitting set " + sets[i].str();
      return v;
    }
    if (!unknown) unknown = v;
  }
  if (unknown) return *unknown;
  return Verdict::holds(exact, std::to_string(sets.size()) + " distinct hitting sets");
}

CaseReport Thm42Runner::run(const IntVector& a) {
  CaseReport c;
  c.system = catalog_.system().describe();
  c.parameter = a.str();
  c.exact_lane = catalog_.system().exact_lane();
  c.side_l = a_transitive(catalog_, a);
  c.side_r = family_side(a);
  c.agreement = compare(c.side_l, c.side_r);
  return c;
}

AgreementReport verify_thm_42(const DynSystem& sys, const IntVector& a, int depth, const FamilyBounds& bounds) {
  AgreementReport r;
  r.theorem = "thm42";
  Thm42Runner runner(sys, depth, bounds);
  r.cases.push_back(runner.run(a));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Verdict multi_transitive_upto(const HittingCatalog& cat, int m) {
  std::vector<Verdict> parts;
  for (int j = 1; j <= m; ++j) {
    Verdict v = a_transitive(cat, IntVector::iota(j));
    if (v.is_fails()) {
      v.note = "fails for " + IntVector::iota(j).str() + (v.note.empty() ? "" : "; " + v.note);
      return v;
    }
    parts.push_back(std::move(v));
  }
  return all_of(parts);
}

IntVector doubled(int k) {
  std::vector<Int> v;
  for (int i = 1; i <= k; ++i) {
    v.push_back(i);
    v.push_back(i);
  }
  return IntVector(std::move(v));
}

// "Holds on the left forces Holds on the right".
Agreement implication(const Verdict& l, const Verdict& r) {
  if (l.is_fails()) return Agreement::Skipped;
  if (l.is_unknown() || r.is_unknown()) return Agreement::Inconclusive;
  return r.is_holds() ? Agreement::Agree : Agreement::Disagree;
}

}  // namespace

AgreementReport verify_lemma_32(const DynSystem& sys, Int n, int m_bound, int depth) {
  if (n < 1) throw std::invalid_argument("power must be >= 1");
  if (m_bound < 2) throw std::invalid_argument("vector length bound must be >= 2");
  const int d = sys.finite_map() ? 1 : depth;
  HittingCatalog cf(sys, d);
  HittingCatalog cg(power(sys, n), d);
  AgreementReport rep;
  rep.theorem = "lemma32";
  rep.note = "multi-transitivity truncated at (1,...,m); power n = " + std::to_string(n);
  for (int m = 2; m <= m_bound; ++m) {
    CaseReport c;
    c.system = sys.describe();
    c.parameter = "MT<=" + std::to_string(m);
    c.exact_lane = sys.exact_lane();
    c.side_l = multi_transitive_upto(cf, m);
    c.side_r = multi_transitive_upto(cg, m);
    c.agreement = compare(c.side_l, c.side_r);
    rep.cases.push_back(std::move(c));
  }
  for (int m = 1; m <= m_bound && m * n <= 6; ++m) {
    CaseReport c;
    c.system = sys.describe();
    c.parameter = "MT<=" + std::to_string(m * n) + " => power MT<=" + std::to_string(m);
    c.exact_lane = sys.exact_lane();
    c.side_l = multi_transitive_upto(cf, static_cast<int>(m * n));
    c.side_r = multi_transitive_upto(cg, m);
    c.agreement = implication(c.side_l, c.side_r);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

AgreementReport verify_prop_33(const DynSystem& sys, const Prop33Bounds& b) {
  const int d = sys.finite_map() ? 1 : b.depth;
  HittingCatalog cat(sys, d);
  std::vector<Verdict> parts;
  for (const auto& a : enumerate_vectors(b.r_max, b.entry_max)) {
    Verdict v = a_transitive(cat, a);
    if (v.is_fails()) v.note = "fails for " + a.str();
    parts.push_back(std::move(v));
    if (parts.back().is_fails()) break;
  }
  Verdict c1 = all_of(parts);

  parts.clear();
  for (int k = 1; k <= b.k_max; ++k) {
    Verdict v = a_transitive(cat, doubled(k));
    if (v.is_fails()) v.note = "square of f x ... x f^" + std::to_string(k) + " is not transitive";
    parts.push_back(std::move(v));
    if (parts.back().is_fails()) break;
  }
  Verdict c4 = all_of(parts);

  Verdict wm = a_transitive(cat, IntVector{1, 1});
  if (wm.is_fails()) wm.note = "not weakly mixing";
  Verdict c5 = all_of({wm, multi_transitive_upto(cat, b.k_max)});

  AgreementReport rep;
  rep.theorem = "prop33";
  rep.note = "vectors r <= " + std::to_string(b.r_max) + ", entries <= " + std::to_string(b.entry_max) +
             "; k <= " + std::to_string(b.k_max);
  auto add = [&](const std::string& name, const Verdict& l, const Verdict& r) {
    CaseReport c;
    c.system = sys.describe();
    c.parameter = name;
    c.exact_lane = sys.exact_lane();
    c.side_l = l;
    c.side_r = r;
    c.agreement = compare(l, r);
    rep.cases.push_back(std::move(c));
  };
  add("(1) vs (4)", c1, c4);
  add("(1) vs (5)", c1, c5);
  add("(4) vs (5)", c4, c5);
  return rep;
}

// ---------------------------------------------------------------------------

AgreementReport verify_thm_53_claim(const DynSystem& sys, const std::vector<Int>& b_in, const ESystemWitness& e_sys,
                                    int depth) {
  std::vector<Int> b = b_in;
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (b.size() < 2 || b.front() < 1) throw std::invalid_argument("B needs at least two positive elements");
  std::vector<Int> diffs;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) diffs.push_back(b[j] - b[i]);
  }
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  const IntVector a(diffs);

  AgreementReport rep;
  rep.theorem = "thm53";
  rep.note = "finite prefix B of size " + std::to_string(b.size()) + "; E-system of size " +
             std::to_string(e_sys.system().size());
  HittingCatalog cat(sys, depth);
  const Verdict pre = a_transitive(cat, a);
  auto make = [&](const std::string& name) {
    CaseReport c;
    c.system = sys.describe();
    c.parameter = name + " vs cycle " + std::to_string(e_sys.system().size());
    c.exact_lane = sys.exact_lane();
    c.side_l = pre;
    return c;
  };
  if (!pre.is_holds()) {
    CaseReport c = make("claim");
    c.side_r = Verdict::unknown("precondition not met");
    c.agreement = Agreement::Skipped;
    c.detail = "not " + a.str() + "-transitive";
    rep.cases.push_back(std::move(c));
    return rep;
  }

  const FiniteMap& g = e_sys.system();
  const int s = g.size();
  std::vector<IndexSet> ng;
  for (int w1 = 0; w1 < s; ++w1) {
    for (int w2 = 0; w2 < s; ++w2) ng.push_back(hitting_finite(g, Cylinder{{w1}}, Cylinder{{w2}}));
  }
  auto witness_for = [&](std::size_t set, std::vector<Int> points) {
    Verdict v = Verdict::fails(std::move(points), "points", sys.exact_lane());
    auto [u, w] = cat.representative(set);
    v.cylinders = {cat.cylinders()[u].symbols, cat.cylinders()[w].symbols};
    return v;
  };
  auto finish = [&](CaseReport c, Verdict r) {
    c.side_r = std::move(r);
    c.agreement = implication(c.side_l, c.side_r);
    rep.cases.push_back(std::move(c));
  };

  Verdict claim = Verdict::holds(sys.exact_lane());
  for (std::size_t i = 0; i < cat.sets().size() && claim.is_holds(); ++i) {
    for (int w = 0; w < s; ++w) {
      if (intersect(cat.sets()[i], ng[static_cast<std::size_t>(w) * s + w]).known_empty()) {
        claim = witness_for(i, {w});
        break;
      }
    }
  }
  finish(make("claim"), claim);

  Verdict disjoint = Verdict::holds(sys.exact_lane());
  for (std::size_t i = 0; i < cat.sets().size() && disjoint.is_holds(); ++i) {
    for (int w1 = 0; w1 < s && disjoint.is_holds(); ++w1) {
      for (int w2 = 0; w2 < s; ++w2) {
        if (intersect(cat.sets()[i], ng[static_cast<std::size_t>(w1) * s + w2]).known_empty()) {
          disjoint = witness_for(i, {w1, w2});
          break;
        }
      }
    }
  }
  finish(make("weak_disjointness"), disjoint);

  CaseReport dev = make("pigeonhole");
  if (static_cast<Int>(b.size()) <= s) {
    dev.side_r = Verdict::unknown("needs |B| > " + std::to_string(s));
    dev.agreement = Agreement::Skipped;
    rep.cases.push_back(std::move(dev));
    return rep;
  }
  // k with k a inside N_f(U,V); two of the sets g^{-k b_i}(w) meet, so k (b_j - b_i) lies in
  // both N_f(U,V) and N_g(w,w).
  Verdict device = Verdict::holds(sys.exact_lane());
  for (std::size_t i = 0; i < cat.sets().size() && device.is_holds(); ++i) {
    const IndexSet& nf = cat.sets()[i];
    auto k = intersect_dilations(std::vector<IndexSet>(a.size(), nf), a).first();
    if (!k) {
      device = witness_for(i, {});
      device.note = "no common k for the diagonal box";
      break;
    }
    for (int w = 0; w < s; ++w) {
      std::vector<std::vector<char>> pre_images;
      for (Int bi : b) {
        std::vector<char> p(static_cast<std::size_t>(s), 0);
        for (int z = 0; z < s; ++z) p[z] = g.iterate(z, *k * bi) == w;
        pre_images.push_back(std::move(p));
      }
      bool found = false;
      for (std::size_t x = 0; x < b.size() && !found; ++x) {
        for (std::size_t y = x + 1; y < b.size() && !found; ++y) {
          bool meet = false;
          for (int z = 0; z < s && !meet; ++z) meet = pre_images[x][z] && pre_images[y][z];
          if (!meet) continue;
          const Int t = *k * (b[y] - b[x]);
          if (!*nf.contains(t) || !*ng[static_cast<std::size_t>(w) * s + w].contains(t)) {
            throw InvariantViolation("pigeonhole time " + std::to_string(t) + " is not a common hitting time");
          }
          found = true;
        }
      }
      if (!found) {
        device = witness_for(i, {w, *k});
        device.note = "no two of the sets g^-(k b_i)(W) meet";
        break;
      }
    }
  }
  finish(std::move(dev), device);
  return rep;
}

AgreementReport verify_tower_transitive_point(const FiniteMap& base, int k) {
  int y = -1;
  for (int x = 0; x < base.size() && y < 0; ++x) {
    if (base.is_transitive_point(x)) y = x;
  }
  if (y < 0) throw std::invalid_argument("base system has no transitive point");
  const FiniteMap t = tower(base, k);
  CaseReport c;
  c.system = DynSystem(base).describe();
  c.parameter = "k=" + std::to_string(k);
  c.side_l = Verdict::holds();
  c.side_l.note = "point " + std::to_string(y) + " is transitive in the base";
  c.side_r = Verdict::holds();
  for (int x = 0; x < base.size(); ++x) {
    if (t.iterate(x * k, k) != base(x) * k) {
      c.side_r = Verdict::fails({x}, "level_return");
      break;
    }
  }
  if (c.side_r.is_holds() && !t.is_transitive_point(y * k)) c.side_r = Verdict::fails({y, 0}, "tower_point");
  c.agreement = compare(c.side_l, c.side_r);
  AgreementReport rep;
  rep.theorem = "tower";
  rep.cases.push_back(std::move(c));
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<SeparationCandidate> search_separation(const SeparationSpace& space, const std::string& predicate) {
  std::vector<std::pair<std::string, bool>> terms;
  std::stringstream ss(predicate);
  std::string tok;
  while (std::getline(ss, tok, '&')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) continue;
    bool want = true;
    if (tok[0] == '!') {
      want = false;
      tok.erase(0, 1);
    }
    if (tok != "t" && tok != "t12" && tok != "wm") throw ParseError("unknown profile key '" + tok + "'");
    terms.emplace_back(tok, want);
  }

  std::vector<std::vector<Int>> sets = space.gap_sets;
  if (sets.empty()) {
    std::mt19937_64 rng(space.seed);
    for (int i = 0; i < space.count; ++i) {
      std::vector<Int> gaps;
      for (Int g = 1; g <= space.max_gap; ++g) {
        if (rng() & 1U) gaps.push_back(g);
      }
      sets.push_back(std::move(gaps));
    }
  }

  std::vector<SeparationCandidate> out;
  for (const auto& gaps : sets) {
    DynSystem sys{SpacingShift(gaps, space.horizon)};
    HittingCatalog cat(sys, space.depth, space.horizon);
    SeparationCandidate c;
    c.gaps = sys.spacing()->gaps();
    c.profile["t"] = a_transitive(cat, IntVector{1});
    c.profile["wm"] = a_transitive(cat, IntVector{1, 1});
    c.profile["t12"] = a_transitive(cat, IntVector{1, 2});
    c.matches = std::all_of(terms.begin(), terms.end(), [&](const auto& t) {
      const Verdict& v = c.profile[t.first];
      return t.second ? v.is_holds() : v.is_fails();
    });
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mtv
