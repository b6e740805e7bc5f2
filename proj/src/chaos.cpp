#include "multitrans/chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

namespace {

// Deterministic reader for the admissible words of a shift. step() returns -1 on a
// forbidden symbol.
struct Reader {
  int states = 0;
  int start = 0;
  int alphabet = 0;
  std::vector<int> table;

  int step(int q, int s) const { return q < 0 ? -1 : table[static_cast<std::size_t>(q) * alphabet + s]; }
};

Reader make_reader(const DynSystem& sys) {
  Reader r;
  if (auto* s = sys.sft()) {
    const int n = s->vertex_count();
    r.states = n + 1;
    r.start = n;
    r.alphabet = n;
    r.table.assign(static_cast<std::size_t>(r.states) * n, -1);
    for (int v = 0; v < n; ++v) {
      if (!s->alive(v)) continue;
      r.table[static_cast<std::size_t>(n) * n + v] = v;
      for (int u = 0; u < n; ++u) {
        if (s->has_edge(u, v)) r.table[static_cast<std::size_t>(u) * n + v] = v;
      }
    }
  } else if (auto* sp = sys.spacing()) {
    r.states = sp->automaton_states();
    r.start = 0;
    r.alphabet = 2;
    r.table.resize(static_cast<std::size_t>(r.states) * 2);
    for (int q = 0; q < r.states; ++q) {
      r.table[static_cast<std::size_t>(q) * 2] = sp->step(q, 0);
      r.table[static_cast<std::size_t>(q) * 2 + 1] = sp->step(q, 1);
    }
  } else {
    throw CapabilityError("shift system required");
  }
  return r;
}

// One period of a periodic point: the shortest cycle through the smallest vertex that lies
// on a cycle (SFT), or the all-zero point (spacing shift).
Word periodic_block(const DynSystem& sys) {
  if (sys.spacing()) return {0};
  const Sft& s = *sys.sft();
  const int n = s.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (!s.alive(v)) continue;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    for (Sft::Mask m = s.successors(v); m; m &= m - 1) {
      int w = std::countr_zero(m);
      if (parent[w] < 0) {
        parent[w] = v;
        q.push(w);
      }
    }
    while (!q.empty() && parent[v] < 0) {
      int u = q.front();
      q.pop();
      for (Sft::Mask m = s.successors(u); m; m &= m - 1) {
        int w = std::countr_zero(m);
        if (parent[w] < 0) {
          parent[w] = u;
          q.push(w);
        }
      }
    }
    if (parent[v] < 0) continue;
    Word cycle{v};
    for (int u = parent[v]; u != v; u = parent[u]) cycle.push_back(u);
    std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
  }
  throw InvariantViolation("essential SFT without a cycle");
}

constexpr int kNeg = std::numeric_limits<int>::min() / 2;

}  // namespace

double default_epsilon(Int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return std::exp2(-std::log2(static_cast<double>(horizon)) / 4.0);
}

std::optional<double> shifted_distance(const Word& x, const Word& y, Int n) {
  const Int len = static_cast<Int>(std::min(x.size(), y.size()));
  for (Int j = n; j < len; ++j) {
    if (x[j] != y[j]) return std::ldexp(1.0, static_cast<int>(-(j - n)));
  }
  return std::nullopt;
}

PairEvidence evaluate_pair(const Word& x, const Word& y, double delta, double epsilon, Int horizon, std::string rule) {
  if (x == y) throw std::invalid_argument("diagonal pair: both points are the same");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const Int len = static_cast<Int>(std::min(x.size(), y.size()));
  if (horizon > len) throw std::invalid_argument("prefixes shorter than the horizon");
  PairEvidence e;
  e.x = x;
  e.y = y;
  e.rule = std::move(rule);
  e.horizon = horizon;
  e.epsilon = epsilon;
  e.delta = delta;
  std::vector<Int> next_diff(static_cast<std::size_t>(len + 1), len);
  for (Int j = len - 1; j >= 0; --j) next_diff[j] = x[j] != y[j] ? j : next_diff[j + 1];
  for (Int n = 0; n < horizon; ++n) {
    if (next_diff[n] >= len) continue;
    const double d = std::ldexp(1.0, static_cast<int>(-(next_diff[n] - n)));
    if (d < epsilon) e.close_times.push_back(n);
    if (d > delta) e.far_times.push_back(n);
    e.liminf_proxy = std::min(e.liminf_proxy, d);
    e.limsup_proxy = std::max(e.limsup_proxy, d);
  }
  return e;
}

bool recheck(const PairEvidence& e) {
  std::vector<Int> close, far;
  for (Int n = 0; n < e.horizon; ++n) {
    auto d = shifted_distance(e.x, e.y, n);
    if (!d) continue;
    if (*d < e.epsilon) close.push_back(n);
    if (*d > e.delta) far.push_back(n);
  }
  return close == e.close_times && far == e.far_times;
}

ScrambledSearch find_scrambled_pair(const DynSystem& sys, double delta, Int horizon, std::optional<double> epsilon) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (auto* f = sys.finite_map()) {
    for (int x = 0; x < f->size(); ++x) {
      for (int y = x + 1; y < f->size(); ++y) {
        auto c = classify_pair(*f, x, y);
        if (c.proximal && c.distal_infinitely_often) {
          Verdict v = Verdict::holds(true, "scrambled pair of a finite map");
          v.witness = {x, y};
          v.witness_kind = "pair";
          return {v, std::nullopt};
        }
      }
    }
    return {Verdict::fails({}, "exhaustive", true, "no pair of points is both proximal and separated infinitely often"),
            std::nullopt};
  }
  const double eps = epsilon.value_or(default_epsilon(horizon));
  const Reader rd = make_reader(sys);
  const Word block = periodic_block(sys);
  Word x(static_cast<std::size_t>(horizon));
  for (Int i = 0; i < horizon; ++i) x[i] = block[static_cast<std::size_t>(i) % block.size()];
  const Int len = horizon;

  // Stage j >= 1 occupies [2^j, 2^(j+1)): j - 1 agreeing symbols, then a disagreement block.
  struct Stage {
    Int agree_begin, block_begin, block_end;
  };
  std::vector<Stage> stages;
  for (Int j = 1; (Int{1} << j) < len; ++j) {
    const Int begin = Int{1} << j;
    const Int end = std::min(Int{1} << (j + 1), len);
    stages.push_back({begin, std::min(begin + j - 1, end), end});
  }

  Word y(x.begin(), x.begin() + std::min<Int>(2, len));
  int q = rd.start;
  for (int s : y) q = rd.step(q, s);
  std::vector<int> best;
  for (std::size_t si = 0; si < stages.size(); ++si) {
    const Stage& st = stages[si];
    for (Int i = st.agree_begin; i < st.block_begin; ++i) {
      y.push_back(x[i]);
      q = rd.step(q, x[i]);
    }
    if (q < 0) return {Verdict::unknown("rejoining the periodic orbit failed"), std::nullopt};
    if (st.block_begin == st.block_end) continue;
    // After the block, y must be able to read the next agreement segment of x.
    const Int follow_end = si + 1 < stages.size() ? stages[si + 1].block_begin : st.block_end;
    const Int width = st.block_end - st.block_begin;
    const int S = rd.states;
    best.assign(static_cast<std::size_t>((width + 1) * S), kNeg);
    for (int r = 0; r < S; ++r) {
      int t = r;
      for (Int i = st.block_end; i < follow_end && t >= 0; ++i) t = rd.step(t, x[i]);
      if (t >= 0) best[static_cast<std::size_t>(width * S + r)] = 0;
    }
    for (Int i = width - 1; i >= 0; --i) {
      const int xs = x[st.block_begin + i];
      for (int r = 0; r < S; ++r) {
        int b = kNeg;
        for (int s = 0; s < rd.alphabet; ++s) {
          int t = rd.step(r, s);
          if (t < 0) continue;
          int cand = best[static_cast<std::size_t>((i + 1) * S + t)];
          if (cand == kNeg) continue;
          b = std::max(b, cand + (s != xs));
        }
        best[static_cast<std::size_t>(i * S + r)] = b;
      }
    }
    if (best[static_cast<std::size_t>(q)] < 1) {
      return {Verdict::unknown("no admissible disagreement block at position " + std::to_string(st.block_begin)),
              std::nullopt};
    }
    for (Int i = 0; i < width; ++i) {
      const int xs = x[st.block_begin + i];
      const int target = best[static_cast<std::size_t>(i * S + q)];
      for (int s = 0; s < rd.alphabet; ++s) {
        int t = rd.step(q, s);
        if (t < 0) continue;
        int cand = best[static_cast<std::size_t>((i + 1) * S + t)];
        if (cand != kNeg && cand + (s != xs) == target) {
          y.push_back(s);
          q = t;
          break;
        }
      }
    }
  }
  if (x == y) return {Verdict::unknown("horizon too small to separate the orbits"), std::nullopt};
  PairEvidence ev = evaluate_pair(x, y, delta, eps, horizon, "doubling-blocks");
  if (!ev.scrambled()) return {Verdict::unknown("horizon too small to exhibit both events"), ev};
  if (!recheck(ev)) throw InvariantViolation("scrambled pair evidence does not recheck");
  Verdict v = Verdict::holds(false, "evidence at horizon " + std::to_string(horizon));
  return {v, ev};
}

std::vector<std::pair<int, int>> proximal_pairs(const FiniteMap& f) {
  const int n = f.size();
  std::vector<int> far(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) far[x] = f.iterate(x, n);
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (far[x] == far[y]) out.emplace_back(x, y);
    }
  }
  return out;
}

PairClass classify_pair(const FiniteMap& f, int x, int y) {
  if (x == y) throw std::invalid_argument("diagonal pair: both points are the same");
  // Follow the pair orbit until it repeats, then inspect its cycle.
  std::map<std::pair<int, int>, int> seen;
  std::vector<std::pair<int, int>> orbit;
  std::pair<int, int> cur{x, y};
  while (!seen.count(cur)) {
    seen[cur] = static_cast<int>(orbit.size());
    orbit.push_back(cur);
    cur = {f(cur.first), f(cur.second)};
  }
  PairClass c{false, false};
  for (std::size_t i = static_cast<std::size_t>(seen[cur]); i < orbit.size(); ++i) {
    if (orbit[i].first == orbit[i].second) {
      c.proximal = true;
    } else {
      c.distal_infinitely_often = true;
    }
  }
  return c;
}

SensitivitySearch sensitivity_witness(const DynSystem& sys, double delta, Int horizon, int depth) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (sys.finite_map()) {
    return {Verdict::fails({0}, "point", true, "a point of a finite space is an open set"), {}};
  }
  const Reader rd = make_reader(sys);
  const bool exact = sys.exact_lane();
  const Int e = sys.exponent();
  SensitivitySearch out;
  for (const auto& c : enumerate_cylinders(sys, depth)) {
    Word w = c.symbols;
    int q = rd.start;
    for (int s : w) q = rd.step(q, s);
    std::vector<char> visited(static_cast<std::size_t>(rd.states), 0);
    bool branched = false;
    // Follow the forced continuation until two symbols are possible.
    while (static_cast<Int>(w.size()) < horizon * e) {
      std::vector<int> options;
      for (int s = 0; s < rd.alphabet; ++s) {
        if (rd.step(q, s) >= 0) options.push_back(s);
      }
      if (options.size() >= 2) {
        SensitivityWitness wit;
        wit.cylinder = c.symbols;
        wit.x = w;
        wit.x.push_back(options[0]);
        wit.y = w;
        wit.y.push_back(options[1]);
        // Under f^e the two points are at distance 1 once e*t passes the split.
        wit.time = static_cast<Int>(w.size()) / e;
        out.witnesses.push_back(std::move(wit));
        branched = true;
        break;
      }
      if (options.empty()) throw InvariantViolation("shift word without an admissible continuation");
      if (visited[q]) break;
      visited[q] = 1;
      w.push_back(options[0]);
      q = rd.step(q, options[0]);
    }
    if (!branched) {
      const bool forever = static_cast<Int>(w.size()) < horizon * e;
      if (!forever) {
        out.verdict = Verdict::unknown("no split before the horizon");
        return out;
      }
      out.verdict = Verdict::fails({}, "cylinder", exact, "every point of the cylinder has the same orbit");
      out.verdict.cylinders = {c.symbols};
      out.witnesses.clear();
      return out;
    }
  }
  out.verdict = Verdict::holds(exact, "cylinders of depth <= " + std::to_string(depth) + ", horizon " + std::to_string(horizon));
  return out;
}

}  // namespace mtv
