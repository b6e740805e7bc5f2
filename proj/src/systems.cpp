#include "multitrans/systems.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "multitrans/errors.hpp"

namespace mtv {

// ---------------------------------------------------------------------------
// FiniteMap

FiniteMap::FiniteMap(std::vector<int> table) : table_(std::move(table)) {
  if (table_.empty()) throw InvalidSystem("finite map needs at least one point");
  const int n = size();
  for (int y : table_) {
    if (y < 0 || y >= n) throw InvalidSystem("finite map entry " + std::to_string(y) + " outside 0.." + std::to_string(n - 1));
  }
}

FiniteMap FiniteMap::cycle(int size) {
  std::vector<int> t(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) t[i] = (i + 1) % size;
  return FiniteMap(std::move(t));
}

FiniteMap FiniteMap::identity(int size) {
  std::vector<int> t(static_cast<std::size_t>(size));
  std::iota(t.begin(), t.end(), 0);
  return FiniteMap(std::move(t));
}

int FiniteMap::iterate(int x, Int n) const {
  if (n < 0) throw std::invalid_argument("negative iterate");
  auto shape = orbit_shape(x);
  if (n > shape.preperiod + shape.period) {
    n = shape.preperiod + (n - shape.preperiod) % shape.period;
  }
  for (Int i = 0; i < n; ++i) x = table_[x];
  return x;
}

FiniteMap::OrbitShape FiniteMap::orbit_shape(int x) const {
  std::vector<int> seen(table_.size(), -1);
  int t = 0;
  while (seen[x] < 0) {
    seen[x] = t++;
    x = table_[x];
  }
  return {seen[x], t - seen[x]};
}

bool FiniteMap::is_periodic(int x) const { return orbit_shape(x).preperiod == 0; }

bool FiniteMap::is_single_cycle() const {
  auto s = orbit_shape(0);
  return s.preperiod == 0 && s.period == size();
}

bool FiniteMap::is_transitive_point(int x) const {
  std::vector<char> seen(table_.size(), 0);
  int count = 0;
  while (!seen[x]) {
    seen[x] = 1;
    ++count;
    x = table_[x];
  }
  return count == size();
}

FiniteMap FiniteMap::power(Int k) const {
  if (k < 1) throw std::invalid_argument("power exponent must be >= 1");
  std::vector<int> t(table_.size());
  for (int x = 0; x < size(); ++x) t[x] = iterate(x, k);
  return FiniteMap(std::move(t));
}

// ---------------------------------------------------------------------------
// Sft

Sft::Sft(int vertices, const std::vector<std::pair<int, int>>& edges) : n_(vertices) {
  if (vertices < 1) throw InvalidSystem("SFT needs at least one vertex");
  if (vertices > kMaxVertices) throw InvalidSystem("SFT supports at most 64 vertices");
  succ_.assign(static_cast<std::size_t>(n_), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InvalidSystem("SFT edge endpoint out of range");
    succ_[u] |= Mask{1} << v;
  }
  alive_ = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
  bool changed = true;
  while (changed) {
    changed = false;
    Mask has_in = 0;
    for (int u = 0; u < n_; ++u) {
      if (alive(u)) has_in |= succ_[u] & alive_;
    }
    for (int u = 0; u < n_; ++u) {
      if (!alive(u)) continue;
      if ((succ_[u] & alive_) == 0 || !((has_in >> u) & 1U)) {
        alive_ &= ~(Mask{1} << u);
        changed = true;
      }
    }
  }
  for (int u = 0; u < n_; ++u) succ_[u] = alive(u) ? (succ_[u] & alive_) : 0;
  if (alive_ == 0) throw InvalidSystem("SFT has no bi-infinite path: graph prunes to empty");
  analyze();
}

Sft Sft::full_shift(int symbols) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < symbols; ++u) {
    for (int v = 0; v < symbols; ++v) e.emplace_back(u, v);
  }
  return Sft(symbols, e);
}

Sft Sft::from_adjacency(int vertices, std::uint64_t bits) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < vertices; ++u) {
    for (int v = 0; v < vertices; ++v) {
      if ((bits >> (u * vertices + v)) & 1U) e.emplace_back(u, v);
    }
  }
  return Sft(vertices, e);
}

std::vector<std::pair<int, int>> Sft::edges() const {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (has_edge(u, v)) e.emplace_back(u, v);
    }
  }
  return e;
}

bool Sft::admissible(const Word& w) const {
  if (w.empty()) return false;
  for (int s : w) {
    if (s < 0 || s >= n_ || !alive(s)) return false;
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!has_edge(w[i], w[i + 1])) return false;
  }
  return true;
}

void Sft::analyze() {
  // Tarjan on the surviving graph; components reported in order of their smallest vertex.
  std::vector<int> index(static_cast<std::size_t>(n_), -1), low(static_cast<std::size_t>(n_), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> found;
  int counter = 0;
  auto strongconnect = [&](auto&& self, int v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (Mask m = succ_[v]; m; m &= m - 1) {
      int w = std::countr_zero(m);
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> c;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        c.push_back(w);
      } while (w != v);
      std::sort(c.begin(), c.end());
      found.push_back(std::move(c));
    }
  };
  for (int v = 0; v < n_; ++v) {
    if (alive(v) && index[v] < 0) strongconnect(strongconnect, v);
  }
  std::sort(found.begin(), found.end());
  sccs_ = std::move(found);
  scc_of_.assign(static_cast<std::size_t>(n_), -1);
  for (std::size_t c = 0; c < sccs_.size(); ++c) {
    for (int v : sccs_[c]) scc_of_[v] = static_cast<int>(c);
  }

  // Period and cyclic classes from BFS levels: p = gcd(level[u] + 1 - level[v]) over
  // edges inside the component.
  class_.assign(static_cast<std::size_t>(n_), 0);
  scc_period_.assign(sccs_.size(), 0);
  std::vector<int> level(static_cast<std::size_t>(n_), -1);
  for (std::size_t c = 0; c < sccs_.size(); ++c) {
    const int root = sccs_[c].front();
    std::queue<int> q;
    level[root] = 0;
    q.push(root);
    int g = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (Mask m = succ_[u]; m; m &= m - 1) {
        int v = std::countr_zero(m);
        if (scc_of_[v] != static_cast<int>(c)) continue;
        if (level[v] < 0) {
          level[v] = level[u] + 1;
          q.push(v);
        } else {
          g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
        }
      }
    }
    scc_period_[c] = g;
    for (int v : sccs_[c]) class_[v] = g > 0 ? level[v] % g : 0;
  }
}

int Sft::period() const {
  if (!irreducible()) throw std::logic_error("period is defined for irreducible SFTs");
  return scc_period_[0];
}

bool Sft::reaches(int s, int t) const {
  Mask seen = 0;
  Mask frontier = succ_[s];
  while (frontier & ~seen) {
    seen |= frontier;
    Mask next = 0;
    for (Mask m = frontier; m; m &= m - 1) next |= succ_[std::countr_zero(m)];
    frontier = next & ~seen;
  }
  return (seen >> t) & 1U;
}

IndexSet Sft::walk_lengths(int s, int t) const {
  if (!alive(s) || !alive(t)) throw std::invalid_argument("walk_lengths: vertex not in the SFT");
  if (irreducible()) return walk_lengths_primitive(s, t);
  return walk_lengths_by_iteration(s, t);
}

// Irreducible graph of period p. A^p restricted to a cyclic class is primitive, so with
// m = |class(t)| every length delta + p*j with j >= (m-1)^2 + 1 is realised, where delta is
// the class offset from s to t. Shorter lengths are decided by a reach-set DP.
IndexSet Sft::walk_lengths_primitive(int s, int t) const {
  const int p = period();
  const int delta = ((class_[t] - class_[s]) % p + p) % p;
  int m = 0;
  for (int v : sccs_[0]) m += class_[v] == class_[t];
  const Int wielandt = Int{m - 1} * (m - 1) + 1;
  const Int threshold = delta + p * wielandt;
  std::vector<Int> exc;
  Mask reach = Mask{1} << s;
  for (Int l = 1; l < threshold; ++l) {
    Mask next = 0;
    for (Mask r = reach; r; r &= r - 1) next |= succ_[std::countr_zero(r)];
    reach = next;
    if ((reach >> t) & 1U) exc.push_back(l);
  }
  return IndexSet::exact(std::move(exc), p, {delta % p}, std::max<Int>(threshold, 1));
}

// The reach sets R_l = {v : some walk of length l from s ends at v} form a deterministic
// sequence on subsets, so they are eventually periodic.
IndexSet Sft::walk_lengths_by_iteration(int s, int t) const {
  std::map<Mask, Int> first_seen;
  std::vector<Mask> seq{0};  // index 0 unused
  Mask reach = Mask{1} << s;
  constexpr Int kLimit = Int{1} << 20;
  for (Int l = 1;; ++l) {
    if (l > kLimit) throw CapabilityError("walk length sequence did not become periodic");
    Mask next = 0;
    for (Mask r = reach; r; r &= r - 1) next |= succ_[std::countr_zero(r)];
    reach = next;
    auto [it, inserted] = first_seen.emplace(reach, l);
    if (!inserted) {
      const Int start = it->second;
      const Int per = l - start;
      std::vector<Int> exc;
      for (Int j = 1; j < start; ++j) {
        if ((seq[j] >> t) & 1U) exc.push_back(j);
      }
      std::vector<Int> res;
      for (Int j = start; j < start + per; ++j) {
        if ((seq[j] >> t) & 1U) res.push_back(j % per);
      }
      std::sort(res.begin(), res.end());
      return IndexSet::exact(std::move(exc), per, std::move(res), start);
    }
    seq.push_back(reach);
  }
}

// ---------------------------------------------------------------------------
// SpacingShift

SpacingShift::SpacingShift(std::vector<Int> gaps, Int horizon) : horizon_(horizon) {
  if (horizon < 1) throw InvalidSystem("spacing shift horizon must be >= 1");
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  for (Int g : gaps) {
    if (g < 1) throw InvalidSystem("spacing shift gaps must be positive");
  }
  gaps_ = std::move(gaps);
  allowed_.assign(static_cast<std::size_t>(max_gap() + 1), 0);
  for (Int g : gaps_) allowed_[g] = 1;
}

bool SpacingShift::allowed_gap(Int g) const { return g >= 1 && g <= max_gap() && allowed_[g]; }

int SpacingShift::step(int state, int symbol) const {
  const int expired = automaton_states() - 1;
  auto since = [&](Int k) { return k >= max_gap() ? expired : static_cast<int>(k) + 1; };
  if (state < 0) return -1;
  if (symbol == 0) return state == 0 || state == expired ? state : since(state);
  if (symbol != 1 || state == expired) return -1;
  if (state != 0 && !allowed_gap(state)) return -1;
  return since(0);
}

int SpacingShift::run(const Word& w, int state) const {
  for (int c : w) {
    state = step(state, c);
    if (state < 0) return -1;
  }
  return state;
}

bool SpacingShift::admissible(const Word& w) const {
  if (w.empty() || static_cast<Int>(w.size()) > horizon_) return false;
  Int last = -1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0 && w[i] != 1) return false;
    if (w[i] == 1) {
      if (last >= 0 && !allowed_gap(static_cast<Int>(i) - last)) return false;
      last = static_cast<Int>(i);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DynSystem and cylinders

DynSystem::DynSystem(System base, Int exponent) : base_(std::move(base)), exponent_(exponent) {
  if (exponent < 1) throw std::invalid_argument("exponent must be >= 1");
  if (auto* f = std::get_if<FiniteMap>(&base_); f && exponent_ != 1) {
    base_ = f->power(exponent_);
    exponent_ = 1;
  }
}

std::string DynSystem::kind() const {
  if (finite_map()) return "finite_map";
  if (sft()) return "sft";
  return "spacing_shift";
}

std::string DynSystem::describe() const {
  std::string s;
  if (auto* f = finite_map()) {
    s = "finite_map[";
    for (int i = 0; i < f->size(); ++i) s += (i ? "," : "") + std::to_string((*f)(i));
    s += "]";
  } else if (auto* g = sft()) {
    s = "sft(" + std::to_string(g->vertex_count()) + ")[";
    bool firstEdge = true;
    for (auto [u, v] : g->edges()) {
      s += (firstEdge ? "" : ",") + std::to_string(u) + ">" + std::to_string(v);
      firstEdge = false;
    }
    s += "]";
  } else {
    auto* sp = spacing();
    s = "spacing[";
    for (std::size_t i = 0; i < sp->gaps().size(); ++i) s += (i ? "," : "") + std::to_string(sp->gaps()[i]);
    s += "]/L=" + std::to_string(sp->horizon());
  }
  if (exponent_ != 1) s += "^" + std::to_string(exponent_);
  return s;
}

void validate_cylinder(const DynSystem& sys, const Cylinder& c) {
  if (c.symbols.empty()) throw std::invalid_argument("cylinder must be non-empty");
  if (auto* f = sys.finite_map()) {
    for (int x : c.symbols) {
      if (x < 0 || x >= f->size()) throw std::invalid_argument("cylinder point outside the finite map");
    }
    return;
  }
  bool ok = sys.sft() ? sys.sft()->admissible(c.symbols) : sys.spacing()->admissible(c.symbols);
  if (!ok) throw std::invalid_argument("cylinder word is not admissible");
}

std::vector<Cylinder> enumerate_cylinders(const DynSystem& sys, int depth) {
  std::vector<Cylinder> out;
  if (depth < 1) return out;
  if (auto* f = sys.finite_map()) {
    const int n = f->size();
    for (int k = 1; k <= std::min(depth, n); ++k) {
      std::vector<int> idx(static_cast<std::size_t>(k));
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        out.push_back({idx});
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }
  std::vector<Word> layer;
  const int alphabet = sys.sft() ? sys.sft()->vertex_count() : 2;
  auto ok = [&](const Word& w) { return sys.sft() ? sys.sft()->admissible(w) : sys.spacing()->admissible(w); };
  for (int s = 0; s < alphabet; ++s) {
    if (ok(Word{s})) layer.push_back(Word{s});
  }
  for (int len = 1; len <= depth; ++len) {
    for (const auto& w : layer) out.push_back({w});
    if (len == depth) break;
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int s = 0; s < alphabet; ++s) {
        Word e = w;
        e.push_back(s);
        if (ok(e)) next.push_back(std::move(e));
      }
    }
    layer = std::move(next);
  }
  return out;
}

DynSystem power(const DynSystem& sys, Int k) {
  if (k < 1) throw std::invalid_argument("power exponent must be >= 1");
  return DynSystem(sys.base(), sys.exponent() * k);
}

// ---------------------------------------------------------------------------
// Products and towers

ProductHandle vector_system(const DynSystem& sys, const IntVector& a) { return ProductHandle(sys, a); }

Int ProductHandle::encode(const std::vector<int>& coords) const {
  const Int n = base_.finite_map()->size();
  Int s = 0;
  for (int c : coords) s = s * n + c;
  return s;
}

std::vector<int> ProductHandle::decode(Int state) const {
  const Int n = base_.finite_map()->size();
  std::vector<int> c(a_.size());
  for (std::size_t i = a_.size(); i-- > 0;) {
    c[i] = static_cast<int>(state % n);
    state /= n;
  }
  return c;
}

FiniteMap ProductHandle::materialize(Int state_cap) const {
  const FiniteMap* f = base_.finite_map();
  if (!f) throw FactoredFormRequired("only finite maps can be materialized; use factored form");
  Int states = 1;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    states *= f->size();
    if (states > state_cap) {
      throw FactoredFormRequired("product has more than " + std::to_string(state_cap) + " states; use factored form");
    }
  }
  std::vector<FiniteMap> powers;
  for (Int e : a_) powers.push_back(f->power(e));
  std::vector<int> table(static_cast<std::size_t>(states));
  for (Int s = 0; s < states; ++s) {
    auto c = decode(s);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = powers[i](c[i]);
    table[s] = static_cast<int>(encode(c));
  }
  return FiniteMap(std::move(table));
}

FiniteMap tower(const FiniteMap& base, int k) {
  if (k < 1) throw std::invalid_argument("tower height must be >= 1");
  std::vector<int> t(static_cast<std::size_t>(base.size()) * k);
  for (int x = 0; x < base.size(); ++x) {
    for (int i = 0; i < k; ++i) t[x * k + i] = i < k - 1 ? x * k + i + 1 : base(x) * k;
  }
  return FiniteMap(std::move(t));
}

ESystemWitness::ESystemWitness(FiniteMap cycle) : system_(std::move(cycle)) {
  if (!system_.is_single_cycle()) throw InvalidSystem("E-system witness must be a single cycle");
}

double ESystemWitness::measure(const std::vector<int>& points) const {
  std::vector<int> p = points;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return static_cast<double>(p.size()) / system_.size();
}

bool ESystemWitness::measure_invariant() const {
  for (int y = 0; y < system_.size(); ++y) {
    std::vector<int> pre;
    for (int x = 0; x < system_.size(); ++x) {
      if (system_(x) == y) pre.push_back(x);
    }
    if (measure(pre) != measure({y}) || measure({y}) <= 0.0) return false;
  }
  return true;
}

}  // namespace mtv
