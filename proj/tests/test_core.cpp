#include <catch_amalgamated.hpp>

#include <numeric>

#include "multitrans/classify.hpp"
#include "multitrans/corpus.hpp"
#include "multitrans/errors.hpp"
#include "multitrans/systems.hpp"
#include "oracles.hpp"

using namespace mtv;

namespace {

Sft golden() { return Sft(2, {{0, 0}, {0, 1}, {1, 0}}); }
Sft two_cycle() { return Sft(2, {{0, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("IntVector parsing and helpers") {
  CHECK(IntVector::parse("1,2,3") == IntVector{1, 2, 3});
  CHECK(IntVector::parse(" 4 ") == IntVector{4});
  CHECK_THROWS_AS(IntVector::parse("1,,2"), ParseError);
  CHECK_THROWS_AS(IntVector::parse("x"), ParseError);
  CHECK_THROWS_AS(IntVector({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IntVector(std::vector<Int>{}), std::invalid_argument);
  CHECK(IntVector::iota(3) == IntVector{1, 2, 3});
  CHECK(IntVector::ones(2) == IntVector{1, 1});
  CHECK(IntVector{2, 5}.str() == "(2,5)");
  CHECK(enumerate_vectors(3, 4).size() == 4 + 16 + 64);
  CHECK(enumerate_vectors(2, 2).front() == IntVector{1});
  CHECK(enumerate_vectors(2, 2).back() == IntVector{2, 2});
}

TEST_CASE("FiniteMap rejects entries outside its domain") {
  CHECK_THROWS_AS(FiniteMap({0, 2}), InvalidSystem);
  CHECK_THROWS_AS(FiniteMap({-1}), InvalidSystem);
  CHECK_THROWS_AS(FiniteMap(std::vector<int>{}), InvalidSystem);
}

TEST_CASE("FiniteMap iterate composes (property)") {
  auto g = oracle::rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const FiniteMap f = oracle::random_map(g, oracle::uniform(g, 1, 8));
    const int x = oracle::uniform(g, 0, f.size() - 1);
    const Int m = oracle::uniform(g, 0, 40), n = oracle::uniform(g, 0, 40);
    CHECK(f.iterate(x, 0) == x);
    CHECK(f.iterate(x, m + n) == f.iterate(f.iterate(x, m), n));
    CHECK(f.iterate(x, m) == oracle::step(f, x, m));
  }
}

TEST_CASE("FiniteMap: transitive iff every point is a transitive point") {
  for (const auto& f : all_finite_maps(5)) {
    bool every = true, some = false;
    for (int x = 0; x < f.size(); ++x) {
      every = every && f.is_transitive_point(x);
      some = some || f.is_transitive_point(x);
    }
    const bool trans = oracle::finite_transitive(f.table());
    REQUIRE(trans == every);
    REQUIRE(trans == f.is_single_cycle());
    REQUIRE(classify(f).transitive.is_holds() == trans);
    if (trans) REQUIRE(some);
  }
}

TEST_CASE("SFT pruning keeps the essential graph") {
  // 2 -> 0 has no incoming edge into 2; 1 is a dead end.
  Sft s(3, {{0, 0}, {0, 1}, {2, 0}});
  CHECK(s.alive(0));
  CHECK_FALSE(s.alive(1));
  CHECK_FALSE(s.alive(2));
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!s.alive(v)) continue;
    CHECK((s.successors(v) & s.alive_mask()) != 0);
  }
  CHECK_THROWS_AS(Sft(2, {}), InvalidSystem);
  CHECK_THROWS_AS(Sft(2, {{0, 1}}), InvalidSystem);
  CHECK_THROWS_AS(Sft(2, {{0, 2}}), InvalidSystem);
}

TEST_CASE("SFT period equals gcd of return times, cyclic classes advance along edges") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 1; bits < limit; ++bits) {
      std::optional<Sft> s;
      try {
        s.emplace(Sft::from_adjacency(n, bits));
      } catch (const InvalidSystem&) {
        continue;
      }
      for (int c = 0; c < static_cast<int>(s->components().size()); ++c) {
        const int v = s->components()[c].front();
        Int g = 0;
        for (Int l = 1; l <= 2 * n * n + 2; ++l) {
          if (oracle::walk(*s, v, v, l)) g = std::gcd(g, l);
        }
        REQUIRE(s->component_period(c) == g);
      }
      if (!s->irreducible()) continue;
      const int p = s->period();
      for (auto [u, w] : s->edges()) REQUIRE(s->cyclic_class(w) == (s->cyclic_class(u) + 1) % p);
    }
  }
}

TEST_CASE("classify examples") {
  SECTION("3-cycle") {
    const auto rec = classify(FiniteMap::cycle(3));
    CHECK(rec.transitive.is_holds());
    CHECK(rec.weakly_mixing.is_fails());
    CHECK(rec.totally_transitive.is_fails());
    CHECK(rec.dense_small_periodic_sets.is_holds());
  }
  SECTION("full 2-shift") {
    const auto rec = classify(Sft::full_shift(2));
    CHECK(rec.mixing.is_holds());
    CHECK(rec.weakly_mixing.is_holds());
    CHECK(rec.weak_mixing_cross_checked);
  }
  SECTION("golden mean") {
    const Sft s = golden();
    const auto rec = classify(s);
    CHECK(rec.transitive.is_holds());
    REQUIRE(rec.period.has_value());
    CHECK(*rec.period == 1);
    CHECK(rec.mixing.is_holds());
    CHECK(rec.hy_candidate.is_holds());
    // cycle lengths 1 and 2 by path DP up to length 20
    Int g = 0;
    for (Int l = 1; l <= 20; ++l) {
      if (oracle::walk(s, 0, 0, l)) g = std::gcd(g, l);
    }
    CHECK(g == 1);
  }
  SECTION("2-cycle SFT is transitive but not mixing") {
    const auto rec = classify(two_cycle());
    CHECK(rec.transitive.is_holds());
    CHECK(rec.mixing.is_fails());
    CHECK(rec.weakly_mixing.is_fails());
    CHECK(*rec.period == 2);
  }
  SECTION("reducible SFT") {
    const auto rec = classify(Sft(2, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK(rec.transitive.is_fails());
    CHECK(rec.dense_small_periodic_sets.is_fails());
  }
}

TEST_CASE("SFT weak mixing agrees with the square graph on small graphs") {
  for (const auto& s : irreducible_sfts(3)) {
    const auto rec = classify(s);
    REQUIRE(rec.weakly_mixing.is_holds() == square_graph_strongly_connected(s));
    REQUIRE(rec.weakly_mixing.is_holds() == (s.period() == 1));
  }
}

TEST_CASE("power") {
  CHECK(*power(FiniteMap::cycle(3), 3).finite_map() == FiniteMap::identity(3));
  CHECK(power(FiniteMap::cycle(3), 2).finite_map()->table() == std::vector<int>{2, 0, 1});
  const DynSystem g2 = power(golden(), 2);
  CHECK(g2.exponent() == 2);
  CHECK(g2.sft() != nullptr);
  CHECK(oracle::walk(golden(), 1, 1, 2));
  CHECK_THROWS_AS(power(golden(), 0), std::invalid_argument);
}

TEST_CASE("vector_system materialization") {
  const FiniteMap p = vector_system(FiniteMap::cycle(3), IntVector{1, 1}).materialize();
  CHECK(p.size() == 9);
  int cycles = 0;
  std::vector<char> seen(9, 0);
  for (int x = 0; x < 9; ++x) {
    if (seen[x]) continue;
    ++cycles;
    int y = x;
    int len = 0;
    do {
      seen[y] = 1;
      y = p(y);
      ++len;
    } while (y != x);
    CHECK(len == 3);
  }
  CHECK(cycles == 3);

  const FiniteMap q = vector_system(FiniteMap::cycle(2), IntVector{1, 2}).materialize();
  CHECK(q.size() == 4);
  CHECK_FALSE(oracle::finite_transitive(q.table()));
  CHECK_THROWS_AS(vector_system(Sft::full_shift(2), IntVector{1, 2, 3}).materialize(), FactoredFormRequired);
  CHECK_THROWS_AS(vector_system(FiniteMap::cycle(10), IntVector{1, 1, 1, 1, 1, 1, 1}).materialize(), FactoredFormRequired);
}

TEST_CASE("vector_system coordinate independence (property)") {
  auto g = oracle::rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteMap f = oracle::random_map(g, oracle::uniform(g, 1, 5));
    std::vector<Int> a;
    const int r = oracle::uniform(g, 1, 3);
    for (int i = 0; i < r; ++i) a.push_back(oracle::uniform(g, 1, 4));
    const ProductHandle h = vector_system(f, IntVector(a));
    const FiniteMap p = h.materialize();
    CHECK(p.table() == oracle::product_table(f, a));
    for (int s = 0; s < p.size(); ++s) {
      CHECK(h.encode(h.decode(s)) == s);
      for (Int n = 0; n <= 20; n += 7) {
        const auto c = h.decode(p.iterate(s, n));
        const auto c0 = h.decode(s);
        for (int i = 0; i < r; ++i) CHECK(c[i] == f.iterate(c0[i], n * a[i]));
      }
    }
  }
}

TEST_CASE("tower") {
  const FiniteMap t = tower(FiniteMap::cycle(2), 2);
  CHECK(t.is_single_cycle());
  CHECK(t.size() == 4);
  CHECK(t.is_transitive_point(0));
  CHECK(tower(FiniteMap({1, 1, 0}), 1) == FiniteMap({1, 1, 0}));
  CHECK(tower(FiniteMap::cycle(3), 2).is_single_cycle());
  CHECK(tower(FiniteMap::cycle(3), 2).size() == 6);

  auto g = oracle::rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteMap base = oracle::random_map(g, oracle::uniform(g, 1, 6));
    const int k = oracle::uniform(g, 1, 5);
    const FiniteMap h = tower(base, k);
    for (int x = 0; x < base.size(); ++x) CHECK(h.iterate(x * k, k) == base(x) * k);
  }
}

TEST_CASE("spacing shift admissibility") {
  const SpacingShift s({2, 3}, 32);
  CHECK(s.admissible({1, 0, 1, 0, 0, 1}));
  CHECK_FALSE(s.admissible({1, 1}));
  CHECK_FALSE(s.admissible({1, 0, 0, 0, 1}));
  CHECK(s.admissible({0, 0, 0, 0}));
  CHECK_FALSE(s.admissible({2}));
  CHECK_THROWS_AS(SpacingShift({0}, 10), InvalidSystem);

  // closed under subwords
  auto g = oracle::rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    Word w;
    const int len = oracle::uniform(g, 1, 14);
    for (int i = 0; i < len; ++i) w.push_back(oracle::uniform(g, 0, 3) == 0);
    if (!s.admissible(w)) continue;
    const int a = oracle::uniform(g, 0, len - 1);
    const int b = oracle::uniform(g, a + 1, len);
    CHECK(s.admissible(Word(w.begin() + a, w.begin() + b)));
  }
}

TEST_CASE("cylinder validation") {
  CHECK_NOTHROW(validate_cylinder(golden(), Cylinder{{0, 1, 0}}));
  CHECK_THROWS_AS(validate_cylinder(golden(), Cylinder{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_cylinder(FiniteMap::cycle(3), Cylinder{{3}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_cylinder(FiniteMap::cycle(3), Cylinder{{}}), std::invalid_argument);
  CHECK(enumerate_cylinders(FiniteMap::cycle(3), 2).size() == 6);
  CHECK(enumerate_cylinders(golden(), 3).size() == 2 + 3 + 5);
}

TEST_CASE("E-system witness carries an invariant full-support measure") {
  for (int n = 1; n <= 6; ++n) {
    const auto e = ESystemWitness::cycle(n);
    CHECK(e.measure_invariant());
    CHECK(e.measure({0}) == Catch::Approx(1.0 / n));
  }
  CHECK_THROWS_AS(ESystemWitness(FiniteMap({0, 0})), InvalidSystem);
}

TEST_CASE("describe") {
  CHECK(DynSystem(FiniteMap::cycle(3)).describe() == "finite_map[1,2,0]");
  CHECK(DynSystem(golden()).describe() == "sft(2)[0>0,0>1,1>0]");
}
