#include <catch_amalgamated.hpp>

#include "multitrans/corpus.hpp"
#include "multitrans/errors.hpp"
#include "multitrans/verify.hpp"
#include "oracles.hpp"

using namespace mtv;

namespace {

Sft golden() { return Sft(2, {{0, 0}, {0, 1}, {1, 0}}); }
Sft two_cycle() { return Sft(2, {{0, 1}, {1, 0}}); }

std::vector<Int> range(Int lo, Int hi) {
  std::vector<Int> v;
  for (Int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

bool no_disagreement(const AgreementReport& r) { return r.count(Agreement::Disagree) == 0; }

}  // namespace

TEST_CASE("compare") {
  const Verdict h = Verdict::holds(), f = Verdict::fails({1}, "x"), u = Verdict::unknown("bound");
  CHECK(compare(h, h) == Agreement::Agree);
  CHECK(compare(f, f) == Agreement::Agree);
  CHECK(compare(h, f) == Agreement::Disagree);
  CHECK(compare(u, h) == Agreement::Inconclusive);
  CaseReport c;
  c.agreement = Agreement::Disagree;
  CHECK(c.fatal());
  c.exact_lane = false;
  CHECK_FALSE(c.fatal());
}

TEST_CASE("thm42 examples") {
  const auto one = verify_thm_42(FiniteMap({0}), IntVector{2, 3, 4});
  REQUIRE(one.cases.size() == 1);
  CHECK(one.cases[0].side_l.is_holds());
  CHECK(one.cases[0].side_r.is_holds());
  CHECK(one.all_agree());

  const auto c2 = verify_thm_42(two_cycle(), IntVector{1, 2});
  const CaseReport& c = c2.cases[0];
  CHECK(c.side_l.is_fails());
  CHECK(c.side_r.is_fails());
  CHECK(c.agreement == Agreement::Agree);
  CHECK(c.side_r.cylinders.size() == 2);
  // the refuting translate is rechecked against the offending hitting set
  const IndexSet n = hitting(two_cycle(), Cylinder{c.side_r.cylinders[0]}, Cylinder{c.side_r.cylinders[1]});
  CHECK(member_exact(n, IntVector{1, 2}).witness == c.side_r.witness);

  const auto g = verify_thm_42(golden(), IntVector{1, 2}, 3);
  CHECK(g.cases[0].side_l.is_holds());
  CHECK(g.cases[0].side_r.is_holds());
}

TEST_CASE("thm42 on small exact corpora") {
  CorpusOptions opt;
  std::vector<DynSystem> systems;
  for (auto& f : all_finite_maps(4)) systems.emplace_back(f);
  for (auto& s : irreducible_sfts(3)) systems.emplace_back(s);
  const auto rep = run_thm42_corpus(systems, opt);
  CHECK(rep.total() == systems.size() * 84);
  CHECK(rep.all_agree());
  CHECK_FALSE(rep.any_fatal());
}

TEST_CASE("thm42 on spacing shifts stays in the bounded lane") {
  const auto r = verify_thm_42(SpacingShift(range(1, 64), 256), IntVector{1, 2}, 2, {16, 0, 256});
  CHECK_FALSE(r.cases[0].exact_lane);
  CHECK(r.cases[0].side_l.is_holds());
  CHECK_FALSE(r.cases[0].side_l.exact);
  CHECK(r.cases[0].agreement != Agreement::Disagree);
}

TEST_CASE("lemma32 examples") {
  const auto full = verify_lemma_32(Sft::full_shift(2), 2, 3);
  CHECK(full.all_agree());
  for (const auto& c : full.cases) {
    if (c.agreement == Agreement::Agree && c.parameter.rfind("MT<=", 0) == 0 && c.parameter.find("=>") == std::string::npos) {
      CHECK(c.side_l.is_holds());
      CHECK(c.side_r.is_holds());
    }
  }
  const auto c3 = verify_lemma_32(FiniteMap::cycle(3), 2, 2);
  REQUIRE_FALSE(c3.cases.empty());
  CHECK(c3.cases[0].side_l.is_fails());
  CHECK(c3.cases[0].side_r.is_fails());
  CHECK(c3.cases[0].agreement == Agreement::Agree);

  const auto c2 = verify_lemma_32(FiniteMap::cycle(2), 2, 3);
  CHECK(c2.cases[0].side_l.is_fails());
  CHECK(c2.cases[0].side_r.is_fails());
  CHECK(no_disagreement(c2));
}

TEST_CASE("lemma32 and prop33 agree on small exact corpora") {
  for (const auto& f : all_finite_maps(4)) {
    for (Int n = 2; n <= 3; ++n) REQUIRE(no_disagreement(verify_lemma_32(f, n, 3)));
    REQUIRE(no_disagreement(verify_prop_33(f)));
  }
  for (const auto& s : irreducible_sfts(3)) {
    REQUIRE(no_disagreement(verify_lemma_32(s, 2, 3)));
    REQUIRE(no_disagreement(verify_prop_33(s)));
  }
}

TEST_CASE("prop33 examples") {
  const auto full = verify_prop_33(Sft::full_shift(2));
  REQUIRE(full.cases.size() == 3);
  for (const auto& c : full.cases) {
    CHECK(c.side_l.is_holds());
    CHECK(c.side_r.is_holds());
  }
  const auto c3 = verify_prop_33(FiniteMap::cycle(3));
  for (const auto& c : c3.cases) {
    CHECK(c.side_l.is_fails());
    CHECK(c.side_r.is_fails());
  }
  const auto g = verify_prop_33(golden());
  CHECK(g.all_agree());
  CHECK(g.cases[0].side_l.is_holds());
}

TEST_CASE("thm53 claim") {
  const auto full = verify_thm_53_claim(Sft::full_shift(2), {1, 2, 3, 4}, ESystemWitness::cycle(3));
  REQUIRE(full.cases.size() == 3);
  for (const auto& c : full.cases) {
    CHECK(c.side_l.is_holds());
    CHECK(c.side_r.is_holds());
    CHECK(c.agreement == Agreement::Agree);
  }
  CHECK(full.note.find("finite prefix") != std::string::npos);

  const auto point = verify_thm_53_claim(Sft::full_shift(2), {1, 2}, ESystemWitness::cycle(1));
  CHECK(point.cases[0].side_r.is_holds());

  const auto skip = verify_thm_53_claim(two_cycle(), {1, 2, 3}, ESystemWitness::cycle(3));
  REQUIRE(skip.cases.size() == 1);
  CHECK(skip.cases[0].agreement == Agreement::Skipped);

  // |B| <= size of the E-system: the pigeonhole device does not apply
  const auto small = verify_thm_53_claim(golden(), {1, 2}, ESystemWitness::cycle(4));
  CHECK(small.cases.back().agreement == Agreement::Skipped);
  CHECK(small.cases[0].agreement == Agreement::Agree);

  CHECK_THROWS_AS(verify_thm_53_claim(golden(), {1}, ESystemWitness::cycle(2)), std::invalid_argument);
}

TEST_CASE("tower transitive point") {
  CHECK(verify_tower_transitive_point(FiniteMap::cycle(2), 2).all_agree());
  CHECK(verify_tower_transitive_point(FiniteMap::cycle(3), 3).all_agree());
  CHECK(verify_tower_transitive_point(FiniteMap({0}), 5).all_agree());
  CHECK_THROWS_AS(verify_tower_transitive_point(FiniteMap::identity(2), 2), std::invalid_argument);
}

TEST_CASE("Furstenberg instance on mixing SFTs with at most 3 vertices") {
  for (const auto& s : irreducible_sfts(3)) {
    if (s.period() != 1) continue;
    const HittingCatalog cat(s, 2);
    for (int n = 1; n <= 4; ++n) REQUIRE(a_transitive(cat, IntVector::ones(n)).is_holds());
  }
}

TEST_CASE("search_separation") {
  SeparationSpace full;
  full.gap_sets = {range(1, 64)};
  full.horizon = 128;
  const auto f = search_separation(full, "t&wm&t12");
  REQUIRE(f.size() == 1);
  CHECK(f[0].matches);
  for (const auto& [k, v] : f[0].profile) {
    CHECK(v.is_holds());
    CHECK_FALSE(v.exact);
  }

  SeparationSpace evens;
  evens.gap_sets = {{2, 4, 6, 8, 10, 12}};
  evens.horizon = 128;
  const auto e = search_separation(evens, "!t12");
  REQUIRE(e.size() == 1);
  CHECK(e[0].profile.at("t12").is_fails());
  CHECK(e[0].matches);

  SeparationSpace rnd;
  rnd.count = 100;
  rnd.horizon = 512;
  const auto a = search_separation(rnd, "wm&!t12");
  const auto b = search_separation(rnd, "wm&!t12");
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].gaps == b[i].gaps);
    REQUIRE(a[i].matches == b[i].matches);
    for (const auto& [k, v] : a[i].profile) REQUIRE(v.outcome == b[i].profile.at(k).outcome);
  }
  CHECK_THROWS_AS(search_separation(rnd, "mixing"), ParseError);
}
