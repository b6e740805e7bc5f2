#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "multitrans/families.hpp"
#include "multitrans/hitting.hpp"
#include "multitrans/systems.hpp"
#include "multitrans/verdict.hpp"

namespace mtv {

enum class Agreement { Agree, Disagree, Inconclusive, Skipped };

std::string to_string(Agreement a);

struct CaseReport {
  std::string system;
  std::string parameter;  // the vector a, or whatever the case is indexed by
  Verdict side_l;
  Verdict side_r;
  Agreement agreement = Agreement::Inconclusive;
  bool exact_lane = true;
  std::string detail;

  /// An exact-lane disagreement is a defect of this library.
  bool fatal() const { return exact_lane && agreement == Agreement::Disagree; }
};

struct AgreementReport {
  std::string theorem;
  std::vector<CaseReport> cases;
  std::string note;
  /// Agreeing cases that were tallied but not stored.
  std::size_t omitted_agree = 0;

  std::size_t total() const { return cases.size() + omitted_agree; }
  std::size_t count(Agreement a) const;
  bool all_agree() const { return count(Agreement::Agree) == total(); }
  bool any_fatal() const;
  void append(const AgreementReport& other);
};

/// Compares two verdicts that should coincide: both Holds or both Fails agree, Holds vs
/// Fails disagree, anything involving Unknown is inconclusive.
Agreement compare(const Verdict& l, const Verdict& r);

/// Memo of exact F[a] membership outcomes keyed by (modulus, residues, a); the exceptional
/// part and threshold never affect the outcome.
class MemberCache {
 public:
  bool holds(const IndexSet& exact, const IntVector& a);

 private:
  std::map<std::tuple<Int, std::vector<Int>, std::vector<Int>>, bool> memo_;
};

/// Side L: a_transitive. Side R: every hitting set of the catalog lies in F[a].
class Thm42Runner {
 public:
  Thm42Runner(DynSystem sys, int depth, FamilyBounds bounds = {}, MemberCache* cache = nullptr);
  CaseReport run(const IntVector& a);
  const HittingCatalog& catalog() const { return catalog_; }

 private:
  Verdict family_side(const IntVector& a);

  HittingCatalog catalog_;
  FamilyBounds bounds_;
  MemberCache own_cache_;
  MemberCache* cache_;
};

AgreementReport verify_thm_42(const DynSystem& sys, const IntVector& a, int depth = 3, const FamilyBounds& bounds = {});

/// f and f^n: multi-transitivity truncated at (1,...,m) for m = 2..m_bound, plus the
/// one-way implication MT(f, <= m n) => MT(f^n, <= m) where m n stays small.
AgreementReport verify_lemma_32(const DynSystem& sys, Int n, int m_bound, int depth = 2);

struct Prop33Bounds {
  int r_max = 3;
  Int entry_max = 3;
  int k_max = 3;
  int depth = 2;
};

/// Conditions (1) a-transitive for all sampled a, (4) f x f^2 x ... x f^k weakly mixing for
/// k <= k_max, (5) weakly mixing and multi-transitive up to k_max, compared pairwise.
AgreementReport verify_prop_33(const DynSystem& sys, const Prop33Bounds& bounds = {});

/// For B = {b_1 < ... < b_n} and a = the distinct differences b_j - b_i: if sys is
/// a-transitive, every N_f(U,V) meets N_g(W,W) and every N_g(W1,W2). When n exceeds the
/// size of the E-system the common time is also produced by the pigeonhole construction.
AgreementReport verify_thm_53_claim(const DynSystem& sys, const std::vector<Int>& b, const ESystemWitness& e_sys,
                                    int depth = 3);

/// (y, 0) is a transitive point of tower(base, k) for the smallest transitive point y.
AgreementReport verify_tower_transitive_point(const FiniteMap& base, int k);

struct SeparationSpace {
  /// Explicit gap sets; when empty, `count` sets are drawn at random from 1..max_gap.
  std::vector<std::vector<Int>> gap_sets;
  int count = 100;
  Int max_gap = 8;
  std::uint64_t seed = 0;
  Int horizon = 512;
  int depth = 2;
};

struct SeparationCandidate {
  std::vector<Int> gaps;
  std::map<std::string, Verdict> profile;  // "t", "t12", "wm"
  bool matches = false;
};

/// Evaluates the profile of every generated spacing shift. The predicate is a conjunction of
/// profile keys separated by '&'; "key" requires Holds and "!key" requires Fails.
std::vector<SeparationCandidate> search_separation(const SeparationSpace& space, const std::string& predicate);

}  // namespace mtv
