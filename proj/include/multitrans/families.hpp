#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "multitrans/hitting.hpp"
#include "multitrans/index_set.hpp"
#include "multitrans/int_vector.hpp"
#include "multitrans/verdict.hpp"

namespace mtv {

struct FamilyBounds {
  /// Translate vectors n range over [0, n_max]^r.
  Int n_max = 16;
  /// Largest k tried; 0 means horizon / max(a).
  Int k_max = 0;
  /// Horizon used when an Exact set has to be truncated for a bounded check.
  Int horizon = kDefaultHorizon;
};

/// Lexicographically first residue vector m in (Z/p)^r for which no k gives
/// (a_i k + m_i) mod p in `residues` for all i; nullopt if there is none.
std::optional<std::vector<Int>> family_obstruction(Int p, const std::vector<Int>& residues, const IntVector& a);

/// Is F in F[a], i.e. for every n in Z_+^r is there k >= 1 with k a + n in F^r? Exact.
/// A Fails verdict carries the lexicographically least refuting n.
Verdict member_exact(const IndexSet& f, const IntVector& a);

/// The same question answered from membership on [1, H] only. Holds means every n in the
/// bounds has a k; Fails is reported only when every k keeping all coordinates inside the
/// horizon was tried; anything else is Unknown.
Verdict member_bounded(const IndexSet& f, const IntVector& a, const FamilyBounds& bounds = {});

/// member_exact for Exact sets, member_bounded otherwise.
Verdict member(const IndexSet& f, const IntVector& a, const FamilyBounds& bounds = {});

Verdict is_thick(const IndexSet& f);
Verdict is_cofinite(const IndexSet& f);
Verdict is_infinite(const IndexSet& f);

/// F in F[(1)] and ... and F[(1,...,r_max)].
Verdict member_infty(const IndexSet& f, int r_max, const FamilyBounds& bounds = {});
/// F in F[(a_1)] and F[(a_1,a_2)] and ... for the given prefix of A.
Verdict member_seq(const IndexSet& f, const std::vector<Int>& prefix, const FamilyBounds& bounds = {});

/// Looks for B with |B| = m and every difference b - b' (b > b') in A. Holds carries B.
Verdict find_difference_subset(const IndexSet& a, int m, Int search_bound = 256);

/// For each pair (F, G) with F a subset of G: member(F, a) Holds implies member(G, a) does not
/// Fail. A violation is reported as Fails with the index of the pair.
Verdict upward_closure_check(const std::vector<std::pair<IndexSet, IndexSet>>& pairs, const IntVector& a,
                             const FamilyBounds& bounds = {});

}  // namespace mtv
