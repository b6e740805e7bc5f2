#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multitrans/systems.hpp"
#include "multitrans/verdict.hpp"

namespace mtv {

/// Finite-horizon record of how two orbits of a shift approach and separate. Distances use
/// d(x, y) = 2^-(first differing coordinate); the distance at time n is only recorded when
/// the first difference at or after n lies inside the stored prefixes.
struct PairEvidence {
  Word x;
  Word y;
  std::string rule;
  Int horizon = 0;
  double epsilon = 0;
  double delta = 0;
  std::vector<Int> close_times;  // distance < epsilon
  std::vector<Int> far_times;    // distance > delta
  double liminf_proxy = 1;       // smallest recorded distance
  double limsup_proxy = 0;       // largest recorded distance

  bool scrambled() const { return !close_times.empty() && !far_times.empty(); }
};

/// 2^-(log2(horizon) / 4).
double default_epsilon(Int horizon);

/// Distance between the n-th shifts of two prefixes, or nullopt if they agree from n to the
/// end of the shorter prefix.
std::optional<double> shifted_distance(const Word& x, const Word& y, Int n);

/// Builds the evidence for the prefixes, over times n < horizon. Rejects x == y.
PairEvidence evaluate_pair(const Word& x, const Word& y, double delta, double epsilon, Int horizon, std::string rule = {});

/// Recomputes every distance from the stored prefixes and compares.
bool recheck(const PairEvidence& e);

struct ScrambledSearch {
  Verdict verdict;
  std::optional<PairEvidence> evidence;
};

/// Shifts: x is a periodic orbit and y copies x except on blocks [2^j + j - 1, 2^(j+1)),
/// where it differs from x as often as the graph allows. Evidence at the horizon is a
/// bounded Holds. Finite maps never have scrambled pairs and answer an exact Fails.
ScrambledSearch find_scrambled_pair(const DynSystem& sys, double delta, Int horizon, std::optional<double> epsilon = {});

/// All ordered pairs (x, y) whose orbits eventually meet, including the diagonal.
std::vector<std::pair<int, int>> proximal_pairs(const FiniteMap& f);

/// Exact classification of a pair of distinct points under the discrete metric.
struct PairClass {
  bool proximal;  // liminf of the distance is 0
  bool distal_infinitely_often;  // limsup is 1
};
PairClass classify_pair(const FiniteMap& f, int x, int y);

struct SensitivityWitness {
  Word cylinder;
  Word x;
  Word y;
  Int time = 0;
};

struct SensitivitySearch {
  Verdict verdict;
  std::vector<SensitivityWitness> witnesses;
};

/// For each cylinder of depth <= depth, two admissible extensions that are at distance 1
/// (> delta) at some time below the horizon.
SensitivitySearch sensitivity_witness(const DynSystem& sys, double delta, Int horizon, int depth = 3);

}  // namespace mtv
