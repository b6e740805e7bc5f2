#pragma once

#include <string>
#include <vector>

#include "multitrans/int_vector.hpp"
#include "multitrans/systems.hpp"

namespace mtv {

enum class Outcome { Holds, Fails, Unknown };

std::string to_string(Outcome o);

/// Three-valued answer. `exact` is false when the answer is only known up to a horizon or
/// search bound; a Fails verdict carries a witness that can be rechecked.
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  bool exact = true;
  std::vector<Int> witness;
  std::string witness_kind;
  std::vector<Word> cylinders;
  std::string note;

  static Verdict holds(bool exact = true, std::string note = {});
  static Verdict fails(std::vector<Int> witness, std::string kind, bool exact = true, std::string note = {});
  static Verdict unknown(std::string note);

  bool is_holds() const { return outcome == Outcome::Holds; }
  bool is_fails() const { return outcome == Outcome::Fails; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
  std::string scope() const { return exact ? "exact" : "bounded"; }
};

/// Conjunction: the first Fails wins, otherwise any Unknown, otherwise Holds. The result is
/// exact only if every consumed part is.
Verdict all_of(const std::vector<Verdict>& parts);

}  // namespace mtv
