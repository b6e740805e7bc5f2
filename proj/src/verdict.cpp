#include "multitrans/verdict.hpp"

namespace mtv {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

Verdict Verdict::holds(bool exact, std::string note) {
  Verdict v;
  v.outcome = Outcome::Holds;
  v.exact = exact;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::fails(std::vector<Int> witness, std::string kind, bool exact, std::string note) {
  Verdict v;
  v.outcome = Outcome::Fails;
  v.exact = exact;
  v.witness = std::move(witness);
  v.witness_kind = std::move(kind);
  v.note = std::move(note);
  return v;
}

Verdict Verdict::unknown(std::string note) {
  Verdict v;
  v.outcome = Outcome::Unknown;
  v.exact = false;
  v.note = std::move(note);
  return v;
}

Verdict all_of(const std::vector<Verdict>& parts) {
  bool exact = true;
  const Verdict* unknown = nullptr;
  for (const auto& p : parts) {
    if (p.is_fails()) return p;
    if (p.is_unknown() && !unknown) unknown = &p;
    exact = exact && p.exact;
  }
  if (unknown) return *unknown;
  return Verdict::holds(exact);
}

}  // namespace mtv
