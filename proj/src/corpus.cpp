#include "multitrans/corpus.hpp"

#include <bit>

#include "multitrans/errors.hpp"

namespace mtv {

std::vector<FiniteMap> all_finite_maps(int max_size) {
  std::vector<FiniteMap> out;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    while (true) {
      out.emplace_back(t);
      int i = n - 1;
      while (i >= 0 && t[i] == n - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  return out;
}

namespace {

bool strongly_connected(int n, std::uint64_t bits) {
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  auto closure = [&](bool reverse) {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (int u = 0; u < n; ++u) {
        if (!((frontier >> u) & 1U)) continue;
        for (int v = 0; v < n; ++v) {
          const int bit = reverse ? v * n + u : u * n + v;
          if ((bits >> bit) & 1U) next |= std::uint64_t{1} << v;
        }
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  return closure(false) == all && closure(true) == all;
}

}  // namespace

std::vector<Sft> irreducible_sfts(int max_vertices) {
  if (max_vertices > 5) throw std::invalid_argument("irreducible_sfts enumerates at most 5 vertices");
  std::vector<Sft> out;
  for (int n = 1; n <= max_vertices; ++n) {
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 1; bits < limit; ++bits) {
      if (std::popcount(bits) < n) continue;
      if (!strongly_connected(n, bits)) continue;
      out.push_back(Sft::from_adjacency(n, bits));
    }
  }
  return out;
}

std::vector<DynSystem> named_corpus(const std::string& name) {
  auto number = [&](std::size_t prefix) {
    const std::string digits = name.substr(prefix);
    if (digits.empty() || digits.size() > 1 || digits[0] < '1' || digits[0] > '9') {
      throw ParseError("unknown corpus '" + name + "'");
    }
    return digits[0] - '0';
  };
  std::vector<DynSystem> out;
  if (name.rfind("maps", 0) == 0) {
    const int n = number(4);
    if (n > 6) throw ParseError("corpus '" + name + "' is too large");
    for (auto& f : all_finite_maps(n)) out.emplace_back(std::move(f));
  } else if (name.rfind("sft", 0) == 0) {
    const int n = number(3);
    if (n > 4) throw ParseError("corpus '" + name + "' is too large");
    for (auto& s : irreducible_sfts(n)) out.emplace_back(std::move(s));
  } else {
    throw ParseError("unknown corpus '" + name + "'");
  }
  return out;
}

AgreementReport run_thm42_corpus(const std::vector<DynSystem>& systems, const CorpusOptions& opt,
                                 const std::function<void(std::size_t)>& progress) {
  AgreementReport rep;
  rep.theorem = "thm42";
  rep.note = "vectors r <= " + std::to_string(opt.r_max) + ", entries <= " + std::to_string(opt.entry_max) +
             ", cylinder depth <= " + std::to_string(opt.depth);
  const auto vectors = enumerate_vectors(opt.r_max, opt.entry_max);
  MemberCache cache;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    Thm42Runner runner(systems[i], opt.depth, opt.bounds, &cache);
    for (const auto& a : vectors) {
      CaseReport c = runner.run(a);
      if (!opt.keep_agreeing && c.agreement == Agreement::Agree) {
        ++rep.omitted_agree;
        continue;
      }
      rep.cases.push_back(std::move(c));
      if (opt.stop_on_fatal && rep.cases.back().fatal()) return rep;
    }
    if (progress) progress(i + 1);
  }
  return rep;
}

}  // namespace mtv
