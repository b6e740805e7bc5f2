// mtv: command-line front end for the multitrans library.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "multitrans/chaos.hpp"
#include "multitrans/classify.hpp"
#include "multitrans/corpus.hpp"
#include "multitrans/errors.hpp"
#include "multitrans/families.hpp"
#include "multitrans/hitting.hpp"
#include "multitrans/json_io.hpp"
#include "multitrans/verify.hpp"

using namespace mtv;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string system;
  std::string u, v;
  std::string a = "1";
  Int horizon = kDefaultHorizon;
  int depth = 3;
  Int n_max = 16;
  Int k_max = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string lane;
  bool fatal = false;
  bool all_cases = false;
  Int power = 1;
  int total_up_to = 4;

  // family
  std::string kind = "vec";
  std::string set;
  int r_max = 3;
  int m = 3;
  std::string prefix;

  // verify
  std::string theorem = "thm42";
  std::string corpus;
  int vec_r_max = 0;
  Int entry_max = 0;
  int m_bound = 3;
  std::string b = "1,2,3,4";
  int e_size = 3;
  int k = 2;

  // search
  int count = 100;
  Int max_gap = 8;
  std::string gaps;
  std::string predicate;

  // chaos
  std::string mode = "scrambled";
  double delta = 0.5;
  std::optional<double> epsilon;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A JSON argument is either inline text or a file path.
Json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
  return parse_json(slurp(arg));
}

DynSystem load_system(const Options& o) {
  if (o.system.empty()) throw ParseError("--system is required");
  DynSystem sys = system_from_json(load_json(o.system));
  if (!o.lane.empty() && o.lane != "exact" && o.lane != "bounded") throw ParseError("--lane must be exact or bounded");
  if (o.lane == "exact" && !sys.exact_lane()) {
    throw CapabilityError("no exact lane for " + sys.kind() + " systems");
  }
  return o.power == 1 ? sys : power(sys, o.power);
}

FamilyBounds bounds_of(const Options& o) { return {o.n_max, o.k_max, o.horizon}; }

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int verdict_exit(const Options& o, const Verdict& v) { return o.fatal && v.is_fails() ? 1 : 0; }

IndexSet named_set(const std::string& name) {
  if (name == "odds") return IndexSet::residue_class(1, 2);
  if (name == "evens") return IndexSet::residue_class(0, 2);
  if (name == "naturals") return IndexSet::naturals();
  if (name == "empty") return IndexSet::empty();
  return index_set_from_json(load_json(name));
}

std::vector<Int> parse_list(const std::string& text) {
  std::vector<Int> out;
  for (int x : parse_word(text)) out.push_back(x);
  return out;
}

int cmd_analyze(const Options& o) {
  const DynSystem sys = load_system(o);
  ClassifyBounds b;
  b.total_up_to = o.total_up_to;
  b.depth = o.depth;
  b.horizon = o.horizon;
  const PropertyRecord rec = classify(sys, b);
  Json j;
  j["system"] = sys.describe();
  j["properties"] = to_json(rec);
  emit(j);
  return verdict_exit(o, rec.transitive);
}

int cmd_hitting(const Options& o) {
  const DynSystem sys = load_system(o);
  const Cylinder u{parse_word(o.u)};
  const Cylinder v{parse_word(o.v)};
  validate_cylinder(sys, u);
  validate_cylinder(sys, v);
  std::cout << to_json(hitting(sys, u, v, o.horizon)).dump() << '\n';
  return 0;
}

int cmd_family(Options o) {
  if (o.set.empty()) throw ParseError("--set is required");
  IndexSet f = IndexSet::empty();
  // A full request document carries the family and bounds along with the set.
  if (o.set != "odds" && o.set != "evens" && o.set != "naturals" && o.set != "empty") {
    Json doc = load_json(o.set);
    if (doc.is_object() && doc.contains("set")) {
      f = index_set_from_json(doc["set"]);
      if (doc.contains("family")) {
        const Json& fam = doc["family"];
        if (fam.contains("kind")) o.kind = fam["kind"].get<std::string>();
        if (fam.contains("a")) {
          std::string s;
          for (const auto& x : fam["a"]) s += (s.empty() ? "" : ",") + std::to_string(x.get<Int>());
          o.a = s;
        }
      }
      if (doc.contains("bounds")) {
        const Json& b = doc["bounds"];
        if (b.contains("n_max")) o.n_max = b["n_max"].get<Int>();
        if (b.contains("k_max")) o.k_max = b["k_max"].get<Int>();
        if (b.contains("horizon")) o.horizon = b["horizon"].get<Int>();
      }
    } else {
      f = index_set_from_json(doc);
    }
  } else {
    f = named_set(o.set);
  }
  if (o.lane == "exact" && !f.is_exact()) throw CapabilityError("no exact lane for an explicit set");

  Verdict v;
  const auto b = bounds_of(o);
  if (o.kind == "vec") {
    const IntVector a = IntVector::parse(o.a);
    v = o.lane == "bounded" ? member_bounded(f, a, b) : member(f, a, b);
  } else if (o.kind == "infty") {
    v = member_infty(f, o.r_max, b);
  } else if (o.kind == "seq") {
    v = member_seq(f, parse_list(o.prefix.empty() ? o.a : o.prefix), b);
  } else if (o.kind == "inf") {
    v = is_infinite(f);
  } else if (o.kind == "cf") {
    v = is_cofinite(f);
  } else if (o.kind == "thick") {
    v = is_thick(f);
  } else if (o.kind == "diff") {
    v = find_difference_subset(f, o.m, o.n_max > 16 ? o.n_max : 256);
  } else {
    throw ParseError("unknown family kind '" + o.kind + "'");
  }
  emit(to_json(v));
  return verdict_exit(o, v);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
}

int finish_report(const Options& o, const AgreementReport& rep) {
  Json full = to_json(rep);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "report.json", full.dump(2) + "\n");
    write_file(fs::path(o.out) / "summary.csv", to_csv(rep));
  }
  for (const auto& c : rep.cases) {
    if (!c.fatal()) continue;
    Json bundle;
    bundle["theorem"] = rep.theorem;
    bundle["counterexample"] = to_json(c);
    if (!o.out.empty()) write_file(fs::path(o.out) / "counterexample.json", bundle.dump(2) + "\n");
    std::cerr << "exact-lane disagreement:\n" << bundle.dump(2) << '\n';
    return 3;
  }
  if (o.out.empty()) {
    emit(full);
  } else {
    emit(full["summary"]);
  }
  const bool failed = rep.count(Agreement::Disagree) + rep.count(Agreement::Inconclusive) > 0;
  return o.fatal && failed ? 1 : 0;
}

int cmd_verify(const Options& o) {
  std::vector<DynSystem> systems;
  const bool corpus = !o.corpus.empty();
  if (corpus) {
    systems = named_corpus(o.corpus);
  } else {
    systems.push_back(load_system(o));
  }
  AgreementReport rep;
  rep.theorem = o.theorem;
  if (o.theorem == "thm42") {
    CorpusOptions opt;
    opt.depth = o.depth;
    opt.bounds = bounds_of(o);
    opt.keep_agreeing = !corpus || o.all_cases;
    if (corpus || o.vec_r_max > 0 || o.entry_max > 0) {
      opt.r_max = o.vec_r_max > 0 ? o.vec_r_max : 3;
      opt.entry_max = o.entry_max > 0 ? o.entry_max : 4;
      rep = run_thm42_corpus(systems, opt);
    } else {
      rep = verify_thm_42(systems[0], IntVector::parse(o.a), o.depth, bounds_of(o));
    }
  } else if (o.theorem == "lemma32") {
    for (const auto& s : systems) {
      auto r = verify_lemma_32(s, o.power > 1 ? o.power : 2, o.m_bound, std::min(o.depth, 2));
      rep.note = r.note;
      rep.append(r);
    }
  } else if (o.theorem == "prop33") {
    Prop33Bounds b;
    if (o.vec_r_max > 0) b.r_max = o.vec_r_max;
    if (o.entry_max > 0) b.entry_max = o.entry_max;
    b.k_max = o.m_bound;
    b.depth = std::min(o.depth, 2);
    for (const auto& s : systems) {
      auto r = verify_prop_33(s, b);
      rep.note = r.note;
      rep.append(r);
    }
  } else if (o.theorem == "thm53") {
    for (const auto& s : systems) {
      auto r = verify_thm_53_claim(s, parse_list(o.b), ESystemWitness::cycle(o.e_size), o.depth);
      rep.note = r.note;
      rep.append(r);
    }
  } else if (o.theorem == "tower") {
    for (const auto& s : systems) {
      const FiniteMap* f = s.finite_map();
      if (!f) throw CapabilityError("tower needs a finite map");
      bool has_point = false;
      for (int x = 0; x < f->size() && !has_point; ++x) has_point = f->is_transitive_point(x);
      if (!has_point) {
        if (corpus) continue;
        throw std::invalid_argument("base system has no transitive point");
      }
      rep.append(verify_tower_transitive_point(*f, o.k));
    }
  } else {
    throw ParseError("unknown theorem '" + o.theorem + "'");
  }
  return finish_report(o, rep);
}

int cmd_search(const Options& o) {
  SeparationSpace space;
  space.count = o.count;
  space.max_gap = o.max_gap;
  space.seed = o.seed;
  space.horizon = o.horizon == kDefaultHorizon ? 512 : o.horizon;
  space.depth = std::min(o.depth, 2);
  if (!o.gaps.empty()) {
    std::stringstream ss(o.gaps);
    std::string part;
    while (std::getline(ss, part, ';')) space.gap_sets.push_back(parse_list(part));
  }
  const auto found = search_separation(space, o.predicate);
  Json arr = Json::array();
  std::size_t matches = 0;
  for (const auto& c : found) {
    arr.push_back(to_json(c));
    matches += c.matches;
  }
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "candidates.json", arr.dump(2) + "\n");
    std::ostringstream csv;
    csv << "gaps,t,t12,wm,matches\n";
    for (const auto& c : found) {
      std::string g;
      for (Int x : c.gaps) g += (g.empty() ? "" : " ") + std::to_string(x);
      csv << '"' << g << "\"," << to_string(c.profile.at("t").outcome) << ',' << to_string(c.profile.at("t12").outcome)
          << ',' << to_string(c.profile.at("wm").outcome) << ',' << (c.matches ? 1 : 0) << '\n';
    }
    write_file(fs::path(o.out) / "candidates.csv", csv.str());
    emit(Json{{"candidates", found.size()}, {"matches", matches}});
  } else {
    emit(arr);
  }
  return 0;
}

int cmd_chaos(const Options& o) {
  const DynSystem sys = load_system(o);
  if (o.mode == "scrambled") {
    const auto r = find_scrambled_pair(sys, o.delta, o.horizon, o.epsilon);
    Json j = to_json(r.verdict);
    if (r.evidence) j["evidence"] = to_json(*r.evidence);
    emit(j);
    return verdict_exit(o, r.verdict);
  }
  if (o.mode == "sensitivity") {
    const auto r = sensitivity_witness(sys, o.delta, o.horizon, o.depth);
    emit(to_json(r));
    return verdict_exit(o, r.verdict);
  }
  if (o.mode == "proximal") {
    const FiniteMap* f = sys.finite_map();
    if (!f) throw CapabilityError("proximal pairs are computed for finite maps only");
    Json arr = Json::array();
    for (auto [x, y] : proximal_pairs(*f)) arr.push_back({x, y});
    emit(Json{{"proximal_pairs", arr}});
    return 0;
  }
  throw ParseError("unknown chaos mode '" + o.mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-transitivity verification toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--system", o.system, "system JSON file or inline JSON");
    c->add_option("--horizon", o.horizon, "horizon for bounded computations");
    c->add_option("--depth", o.depth, "cylinder depth");
    c->add_option("--lane", o.lane, "require the exact or bounded lane");
    c->add_option("--power", o.power, "analyze f^k instead of f");
    c->add_flag("--fatal", o.fatal, "exit 1 when the verdict fails");
  };

  auto* analyze = app.add_subcommand("analyze", "classify a system");
  common(analyze);
  analyze->add_option("--total-up-to", o.total_up_to, "check transitivity of f^k for k up to this bound");

  auto* hit = app.add_subcommand("hitting", "hitting time set N(U,V)");
  common(hit);
  hit->add_option("--u", o.u, "cylinder U (word or point list)")->required();
  hit->add_option("--v", o.v, "cylinder V (word or point list)")->required();

  auto* fam = app.add_subcommand("family", "membership of a set in a Furstenberg family");
  fam->add_option("--kind", o.kind, "vec|infty|seq|inf|cf|thick|diff");
  fam->add_option("--set", o.set, "odds|evens|naturals|empty, a JSON file or inline JSON");
  fam->add_option("--a", o.a, "vector a, comma separated");
  fam->add_option("--prefix", o.prefix, "prefix of A for --kind seq");
  fam->add_option("--r-max", o.r_max, "length bound for --kind infty");
  fam->add_option("--m", o.m, "size of B for --kind diff");
  fam->add_option("--n-max", o.n_max, "largest translate coordinate (bounded lane)");
  fam->add_option("--k-max", o.k_max, "largest dilation k (bounded lane)");
  fam->add_option("--horizon", o.horizon, "horizon of explicit sets");
  fam->add_option("--lane", o.lane, "require the exact or bounded lane");
  fam->add_flag("--fatal", o.fatal, "exit 1 when the verdict fails");

  auto* ver = app.add_subcommand("verify", "cross-check a characterization on a system or corpus");
  common(ver);
  ver->add_option("--theorem", o.theorem, "thm42|lemma32|prop33|thm53|tower");
  ver->add_option("--corpus", o.corpus, "maps<N> or sft<N>");
  ver->add_option("--a", o.a, "vector a, comma separated");
  ver->add_option("--r-max", o.vec_r_max, "vector length bound");
  ver->add_option("--entry-max", o.entry_max, "vector entry bound");
  ver->add_option("--m-bound", o.m_bound, "bound m (lemma32) or k (prop33)");
  ver->add_option("--b", o.b, "finite prefix of B (thm53)");
  ver->add_option("--e-size", o.e_size, "size of the cyclic E-system (thm53)");
  ver->add_option("--k", o.k, "tower height");
  ver->add_option("--n-max", o.n_max, "largest translate coordinate (bounded lane)");
  ver->add_option("--k-max", o.k_max, "largest dilation k (bounded lane)");
  ver->add_option("--out", o.out, "directory for report.json and summary.csv");
  ver->add_flag("--all-cases", o.all_cases, "keep agreeing corpus cases in the report");

  auto* search = app.add_subcommand("search", "profile random spacing shifts");
  search->add_option("--count", o.count, "number of random gap sets");
  search->add_option("--max-gap", o.max_gap, "largest gap in random gap sets");
  search->add_option("--gaps", o.gaps, "explicit gap sets, e.g. \"2,4,6;1,2\"");
  search->add_option("--predicate", o.predicate, "e.g. \"wm&!t12\"");
  search->add_option("--seed", o.seed, "seed of the gap set generator");
  search->add_option("--horizon", o.horizon, "horizon of each spacing shift");
  search->add_option("--depth", o.depth, "cylinder depth");
  search->add_option("--out", o.out, "directory for candidates.json and candidates.csv");

  auto* chaos = app.add_subcommand("chaos", "scrambled pairs and sensitivity");
  common(chaos);
  chaos->add_option("--mode", o.mode, "scrambled|sensitivity|proximal");
  chaos->add_option("--delta", o.delta, "separation threshold delta");
  chaos->add_option("--epsilon", o.epsilon, "closeness threshold (default from the horizon)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*hit) return cmd_hitting(o);
    if (*fam) return cmd_family(o);
    if (*ver) return cmd_verify(o);
    if (*search) return cmd_search(o);
    if (*chaos) return cmd_chaos(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "unavailable: " << e.what() << '\n';
    return 4;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
