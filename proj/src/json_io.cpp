#include "multitrans/json_io.hpp"

#include <sstream>

#include "multitrans/errors.hpp"

namespace mtv {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

Int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string("field '") + what + "' must be an integer");
  return j.get<Int>();
}

std::vector<Int> as_int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("field '") + what + "' must be an array");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

int narrow(Int v, const char* what) {
  if (v < -(Int{1} << 30) || v > (Int{1} << 30)) throw InvalidSystem(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

DynSystem system_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("field 'kind' must be a string");
  const auto k = kind.get<std::string>();
  Int exponent = 1;
  if (j.contains("exponent")) exponent = as_int(j["exponent"], "exponent");
  if (exponent < 1) throw InvalidSystem("exponent must be >= 1");

  if (k == "finite_map") {
    std::vector<int> table;
    for (Int v : as_int_list(field(j, "table"), "table")) table.push_back(narrow(v, "table entry"));
    return exponent == 1 ? DynSystem(FiniteMap(table)) : DynSystem(FiniteMap(table), exponent);
  }
  if (k == "sft") {
    const Int n = as_int(field(j, "vertices"), "vertices");
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) throw ParseError("field 'edges' must be an array");
    std::vector<std::pair<int, int>> es;
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [u,v]");
      es.emplace_back(narrow(as_int(e[0], "edges"), "edge endpoint"), narrow(as_int(e[1], "edges"), "edge endpoint"));
    }
    Sft s(narrow(n, "vertices"), es);
    return exponent == 1 ? DynSystem(std::move(s)) : DynSystem(std::move(s), exponent);
  }
  if (k == "spacing_shift") {
    SpacingShift s(as_int_list(field(j, "gaps"), "gaps"), as_int(field(j, "horizon"), "horizon"));
    return exponent == 1 ? DynSystem(std::move(s)) : DynSystem(std::move(s), exponent);
  }
  throw ParseError("unknown system kind '" + k + "'");
}

Json to_json(const DynSystem& sys) {
  Json j;
  if (const auto* f = sys.finite_map()) {
    j["kind"] = "finite_map";
    j["table"] = f->table();
  } else if (const auto* s = sys.sft()) {
    j["kind"] = "sft";
    j["vertices"] = s->vertex_count();
    Json edges = Json::array();
    for (auto [u, v] : s->edges()) edges.push_back({u, v});
    j["edges"] = edges;
  } else {
    const auto* sp = sys.spacing();
    j["kind"] = "spacing_shift";
    j["gaps"] = sp->gaps();
    j["horizon"] = sp->horizon();
  }
  if (sys.exponent() != 1) j["exponent"] = sys.exponent();
  return j;
}

IndexSet index_set_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("index set must be a JSON object");
  if (j.contains("exact")) {
    const Json& e = j["exact"];
    std::vector<Int> exc = e.contains("exceptional") ? as_int_list(e["exceptional"], "exceptional") : std::vector<Int>{};
    return IndexSet::exact(std::move(exc), as_int(field(e, "modulus"), "modulus"),
                           as_int_list(field(e, "residues"), "residues"), as_int(field(e, "threshold"), "threshold"));
  }
  if (j.contains("explicit")) {
    const Json& e = j["explicit"];
    return IndexSet::explicit_set(as_int_list(field(e, "elements"), "elements"), as_int(field(e, "horizon"), "horizon"));
  }
  throw ParseError("index set needs an 'exact' or 'explicit' member");
}

Json to_json(const IndexSet& s) {
  Json j;
  if (s.is_exact()) {
    const auto& e = s.exact_form();
    j["exact"] = {{"exceptional", e.exceptional}, {"modulus", e.modulus}, {"residues", e.residues}, {"threshold", e.threshold}};
  } else {
    const auto& e = s.explicit_form();
    j["explicit"] = {{"elements", e.elements}, {"horizon", e.horizon}};
  }
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["verdict"] = to_string(v.outcome);
  j["scope"] = v.scope();
  if (v.is_fails() || !v.witness.empty()) j["witness"] = v.witness;
  if (!v.witness_kind.empty()) j["witness_kind"] = v.witness_kind;
  if (!v.cylinders.empty()) j["cylinders"] = v.cylinders;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const PropertyRecord& p) {
  Json j;
  j["transitive"] = to_json(p.transitive);
  j["totally_transitive"] = to_json(p.totally_transitive);
  j["total_up_to"] = p.total_up_to;
  j["weakly_mixing"] = to_json(p.weakly_mixing);
  j["mixing"] = to_json(p.mixing);
  j["dense_small_periodic_sets"] = to_json(p.dense_small_periodic_sets);
  j["hy_candidate"] = to_json(p.hy_candidate);
  if (p.period) j["period"] = *p.period;
  j["weak_mixing_cross_checked"] = p.weak_mixing_cross_checked;
  return j;
}

Json to_json(const PairEvidence& e) {
  Json j;
  j["rule"] = e.rule;
  j["horizon"] = e.horizon;
  j["epsilon"] = e.epsilon;
  j["delta"] = e.delta;
  j["scrambled"] = e.scrambled();
  j["liminf_proxy"] = e.liminf_proxy;
  j["limsup_proxy"] = e.limsup_proxy;
  j["close_times"] = e.close_times;
  j["far_times"] = e.far_times;
  auto word = [](const Word& w) {
    std::string s;
    for (int c : w) s += static_cast<char>('0' + c);
    return s;
  };
  j["x"] = word(e.x);
  j["y"] = word(e.y);
  return j;
}

Json to_json(const SensitivitySearch& s) {
  Json j = to_json(s.verdict);
  Json ws = Json::array();
  for (const auto& w : s.witnesses) {
    ws.push_back({{"cylinder", w.cylinder}, {"x", w.x}, {"y", w.y}, {"time", w.time}});
  }
  j["witnesses"] = ws;
  return j;
}

Json to_json(const CaseReport& c) {
  Json j;
  j["system"] = c.system;
  j["a"] = c.parameter;
  j["side_L"] = to_json(c.side_l);
  j["side_R"] = to_json(c.side_r);
  j["agree"] = to_string(c.agreement);
  j["exact_lane"] = c.exact_lane;
  const Verdict& w = c.side_l.is_fails() ? c.side_l : c.side_r;
  if (w.is_fails()) j["witness"] = w.witness;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const AgreementReport& r) {
  Json j;
  j["theorem"] = r.theorem;
  if (!r.note.empty()) j["note"] = r.note;
  j["summary"] = {{"cases", r.total()},
                  {"agree", r.count(Agreement::Agree)},
                  {"disagree", r.count(Agreement::Disagree)},
                  {"inconclusive", r.count(Agreement::Inconclusive)},
                  {"skipped", r.count(Agreement::Skipped)}};
  Json cs = Json::array();
  for (const auto& c : r.cases) cs.push_back(to_json(c));
  j["cases"] = cs;
  if (r.omitted_agree) j["omitted_agreeing_cases"] = r.omitted_agree;
  return j;
}

Json to_json(const SeparationCandidate& c) {
  Json j;
  j["gaps"] = c.gaps;
  Json p;
  for (const auto& [k, v] : c.profile) p[k] = to_json(v);
  j["profile"] = p;
  j["matches"] = c.matches;
  return j;
}

std::string to_csv(const AgreementReport& r) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "system,parameter,side_l,side_r,agreement,scope\n";
  for (const auto& c : r.cases) {
    const bool exact = c.side_l.exact && c.side_r.exact;
    os << quote(c.system) << ',' << quote(c.parameter) << ',' << to_string(c.side_l.outcome) << ','
       << to_string(c.side_r.outcome) << ',' << to_string(c.agreement) << ',' << (exact ? "exact" : "bounded") << '\n';
  }
  return os.str();
}

Word parse_word(const std::string& text) {
  Word w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) throw ParseError("empty entry in word '" + text + "'");
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw ParseError("bad symbol '" + tok + "'");
      w.push_back(static_cast<int>(v));
    } catch (const std::logic_error&) {
      throw ParseError("bad symbol '" + tok + "'");
    }
  }
  return w;
}

}  // namespace mtv
