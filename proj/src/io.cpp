#include "ordyn/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ordyn {

namespace {

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& base, const std::string& key) {
  if (!j.is_object()) throw SchemaError(base.empty() ? "/" : base, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr(base, key), "missing field");
  return *it;
}

const Json& array_field(const Json& j, const std::string& base, const std::string& key) {
  const Json& v = field(j, base, key);
  if (!v.is_array()) throw SchemaError(ptr(base, key), "expected an array");
  return v;
}

std::string string_at(const Json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where, "expected a string");
  return v.get<std::string>();
}

class Names {
 public:
  Names(const Json& arr, const std::string& where) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string s = string_at(arr[i], ptr(where, i));
      if (!index_.emplace(s, static_cast<int>(names_.size())).second)
        throw SchemaError(ptr(where, i), "duplicate name '" + s + "'");
      names_.push_back(std::move(s));
    }
  }

  int at(const Json& v, const std::string& where) const {
    if (v.is_number_integer()) {
      const auto k = v.get<long long>();
      if (k < 0 || k >= static_cast<long long>(names_.size()))
        throw SchemaError(where, "index " + std::to_string(k) + " out of range");
      return static_cast<int>(k);
    }
    const std::string s = string_at(v, where);
    auto it = index_.find(s);
    if (it == index_.end()) throw SchemaError(where, "unknown name '" + s + "'");
    return it->second;
  }

  PointSet set(const Json& arr, const std::string& where) const {
    if (!arr.is_array()) throw SchemaError(where, "expected an array");
    PointSet s = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) s |= singleton(at(arr[i], ptr(where, i)));
    return s;
  }

  std::vector<Pair> pairs(const Json& arr, const std::string& where) const {
    if (!arr.is_array()) throw SchemaError(where, "expected an array");
    std::vector<Pair> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Json& p = arr[i];
      if (!p.is_array() || p.size() != 2) throw SchemaError(ptr(where, i), "expected a pair");
      out.emplace_back(at(p[0], ptr(ptr(where, i), 0)), at(p[1], ptr(ptr(where, i), 1)));
    }
    return out;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

Json names_of(PointSet s, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for_each_point(s, [&](int x) { out.push_back(labels[x]); });
  return out;
}

Json hasse_json(const FinitePoset& p) {
  Json out = Json::array();
  for (auto [i, j] : p.hasse()) out.push_back({i, j});
  return out;
}

Json classes_json(const Components& c, const std::vector<std::string>& labels) {
  Json out;
  out["classes"] = Json::array();
  for (PointSet cls : c.classes) out["classes"].push_back(names_of(cls, labels));
  out["hasse"] = hasse_json(c.order);
  out["support"] = names_of(c.support, labels);
  return out;
}

Json relation_json(const Relation& r, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (auto [x, y] : pairs_of(r)) out.push_back({labels[x], labels[y]});
  return out;
}

Json ideal_json(const ElemSet& s, const std::vector<std::string>& ids) {
  Json out = Json::array();
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) out.push_back(ids[i]);
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw SchemaError(std::to_string(line) + ":" + std::to_string(col), msg);
  }
}

SystemInput system_from_json(const Json& j) {
  SystemInput out;
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  if (j.contains("name")) out.name = string_at(j["name"], "/name");
  const Names names(array_field(j, "", "points"), "/points");
  const int n = static_cast<int>(names.size());
  if (n == 0) throw SchemaError("/points", "at least one point required");
  if (n > kMaxPoints) throw SpaceTooLarge("more than " + std::to_string(kMaxPoints) + " points");

  Topology top;
  const Json& t = field(j, "", "topology");
  if (t.is_string()) {
    const std::string kind = t.get<std::string>();
    if (kind == "discrete") {
      top = Topology::discrete(n);
    } else if (kind == "indiscrete") {
      top = Topology(Preorder::from_up_rows(std::vector<ElemSet>(n, ElemSet(n).set())));
    } else {
      throw SchemaError("/topology", "expected \"discrete\", \"indiscrete\" or an object");
    }
  } else if (t.is_object() && t.contains("leq")) {
    top = Topology(Preorder::closure_of(n, names.pairs(t["leq"], "/topology/leq")));
  } else if (t.is_object() && t.contains("opens")) {
    const Json& os = t["opens"];
    if (!os.is_array()) throw SchemaError("/topology/opens", "expected an array");
    std::vector<PointSet> opens;
    for (std::size_t i = 0; i < os.size(); ++i)
      opens.push_back(names.set(os[i], ptr("/topology/opens", i)));
    try {
      top = Topology::from_opens(n, opens);
    } catch (const InvalidRelation& e) {
      std::string where = "/topology/opens";
      if (!e.witness.empty()) where = ptr(where, e.witness.front());
      throw SchemaError(where, e.what());
    }
  } else {
    throw SchemaError("/topology", "expected \"discrete\", \"indiscrete\", {\"leq\"} or {\"opens\"}");
  }

  const Json& m = array_field(j, "", "map");
  if (static_cast<int>(m.size()) != n)
    throw SchemaError("/map", "expected " + std::to_string(n) + " entries, got " + std::to_string(m.size()));
  std::vector<int> f(n);
  for (int x = 0; x < n; ++x) f[x] = names.at(m[x], ptr("/map", x));
  out.system = DynSystem(std::move(top), std::move(f), names.names());
  if (j.contains("query")) out.query = names.set(j["query"], "/query");
  return out;
}

SystemInput parse_system(const std::string& text) { return system_from_json(parse_json(text)); }

LatticeInput lattice_from_json(const Json& j) {
  LatticeInput out;
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  if (j.contains("name")) out.name = string_at(j["name"], "/name");

  if (j.contains("poset")) {
    const Json& p = j["poset"];
    const Names elems(array_field(p, "/poset", "elements"), "/poset/elements");
    if (elems.size() > static_cast<std::size_t>(kMaxPoints))
      throw SpaceTooLarge("poset has more than " + std::to_string(kMaxPoints) + " elements");
    std::vector<Pair> leq;
    if (p.contains("leq")) leq = elems.pairs(p["leq"], "/poset/leq");
    FinitePoset poset;
    try {
      poset = FinitePoset(Preorder::closure_of(elems.size(), leq));
    } catch (const InvalidRelation& e) {
      throw SchemaError("/poset/leq", e.what());
    }
    std::vector<PointSet> members;
    for (const auto& d : down_sets(poset, kLatticeCap)) {
      PointSet s = 0;
      for (auto i = d.find_first(); i != ElemSet::npos; i = d.find_next(i)) s |= singleton(static_cast<int>(i));
      members.push_back(s);
    }
    std::sort(members.begin(), members.end());
    out.points = elems.names();
    out.lattice = ring_lattice(SetRing(static_cast<int>(elems.size()), members));
    for (Elem e = 0; e < out.lattice.size(); ++e) out.ids.push_back(out.lattice.label(e).format(out.points));
    return out;
  }

  std::optional<Names> points;
  if (j.contains("points")) {
    points.emplace(j["points"], "/points");
    if (points->size() > static_cast<std::size_t>(kMaxPoints))
      throw SpaceTooLarge("more than " + std::to_string(kMaxPoints) + " points");
    out.points = points->names();
  }
  const Json& es = array_field(j, "", "elements");
  if (es.size() > kLatticeCap) throw SpaceTooLarge("lattice exceeds " + std::to_string(kLatticeCap) + " elements");
  std::vector<Label> labels;
  Json id_list = Json::array();
  bool all_pairs = !es.empty();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = ptr("/elements", i);
    const Json& e = es[i];
    if (e.is_string()) {
      id_list.push_back(e);
      labels.push_back(Label::of_text(e.get<std::string>()));
      all_pairs = false;
      continue;
    }
    const std::string id = string_at(field(e, where, "id"), ptr(where, "id"));
    id_list.push_back(id);
    if (e.contains("A") || e.contains("R")) {
      if (!points) throw SchemaError(where, "pair labels need a \"points\" list");
      labels.push_back(Label::of_pair(points->set(field(e, where, "A"), ptr(where, "A")),
                                      points->set(field(e, where, "R"), ptr(where, "R"))));
    } else {
      labels.push_back(Label::of_text(id));
      all_pairs = false;
    }
  }
  const Names ids(id_list, "/elements");
  out.ids = ids.names();

  std::vector<Pair> leq;
  if (j.contains("leq")) {
    leq = ids.pairs(j["leq"], "/leq");
  } else if (all_pairs) {
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = 0; b < labels.size(); ++b)
        if (a != b && subset_of(labels[a].a, labels[b].a) && subset_of(labels[b].r, labels[a].r))
          leq.emplace_back(a, b);
  } else {
    throw SchemaError("/leq", "missing field (required unless every element has an {A, R} pair)");
  }
  Preorder closed = Preorder::closure_of(labels.size(), leq);
  try {
    out.lattice = build_lattice(std::move(labels), closed.strict_pairs());
  } catch (const LatticeError& e) {
    std::string where = "/elements";
    if (!e.witness.empty()) where = ptr(where, e.witness.front());
    throw SchemaError(where, e.what());
  }

  if (j.contains("sampled_nbhds")) {
    if (!points) throw SchemaError("/sampled_nbhds", "needs a \"points\" list");
    const Json& ns = j["sampled_nbhds"];
    if (!ns.is_array()) throw SchemaError("/sampled_nbhds", "expected an array");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const std::string where = ptr("/sampled_nbhds", i);
      SampledNbhd s;
      s.set = points->set(field(ns[i], where, "set"), ptr(where, "set"));
      s.pair = static_cast<Elem>(ids.at(field(ns[i], where, "pair"), ptr(where, "pair")));
      out.nbhds.push_back(s);
    }
  }
  if (j.contains("x")) {
    if (!points) throw SchemaError("/x", "needs a \"points\" list");
    out.x = points->at(j["x"], "/x");
    out.orbit = j.contains("orbit") ? points->set(j["orbit"], "/orbit") : singleton(*out.x);
  }
  return out;
}

LatticeInput parse_lattice(const std::string& text) { return lattice_from_json(parse_json(text)); }

Json system_to_json(const SystemInput& s) {
  const DynSystem& d = s.system;
  const auto& labels = d.labels();
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["points"] = labels;
  const Preorder& spec = d.topology().specialization();
  if (d.topology() == Topology::discrete(d.size())) {
    j["topology"] = "discrete";
  } else {
    Json leq = Json::array();
    for (auto [x, y] : spec.strict_pairs()) leq.push_back({labels[x], labels[y]});
    j["topology"] = {{"leq", leq}};
  }
  Json m = Json::array();
  for (int x = 0; x < d.size(); ++x) m.push_back(labels[d(x)]);
  j["map"] = m;
  if (s.query) j["query"] = names_of(*s.query, labels);
  return j;
}

Json analysis_to_json(const SystemInput& s, const Analysis& a) {
  const DynSystem& d = a.d;
  const auto& labels = d.labels();
  Json j;
  j["system"] = system_to_json(s);
  j["hypotheses"] = {{"continuous", a.predicates.continuous}, {"closed", a.predicates.closed},
                     {"proper", a.predicates.proper},         {"invertible", a.predicates.invertible},
                     {"hausdorff", a.separation.hausdorff}};
  if (s.query) {
    const PointSet u = *s.query;
    j["query"] = {{"U", names_of(u, labels)},
                  {"omega", names_of(omega(d, u), labels)},
                  {"alpha", names_of(alpha(d, u), labels)},
                  {"inv", names_of(inv(d, u), labels)},
                  {"inv_plus", names_of(inv_plus(d, u), labels)},
                  {"closure", names_of(d.closure(u), labels)},
                  {"interior", names_of(d.interior(u), labels)},
                  {"attracting", is_attracting_nbhd(d, u)},
                  {"repelling", is_repelling_nbhd(d, u)},
                  {"trapping", is_trapping_region(d, u)}};
  }
  j["anbhd_count"] = a.anbhd.size();
  j["rnbhd_count"] = a.rnbhd.size();
  j["trapping_count"] = a.trapping.size();
  j["duality"] = a.duality.ok;

  Json att = Json::array();
  for (PointSet x : a.att.sets) att.push_back(names_of(x, labels));
  j["att"] = {{"sets", att}, {"hasse", hasse_json(a.att.lattice.order())}};
  if (const auto duals = a.unique_duals()) {
    Json dj = Json::array();
    for (PointSet x : *duals) dj.push_back(names_of(x, labels));
    j["att"]["duals"] = dj;
  }
  Json arp = Json::array();
  for (const auto& p : a.arp.pairs) arp.push_back({{"A", names_of(p.a, labels)}, {"R", names_of(p.r, labels)}});
  j["arpair"] = {{"pairs", arp}, {"hasse", hasse_json(a.arp.lattice.order())}};

  j["recurrent_components"] = classes_json(a.rc, labels);
  j["strong_components"] = classes_json(a.sc, labels);
  j["chain_components"] = classes_json(a.chain, labels);
  j["relations"] = {{"R", relation_json(a.rel_r, labels)},
                    {"S", relation_json(a.rel_s, labels)},
                    {"C", relation_json(a.rel_c, labels)}};

  const SpectrumPoset spec = prime_ideals(a.att.lattice);
  Json ideals = Json::array();
  for (const auto& ideal : spec.ideals) {
    Json members = Json::array();
    for (auto i = ideal.find_first(); i != ElemSet::npos; i = ideal.find_next(i))
      members.push_back(names_of(a.att.sets[i], labels));
    ideals.push_back(members);
  }
  j["spectrum_att"] = {{"ideals", ideals}, {"hasse", hasse_json(spec.order)}};
  return j;
}

std::string revalidate_report(const Json& report) {
  try {
    if (!report.is_object() || !report.contains("system")) return "missing /system";
    const SystemInput s = system_from_json(report["system"]);
    const Json again = analysis_to_json(s, analyze(s.system));
    if (again != report) return "re-analysis differs from the stored report";
    return {};
  } catch (const Error& e) {
    return e.what();
  }
}

Json report_to_json(const Report& r) {
  Json j;
  j["suite"] = r.suite;
  const Tally t = r.tally();
  j["passed"] = t.passed;
  j["failed"] = t.failed;
  j["skipped"] = t.skipped;
  j["ok"] = r.ok();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["requires"] = c.requires_;
    cj["applicable"] = c.applicable;
    cj["passed"] = c.passed;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["notes"] = r.notes;
  return j;
}

Json spectrum_to_json(const LatticeInput& l, const SpectrumPoset& s) {
  Json j;
  if (!l.name.empty()) j["name"] = l.name;
  j["elements"] = l.lattice.size();
  Json ideals = Json::array();
  for (std::size_t i = 0; i < s.ideals.size(); ++i) {
    Json labels = Json::array();
    for (auto e = s.ideals[i].find_first(); e != ElemSet::npos; e = s.ideals[i].find_next(e))
      labels.push_back(l.lattice.label(static_cast<Elem>(e)).format(l.points));
    ideals.push_back({{"ids", ideal_json(s.ideals[i], l.ids)},
                      {"labels", labels},
                      {"generator", l.ids[s.generator[i]]}});
  }
  j["ideals"] = ideals;
  j["hasse"] = hasse_json(s.order);
  return j;
}

Json compactification_to_json(const LatticeInput& l, const LatticeCompactification& c) {
  Json j;
  j["j_plus"] = ideal_json(c.j_plus, l.ids);
  j["j_minus"] = ideal_json(c.j_minus, l.ids);
  j["j_plus_prime"] = c.j_plus_prime;
  j["j_minus_prime"] = c.j_minus_prime;
  j["nbhds_closed"] = c.nbhds_closed;
  j["varpi_homomorphism"] = c.varpi_homomorphism;
  auto sets = [&](const ElemSet& s) {
    Json out = Json::array();
    for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i))
      out.push_back(names_of(l.nbhds[i].set, l.points));
    return out;
  };
  j["i_plus"] = sets(c.i_plus);
  j["i_x"] = sets(c.i_x);
  j["i_minus"] = sets(c.i_minus);
  j["plus_strict"] = c.plus_strict;
  j["minus_strict"] = c.minus_strict;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    if (!out) throw Error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename " + tmp + " to " + path);
}

namespace {

std::string escape_record(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string escape_quoted(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string edges(const FinitePoset& p) {
  std::string out;
  for (auto [i, j] : p.hasse()) out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
  return out;
}

std::string header(const std::string& title, const std::string& shape) {
  return "digraph \"" + escape_quoted(title) + "\" {\n  rankdir=BT;\n  node [shape=" + shape + "];\n";
}

}  // namespace

std::string dot_lattice(const DistLattice& l, const std::vector<std::string>& ids,
                        const std::string& title) {
  std::string out = header(title, "box");
  for (Elem e = 0; e < l.size(); ++e)
    out += "  n" + std::to_string(e) + " [label=\"" + escape_quoted(ids[e]) + "\"];\n";
  return out + edges(l.order()) + "}\n";
}

std::string dot_components(const Components& c, const std::vector<std::string>& labels,
                           const std::string& title) {
  std::string out = header(title, "record");
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    std::string fields;
    for_each_point(c.classes[i], [&](int x) {
      if (!fields.empty()) fields += "|";
      fields += escape_record(labels[x]);
    });
    out += "  n" + std::to_string(i) + " [label=\"{" + fields + "}\"];\n";
  }
  return out + edges(c.order) + "}\n";
}

std::string dot_spectrum(const SpectrumPoset& s, const std::vector<std::string>& ids,
                         const std::string& title) {
  std::string out = header(title, "record");
  for (std::size_t i = 0; i < s.ideals.size(); ++i) {
    std::string fields;
    for (auto e = s.ideals[i].find_first(); e != ElemSet::npos; e = s.ideals[i].find_next(e)) {
      if (!fields.empty()) fields += "|";
      fields += escape_record(ids[e]);
    }
    if (fields.empty()) fields = " ";
    out += "  n" + std::to_string(i) + " [label=\"{" + fields + "}\"];\n";
  }
  return out + edges(s.order) + "}\n";
}

}  // namespace ordyn
