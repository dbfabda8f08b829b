#include "ordyn/corpus.hpp"

namespace ordyn {

namespace {

std::vector<CorpusEntry> build() {
  using K = CorpusEntry::Kind;
  std::vector<CorpusEntry> c;

  c.push_back({"ordertopnoninv", K::System,
               "five points of the line with the right-ray order topology, f = 0",
               R"json({
  "name": "ordertopnoninv",
  "points": ["-2", "-1", "0", "1", "2"],
  "topology": {"leq": [["-2", "-1"], ["-1", "0"], ["0", "1"], ["1", "2"]]},
  "map": ["0", "0", "0", "0", "0"],
  "query": ["0", "1", "2"]
})json",
               R"json({
  "hypotheses": {"continuous": true, "closed": false},
  "query": {"omega": ["-2", "-1", "0"], "inv": ["0"], "attracting": true}
})json"});

  c.push_back({"id3", K::System, "identity on three discrete points",
               R"json({
  "name": "id3",
  "points": ["a", "b", "c"],
  "topology": "discrete",
  "map": ["a", "b", "c"]
})json",
               R"json({
  "att": {"sets": [[], ["a"], ["b"], ["a", "b"], ["c"], ["a", "c"], ["b", "c"], ["a", "b", "c"]]},
  "recurrent_components": {"classes": [["a"], ["b"], ["c"]], "hasse": []}
})json"});

  c.push_back({"grad-smr", K::System, "gradient-like map on the chain s < m < r, m falls to s",
               R"json({
  "name": "grad-smr",
  "points": ["s", "m", "r"],
  "topology": {"leq": [["s", "m"], ["m", "r"]]},
  "map": ["s", "s", "r"]
})json",
               R"json({
  "att": {"sets": [[], ["s", "r"]]},
  "recurrent_components": {"classes": [["s", "r"]]},
  "chain_components": {"support": ["s", "m", "r"]}
})json"});

  c.push_back({"swap2", K::System, "transposition of two discrete points",
               R"json({
  "name": "swap2",
  "points": ["a", "b"],
  "topology": "discrete",
  "map": ["b", "a"]
})json",
               R"json({
  "hypotheses": {"invertible": true, "hausdorff": true},
  "recurrent_components": {"classes": [["a", "b"]]},
  "chain_components": {"classes": [["a", "b"]]}
})json"});

  c.push_back({"ord5-discrete", K::System, "the five points of ordertopnoninv, discrete, f = 0",
               R"json({
  "name": "ord5-discrete",
  "points": ["-2", "-1", "0", "1", "2"],
  "topology": "discrete",
  "map": ["0", "0", "0", "0", "0"],
  "query": ["0", "1", "2"]
})json",
               R"json({
  "hypotheses": {"continuous": true, "closed": true, "proper": true},
  "query": {"omega": ["0"], "inv": ["0"], "attracting": true}
})json"});

  c.push_back({"proper6", K::System,
               "proper, non-Hausdorff: three recurrent classes, chain recurrence larger than R",
               R"json({
  "name": "proper6",
  "points": ["a", "b", "c", "d", "e", "f"],
  "topology": {"leq": [["f", "b"]]},
  "map": ["e", "f", "c", "a", "e", "f"]
})json",
               R"json({
  "hypotheses": {"continuous": true, "proper": true, "hausdorff": false},
  "recurrent_components": {"support": ["c", "e", "f"]},
  "chain_components": {"support": ["b", "c", "e", "f"]}
})json"});

  c.push_back({"exofsaddle-AR", K::Lattice,
               "attractor-repeller pairs of a planar saddle built from the axes, on a 3x3 grid",
               R"json({
  "name": "exofsaddle-AR",
  "points": ["(-1,-1)", "(-1,0)", "(-1,1)", "(0,-1)", "(0,0)", "(0,1)", "(1,-1)", "(1,0)", "(1,1)"],
  "elements": [
    {"id": "(∅,X)", "A": [], "R": ["(-1,-1)", "(-1,0)", "(-1,1)", "(0,-1)", "(0,0)", "(0,1)", "(1,-1)", "(1,0)", "(1,1)"]},
    {"id": "(∅,L-xR)", "A": [], "R": ["(-1,-1)", "(-1,0)", "(-1,1)", "(0,-1)", "(0,0)", "(0,1)"]},
    {"id": "(∅,L+xR)", "A": [], "R": ["(0,-1)", "(0,0)", "(0,1)", "(1,-1)", "(1,0)", "(1,1)"]},
    {"id": "(∅,0xR)", "A": [], "R": ["(0,-1)", "(0,0)", "(0,1)"]},
    {"id": "(Rx0,∅)", "A": ["(-1,0)", "(0,0)", "(1,0)"], "R": []},
    {"id": "(RxD-,∅)", "A": ["(-1,-1)", "(-1,0)", "(0,-1)", "(0,0)", "(1,-1)", "(1,0)"], "R": []},
    {"id": "(RxD+,∅)", "A": ["(-1,0)", "(-1,1)", "(0,0)", "(0,1)", "(1,0)", "(1,1)"], "R": []},
    {"id": "(X,∅)", "A": ["(-1,-1)", "(-1,0)", "(-1,1)", "(0,-1)", "(0,0)", "(0,1)", "(1,-1)", "(1,0)", "(1,1)"], "R": []}
  ]
})json",
               R"json({
  "spectrum": {
    "ideals": [
      {"ids": ["(∅,X)", "(∅,L-xR)"]},
      {"ids": ["(∅,X)", "(∅,L+xR)"]},
      {"ids": ["(∅,X)", "(∅,L-xR)", "(∅,L+xR)", "(∅,0xR)"]},
      {"ids": ["(∅,X)", "(∅,L-xR)", "(∅,L+xR)", "(∅,0xR)", "(Rx0,∅)", "(RxD-,∅)"]},
      {"ids": ["(∅,X)", "(∅,L-xR)", "(∅,L+xR)", "(∅,0xR)", "(Rx0,∅)", "(RxD+,∅)"]}
    ]
  }
})json"});

  c.push_back({"invnotomega-AR", K::Lattice,
               "the two attractor-repeller pairs of the unit shift on [0, oo) with the cofinite topology",
               R"json({
  "name": "invnotomega-AR",
  "points": ["x"],
  "elements": [
    {"id": "(∅,X)", "A": [], "R": ["x"]},
    {"id": "(∅,∅)", "A": [], "R": []}
  ]
})json",
               R"json({"spectrum": {"ideals": [{"ids": ["(∅,X)"]}]}})json"});

  c.push_back({"examcomp-AR", K::Lattice,
               "attractor-repeller pairs of x' = x on the line, sampled at -2..2, with x = -1",
               R"json({
  "name": "examcomp-AR",
  "points": ["-2", "-1", "0", "1", "2"],
  "elements": [
    {"id": "(∅,X)", "A": [], "R": ["-2", "-1", "0", "1", "2"]},
    {"id": "(∅,L-)", "A": [], "R": ["-2", "-1", "0"]},
    {"id": "(∅,L+)", "A": [], "R": ["0", "1", "2"]},
    {"id": "(∅,0)", "A": [], "R": ["0"]},
    {"id": "(X,∅)", "A": ["-2", "-1", "0", "1", "2"], "R": []}
  ],
  "sampled_nbhds": [
    {"set": [], "pair": "(∅,X)"},
    {"set": ["2"], "pair": "(∅,L-)"},
    {"set": ["1", "2"], "pair": "(∅,L-)"},
    {"set": ["-2"], "pair": "(∅,L+)"},
    {"set": ["-2", "2"], "pair": "(∅,0)"},
    {"set": ["-2", "1", "2"], "pair": "(∅,0)"},
    {"set": ["-2", "-1"], "pair": "(∅,L+)"},
    {"set": ["-2", "-1", "2"], "pair": "(∅,0)"},
    {"set": ["-2", "-1", "1", "2"], "pair": "(∅,0)"},
    {"set": ["-2", "-1", "0", "1", "2"], "pair": "(X,∅)"}
  ],
  "x": "-1",
  "orbit": ["-2", "-1"]
})json",
               R"json({
  "compactification": {
    "j_plus": ["(∅,X)", "(∅,L-)"],
    "j_minus": ["(∅,X)", "(∅,L-)", "(∅,L+)", "(∅,0)"],
    "j_plus_prime": true,
    "j_minus_prime": true,
    "plus_strict": true,
    "minus_strict": true
  }
})json"});
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_example(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return &e;
  return nullptr;
}

Json corpus_output(const CorpusEntry& e) {
  if (e.kind == CorpusEntry::Kind::System) {
    const SystemInput s = parse_system(e.payload);
    return analysis_to_json(s, analyze(s.system));
  }
  const LatticeInput l = parse_lattice(e.payload);
  Json out;
  out["spectrum"] = spectrum_to_json(l, prime_ideals(l.lattice));
  if (l.x) out["compactification"] = compactification_to_json(l, compactify_lattice(l.lattice, l.nbhds, *l.x, l.orbit));
  return out;
}

std::string json_mismatch(const Json& expected, const Json& actual, const std::string& at) {
  if (expected.is_object()) {
    if (!actual.is_object()) return at.empty() ? "/" : at;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      const std::string here = at + "/" + it.key();
      if (!actual.contains(it.key())) return here;
      if (auto m = json_mismatch(it.value(), actual[it.key()], here); !m.empty()) return m;
    }
    return {};
  }
  if (expected.is_array() && actual.is_array() && expected.size() == actual.size()) {
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (auto m = json_mismatch(expected[i], actual[i], at + "/" + std::to_string(i)); !m.empty()) return m;
    return {};
  }
  return expected == actual ? std::string{} : (at.empty() ? "/" : at);
}

}  // namespace ordyn
