#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ordyn/conley.hpp"
#include "ordyn/lattice.hpp"
#include "ordyn/spectra.hpp"

namespace ordyn {

using Json = nlohmann::ordered_json;

// System format:
//   {"name": "...", "points": ["a", ...],
//    "topology": "discrete" | "indiscrete" | {"leq": [["a","b"], ...]} | {"opens": [[...], ...]},
//    "map": ["b", ...] or [1, ...],
//    "query": ["a", ...]}                       optional subset U
struct SystemInput {
  std::string name;
  DynSystem system;
  std::optional<PointSet> query;
};

// Lattice format: elements with an id and optionally an {A, R} pair over
// "points"; the order is given by "leq" pairs (closed transitively) or, for
// pair labels, derived as A inside A' and R' inside R. Alternatively
// {"poset": {"elements": [...], "leq": [...]}} gives the down-set lattice.
// Optional "sampled_nbhds": [{"set": [...], "pair": id}], "x" and "orbit"
// feed the compactification check.
struct LatticeInput {
  std::string name;
  std::vector<std::string> points;
  std::vector<std::string> ids;
  DistLattice lattice;
  std::vector<SampledNbhd> nbhds;
  std::optional<int> x;
  PointSet orbit = 0;
};

// Both throw SchemaError; syntax errors are located as "line:col", field
// errors as a JSON pointer.
SystemInput parse_system(const std::string& text);
LatticeInput parse_lattice(const std::string& text);
SystemInput system_from_json(const Json& j);
LatticeInput lattice_from_json(const Json& j);
Json parse_json(const std::string& text);

Json system_to_json(const SystemInput& s);

// Full analysis report; embeds the input system so that it re-validates.
Json analysis_to_json(const SystemInput& s, const Analysis& a);
// Re-parses the embedded system, re-analyzes and compares; empty when equal.
std::string revalidate_report(const Json& report);

Json report_to_json(const Report& r);
Json spectrum_to_json(const LatticeInput& l, const SpectrumPoset& s);
Json compactification_to_json(const LatticeInput& l, const LatticeCompactification& c);

std::string read_file(const std::string& path);
// Writes to path.tmp and renames.
void write_file_atomic(const std::string& path, const std::string& content);

// Graphviz output. Component classes become record nodes listing their
// points; edges are the Hasse diagram, drawn bottom to top.
std::string dot_lattice(const DistLattice& l, const std::vector<std::string>& ids,
                        const std::string& title);
std::string dot_components(const Components& c, const std::vector<std::string>& labels,
                           const std::string& title);
std::string dot_spectrum(const SpectrumPoset& s, const std::vector<std::string>& ids,
                         const std::string& title);

}  // namespace ordyn
