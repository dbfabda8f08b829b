#pragma once

#include <string>
#include <vector>

#include "ordyn/dynsys.hpp"
#include "ordyn/topology.hpp"

namespace ordyn {

struct Hypotheses {
  bool compact = true;  // every finite space
  bool continuous = false;
  bool closed = false;
  bool proper = false;
  bool hausdorff = false;
  bool invertible = false;

  bool holds(const std::string& name) const;
};

Hypotheses hypotheses_of(const MapPredicates& p, const Separation& s);

struct Check {
  std::string name;
  std::vector<std::string> requires_;  // hypothesis names
  bool applicable = true;
  bool passed = false;
  std::string witness;                 // counterexample or note, empty when passed
};

struct Tally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::string str() const;  // "P/F/S"
};

// Checks whose hypotheses fail are still evaluated and recorded but never
// count as failures.
struct Report {
  std::string suite;
  Hypotheses hypotheses;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  Check& add(std::string name, std::vector<std::string> requires_, bool passed,
             std::string witness = {});
  // Hypothesis-independent bookkeeping that cannot be evaluated (e.g. skipped oracle).
  Check& skip(std::string name, std::string why);
  bool ok() const;
  Tally tally() const;
  void merge(const Report& other);
};

}  // namespace ordyn
