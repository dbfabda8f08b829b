#pragma once

#include <string>
#include <vector>

#include "ordyn/io.hpp"

namespace ordyn {

struct CorpusEntry {
  enum class Kind { System, Lattice };
  std::string name;
  Kind kind = Kind::System;
  std::string summary;
  std::string payload;   // system or lattice JSON
  std::string expected;  // partial JSON matched against the output, may be empty
};

const std::vector<CorpusEntry>& corpus();
// nullptr when unknown.
const CorpusEntry* find_example(const std::string& name);

// Output of `analyze` for a system entry, `spectrum` for a lattice entry.
Json corpus_output(const CorpusEntry& e);

// Every key of `expected` must be present in `actual` with an equal value,
// recursively for objects. Returns the first mismatching JSON pointer.
std::string json_mismatch(const Json& expected, const Json& actual, const std::string& at = "");

}  // namespace ordyn
