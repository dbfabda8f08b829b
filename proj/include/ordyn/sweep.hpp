#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordyn/conley.hpp"
#include "ordyn/report.hpp"

namespace ordyn {

// Suites by name: A, B, C, D, cospan, appendix, oracle, conley.
const std::vector<std::string>& suite_names();
// Throws SchemaError on an unknown name.
Report run_suite(const Analysis& a, const std::string& suite);

// Every preorder on n labeled points, in order of the off-diagonal bitmask.
std::vector<Preorder> all_preorders(int n);

struct SweepOptions {
  int n = 3;
  bool all_topologies = false;   // else discrete only
  bool invertible_only = false;
  // Above kExhaustiveMaxPoints, or when nonzero, draw this many random systems.
  std::size_t samples = 0;
  std::uint64_t seed = 0x5eed;
  std::size_t budget = std::size_t{1} << 24;
};

constexpr int kExhaustiveMaxPoints = 5;
constexpr int kSampledMaxPoints = 12;

struct SweepRow {
  std::string name;
  int n = 0;
  std::size_t topology_id = 0;
  bool continuous = false;
  bool closed = false;
  Tally a, b, c, d;
  std::vector<std::string> failures;  // "suite:check" of failed applicable checks
  DynSystem system;
};

// Systems the options describe; SpaceTooLarge past the budget.
std::size_t sweep_size(const SweepOptions& o);
std::vector<SweepRow> sweep(const SweepOptions& o);
std::vector<SweepRow> sweep_serial(const SweepOptions& o);
SweepRow sweep_one(const DynSystem& d, std::string name, std::size_t topology_id);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Greedy shrink: drops points (rerouting their preimages) and fixes map
// values while `fails` stays true.
DynSystem shrink(const DynSystem& d, const std::function<bool(const DynSystem&)>& fails);

}  // namespace ordyn
