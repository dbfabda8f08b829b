#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordyn/bits.hpp"
#include "ordyn/topology.hpp"

namespace ordyn {

struct CycleStructure {
  std::vector<int> cycle_of;               // eventual cycle id of each point
  std::vector<int> preperiod;              // steps until the point lands on its cycle
  std::vector<std::vector<int>> cycles;    // starting at the least point, in map order
  std::vector<PointSet> cycle_sets;
  PointSet eventual_image = 0;             // union of all cycles
  std::uint64_t lcm = 1;                   // lcm of cycle lengths, saturated at kLcmSaturation
  PointSet periodic(int x) const { return cycle_sets[cycle_of[x]]; }
  bool is_periodic(int x) const { return preperiod[x] == 0; }
};

constexpr std::uint64_t kLcmSaturation = std::uint64_t{1} << 40;

// Phase space, topology and a single-valued map, iterated in discrete time.
class DynSystem {
 public:
  DynSystem() = default;
  // Throws SchemaError when the map is not total on 0..n-1 or the label count
  // differs from n.
  // Labels default to "0", "1", ...
  DynSystem(Topology t, std::vector<int> map, std::vector<std::string> labels = {});

  int size() const { return topology_.size(); }
  PointSet points() const { return topology_.points(); }
  const Topology& topology() const { return topology_; }
  const std::vector<int>& map() const { return map_; }
  int operator()(int x) const { return map_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string name_of(int x) const;
  std::string format(PointSet s) const { return format_set(s, labels_); }

  PointSet image(PointSet u) const;
  PointSet preimage(PointSet u) const;
  PointSet iterate_image(PointSet u, std::uint64_t t) const;
  PointSet closure(PointSet u) const { return topology_.closure(u); }
  PointSet interior(PointSet u) const { return topology_.interior(u); }

  const CycleStructure& cycles() const { return cycles_; }
  // Forward orbit {f^t(x) : t >= 0}.
  PointSet orbit(int x) const { return orbit_[x]; }
  // Union of the eventual cycles of the points of u.
  PointSet cycles_reached(PointSet u) const;
  // Points whose eventual cycle meets u.
  PointSet cycle_meets(PointSet u) const;

 private:
  Topology topology_;
  std::vector<int> map_;
  std::vector<std::string> labels_;
  CycleStructure cycles_;
  std::vector<PointSet> orbit_;
};

CycleStructure cycle_structure(const std::vector<int>& map);
inline const CycleStructure& cycle_structure(const DynSystem& d) { return d.cycles(); }

// Closed forms from eventual periodicity:
//   omega(U) = cl(cycles reached from U)
//   alpha(U) = cl{x : the cycle of x meets U}
//   Inv(U)   = union of the cycles inside U
//   Inv+(U)  = {x : forward orbit of x inside U}
PointSet omega(const DynSystem& d, PointSet u);
PointSet alpha(const DynSystem& d, PointSet u);
PointSet inv(const DynSystem& d, PointSet u);
PointSet inv_plus(const DynSystem& d, PointSet u);
// cl(cycle of x); complete orbits pass only through periodic points.
// Throws NoCompleteOrbit otherwise.
PointSet orbital_alpha(const DynSystem& d, int x);

struct MapPredicates {
  bool continuous = false;
  bool closed = false;
  bool compact_fibers = true;
  bool proper = false;
  bool invertible = false;
  bool closed_exhaustive = false;          // every subset tested
  std::optional<PointSet> closed_witness;  // U with f(cl U) != cl f(U)
};

constexpr int kClosedExhaustiveLimit = 16;

bool is_continuous(const DynSystem& d);
// Least U in increasing value with f(cl U) != cl f(U), over all 2^n subsets.
std::optional<PointSet> closed_violation(const DynSystem& d);
std::optional<PointSet> closed_violation_serial(const DynSystem& d);
// Both sides are unions over the points of U, so checking singletons is exact.
std::optional<PointSet> closed_violation_by_points(const DynSystem& d);

MapPredicates map_predicates(const DynSystem& d);

}  // namespace ordyn
