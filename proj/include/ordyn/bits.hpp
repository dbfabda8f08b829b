#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ordyn {

// Subsets of a phase space with at most 64 points, bit x <-> point x.
using PointSet = std::uint64_t;

constexpr int kMaxPoints = 64;

inline PointSet singleton(int x) { return PointSet{1} << x; }

inline PointSet full_set(int n) {
  return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
}

inline bool contains(PointSet s, int x) { return ((s >> x) & 1u) != 0; }

inline bool subset_of(PointSet a, PointSet b) { return (a & ~b) == 0; }

inline int count(PointSet s) { return std::popcount(s); }

inline int lowest(PointSet s) { return std::countr_zero(s); }

template <class F>
void for_each_point(PointSet s, F&& f) {
  while (s != 0) {
    f(std::countr_zero(s));
    s &= s - 1;
  }
}

std::vector<int> points_of(PointSet s);

PointSet set_of(const std::vector<int>& pts);

// Subsets of lattice elements, spectra, and other carriers without a size bound.
using ElemSet = boost::dynamic_bitset<std::uint64_t>;

std::vector<std::size_t> members(const ElemSet& s);

// "{a,b,c}" using the given point names (ids when names is empty).
std::string format_set(PointSet s, const std::vector<std::string>& names = {});

}  // namespace ordyn
