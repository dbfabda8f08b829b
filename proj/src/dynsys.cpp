#include "ordyn/dynsys.hpp"

#include <algorithm>
#include <numeric>

#include "ordyn/errors.hpp"

namespace ordyn {

CycleStructure cycle_structure(const std::vector<int>& f) {
  const int n = static_cast<int>(f.size());
  CycleStructure c;
  c.cycle_of.assign(n, -1);
  c.preperiod.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (c.cycle_of[x] != -1) continue;
    int y = f[x];
    for (int k = 0; k < n && y != x; ++k) y = f[y];
    if (y != x) continue;
    const int id = static_cast<int>(c.cycles.size());
    std::vector<int> cyc{x};
    PointSet s = singleton(x);
    for (int z = f[x]; z != x; z = f[z]) {
      cyc.push_back(z);
      s |= singleton(z);
    }
    for (int z : cyc) {
      c.cycle_of[z] = id;
      c.preperiod[z] = 0;
    }
    c.eventual_image |= s;
    c.lcm = std::min<std::uint64_t>(std::lcm(c.lcm, cyc.size()), kLcmSaturation);
    c.cycles.push_back(std::move(cyc));
    c.cycle_sets.push_back(s);
  }
  for (int x = 0; x < n; ++x) {
    if (c.preperiod[x] != -1) continue;
    std::vector<int> path;
    int y = x;
    while (c.preperiod[y] == -1) {
      path.push_back(y);
      y = f[y];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      c.preperiod[*it] = c.preperiod[y] + 1;
      c.cycle_of[*it] = c.cycle_of[y];
      y = *it;
    }
  }
  return c;
}

DynSystem::DynSystem(Topology t, std::vector<int> map, std::vector<std::string> labels)
    : topology_(std::move(t)), map_(std::move(map)), labels_(std::move(labels)) {
  const int n = topology_.size();
  if (static_cast<int>(map_.size()) != n)
    throw SchemaError("/map", "map has " + std::to_string(map_.size()) + " entries, expected " +
                                  std::to_string(n));
  for (int x = 0; x < n; ++x)
    if (map_[x] < 0 || map_[x] >= n)
      throw SchemaError("/map/" + std::to_string(x), "image out of range");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw SchemaError("/labels", "expected " + std::to_string(n) + " labels");
  if (labels_.empty())
    for (int x = 0; x < n; ++x) labels_.push_back(std::to_string(x));
  cycles_ = cycle_structure(map_);
  orbit_.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    PointSet o = singleton(x);
    for (int y = map_[x]; !contains(o, y); y = map_[y]) o |= singleton(y);
    orbit_[x] = o;
  }
}

std::string DynSystem::name_of(int x) const {
  return static_cast<std::size_t>(x) < labels_.size() ? labels_[x] : std::to_string(x);
}

PointSet DynSystem::image(PointSet u) const {
  PointSet out = 0;
  for_each_point(u, [&](int x) { out |= singleton(map_[x]); });
  return out;
}

PointSet DynSystem::preimage(PointSet u) const {
  PointSet out = 0;
  for (int x = 0; x < size(); ++x)
    if (contains(u, map_[x])) out |= singleton(x);
  return out;
}

PointSet DynSystem::iterate_image(PointSet u, std::uint64_t t) const {
  const std::uint64_t n = static_cast<std::uint64_t>(size());
  if (t > n) t = n + (t - n) % cycles_.lcm;
  for (std::uint64_t k = 0; k < t; ++k) u = image(u);
  return u;
}

PointSet DynSystem::cycles_reached(PointSet u) const {
  PointSet out = 0;
  for_each_point(u, [&](int x) { out |= cycles_.periodic(x); });
  return out;
}

PointSet DynSystem::cycle_meets(PointSet u) const {
  PointSet out = 0;
  for (int x = 0; x < size(); ++x)
    if ((cycles_.periodic(x) & u) != 0) out |= singleton(x);
  return out;
}

PointSet omega(const DynSystem& d, PointSet u) { return d.closure(d.cycles_reached(u)); }

PointSet alpha(const DynSystem& d, PointSet u) { return d.closure(d.cycle_meets(u)); }

PointSet inv(const DynSystem& d, PointSet u) {
  PointSet out = 0;
  for (PointSet c : d.cycles().cycle_sets)
    if (subset_of(c, u)) out |= c;
  return out;
}

PointSet inv_plus(const DynSystem& d, PointSet u) {
  PointSet out = 0;
  for_each_point(u, [&](int x) {
    if (subset_of(d.orbit(x), u)) out |= singleton(x);
  });
  return out;
}

PointSet orbital_alpha(const DynSystem& d, int x) {
  if (!d.cycles().is_periodic(x))
    throw NoCompleteOrbit("point " + d.name_of(x) + " is not periodic");
  return d.closure(d.cycles().periodic(x));
}

bool is_continuous(const DynSystem& d) {
  const Topology& t = d.topology();
  for (int x = 0; x < d.size(); ++x)
    if (!subset_of(d.image(t.up(x)), t.up(d(x)))) return false;
  return true;
}

namespace {

struct ClosedTables {
  std::vector<PointSet> image_of_closure;  // f(cl{x})
  std::vector<PointSet> closure_of_image;  // cl{f(x)}
  explicit ClosedTables(const DynSystem& d) {
    for (int x = 0; x < d.size(); ++x) {
      image_of_closure.push_back(d.image(d.topology().down(x)));
      closure_of_image.push_back(d.topology().down(d(x)));
    }
  }
  bool agrees(PointSet u) const {
    PointSet l = 0, r = 0;
    for_each_point(u, [&](int x) {
      l |= image_of_closure[x];
      r |= closure_of_image[x];
    });
    return l == r;
  }
};

void require_exhaustive(const DynSystem& d) {
  if (d.size() > kClosedExhaustiveLimit)
    throw SpaceTooLarge("exhaustive closed-map check limited to " +
                        std::to_string(kClosedExhaustiveLimit) + " points");
}

}  // namespace

std::optional<PointSet> closed_violation_serial(const DynSystem& d) {
  require_exhaustive(d);
  const ClosedTables tab(d);
  const PointSet end = PointSet{1} << d.size();
  for (PointSet u = 0; u < end; ++u)
    if (!tab.agrees(u)) return u;
  return std::nullopt;
}

std::optional<PointSet> closed_violation(const DynSystem& d) {
  require_exhaustive(d);
  const ClosedTables tab(d);
  const std::int64_t end = std::int64_t{1} << d.size();
  constexpr std::int64_t block = 4096;
  // Blocks in increasing order keep the witness equal to the serial one.
  for (std::int64_t lo = 0; lo < end; lo += block) {
    const std::int64_t hi = std::min(end, lo + block);
    std::int64_t first = hi;
#pragma omp parallel for reduction(min : first) schedule(static)
    for (std::int64_t u = lo; u < hi; ++u)
      if (u < first && !tab.agrees(static_cast<PointSet>(u))) first = u;
    if (first < hi) return static_cast<PointSet>(first);
  }
  return std::nullopt;
}

std::optional<PointSet> closed_violation_by_points(const DynSystem& d) {
  const ClosedTables tab(d);
  for (int x = 0; x < d.size(); ++x)
    if (!tab.agrees(singleton(x))) return singleton(x);
  return std::nullopt;
}

MapPredicates map_predicates(const DynSystem& d) {
  MapPredicates p;
  p.continuous = is_continuous(d);
  if (d.size() <= kClosedExhaustiveLimit) {
    p.closed_witness = closed_violation(d);
    p.closed_exhaustive = true;
  } else {
    p.closed_witness = closed_violation_by_points(d);
  }
  p.closed = !p.closed_witness;
  p.compact_fibers = true;
  p.proper = p.closed && p.compact_fibers;
  std::vector<int> sorted = d.map();
  std::sort(sorted.begin(), sorted.end());
  p.invertible = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return p;
}

}  // namespace ordyn
