#include "ordyn/topology.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "ordyn/errors.hpp"

namespace ordyn {

Topology::Topology(const Preorder& specialization) : spec_(specialization) {
  if (spec_.size() > static_cast<std::size_t>(kMaxPoints))
    throw SpaceTooLarge("phase space limited to " + std::to_string(kMaxPoints) + " points");
  n_ = static_cast<int>(spec_.size());
  up_.assign(n_, 0);
  down_.assign(n_, 0);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (spec_.leq(x, y)) {
        up_[x] |= singleton(y);
        down_[y] |= singleton(x);
      }
}

Topology Topology::discrete(int n) { return Topology(Preorder(static_cast<std::size_t>(n))); }

Topology Topology::from_opens(int n, const std::vector<PointSet>& opens) {
  if (n > kMaxPoints) throw SpaceTooLarge("phase space limited to 64 points");
  const PointSet all = full_set(n);
  for (std::size_t i = 0; i < opens.size(); ++i)
    if (!subset_of(opens[i], all))
      throw InvalidRelation("open set " + std::to_string(i) + " has points outside X", {i});
  const std::unordered_set<PointSet> family(opens.begin(), opens.end());
  if (!family.count(0) || !family.count(all))
    throw InvalidRelation("open family must contain the empty set and X", {});
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j)
      if (!family.count(opens[i] | opens[j]) || !family.count(opens[i] & opens[j]))
        throw InvalidRelation("open family not closed under union/intersection at sets " +
                                  std::to_string(i) + "," + std::to_string(j),
                              {i, j});
  std::vector<ElemSet> rows(n, ElemSet(n));
  for (int x = 0; x < n; ++x) {
    PointSet m = all;
    for (PointSet u : opens)
      if (contains(u, x)) m &= u;
    for_each_point(m, [&](int y) { rows[x].set(y); });
  }
  return Topology(Preorder::from_up_rows(std::move(rows)));
}

PointSet Topology::closure(PointSet u) const {
  PointSet c = 0;
  for_each_point(u, [&](int x) { c |= down_[x]; });
  return c;
}

PointSet Topology::interior(PointSet u) const {
  PointSet i = 0;
  for_each_point(u, [&](int x) {
    if (subset_of(up_[x], u)) i |= singleton(x);
  });
  return i;
}

std::vector<PointSet> Topology::opens(std::size_t cap) const {
  std::unordered_set<PointSet> seen{0};
  std::vector<PointSet> out{0};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int x = 0; x < n_; ++x) {
      const PointSet v = out[k] | up_[x];
      if (seen.insert(v).second) {
        if (out.size() >= cap) throw SpaceTooLarge("open-set count exceeds cap");
        out.push_back(v);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Separation separation(const Topology& t) {
  Separation s{true, true, true};
  const int n = t.size();
  for (int x = 0; x < n; ++x) {
    if (t.minimal_nbhd(x) != singleton(x)) s.discrete = false;
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (contains(t.minimal_nbhd(x), y)) s.t1 = false;
      if ((t.minimal_nbhd(x) & t.minimal_nbhd(y)) != 0) s.hausdorff = false;
    }
  }
  if (s.discrete != s.t1 || s.t1 != s.hausdorff)
    throw InternalInconsistency("finite separation axioms disagree");
  return s;
}

}  // namespace ordyn
