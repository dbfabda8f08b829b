#pragma once

#include <vector>

#include "ordyn/bits.hpp"
#include "ordyn/poset.hpp"

namespace ordyn {

// Finite Alexandrov topology. Opens are the up-sets of the specialization
// preorder, closed sets the down-sets.
class Topology {
 public:
  Topology() = default;
  // Throws SpaceTooLarge above kMaxPoints.
  explicit Topology(const Preorder& specialization);

  static Topology discrete(int n);
  // Rejects families not closed under pairwise union/intersection or missing
  // the empty set or X; the InvalidRelation witness names the offending pair
  // as indices into `opens`.
  static Topology from_opens(int n, const std::vector<PointSet>& opens);

  int size() const { return n_; }
  PointSet points() const { return full_set(n_); }
  const Preorder& specialization() const { return spec_; }

  // Up-set of x: the smallest open set containing x.
  PointSet minimal_nbhd(int x) const { return up_[x]; }
  PointSet up(int x) const { return up_[x]; }
  PointSet down(int x) const { return down_[x]; }
  bool leq(int x, int y) const { return contains(up_[x], y); }

  PointSet closure(PointSet u) const;
  PointSet interior(PointSet u) const;
  bool is_open(PointSet u) const { return interior(u) == u; }
  bool is_closed(PointSet u) const { return closure(u) == u; }

  // All open sets in increasing value; throws SpaceTooLarge past cap.
  std::vector<PointSet> opens(std::size_t cap = kDownSetCap) const;

  bool operator==(const Topology& o) const { return up_ == o.up_; }

 private:
  int n_ = 0;
  Preorder spec_;
  std::vector<PointSet> up_;
  std::vector<PointSet> down_;
};

struct Separation {
  bool discrete = false;
  bool t1 = false;
  bool hausdorff = false;
};

// For finite spaces the three flags coincide; computed independently and
// InternalInconsistency is thrown if they ever disagree.
Separation separation(const Topology& t);

}  // namespace ordyn
