#include "ordyn/oracle.hpp"

#include <functional>
#include <vector>

namespace ordyn {

namespace {

// S_0 .. S_{2H} with S_{t+1} = step(S_t).
std::vector<PointSet> trajectory(PointSet s0, std::uint64_t h,
                                 const std::function<PointSet(PointSet)>& step) {
  std::vector<PointSet> s(2 * h + 1);
  s[0] = s0;
  for (std::size_t t = 1; t < s.size(); ++t) s[t] = step(s[t - 1]);
  return s;
}

PointSet limit_set(const DynSystem& d, const std::vector<PointSet>& s, std::uint64_t h) {
  std::vector<PointSet> suffix(s.size() + 1, 0);
  for (std::size_t t = s.size(); t-- > 0;) suffix[t] = suffix[t + 1] | s[t];
  PointSet out = d.points();
  for (std::uint64_t t = 0; t <= h; ++t) out &= d.closure(suffix[t]);
  return out;
}

// Exists tau in [1, H] such that inside(s_t) for all t in [tau, 2H].
bool eventually(const std::vector<PointSet>& s, std::uint64_t h, PointSet target) {
  std::size_t tau = 1;
  for (std::size_t t = 0; t < s.size(); ++t)
    if (!subset_of(s[t], target)) tau = t + 1;
  return tau <= h;
}

}  // namespace

std::optional<std::uint64_t> oracle_horizon(const DynSystem& d) {
  const std::uint64_t h = static_cast<std::uint64_t>(d.size()) + d.cycles().lcm;
  if (h > kOracleHorizonGuard) return std::nullopt;
  return h;
}

std::optional<PointSet> omega_definitional(const DynSystem& d, PointSet u) {
  const auto h = oracle_horizon(d);
  if (!h) return std::nullopt;
  return limit_set(d, trajectory(u, *h, [&](PointSet s) { return d.image(s); }), *h);
}

std::optional<PointSet> alpha_definitional(const DynSystem& d, PointSet u) {
  const auto h = oracle_horizon(d);
  if (!h) return std::nullopt;
  return limit_set(d, trajectory(u, *h, [&](PointSet s) { return d.preimage(s); }), *h);
}

std::optional<bool> attracting_definitional(const DynSystem& d, PointSet u) {
  const auto h = oracle_horizon(d);
  if (!h) return std::nullopt;
  const auto s = trajectory(d.closure(u), *h, [&](PointSet x) { return d.image(x); });
  return eventually(s, *h, d.interior(u));
}

std::optional<bool> repelling_definitional(const DynSystem& d, PointSet u) {
  const auto h = oracle_horizon(d);
  if (!h) return std::nullopt;
  const auto s = trajectory(d.closure(u), *h, [&](PointSet x) { return d.preimage(x); });
  return eventually(s, *h, d.interior(u));
}

std::optional<bool> trapping_definitional(const DynSystem& d, PointSet v) {
  const auto h = oracle_horizon(d);
  if (!h) return std::nullopt;
  if (!subset_of(d.image(v), v)) return false;
  PointSet s = d.closure(v);
  const PointSet target = d.interior(v);
  for (std::uint64_t t = 1; t <= *h; ++t) {
    s = d.image(s);
    if (subset_of(s, target)) return true;
  }
  return false;
}

namespace {

template <class Pred>
PointSet union_of_subsets(PointSet u, Pred&& keep) {
  PointSet out = 0;
  PointSet s = 0;
  do {
    if (keep(s)) out |= s;
    s = (s - u) & u;
  } while (s != 0);
  return out;
}

}  // namespace

PointSet inv_by_subsets(const DynSystem& d, PointSet u) {
  return union_of_subsets(u, [&](PointSet s) { return d.image(s) == s; });
}

PointSet inv_plus_by_subsets(const DynSystem& d, PointSet u) {
  return union_of_subsets(u, [&](PointSet s) { return subset_of(d.image(s), s); });
}

}  // namespace ordyn
