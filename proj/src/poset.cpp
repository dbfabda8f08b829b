#include "ordyn/poset.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "ordyn/errors.hpp"

namespace ordyn {

namespace {

std::vector<ElemSet> identity_rows(std::size_t n) {
  std::vector<ElemSet> rows(n, ElemSet(n));
  for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  return rows;
}

void warshall(std::vector<ElemSet>& up) {
  const std::size_t n = up.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up[i][k]) up[i] |= up[k];
}

void check_pairs(std::size_t n, const std::vector<Pair>& pairs) {
  for (const auto& [i, j] : pairs)
    if (i >= n || j >= n)
      throw InvalidRelation("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range for n=" + std::to_string(n),
                            {i, j});
}

}  // namespace

Preorder::Preorder(std::size_t n) : up_(identity_rows(n)) { rebuild_down(); }

void Preorder::rebuild_down() {
  const std::size_t n = up_.size();
  down_.assign(n, ElemSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up_[i].find_first(); j != ElemSet::npos; j = up_[i].find_next(j)) down_[j].set(i);
}

Preorder Preorder::closure_of(std::size_t n, const std::vector<Pair>& pairs) {
  check_pairs(n, pairs);
  Preorder p(n);
  for (const auto& [i, j] : pairs) p.up_[i].set(j);
  warshall(p.up_);
  p.rebuild_down();
  return p;
}

Preorder Preorder::from_pairs(std::size_t n, const std::vector<Pair>& pairs) {
  check_pairs(n, pairs);
  std::vector<ElemSet> rows = identity_rows(n);
  for (const auto& [i, j] : pairs) rows[i].set(j);
  return from_up_rows(std::move(rows));
}

Preorder Preorder::from_up_rows(std::vector<ElemSet> up) {
  const std::size_t n = up.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].size() != n) throw InvalidRelation("row size mismatch", {i});
    if (!up[i][i]) throw InvalidRelation("not reflexive at " + std::to_string(i), {i});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up[i].find_first(); j != ElemSet::npos; j = up[i].find_next(j))
      if (!up[j].is_subset_of(up[i])) {
        const ElemSet missing = up[j] - up[i];
        const std::size_t k = missing.find_first();
        throw InvalidRelation("not transitive: " + std::to_string(i) + "<=" + std::to_string(j) +
                                  "<=" + std::to_string(k) + " but not " + std::to_string(i) +
                                  "<=" + std::to_string(k),
                              {i, j, k});
      }
  Preorder p;
  p.up_ = std::move(up);
  p.rebuild_down();
  return p;
}

bool Preorder::is_antisymmetric() const {
  for (std::size_t i = 0; i < size(); ++i)
    if ((up_[i] & down_[i]).count() != 1) return false;
  return true;
}

std::vector<Pair> Preorder::strict_pairs() const {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (auto j = up_[i].find_first(); j != ElemSet::npos; j = up_[i].find_next(j))
      if (j != i) out.emplace_back(i, j);
  return out;
}

FinitePoset::FinitePoset(Preorder p) : Preorder(std::move(p)) {
  for (std::size_t i = 0; i < size(); ++i) {
    ElemSet both = up_[i] & down_[i];
    both.reset(i);
    if (both.any()) {
      const std::size_t j = both.find_first();
      throw InvalidRelation("not antisymmetric: " + std::to_string(i) + " and " + std::to_string(j),
                            {i, j});
    }
  }
}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return FinitePoset(Preorder::closure_of(n, pairs));
}

FinitePoset FinitePoset::antichain(std::size_t n) { return FinitePoset(Preorder(n)); }

std::vector<std::size_t> FinitePoset::lower_covers(std::size_t j) const {
  ElemSet below = down_[j];
  below.reset(j);
  std::vector<std::size_t> out;
  for (auto i = below.find_first(); i != ElemSet::npos; i = below.find_next(i)) {
    ElemSet between = up_[i] & below;
    between.reset(i);
    if (between.none()) out.push_back(i);
  }
  return out;
}

std::vector<Pair> FinitePoset::hasse() const {
  std::vector<Pair> out;
  for (std::size_t j = 0; j < size(); ++j)
    for (std::size_t i : lower_covers(j)) out.emplace_back(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> FinitePoset::levels() const {
  const std::vector<std::size_t> order = [&] {
    std::vector<std::size_t> idx(size());
    for (std::size_t i = 0; i < size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return down_[a].count() < down_[b].count(); });
    return idx;
  }();
  std::vector<std::size_t> level(size(), 0);
  for (std::size_t j : order)
    for (auto i = down_[j].find_first(); i != ElemSet::npos; i = down_[j].find_next(i))
      if (i != j) level[j] = std::max(level[j], level[i] + 1);
  return level;
}

std::vector<std::size_t> FinitePoset::linear_extension() const {
  const auto level = levels();
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return level[a] < level[b]; });
  return idx;
}

Condensation condense(const Preorder& p) {
  const std::size_t n = p.size();
  Condensation c;
  c.quotient.assign(n, n);
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.quotient[i] != n) continue;
    const ElemSet cls = p.up(i) & p.down(i);
    const std::size_t id = c.classes.size();
    for (auto j = cls.find_first(); j != ElemSet::npos; j = cls.find_next(j)) c.quotient[j] = id;
    c.classes.push_back(cls);
    rep.push_back(i);
  }
  const std::size_t m = rep.size();
  std::vector<ElemSet> rows(m, ElemSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (p.leq(rep[a], rep[b])) rows[a].set(b);
  c.poset = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  return c;
}

bool is_down_set(const Preorder& p, const ElemSet& s) {
  for (auto j = s.find_first(); j != ElemSet::npos; j = s.find_next(j))
    if (!p.down(j).is_subset_of(s)) return false;
  return true;
}

bool is_up_set(const Preorder& p, const ElemSet& s) {
  for (auto j = s.find_first(); j != ElemSet::npos; j = s.find_next(j))
    if (!p.up(j).is_subset_of(s)) return false;
  return true;
}

namespace {

// Elements in a linear extension; including x requires everything below it.
template <class Visit>
void walk_down_sets(const FinitePoset& p, std::size_t cap, Visit&& visit) {
  const auto order = p.linear_extension();
  const std::size_t n = p.size();
  ElemSet cur(n);
  std::size_t seen = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      if (++seen > cap)
        throw SpaceTooLarge("down-set count exceeds cap " + std::to_string(cap));
      visit(cur);
      return;
    }
    const std::size_t x = order[k];
    rec(k + 1);
    ElemSet below = p.down(x);
    below.reset(x);
    if (below.is_subset_of(cur)) {
      cur.set(x);
      rec(k + 1);
      cur.reset(x);
    }
  };
  rec(0);
}

}  // namespace

std::vector<ElemSet> down_sets(const FinitePoset& p, std::size_t cap) {
  std::vector<ElemSet> out;
  walk_down_sets(p, cap, [&](const ElemSet& s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), elemset_less);
  return out;
}

std::size_t count_down_sets(const FinitePoset& p, std::size_t cap) {
  std::size_t c = 0;
  walk_down_sets(p, cap, [&](const ElemSet&) { ++c; });
  return c;
}

bool is_order_preserving(const Preorder& dom, const Preorder& cod, const OrderMap& f) {
  if (f.size() != dom.size()) return false;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (auto j = dom.up(i).find_first(); j != ElemSet::npos; j = dom.up(i).find_next(j))
      if (!cod.leq(f[i], f[j])) return false;
  return true;
}

bool is_order_embedding(const Preorder& dom, const Preorder& cod, const OrderMap& f) {
  if (f.size() != dom.size()) return false;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (dom.leq(i, j) != cod.leq(f[i], f[j])) return false;
  return true;
}

std::optional<OrderMap> are_isomorphic(const FinitePoset& p, const FinitePoset& q,
                                       std::size_t guard) {
  const std::size_t n = p.size();
  if (n > guard || q.size() > guard)
    throw SpaceTooLarge("isomorphism search limited to " + std::to_string(guard) + " elements");
  if (q.size() != n) return std::nullopt;
  if (p.strict_pairs().size() != q.strict_pairs().size()) return std::nullopt;

  const auto lp = p.levels();
  const auto lq = q.levels();
  auto signature = [](const FinitePoset& s, const std::vector<std::size_t>& lv, std::size_t i) {
    return std::tuple(lv[i], s.up(i).count(), s.down(i).count());
  };
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> sp(n), sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    sp[i] = signature(p, lp, i);
    sq[i] = signature(q, lq, i);
  }
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  const auto order = p.linear_extension();
  OrderMap map(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) return true;
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || sp[x] != sq[y]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        const std::size_t a = order[t];
        ok = p.leq(a, x) == q.leq(map[a], y) && p.leq(x, a) == q.leq(y, map[a]);
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = true;
      if (rec(k + 1)) return true;
      used[y] = false;
      map[x] = n;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

FinitePoset induced_poset(const FinitePoset& p, const std::vector<std::size_t>& elems) {
  const std::size_t m = elems.size();
  std::vector<ElemSet> rows(m, ElemSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (p.leq(elems[a], elems[b])) rows[a].set(b);
  return FinitePoset(Preorder::from_up_rows(std::move(rows)));
}

bool elemset_less(const ElemSet& a, const ElemSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace ordyn
