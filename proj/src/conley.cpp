#include "ordyn/conley.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <unordered_set>

#include "ordyn/errors.hpp"

namespace ordyn {

Relation inverse(const Relation& r) {
  Relation out(r.size(), 0);
  for (std::size_t x = 0; x < r.size(); ++x)
    for_each_point(r[x], [&](int y) { out[y] |= singleton(static_cast<int>(x)); });
  return out;
}

std::vector<std::pair<int, int>> pairs_of(const Relation& r) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t x = 0; x < r.size(); ++x)
    for_each_point(r[x], [&](int y) { out.emplace_back(static_cast<int>(x), y); });
  return out;
}

std::size_t subset_cap() {
  if (const char* env = std::getenv("RS_SUBSET_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSubsetCap;
}

void require_subset_sweep(const DynSystem& d) {
  const std::size_t cap = subset_cap();
  if (d.size() >= 63 || (std::size_t{1} << d.size()) > cap)
    throw SpaceTooLarge("subset sweep over 2^" + std::to_string(d.size()) +
                        " sets exceeds the cap of " + std::to_string(cap) +
                        " (set RS_SUBSET_CAP to raise it)");
}

bool is_attracting_nbhd(const DynSystem& d, PointSet u) {
  return subset_of(d.cycles_reached(d.closure(u)), d.interior(u));
}

bool is_repelling_nbhd(const DynSystem& d, PointSet u) {
  const PointSet outside = d.points() & ~d.interior(u);
  return (d.cycle_meets(d.closure(u)) & outside) == 0;
}

namespace {

// Exists tau >= 1 with step^tau(start) inside target. The sequence is
// eventually periodic, so stop at the first repeated set.
template <class Step>
bool some_iterate_inside(PointSet start, PointSet target, Step&& step) {
  std::unordered_set<PointSet> seen;
  PointSet s = start;
  for (;;) {
    s = step(s);
    if (subset_of(s, target)) return true;
    if (!seen.insert(s).second) return false;
  }
}

}  // namespace

bool is_trapping_region(const DynSystem& d, PointSet v) {
  if (!subset_of(d.image(v), v)) return false;
  return some_iterate_inside(d.closure(v), d.interior(v), [&](PointSet s) { return d.image(s); });
}

bool is_repelling_region(const DynSystem& d, PointSet v) {
  if (!subset_of(d.preimage(v), v)) return false;
  return some_iterate_inside(d.closure(v), d.interior(v),
                             [&](PointSet s) { return d.preimage(s); });
}

namespace {

bool test_subset(const DynSystem& d, NbhdKind kind, PointSet u) {
  switch (kind) {
    case NbhdKind::Attracting:
      return is_attracting_nbhd(d, u);
    case NbhdKind::Repelling:
      return is_repelling_nbhd(d, u);
    case NbhdKind::Trapping:
      return is_trapping_region(d, u);
    case NbhdKind::RepellingRegion:
      return is_repelling_region(d, u);
  }
  return false;
}

}  // namespace

std::vector<PointSet> subset_sweep_serial(const DynSystem& d, NbhdKind kind) {
  require_subset_sweep(d);
  std::vector<PointSet> out;
  const PointSet end = PointSet{1} << d.size();
  for (PointSet u = 0; u < end; ++u)
    if (test_subset(d, kind, u)) out.push_back(u);
  return out;
}

std::vector<PointSet> subset_sweep(const DynSystem& d, NbhdKind kind) {
  require_subset_sweep(d);
  const std::int64_t end = std::int64_t{1} << d.size();
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(end), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t u = 0; u < end; ++u)
    hit[static_cast<std::size_t>(u)] = test_subset(d, kind, static_cast<PointSet>(u)) ? 1 : 0;
  std::vector<PointSet> out;
  for (std::int64_t u = 0; u < end; ++u)
    if (hit[static_cast<std::size_t>(u)]) out.push_back(static_cast<PointSet>(u));
  return out;
}

SetRing anbhd(const DynSystem& d) { return SetRing(d.size(), subset_sweep(d, NbhdKind::Attracting)); }
SetRing rnbhd(const DynSystem& d) { return SetRing(d.size(), subset_sweep(d, NbhdKind::Repelling)); }
SetRing trapping_regions(const DynSystem& d) {
  return SetRing(d.size(), subset_sweep(d, NbhdKind::Trapping));
}

DistLattice anbhd_lattice(const DynSystem& d) { return ring_lattice(anbhd(d)); }

DualityCheck duality_check(const SetRing& an, const SetRing& rn) {
  DualityCheck c;
  const PointSet all = full_set(an.points());
  for (PointSet u : an.members())
    if (!rn.index_of(all & ~u)) {
      c.ok = false;
      c.witness = u;
      return c;
    }
  if (an.size() != rn.size()) {
    c.ok = false;
    for (PointSet r : rn.members())
      if (!an.index_of(all & ~r)) {
        c.witness = all & ~r;
        break;
      }
  }
  return c;
}

namespace {

struct PointSetHash {
  std::size_t operator()(PointSet s) const { return std::hash<PointSet>{}(s); }
};

struct PairHash {
  std::size_t operator()(const std::pair<PointSet, PointSet>& p) const {
    return std::hash<PointSet>{}(p.first * 0x9E3779B97F4A7C15ull ^ p.second);
  }
};

// Calls f(i, j) on all pairs i <= j when affordable, else on a fixed-seed
// sample of kHomPairBudget pairs. Returns whether the sweep was exhaustive.
template <class F>
bool for_pairs(std::size_t m, F&& f) {
  if (m * (m + 1) / 2 <= kHomPairBudget) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        if (!f(i, j)) return true;
    return true;
  }
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t k = 0; k < kHomPairBudget; ++k)
    if (!f(pick(rng), pick(rng))) break;
  return false;
}

}  // namespace

std::optional<Elem> AttLattice::index_of(PointSet a) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), a);
  if (it == sets.end() || *it != a) return std::nullopt;
  return static_cast<Elem>(it - sets.begin());
}

std::vector<PointSet> AttLattice::witnesses(Elem a) const {
  std::vector<PointSet> out;
  for (std::size_t i = 0; i < of_nbhd.size(); ++i)
    if (of_nbhd[i] == a) out.push_back(nbhds.member(i));
  return out;
}

AttLattice att_lattice(const DynSystem& d) { return att_lattice(d, anbhd(d)); }

AttLattice att_lattice(const DynSystem& d, SetRing nbhds) {
  AttLattice att;
  att.nbhds = std::move(nbhds);
  const auto& us = att.nbhds.members();
  std::vector<PointSet> images(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) images[i] = inv(d, us[i]);
  att.sets = images;
  std::sort(att.sets.begin(), att.sets.end());
  att.sets.erase(std::unique(att.sets.begin(), att.sets.end()), att.sets.end());
  att.lattice = close_under<PointSet, PointSetHash>(
      att.sets, [](PointSet a, PointSet b) { return a | b; },
      [&](PointSet a, PointSet b) { return inv(d, a & b); },
      [](PointSet s) { return Label::of_set(s); });
  if (att.lattice.size() != att.sets.size())
    throw InternalInconsistency("attractors not closed under the lattice operations");
  att.of_nbhd.resize(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) att.of_nbhd[i] = *att.index_of(images[i]);

  att.inv_hom_exhaustive = for_pairs(us.size(), [&](std::size_t i, std::size_t j) {
    const PointSet u = us[i], v = us[j];
    const bool ok = inv(d, u | v) == (images[i] | images[j]) &&
                    inv(d, u & v) == inv(d, images[i] & images[j]);
    if (!ok) {
      att.inv_homomorphism = false;
      att.inv_hom_witness = std::pair{u, v};
    }
    return ok;
  });
  return att;
}

std::optional<Elem> ArpLattice::index_of(PointSet a, PointSet r) const {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].a == a && pairs[i].r == r) return static_cast<Elem>(i);
  return std::nullopt;
}

ArpLattice arpair_lattice(const DynSystem& d, const AttLattice& att) {
  using Key = std::pair<PointSet, PointSet>;
  ArpLattice arp;
  const auto& us = att.nbhds.members();
  const PointSet all = d.points();
  std::vector<Key> keys(us.size());
  for (std::size_t i = 0; i < us.size(); ++i)
    keys[i] = {att.sets[att.of_nbhd[i]], inv_plus(d, all & ~us[i])};
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto join = [](const Key& p, const Key& q) { return Key{p.first | q.first, p.second & q.second}; };
  auto meet = [&](const Key& p, const Key& q) {
    return Key{inv(d, p.first & q.first), inv_plus(d, p.second | q.second)};
  };
  arp.lattice = close_under<Key, PairHash>(distinct, join, meet,
                                           [](const Key& k) { return Label::of_pair(k.first, k.second); });
  if (arp.lattice.size() != distinct.size())
    throw InternalInconsistency("AR pairs not closed under the pair operations");
  std::map<Key, Elem> pos;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    pos[distinct[i]] = static_cast<Elem>(i);
    arp.pairs.push_back({distinct[i].first, distinct[i].second, 0});
  }
  arp.of_nbhd.resize(us.size());
  for (std::size_t i = us.size(); i-- > 0;) {
    arp.of_nbhd[i] = pos.at(keys[i]);
    arp.pairs[arp.of_nbhd[i]].witness = us[i];
  }
  for_pairs(us.size(), [&](std::size_t i, std::size_t j) {
    const PointSet u = us[i], v = us[j];
    const Key ju{inv(d, u | v), inv_plus(d, all & ~(u | v))};
    const Key mu{inv(d, u & v), inv_plus(d, all & ~(u & v))};
    const bool ok = ju == join(keys[i], keys[j]) && mu == meet(keys[i], keys[j]);
    if (!ok) arp.varpi_homomorphism = false;
    return ok;
  });
  return arp;
}

namespace {

std::vector<DualRepeller> collect_duals(const DynSystem& d, const AttLattice& att,
                                        const MapPredicates& p) {
  std::vector<DualRepeller> out(att.sets.size());
  const PointSet all = d.points();
  const auto& us = att.nbhds.members();
  for (std::size_t i = 0; i < us.size(); ++i) {
    auto& dr = out[att.of_nbhd[i]];
    const PointSet v = alpha(d, all & ~us[i]);
    bool seen = false;
    for (const auto& [val, w] : dr.values) seen = seen || val == v;
    if (!seen) dr.values.emplace_back(v, us[i]);
  }
  for (auto& dr : out) {
    std::sort(dr.values.begin(), dr.values.end());
    dr.hypotheses = p.proper && p.continuous;
    if (dr.hypotheses && dr.values.size() == 1) dr.value = dr.values.front().first;
  }
  return out;
}

}  // namespace

DualRepeller dual_repeller(const DynSystem& d, const AttLattice& att, Elem a,
                           const MapPredicates& p) {
  return collect_duals(d, att, p).at(a);
}

std::vector<DualRepeller> dual_repellers(const DynSystem& d, const AttLattice& att,
                                         const MapPredicates& p) {
  return collect_duals(d, att, p);
}

PointSet require_dual(const DualRepeller& dr, const DynSystem& d) {
  if (dr.value) return *dr.value;
  std::string what = dr.hypotheses ? "dual repeller not unique:" : "system not proper and continuous;";
  what += " alpha(U^c) takes values";
  for (const auto& [v, w] : dr.values) what += " " + d.format(v) + " (U=" + d.format(w) + ")";
  throw HypothesisViolated(what);
}

std::optional<std::size_t> Components::index_of(PointSet cls) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == cls) return i;
  return std::nullopt;
}

namespace {

std::vector<ElemSet> membership(int n, const std::vector<PointSet>& family) {
  std::vector<ElemSet> mem(n, ElemSet(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i)
    for_each_point(family[i], [&](int x) { mem[x].set(i); });
  return mem;
}

}  // namespace

Components components_from_membership(int n, PointSet support, const std::vector<ElemSet>& mem,
                           Components::Kind kind) {
  Components c;
  c.kind = kind;
  c.support = support;
  c.class_of.assign(n, -1);
  std::vector<int> rep;
  for_each_point(support, [&](int x) {
    for (std::size_t k = 0; k < rep.size(); ++k)
      if (mem[rep[k]] == mem[x]) {
        c.class_of[x] = static_cast<int>(k);
        c.classes[k] |= singleton(x);
        return;
      }
    c.class_of[x] = static_cast<int>(rep.size());
    rep.push_back(x);
    c.classes.push_back(singleton(x));
  });
  const std::size_t m = rep.size();
  std::vector<ElemSet> rows(m, ElemSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (mem[rep[b]].is_subset_of(mem[rep[a]])) rows[a].set(b);
  c.order = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  return c;
}

Components recurrent_components(const DynSystem& d, const AttLattice& att, const ArpLattice& arp) {
  PointSet r = 0;
  for (PointSet c : d.cycles().cycle_sets) {
    bool ok = true;
    for (const auto& p : arp.pairs) ok = ok && subset_of(c, p.a | p.r);
    if (ok) r |= c;
  }
  return components_from_membership(d.size(), r, membership(d.size(), att.sets), Components::Kind::Recurrent);
}

Components strong_components(const DynSystem& d, const SetRing& nbhds) {
  return components_from_membership(d.size(), d.points(), membership(d.size(), nbhds.members()),
                         Components::Kind::Strong);
}

PointSet recurrent_set_via_duals(const AttLattice& att, const std::vector<PointSet>& duals) {
  PointSet out = ~PointSet{0};
  for (std::size_t i = 0; i < att.sets.size(); ++i) out &= att.sets[i] | duals[i];
  return out & full_set(att.nbhds.points());
}

Relation cospan_relation(const DynSystem& d, const Components& strong, const Components& rc) {
  const int n = d.size();
  Relation rel(n, 0);
  for (int x = 0; x < n; ++x) {
    const auto cx = static_cast<std::size_t>(strong.class_of[x]);
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (strong.order.leq(cx, static_cast<std::size_t>(strong.class_of[y]))) rel[x] |= singleton(y);
    }
    if (rc.index_of(strong.classes[cx])) rel[x] |= singleton(x);
  }
  return rel;
}

namespace {

std::optional<std::size_t> class_containing(const Components& c, PointSet s) {
  if (s == 0) return std::nullopt;
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    if (subset_of(s, c.classes[i])) return i;
  return std::nullopt;
}

}  // namespace

Relation limit_relation(const DynSystem& d, const Components& rc) {
  const int n = d.size();
  Relation rel(n, 0);
  for (int x = 0; x < n; ++x) {
    if (!d.cycles().is_periodic(x)) continue;
    const auto minus = class_containing(rc, orbital_alpha(d, x));
    if (!minus) continue;
    for (int y = 0; y < n; ++y) {
      const auto plus = class_containing(rc, omega(d, singleton(y)));
      if (plus && rc.order.leq(*minus, *plus)) rel[x] |= singleton(y);
    }
  }
  return rel;
}

Relation chain_step(const DynSystem& d) {
  const int n = d.size();
  const Topology& t = d.topology();
  std::vector<PointSet> co(n, 0);
  for (int c = 0; c < n; ++c)
    for_each_point(t.down(c), [&](int z) { co[c] |= t.up(z); });
  Relation e(n, 0);
  for (int x = 0; x < n; ++x)
    for_each_point(d.cycles().periodic(x), [&](int c) { e[x] |= co[c]; });
  return e;
}

Relation chain_relation(const DynSystem& d) {
  Relation c = chain_step(d);
  const int n = d.size();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (contains(c[i], k)) c[i] |= c[k];
  return c;
}

Components chain_components(const DynSystem& d, const Relation& c) {
  const int n = d.size();
  PointSet cr = 0;
  for (int x = 0; x < n; ++x)
    if (contains(c[x], x)) cr |= singleton(x);
  // Membership pattern: the reversed relation row, so that x <= y in the
  // derived order iff (x,y) is in the relation.
  std::vector<ElemSet> mem(n, ElemSet(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (contains(c[y], x) || x == y) mem[x].set(y);
  // x ~ y iff mutually related; for chain recurrent points mem rows coincide
  // exactly on such pairs.
  Components comp = components_from_membership(n, cr, mem, Components::Kind::Chain);
  const std::size_t m = comp.classes.size();
  std::vector<ElemSet> rows(m, ElemSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (contains(c[lowest(comp.classes[a])], lowest(comp.classes[b]))) rows[a].set(b);
  comp.order = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  return comp;
}

std::optional<std::vector<PointSet>> Analysis::unique_duals() const {
  std::vector<PointSet> out;
  for (const auto& dr : duals) {
    if (!dr.value) return std::nullopt;
    out.push_back(*dr.value);
  }
  return out;
}

Analysis analyze(const DynSystem& d) {
  Analysis a;
  a.d = d;
  a.predicates = map_predicates(d);
  a.separation = separation(d.topology());
  a.hypotheses = hypotheses_of(a.predicates, a.separation);
  require_subset_sweep(d);
  a.anbhd = anbhd(d);
  a.rnbhd = rnbhd(d);
  a.trapping = trapping_regions(d);
  a.duality = duality_check(a.anbhd, a.rnbhd);
  a.att = att_lattice(d, a.anbhd);
  a.att_trapping = att_lattice(d, a.trapping);
  a.arp = arpair_lattice(d, a.att);
  a.duals = dual_repellers(d, a.att, a.predicates);
  a.rc = recurrent_components(d, a.att, a.arp);
  a.sc = strong_components(d, a.anbhd);
  a.sc_trapping = strong_components(d, a.trapping);
  a.rel_c = chain_relation(d);
  a.chain = chain_components(d, a.rel_c);
  a.rel_r = cospan_relation(d, a.sc, a.rc);
  a.rel_s = cospan_relation(d, a.sc_trapping, a.rc);
  a.rel_r_limit = limit_relation(d, a.rc);
  return a;
}

namespace {

const std::vector<std::string> kNone{};
const std::vector<std::string> kContProper{"continuous", "proper"};

}  // namespace

Report conley_checks(const Analysis& a) {
  const DynSystem& d = a.d;
  Report rep;
  rep.suite = "conley";
  rep.hypotheses = a.hypotheses;
  const PointSet all = d.points();

  {
    const auto v = a.anbhd.closure_violation();
    rep.add("ANbhd closed under union and intersection", kNone, !v,
            v ? d.format(v->first) + "," + d.format(v->second) : "");
  }
  rep.add("complement maps ANbhd onto RNbhd", kNone, a.duality.ok,
          a.duality.witness ? "U=" + d.format(*a.duality.witness) : "");
  {
    std::string w;
    for (PointSet v : a.trapping.members())
      if (!a.anbhd.index_of(v)) {
        w = "V=" + d.format(v);
        break;
      }
    rep.add("trapping regions are attracting neighborhoods", kNone, w.empty(), w);
  }
  rep.add("Inv is a homomorphism ANbhd -> Att", kNone, a.att.inv_homomorphism,
          a.att.inv_hom_witness ? d.format(a.att.inv_hom_witness->first) + "," +
                                      d.format(a.att.inv_hom_witness->second)
                                : "");
  rep.add("U -> (Inv U, Inv+ U^c) is a homomorphism", kNone, a.arp.varpi_homomorphism);
  {
    std::string w;
    for (PointSet u : a.anbhd.members()) {
      const PointSet at = inv(d, u);
      if (at != inv(d, d.closure(u)) || !subset_of(at, d.interior(u))) {
        w = "U=" + d.format(u);
        break;
      }
    }
    rep.add("A = Inv(U) = Inv(cl U) inside int U", kNone, w.empty(), w);
  }
  rep.add("trapping regions give the same attractors", kContProper,
          a.att_trapping.sets == a.att.sets);
  {
    std::string w;
    for (const auto& p : a.arp.pairs) {
      if ((p.a & p.r) != 0 || d.image(p.a) != p.a || !subset_of(d.image(p.r), p.r))
        w = "(" + d.format(p.a) + "," + d.format(p.r) + ")";
    }
    rep.add("AR pairs disjoint, A invariant, R forward invariant", kNone, w.empty(), w);
  }
  {
    bool ok = true;
    const auto& l = a.arp.lattice;
    for (Elem i = 0; i < l.size(); ++i)
      for (Elem j = 0; j < l.size(); ++j) {
        const auto& p = a.arp.pairs[i];
        const auto& q = a.arp.pairs[j];
        ok = ok && l.leq(i, j) == (subset_of(p.a, q.a) && subset_of(q.r, p.r));
      }
    rep.add("AR pair order is A inside A' and R' inside R", kNone, ok);
  }
  {
    std::string w;
    for (PointSet u : a.anbhd.members()) {
      const PointSet om = omega(d, u);
      if (om != inv(d, d.closure(u)) || !subset_of(om, d.interior(u))) {
        w = "U=" + d.format(u);
        break;
      }
    }
    rep.add("omega(U) = Inv(cl U) inside int U", kContProper, w.empty(), w);
  }
  const auto duals = a.unique_duals();
  {
    std::string w;
    for (std::size_t i = 0; i < a.duals.size(); ++i)
      if (a.duals[i].values.size() != 1) w = "A=" + d.format(a.att.sets[i]);
    rep.add("alpha(U^c) independent of the witness U", kContProper, w.empty(), w);
  }
  if (duals) {
    bool iso = a.arp.pairs.size() == a.att.sets.size();
    for (std::size_t i = 0; iso && i < a.att.sets.size(); ++i)
      iso = a.arp.index_of(a.att.sets[i], (*duals)[i]).has_value();
    rep.add("A -> (A, A*) is an isomorphism Att -> ARpair", kContProper, iso);
    std::string w;
    for (std::size_t i = 0; i < a.att.sets.size(); ++i) {
      PointSet basin = all;
      for (PointSet u : a.att.nbhds.members())
        if (omega(d, u) == a.att.sets[i]) basin &= all & ~u;
      if (basin != (*duals)[i]) w = "A=" + d.format(a.att.sets[i]);
    }
    rep.add("A* = intersection of U^c over omega(U) = A", kContProper, w.empty(), w);
    rep.add("R(phi) = intersection of A u A*", kContProper,
            recurrent_set_via_duals(a.att, *duals) == a.rc.support);
  } else {
    rep.add("A -> (A, A*) is an isomorphism Att -> ARpair", kContProper, false,
            "dual repellers not unique");
  }
  {
    std::string w;
    for (PointSet xi : a.rc.classes)
      if (d.image(xi) != xi) w = d.format(xi);
    rep.add("recurrent components are invariant", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (PointSet xi : a.rc.classes)
      for (PointSet at : a.att.sets)
        if ((xi & at) != 0 && !subset_of(xi, at)) w = d.format(xi) + " vs " + d.format(at);
    rep.add("components meet attractors only by inclusion", kNone, w.empty(), w);
  }
  {
    std::string w;
    bool wedge_is_cap = true;
    for (PointSet xi : a.rc.classes) {
      PointSet wedge = all, cap = all, reps = all;
      for (PointSet at : a.att.sets)
        if (subset_of(xi, at)) {
          wedge = inv(d, wedge & at);
          cap &= at;
        }
      for (const auto& p : a.arp.pairs)
        if (subset_of(xi, p.r)) reps &= p.r;
      if ((wedge & reps) != xi) w = d.format(xi);
      wedge_is_cap = wedge_is_cap && wedge == cap;
    }
    rep.add("components are meets of attractors and repellers", kNone, w.empty(), w);
    rep.add("meet of attractors equals their intersection", kNone, wedge_is_cap);
  }
  rep.add("recurrent set nonempty", kNone, d.size() == 0 || a.rc.support != 0);
  {
    std::string w;
    for (const auto& cyc : d.cycles().cycle_sets)
      for (const auto& p : a.arp.pairs)
        if (!subset_of(cyc, p.a) && !subset_of(cyc, p.r)) w = d.format(cyc);
    rep.add("complete orbits lie in A or in R for every pair", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (int x = 0; x < d.size(); ++x) {
      const PointSet om = omega(d, singleton(x));
      int hits = 0;
      for (PointSet xi : a.rc.classes) hits += subset_of(om, xi) ? 1 : 0;
      const bool periodic_ok =
          !d.cycles().is_periodic(x) || a.rc.class_of[x] < 0 ||
          subset_of(om, a.rc.classes[a.rc.class_of[x]]);
      if (hits != 1 || !periodic_ok) w = "x=" + d.name_of(x);
    }
    rep.add("omega(x) inside a unique recurrent component", kContProper, w.empty(), w);
  }
  {
    // Equivalent recurrent points are equivalent in X, and the induced map
    // RC -> SC is an order-embedding.
    std::string w;
    const auto sc_of = [&](std::size_t i) { return a.sc.class_of[lowest(a.rc.classes[i])]; };
    for (std::size_t i = 0; i < a.rc.classes.size(); ++i) {
      const PointSet host = a.sc.classes[sc_of(i)];
      if (!subset_of(a.rc.classes[i], host)) w = d.format(a.rc.classes[i]);
      for (std::size_t j = 0; j < a.rc.classes.size(); ++j)
        if (a.rc.order.leq(i, j) != a.sc.order.leq(sc_of(i), sc_of(j)))
          w = "order differs at " + d.format(a.rc.classes[i]) + "," + d.format(a.rc.classes[j]);
    }
    rep.add("recurrent components embed in strong components", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (PointSet xi : a.rc.classes)
      if (!a.sc.index_of(xi)) w = d.format(xi);
    rep.add("recurrent components are strong components", {"proper", "hausdorff"}, w.empty(), w);
  }
  {
    std::string w;
    for (int x = 0; x < d.size(); ++x)
      if (!subset_of(a.rel_r[x], a.rel_s[x])) w = "x=" + d.name_of(x);
    rep.add("relation R inside relation S", kContProper, w.empty(), w);
  }
  {
    std::string w;
    const PointSet om_x = omega(d, all);
    for (int x = 0; x < d.size(); ++x) {
      if (!contains(om_x, x)) continue;
      const PointSet mask = all & ~singleton(x);
      if ((a.rel_r[x] & mask) != (a.rel_r_limit[x] & mask)) w = "x=" + d.name_of(x);
    }
    rep.add("cospan and limit-set forms of R agree on omega(X)", kContProper, w.empty(), w);
  }
  {
    std::string w;
    for (PointSet u : a.anbhd.members()) {
      const PointSet stray = (u & a.rc.support) & ~inv(d, u);
      if (stray != 0) w = "U=" + d.format(u);
    }
    rep.add("recurrent points of U lie in Inv(U)", kNone, w.empty(), w);
  }
  return rep;
}

}  // namespace ordyn
