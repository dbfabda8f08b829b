#include "ordyn/lattice.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace ordyn {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

LatticeError tables_error(const std::string& what, std::vector<std::size_t> w) {
  return LatticeError(LatticeError::Kind::InvalidTables, what, std::move(w));
}

}  // namespace

std::string Label::format(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::None:
      return "";
    case Kind::Text:
      return text;
    case Kind::Set:
      return format_set(a, names);
    case Kind::Pair:
      return "(" + format_set(a, names) + "," + format_set(r, names) + ")";
  }
  return "";
}

std::optional<Elem> DistLattice::find(const Label& l) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == l) return static_cast<Elem>(i);
  return std::nullopt;
}

DistLattice DistLattice::from_tables(std::vector<Label> labels, std::vector<Elem> join,
                                     std::vector<Elem> meet) {
  const std::size_t n = labels.size();
  if (n == 0) throw tables_error("lattice must be nonempty", {});
  if (n > 65535) throw SpaceTooLarge("lattice too large for 16-bit tables");
  if (join.size() != n * n || meet.size() != n * n)
    throw tables_error("tables must be n*n", {});
  DistLattice l;
  l.labels_ = std::move(labels);
  l.join_.resize(n * n);
  l.meet_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (join[i] >= n || meet[i] >= n) throw tables_error("table entry out of range", {i / n, i % n});
    l.join_[i] = static_cast<std::uint16_t>(join[i]);
    l.meet_[i] = static_cast<std::uint16_t>(meet[i]);
  }
  l.validate();
  return l;
}

void DistLattice::validate() {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    if (join(a, a) != a || meet(a, a) != a) throw tables_error("not idempotent at " + idx(a), {a});
    for (std::size_t b = 0; b < n; ++b) {
      if (join(a, b) != join(b, a) || meet(a, b) != meet(b, a))
        throw tables_error("not commutative at " + idx(a) + "," + idx(b), {a, b});
      if (join(a, meet(a, b)) != a || meet(a, join(a, b)) != a)
        throw tables_error("absorption fails at " + idx(a) + "," + idx(b), {a, b});
      if ((join(a, b) == b) != (meet(a, b) == a))
        throw tables_error("join and meet induce different orders at " + idx(a) + "," + idx(b),
                           {a, b});
    }
  }
  std::vector<ElemSet> rows(n, ElemSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (join(a, b) == b) rows[a].set(b);
  try {
    order_ = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  } catch (const InvalidRelation& e) {
    throw tables_error(std::string("join does not induce a partial order: ") + e.what(), e.witness);
  }
  bool have_bot = false, have_top = false;
  for (std::size_t a = 0; a < n; ++a) {
    if (order_.up(a).count() == n) bot_ = static_cast<Elem>(a), have_bot = true;
    if (order_.down(a).count() == n) top_ = static_cast<Elem>(a), have_top = true;
  }
  if (!have_bot || !have_top)
    throw LatticeError(LatticeError::Kind::NotALattice, "no bottom or top element", {});

  if (n <= 128) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const ElemSet ub = order_.up(a) & order_.up(b);
        if (!ub[join(a, b)] || !ub.is_subset_of(order_.up(join(a, b))))
          throw tables_error("join is not the least upper bound at " + idx(a) + "," + idx(b), {a, b});
        const ElemSet lb = order_.down(a) & order_.down(b);
        if (!lb[meet(a, b)] || !lb.is_subset_of(order_.down(meet(a, b))))
          throw tables_error("meet is not the greatest lower bound at " + idx(a) + "," + idx(b),
                             {a, b});
      }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
            throw LatticeError(LatticeError::Kind::NotDistributive,
                               "distributivity fails at (" + idx(a) + "," + idx(b) + "," + idx(c) +
                                   ")",
                               {a, b, c});
    return;
  }
  // Large lattices: distributive iff a -> {j in J : j <= a} is an isomorphism
  // onto the down-sets of J carrying join/meet to union/intersection.
  try {
    birkhoff_representation(*this, prime_ideals_by_join_irreducibles(*this));
  } catch (const InternalInconsistency& e) {
    throw LatticeError(LatticeError::Kind::NotDistributive, e.what(), {});
  }
}

DistLattice build_lattice(std::vector<Label> labels, const std::vector<Pair>& leq) {
  const std::size_t n = labels.size();
  FinitePoset p;
  try {
    p = FinitePoset(Preorder::from_pairs(n, leq));
  } catch (const InvalidRelation& e) {
    throw LatticeError(LatticeError::Kind::NotALattice, std::string("order invalid: ") + e.what(),
                       e.witness);
  }
  std::vector<Elem> jt(n * n), mt(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ElemSet ub = p.up(a) & p.up(b);
      const ElemSet lb = p.down(a) & p.down(b);
      std::optional<std::size_t> lub, glb;
      for (auto c = ub.find_first(); c != ElemSet::npos; c = ub.find_next(c))
        if (ub.is_subset_of(p.up(c))) lub = c;
      for (auto c = lb.find_first(); c != ElemSet::npos; c = lb.find_next(c))
        if (lb.is_subset_of(p.down(c))) glb = c;
      if (!lub || !glb)
        throw LatticeError(LatticeError::Kind::NotALattice,
                           "no " + std::string(!lub ? "least upper" : "greatest lower") +
                               " bound for " + idx(a) + "," + idx(b),
                           {a, b});
      jt[a * n + b] = static_cast<Elem>(*lub);
      mt[a * n + b] = static_cast<Elem>(*glb);
    }
  return DistLattice::from_tables(std::move(labels), std::move(jt), std::move(mt));
}

DistLattice build_lattice_from_tables(std::vector<Label> labels, const std::vector<Triple>& join,
                                      const std::vector<Triple>& meet) {
  const std::size_t n = labels.size();
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> jt(n * n, unset), mt(n * n, unset);
  auto fill = [&](std::vector<Elem>& t, const std::vector<Triple>& triples, const char* what) {
    for (const auto& [i, j, k] : triples) {
      if (i >= n || j >= n || k >= n) throw tables_error(std::string(what) + " triple out of range", {i, j, k});
      for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
        Elem& slot = t[x * n + y];
        if (slot != unset && slot != k)
          throw tables_error(std::string(what) + " table inconsistent at " + idx(i) + "," + idx(j),
                             {i, j});
        slot = static_cast<Elem>(k);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      Elem& d = t[a * n + a];
      if (d == unset) d = static_cast<Elem>(a);
    }
    for (std::size_t i = 0; i < n * n; ++i)
      if (t[i] == unset)
        throw tables_error(std::string(what) + " table missing entry " + idx(i / n) + "," + idx(i % n),
                           {i / n, i % n});
  };
  fill(jt, join, "join");
  fill(mt, meet, "meet");
  return DistLattice::from_tables(std::move(labels), std::move(jt), std::move(mt));
}

std::vector<JoinIrreducible> join_irreducibles(const DistLattice& l) {
  std::vector<JoinIrreducible> out;
  for (Elem j = 0; j < l.size(); ++j) {
    if (j == l.bot()) continue;
    Elem s = l.bot();
    const ElemSet& below = l.order().down(j);
    for (auto b = below.find_first(); b != ElemSet::npos; b = below.find_next(b))
      if (b != j) s = l.join(s, static_cast<Elem>(b));
    if (s != j) out.push_back({j, s});
  }
  return out;
}

bool is_ideal(const DistLattice& l, const ElemSet& s) {
  if (s.size() != l.size() || !s[l.bot()]) return false;
  if (!is_down_set(l.order(), s)) return false;
  for (auto a = s.find_first(); a != ElemSet::npos; a = s.find_next(a))
    for (auto b = s.find_next(a); b != ElemSet::npos; b = s.find_next(b))
      if (!s[l.join(a, b)]) return false;
  return true;
}

bool is_prime_ideal(const DistLattice& l, const ElemSet& s) {
  if (!is_ideal(l, s) || s[l.top()]) return false;
  for (Elem a = 0; a < l.size(); ++a) {
    if (s[a]) continue;
    for (Elem b = 0; b < l.size(); ++b)
      if (!s[b] && s[l.meet(a, b)]) return false;
  }
  return true;
}

std::vector<ElemSet> prime_ideals_definitional(const DistLattice& l, std::size_t node_budget) {
  const std::size_t n = l.size();
  enum : std::int8_t { Unknown = 0, In = 1, Out = -1 };
  // pairs (a,b) with a op b = c, indexed by c
  std::vector<std::vector<std::pair<Elem, Elem>>> join_of(n), meet_of(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      join_of[l.join(a, b)].emplace_back(a, b);
      meet_of[l.meet(a, b)].emplace_back(a, b);
    }
  const auto order = l.order().linear_extension();
  std::vector<ElemSet> found;
  std::size_t nodes = 0;

  std::vector<std::int8_t> state(n, Unknown);
  std::vector<Elem> trail;
  // Assign and propagate; false on conflict.
  auto assign = [&](Elem x0, std::int8_t v0) {
    std::vector<std::pair<Elem, std::int8_t>> work{{x0, v0}};
    while (!work.empty()) {
      auto [x, v] = work.back();
      work.pop_back();
      if (state[x] == v) continue;
      if (state[x] != Unknown) return false;
      state[x] = v;
      trail.push_back(x);
      if (v == In) {
        const ElemSet& below = l.order().down(x);
        for (auto b = below.find_first(); b != ElemSet::npos; b = below.find_next(b))
          work.emplace_back(static_cast<Elem>(b), In);
        for (Elem y = 0; y < n; ++y) {
          if (state[y] == In) work.emplace_back(l.join(x, y), In);
          if (state[l.join(x, y)] == Out) work.emplace_back(y, Out);
        }
        for (auto [a, b] : meet_of[x]) {
          if (state[a] == Out) work.emplace_back(b, In);
          if (state[b] == Out) work.emplace_back(a, In);
        }
      } else {
        const ElemSet& above = l.order().up(x);
        for (auto b = above.find_first(); b != ElemSet::npos; b = above.find_next(b))
          work.emplace_back(static_cast<Elem>(b), Out);
        for (Elem y = 0; y < n; ++y) {
          if (state[y] == Out) work.emplace_back(l.meet(x, y), Out);
          if (state[l.meet(x, y)] == In) work.emplace_back(y, In);
        }
        for (auto [a, b] : join_of[x]) {
          if (state[a] == In) work.emplace_back(b, Out);
          if (state[b] == In) work.emplace_back(a, Out);
        }
      }
    }
    return true;
  };
  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      state[trail.back()] = Unknown;
      trail.pop_back();
    }
  };

  std::function<void()> rec = [&]() {
    if (++nodes > node_budget) throw SpaceTooLarge("prime-ideal search exceeded node budget");
    std::size_t k = 0;
    while (k < n && state[order[k]] != Unknown) ++k;
    if (k == n) {
      ElemSet s(n);
      for (Elem x = 0; x < n; ++x)
        if (state[x] == In) s.set(x);
      if (is_prime_ideal(l, s)) found.push_back(s);
      return;
    }
    const Elem x = static_cast<Elem>(order[k]);
    for (std::int8_t v : {In, Out}) {
      const std::size_t mark = trail.size();
      if (assign(x, v)) rec();
      undo_to(mark);
    }
  };

  if (n >= 2 && assign(l.bot(), In) && assign(l.top(), Out)) rec();
  std::sort(found.begin(), found.end(), elemset_less);
  return found;
}

namespace {

SpectrumPoset finish_spectrum(const DistLattice& l, std::vector<ElemSet> ideals, bool definitional) {
  std::sort(ideals.begin(), ideals.end(), elemset_less);
  SpectrumPoset s;
  s.definitional = definitional;
  const std::size_t m = ideals.size();
  std::vector<ElemSet> rows(m, ElemSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (ideals[a].is_subset_of(ideals[b])) rows[a].set(b);
  s.order = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  for (const auto& I : ideals) {
    std::optional<Elem> g;
    for (Elem x = 0; x < l.size(); ++x) {
      if (I[x]) continue;
      if (!g || l.leq(x, *g)) g = x;
    }
    s.generator.push_back(*g);
  }
  s.ideals = std::move(ideals);
  return s;
}

}  // namespace

SpectrumPoset prime_ideals_by_join_irreducibles(const DistLattice& l) {
  std::vector<ElemSet> ideals;
  for (const auto& ji : join_irreducibles(l)) {
    ElemSet I(l.size());
    for (Elem x = 0; x < l.size(); ++x)
      if (!l.leq(ji.element, x)) I.set(x);
    ideals.push_back(std::move(I));
  }
  return finish_spectrum(l, std::move(ideals), false);
}

SpectrumPoset prime_ideals(const DistLattice& l) {
  SpectrumPoset formula = prime_ideals_by_join_irreducibles(l);
  if (l.size() > kDefinitionalCap) return formula;
  std::vector<ElemSet> defn = prime_ideals_definitional(l);
  if (defn != formula.ideals)
    throw InternalInconsistency("definitional prime ideals disagree with the join-irreducible formula");
  formula.definitional = true;
  return formula;
}

std::optional<std::size_t> find_ideal(const SpectrumPoset& s, const ElemSet& ideal) {
  auto it = std::lower_bound(s.ideals.begin(), s.ideals.end(), ideal, elemset_less);
  if (it == s.ideals.end() || *it != ideal) return std::nullopt;
  return static_cast<std::size_t>(it - s.ideals.begin());
}

BirkhoffRepresentation birkhoff_representation(const DistLattice& l) {
  return birkhoff_representation(l, prime_ideals(l));
}

BirkhoffRepresentation birkhoff_representation(const DistLattice& l, const SpectrumPoset& s) {
  BirkhoffRepresentation br;
  for (const auto& ji : join_irreducibles(l)) br.elements.push_back(ji.element);
  const std::size_t m = br.elements.size();
  std::vector<std::size_t> as_size(br.elements.begin(), br.elements.end());
  br.poset = induced_poset(l.order(), as_size);
  br.image.assign(l.size(), ElemSet(m));
  for (Elem a = 0; a < l.size(); ++a)
    for (std::size_t j = 0; j < m; ++j)
      if (l.leq(br.elements[j], a)) br.image[a].set(j);

  auto fail = [](const std::string& w) { throw InternalInconsistency("Birkhoff representation: " + w); };
  {
    auto sorted = br.image;
    std::sort(sorted.begin(), sorted.end(), elemset_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("map not injective");
  }
  for (const auto& d : br.image)
    if (!is_down_set(br.poset, d)) fail("image is not a down-set");
  if (count_down_sets(br.poset, l.size() + 1) != l.size()) fail("map not onto the down-sets");
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b) {
      if (l.leq(a, b) != br.image[a].is_subset_of(br.image[b])) fail("not an order-embedding");
      if (br.image[l.join(a, b)] != (br.image[a] | br.image[b])) fail("join not sent to union");
      if (br.image[l.meet(a, b)] != (br.image[a] & br.image[b])) fail("meet not sent to intersection");
    }
  if (s.ideals.size() != m) fail("spectrum size differs from |J(L)|");
  br.spectrum_iso.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    ElemSet I(l.size());
    for (Elem x = 0; x < l.size(); ++x)
      if (!l.leq(br.elements[j], x)) I.set(x);
    auto k = find_ideal(s, I);
    if (!k) fail("I_j missing from the spectrum");
    br.spectrum_iso[j] = *k;
  }
  if (!is_order_embedding(br.poset, s.order, br.spectrum_iso)) fail("spectrum not isomorphic to J(L)");
  return br;
}

PriestleyBasis priestley_basis(const DistLattice& l, const SpectrumPoset& s) {
  PriestleyBasis pb;
  const std::size_t m = s.ideals.size();
  pb.jmap.assign(l.size(), ElemSet(m));
  for (Elem a = 0; a < l.size(); ++a)
    for (std::size_t i = 0; i < m; ++i)
      if (!s.ideals[i][a]) pb.jmap[a].set(i);
  pb.jmap_homomorphism = true;
  for (Elem a = 0; a < l.size() && pb.jmap_homomorphism; ++a)
    for (Elem b = 0; b < l.size(); ++b) {
      if (pb.jmap[l.join(a, b)] != (pb.jmap[a] | pb.jmap[b]) ||
          pb.jmap[l.meet(a, b)] != (pb.jmap[a] & pb.jmap[b]) ||
          (a != b && pb.jmap[a] == pb.jmap[b])) {
        pb.jmap_homomorphism = false;
        break;
      }
    }
  std::vector<ElemSet> sets;
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b) sets.push_back(pb.jmap[a] - pb.jmap[b]);
  std::sort(sets.begin(), sets.end(), elemset_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  pb.sets = std::move(sets);
  pb.discrete = true;
  for (std::size_t i = 0; i < m; ++i) {
    ElemSet nb(m);
    nb.set();
    for (const auto& b : pb.sets)
      if (b[i]) nb &= b;
    if (nb.count() != 1) pb.discrete = false;
  }
  return pb;
}

DistLattice induced_lattice(const DistLattice& l, const std::vector<Elem>& elems) {
  const std::size_t m = elems.size();
  std::map<Elem, Elem> pos;
  for (std::size_t i = 0; i < m; ++i) pos[elems[i]] = static_cast<Elem>(i);
  std::vector<Elem> jt(m * m), mt(m * m);
  std::vector<Label> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(l.label(elems[i]));
    for (std::size_t j = 0; j < m; ++j) {
      auto pj = pos.find(l.join(elems[i], elems[j]));
      auto pm = pos.find(l.meet(elems[i], elems[j]));
      if (pj == pos.end() || pm == pos.end())
        throw tables_error("element subset is not closed under join and meet", {i, j});
      jt[i * m + j] = pj->second;
      mt[i * m + j] = pm->second;
    }
  }
  return DistLattice::from_tables(std::move(labels), std::move(jt), std::move(mt));
}

Sublattice generate_sublattice(const DistLattice& l, const std::vector<Elem>& generators) {
  ElemSet in(l.size());
  std::vector<Elem> list;
  auto add = [&](Elem x) {
    if (!in[x]) {
      in.set(x);
      list.push_back(x);
    }
  };
  add(l.bot());
  add(l.top());
  for (Elem g : generators) {
    if (g >= l.size()) throw tables_error("generator out of range", {g});
    add(g);
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(l.join(list[i], list[j]));
      add(l.meet(list[i], list[j]));
    }
  Sublattice s;
  s.members = in;
  for (auto x = in.find_first(); x != ElemSet::npos; x = in.find_next(x))
    s.elements.push_back(static_cast<Elem>(x));
  s.lattice = induced_lattice(l, s.elements);
  return s;
}

Sublattice full_sublattice(const DistLattice& l) {
  Sublattice s;
  s.members = ElemSet(l.size());
  s.members.set();
  s.elements.resize(l.size());
  std::iota(s.elements.begin(), s.elements.end(), Elem{0});
  s.lattice = l;
  return s;
}

bool is_lattice_hom(const DistLattice& a, const DistLattice& l, const OrderMap& h) {
  if (h.size() != a.size()) return false;
  for (auto x : h)
    if (x >= l.size()) return false;
  if (h[a.bot()] != l.bot() || h[a.top()] != l.top()) return false;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y)
      if (h[a.join(x, y)] != l.join(h[x], h[y]) || h[a.meet(x, y)] != l.meet(h[x], h[y]))
        return false;
  return true;
}

ElemSet restrict_ideal(const ElemSet& ideal, const OrderMap& h) {
  ElemSet out(h.size());
  for (std::size_t x = 0; x < h.size(); ++x)
    if (ideal[h[x]]) out.set(x);
  return out;
}

OrderMap spectrum_map(const DistLattice& a, const SpectrumPoset& sa, const DistLattice& l,
                      const SpectrumPoset& sl, const OrderMap& h) {
  {
    auto sorted = h;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw NotInjectiveHom("map is not injective");
  }
  if (!is_lattice_hom(a, l, h)) throw NotInjectiveHom("map is not a lattice homomorphism");
  OrderMap out(sl.ideals.size());
  for (std::size_t i = 0; i < sl.ideals.size(); ++i) {
    auto k = find_ideal(sa, restrict_ideal(sl.ideals[i], h));
    if (!k) throw InternalInconsistency("restricted ideal is not prime");
    out[i] = *k;
  }
  return out;
}

InverseLimit inverse_limit(const std::vector<Sublattice>& chain) {
  if (chain.empty()) throw IncoherentChain("empty chain");
  InverseLimit lim;
  const std::size_t levels = chain.size();
  for (std::size_t k = 0; k + 1 < levels; ++k)
    if (!chain[k].members.is_subset_of(chain[k + 1].members))
      throw IncoherentChain("level " + idx(k) + " is not contained in level " + idx(k + 1));
  for (const auto& s : chain) lim.spectra.push_back(prime_ideals(s.lattice));

  // inclusion maps between levels as element maps
  auto inclusion = [&](std::size_t lo, std::size_t hi) {
    OrderMap h(chain[lo].elements.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& he = chain[hi].elements;
      auto it = std::lower_bound(he.begin(), he.end(), chain[lo].elements[i]);
      h[i] = static_cast<std::size_t>(it - he.begin());
    }
    return h;
  };
  auto restriction = [&](std::size_t lo, std::size_t hi) {
    try {
      return spectrum_map(chain[lo].lattice, lim.spectra[lo], chain[hi].lattice, lim.spectra[hi],
                          inclusion(lo, hi));
    } catch (const NotInjectiveHom& e) {
      throw IncoherentChain(std::string("connecting map ") + idx(lo) + "<-" + idx(hi) + ": " + e.what());
    }
  };
  for (std::size_t k = 0; k < levels; ++k) {
    const OrderMap id = restriction(k, k);
    for (std::size_t i = 0; i < id.size(); ++i)
      if (id[i] != i) throw IncoherentChain("identity law fails at level " + idx(k));
  }
  for (std::size_t k = 0; k + 1 < levels; ++k) lim.connecting.push_back(restriction(k, k + 1));
  for (std::size_t lo = 0; lo < levels; ++lo)
    for (std::size_t hi = lo + 2; hi < levels; ++hi) {
      const OrderMap direct = restriction(lo, hi);
      for (std::size_t i = 0; i < direct.size(); ++i) {
        std::size_t v = i;
        for (std::size_t k = hi; k > lo; --k) v = lim.connecting[k - 1][v];
        if (v != direct[i])
          throw IncoherentChain("composition law fails between levels " + idx(lo) + " and " + idx(hi));
      }
    }

  std::vector<std::size_t> cur(levels);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == levels) {
      lim.threads.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < lim.spectra[k].ideals.size(); ++i) {
      if (k > 0 && lim.connecting[k - 1][i] != cur[k - 1]) continue;
      cur[k] = i;
      rec(k + 1);
    }
  };
  rec(0);
  const std::size_t t = lim.threads.size();
  std::vector<ElemSet> rows(t, ElemSet(t));
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b) {
      bool le = true;
      for (std::size_t k = 0; k < levels && le; ++k)
        le = lim.spectra[k].order.leq(lim.threads[a][k], lim.threads[b][k]);
      if (le) rows[a].set(b);
    }
  lim.order = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  return lim;
}

SetRing::SetRing(int n, std::vector<PointSet> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw tables_error("empty family of sets", {});
}

std::optional<std::size_t> SetRing::index_of(PointSet u) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), u);
  if (it == members_.end() || *it != u) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::optional<PointSet> SetRing::minimal_member(int x) const {
  std::optional<PointSet> m;
  for (PointSet u : members_)
    if (contains(u, x)) m = m ? (*m & u) : u;
  return m;
}

ElemSet SetRing::avoiding(int x) const { return avoiding_set(singleton(x)); }

ElemSet SetRing::avoiding_set(PointSet xi) const {
  ElemSet s(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i)
    if ((members_[i] & xi) == 0) s.set(i);
  return s;
}

std::vector<ElemSet> SetRing::prime_ideals(std::vector<int>* representatives) const {
  std::map<ElemSet, int, decltype(&elemset_less)> found(&elemset_less);
  const PointSet lo = bottom(), hi = top();
  for (int x = 0; x < n_; ++x) {
    if (contains(lo, x) || !contains(hi, x)) continue;
    found.emplace(avoiding(x), x);
  }
  std::vector<ElemSet> out;
  if (representatives) representatives->clear();
  for (auto& [s, x] : found) {
    out.push_back(s);
    if (representatives) representatives->push_back(x);
  }
  return out;
}

bool SetRing::is_prime_ideal(const ElemSet& s) const {
  const std::size_t m = members_.size();
  if (s.size() != m || !s[0] || s[m - 1]) return false;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const auto j = index_of(members_[a] | members_[b]);
      const auto i = index_of(members_[a] & members_[b]);
      if (!j || !i) return false;
      if (s[*j] != (s[a] && s[b])) return false;
      if (s[*i] != (s[a] || s[b])) return false;
    }
  return true;
}

std::optional<std::pair<PointSet, PointSet>> SetRing::closure_violation() const {
  for (std::size_t a = 0; a < members_.size(); ++a)
    for (std::size_t b = a + 1; b < members_.size(); ++b)
      if (!index_of(members_[a] | members_[b]) || !index_of(members_[a] & members_[b]))
        return std::pair{members_[a], members_[b]};
  return std::nullopt;
}

DistLattice ring_lattice(const SetRing& r) {
  struct H {
    std::size_t operator()(PointSet s) const { return std::hash<PointSet>{}(s); }
  };
  return close_under<PointSet, H>(
      r.members(), [](PointSet a, PointSet b) { return a | b; },
      [](PointSet a, PointSet b) { return a & b; }, [](PointSet s) { return Label::of_set(s); });
}

}  // namespace ordyn
