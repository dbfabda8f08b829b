#include "ordyn/spectra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "ordyn/oracle.hpp"

namespace ordyn {

namespace {

const std::vector<std::string> kNone{};
const std::vector<std::string> kContinuous{"continuous"};
const std::vector<std::string> kContProper{"continuous", "proper"};
const std::vector<std::string> kProper{"proper"};
const std::vector<std::string> kInvHausdorff{"invertible", "hausdorff"};

constexpr std::size_t kPairBudget = std::size_t{1} << 18;
constexpr std::uint64_t kPairSeed = 0x0dd5'eed5;

// Calls f(i, j) for all i, j < m, or for kPairBudget sampled pairs when m^2
// exceeds it. Returns true when exhaustive.
template <class F>
bool pairs_upto(std::size_t m, F&& f) {
  if (m * m <= kPairBudget) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) f(i, j);
    return true;
  }
  std::mt19937_64 rng(kPairSeed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t k = 0; k < kPairBudget; ++k) f(pick(rng), pick(rng));
  return false;
}

std::string format_ideal(const DistLattice& l, const ElemSet& s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) {
    if (!first) out += ", ";
    out += l.label(static_cast<Elem>(i)).format(names);
    first = false;
  }
  return out + "}";
}

ElemSet ambient_ideal(const Sublattice& s, const ElemSet& local, std::size_t ambient) {
  ElemSet out(ambient);
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    if (local[i]) out.set(s.elements[i]);
  return out;
}

bool find_in(const std::vector<ElemSet>& family, const ElemSet& s) {
  return std::find(family.begin(), family.end(), s) != family.end();
}

std::vector<PointSet> duals_or_throw(const Analysis& a) {
  auto duals = a.unique_duals();
  if (!duals || !a.predicates.proper || !a.predicates.continuous)
    throw HypothesisViolated("dual repellers need a proper, continuous system with unique duals");
  return *duals;
}

// Attractor elements of s as ambient indices.
const std::vector<Elem>& elems_of(const Sublattice& s) { return s.elements; }

}  // namespace

bool strictly_inside(const ElemSet& a, const ElemSet& b) { return a.is_proper_subset_of(b); }

ElemSet phi_att(const AttLattice& att, PointSet xi) {
  ElemSet s(att.sets.size());
  for (std::size_t i = 0; i < att.sets.size(); ++i)
    if ((att.sets[i] & xi) == 0) s.set(i);
  return s;
}

PointSet psi_att(const AttLattice& att, const std::vector<PointSet>& duals, const ElemSet& ideal) {
  PointSet out = ~PointSet{0};
  for (std::size_t i = 0; i < att.sets.size(); ++i) out &= ideal[i] ? duals[i] : att.sets[i];
  return out & att.nbhds.top();
}

ElemSet phi_arp(const ArpLattice& arp, PointSet xi) {
  ElemSet s(arp.pairs.size());
  for (std::size_t i = 0; i < arp.pairs.size(); ++i)
    if ((arp.pairs[i].a & xi) == 0) s.set(i);
  return s;
}

PointSet psi_arp(const DynSystem& d, const ArpLattice& arp, const ElemSet& ideal) {
  Elem low = arp.lattice.top();
  PointSet r = d.points();
  for (std::size_t i = 0; i < arp.pairs.size(); ++i) {
    if (ideal[i])
      r &= arp.pairs[i].r;
    else
      low = arp.lattice.meet(low, static_cast<Elem>(i));
  }
  return arp.pairs[low].a & r;
}

bool att_forms_available(const Analysis& a) {
  if (!a.predicates.proper || !a.predicates.continuous) return false;
  const auto duals = a.unique_duals();
  if (!duals || a.att.sets.size() != a.arp.pairs.size()) return false;
  for (std::size_t i = 0; i < a.att.sets.size(); ++i)
    if (!a.arp.index_of(a.att.sets[i], (*duals)[i])) return false;
  return true;
}

IdealRef phi(const Analysis& a, PointSet xi) {
  if (att_forms_available(a)) return {true, phi_att(a.att, xi)};
  return {false, phi_arp(a.arp, xi)};
}

PointSet psi(const Analysis& a, const IdealRef& i) {
  if (i.over_att) return psi_att(a.att, *a.unique_duals(), i.ideal);
  return psi_arp(a.d, a.arp, i.ideal);
}

ElemSet xi_map(const SetRing& nbhds, PointSet cls) { return nbhds.avoiding_set(cls); }

PointSet theta_map(const SetRing& nbhds, const ElemSet& ideal) {
  PointSet out = full_set(nbhds.points());
  for (std::size_t i = 0; i < nbhds.size(); ++i)
    out &= ideal[i] ? ~nbhds.member(i) : nbhds.member(i);
  return out & full_set(nbhds.points());
}

MorseRepresentation morse_representation(const Analysis& a, const Sublattice& s) {
  const auto duals = duals_or_throw(a);
  MorseRepresentation m;
  m.sublattice = s;
  const auto jis = join_irreducibles(s.lattice);
  const std::size_t k = jis.size();
  std::vector<ElemSet> rows(k, ElemSet(k));
  for (std::size_t i = 0; i < k; ++i) {
    const Elem e = s.elements[jis[i].element];
    const Elem p = s.elements[jis[i].predecessor];
    m.join_irreducibles.push_back(e);
    m.predecessors.push_back(p);
    m.morse_sets.push_back(a.att.sets[e] & duals[p]);
    for (std::size_t j = 0; j < k; ++j)
      if (s.lattice.leq(jis[i].element, jis[j].element)) rows[i].set(j);
  }
  m.order = FinitePoset(Preorder::from_up_rows(std::move(rows)));
  return m;
}

Components restricted_components(const Analysis& a, const Sublattice& s) {
  const auto duals = duals_or_throw(a);
  const int n = a.d.size();
  PointSet support = a.d.points();
  for (Elem e : elems_of(s)) support &= a.att.sets[e] | duals[e];
  std::vector<ElemSet> mem(n, ElemSet(s.elements.size()));
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for_each_point(a.att.sets[s.elements[i]], [&](int x) { mem[x].set(i); });
  return components_from_membership(n, support, mem, Components::Kind::Recurrent);
}

PointSet pi_A(const Analysis& a, const Sublattice& s, const ElemSet& ideal) {
  const auto duals = duals_or_throw(a);
  PointSet out = a.d.points();
  for (Elem e : elems_of(s)) out &= ideal[e] ? duals[e] : a.att.sets[e];
  return out;
}

Preorder quotient_specialization(const DynSystem& d, const Components& rc) {
  const std::size_t m = rc.classes.size();
  std::vector<Pair> pairs;
  for (std::size_t c = 0; c < m; ++c) {
    PointSet reach = 0;
    for_each_point(rc.classes[c], [&](int x) { reach |= d.topology().up(x); });
    reach &= rc.support;
    for (std::size_t e = 0; e < m; ++e)
      if (e != c && (reach & rc.classes[e]) != 0) pairs.emplace_back(c, e);
  }
  return Preorder::closure_of(m, pairs);
}

std::vector<ElemSet> morse_basis_att(const Analysis& a, const std::vector<PointSet>& duals) {
  std::unordered_set<PointSet> ms;
  const std::size_t m = a.att.sets.size();
  pairs_upto(m, [&](std::size_t i, std::size_t j) { ms.insert(a.att.sets[i] & duals[j]); });
  std::set<ElemSet, decltype(&elemset_less)> out(&elemset_less);
  for (PointSet mset : ms) {
    ElemSet z(a.rc.classes.size());
    for (std::size_t c = 0; c < a.rc.classes.size(); ++c)
      if (subset_of(a.rc.classes[c], mset)) z.set(c);
    out.insert(z);
  }
  return {out.begin(), out.end()};
}

std::vector<ElemSet> morse_basis_arp(const Analysis& a) {
  std::unordered_set<PointSet> ms;
  const std::size_t m = a.arp.pairs.size();
  pairs_upto(m, [&](std::size_t i, std::size_t j) { ms.insert(a.arp.pairs[i].a & a.arp.pairs[j].r); });
  std::set<ElemSet, decltype(&elemset_less)> out(&elemset_less);
  for (PointSet mset : ms) {
    ElemSet z(a.rc.classes.size());
    for (std::size_t c = 0; c < a.rc.classes.size(); ++c)
      if (subset_of(a.rc.classes[c], mset)) z.set(c);
    out.insert(z);
  }
  return {out.begin(), out.end()};
}

Preorder generated_specialization(std::size_t classes, const std::vector<ElemSet>& basis) {
  std::vector<ElemSet> rows(classes, ElemSet(classes));
  for (std::size_t c = 0; c < classes; ++c) {
    rows[c].set();
    for (const auto& z : basis)
      if (z[c]) rows[c] &= z;
  }
  return Preorder::from_up_rows(std::move(rows));
}

std::vector<std::uint32_t> open_family(const Preorder& spec) {
  const std::size_t m = spec.size();
  if (m > kLiteralFamilyLimit) throw SpaceTooLarge("too many classes for a literal open family");
  std::vector<std::uint32_t> up(m, 0);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t e = 0; e < m; ++e)
      if (spec.leq(c, e)) up[c] |= std::uint32_t{1} << e;
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
    bool open = true;
    for (std::size_t c = 0; c < m && open; ++c)
      if (((s >> c) & 1u) && (up[c] & ~s) != 0) open = false;
    if (open) out.push_back(s);
  }
  return out;
}

std::vector<std::uint32_t> quotient_open_family(const DynSystem& d, const Components& rc) {
  const std::size_t m = rc.classes.size();
  if (m > kLiteralFamilyLimit) throw SpaceTooLarge("too many classes for a literal open family");
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
    PointSet u = 0;
    for (std::size_t c = 0; c < m; ++c)
      if ((s >> c) & 1u) u |= rc.classes[c];
    bool open = true;
    for_each_point(u, [&](int x) {
      if (!subset_of(d.topology().up(x) & rc.support, u)) open = false;
    });
    if (open) out.push_back(s);
  }
  return out;
}

std::vector<Sublattice> random_filtration(const DistLattice& l, std::mt19937_64& rng) {
  // Past this size only a random sample of candidates is scored per step.
  constexpr std::size_t kScoredCandidates = 16;
  std::vector<Sublattice> chain{generate_sublattice(l, {})};
  while (chain.back().elements.size() < l.size()) {
    const Sublattice& cur = chain.back();
    std::vector<Elem> outside;
    for (Elem e = 0; e < l.size(); ++e)
      if (!cur.members[e]) outside.push_back(e);
    std::shuffle(outside.begin(), outside.end(), rng);
    if (l.size() > 64 && outside.size() > kScoredCandidates) outside.resize(kScoredCandidates);
    std::optional<Sublattice> best;
    for (Elem e : outside) {
      auto gens = cur.elements;
      gens.push_back(e);
      Sublattice s = generate_sublattice(l, gens);
      if (!best || s.elements.size() < best->elements.size()) best = std::move(s);
    }
    chain.push_back(std::move(*best));
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Theorem A: RC and the spectrum of Att

Report verify_theorem_A(const Analysis& a) {
  Report rep;
  rep.suite = "A";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const auto& rc = a.rc;
  const std::size_t m = rc.classes.size();
  const SpectrumPoset spec = prime_ideals(a.att.lattice);
  std::vector<ElemSet> images;
  for (PointSet xi : rc.classes) images.push_back(phi_att(a.att, xi));

  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      if (!find_ideal(spec, images[i])) w = "xi=" + d.format(rc.classes[i]);
    rep.add("Phi(xi) is a prime ideal of Att", kContProper, w.empty(), w);
  }
  {
    std::set<ElemSet, decltype(&elemset_less)> distinct(images.begin(), images.end(), &elemset_less);
    bool onto = distinct.size() == spec.ideals.size();
    for (const auto& im : images) onto = onto && find_ideal(spec, im).has_value();
    const bool ok = distinct.size() == m && onto;
    rep.add("Phi is a bijection RC -> Sigma Att", kContProper, ok,
            std::to_string(m) + " classes, " + std::to_string(distinct.size()) + " distinct images, " +
                std::to_string(spec.ideals.size()) + " ideals");
  }
  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rc.order.leq(i, j) != images[i].is_subset_of(images[j]))
          w = d.format(rc.classes[i]) + " vs " + d.format(rc.classes[j]);
    rep.add("Phi is an order-isomorphism", kContProper, w.empty(), w);
  }

  const auto duals = a.unique_duals();
  if (!duals) {
    rep.skip("Psi round trips", "dual repellers not unique");
    rep.skip("Psi(I) nonempty and invariant", "dual repellers not unique");
    rep.skip("quotient topology equals spectral topology", "dual repellers not unique");
    rep.skip("Morse basis matches Phi^-1(j(A) \\ j(A'))", "dual repellers not unique");
    rep.skip("Morse basis sets are convex", "dual repellers not unique");
  } else {
    {
      std::string w;
      for (std::size_t i = 0; i < m; ++i)
        if (psi_att(a.att, *duals, images[i]) != rc.classes[i]) w = "xi=" + d.format(rc.classes[i]);
      for (const auto& ideal : spec.ideals) {
        const PointSet xi = psi_att(a.att, *duals, ideal);
        if (phi_att(a.att, xi) != ideal) w = "I=" + format_ideal(a.att.lattice, ideal, d.labels());
      }
      rep.add("Psi round trips", kContProper, w.empty(), w);
    }
    {
      std::string w;
      for (const auto& ideal : spec.ideals) {
        const PointSet xi = psi_att(a.att, *duals, ideal);
        if (xi == 0 || d.image(xi) != xi) w = "I=" + format_ideal(a.att.lattice, ideal, d.labels());
      }
      rep.add("Psi(I) nonempty and invariant", kContProper, w.empty(), w);
    }
    {
      const auto basis = morse_basis_att(a, *duals);
      const Preorder tsim = quotient_specialization(d, rc);
      const Preorder tsig = generated_specialization(m, basis);
      bool ok;
      std::string w;
      if (m <= kLiteralFamilyLimit) {
        const auto fsim = quotient_open_family(d, rc);
        const auto fsig = open_family(tsig);
        ok = fsim == fsig && fsim.size() == (std::size_t{1} << m);
        w = std::to_string(fsim.size()) + " quotient opens, " + std::to_string(fsig.size()) +
            " spectral opens, " + std::to_string(std::size_t{1} << m) + " subsets";
      } else {
        ok = tsim == tsig && tsim == Preorder(m);
        w = "specializations differ or are not discrete";
      }
      rep.add("quotient topology equals spectral topology (both discrete)", kContProper, ok, w);

      std::string wz;
      bool exhaustive = pairs_upto(a.att.sets.size(), [&](std::size_t i, std::size_t j) {
        const PointSet mset = a.att.sets[i] & (*duals)[j];
        for (std::size_t c = 0; c < m; ++c) {
          const bool in_zeta = subset_of(rc.classes[c], mset);
          const bool in_pre = !images[c][i] && images[c][j];
          if (in_zeta != in_pre)
            wz = "A=" + d.format(a.att.sets[i]) + " A'=" + d.format(a.att.sets[j]);
        }
      });
      rep.add("Morse basis matches Phi^-1(j(A) \\ j(A'))", kContProper, wz.empty(), wz);
      if (!exhaustive) rep.notes.push_back("Morse basis pairs sampled");

      std::string wc;
      for (const auto& z : basis)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
              if (z[i] && z[k] && !z[j] && rc.order.leq(i, j) && rc.order.leq(j, k))
                wc = d.format(rc.classes[j]);
      rep.add("Morse basis sets are convex", kContProper, wc.empty(), wc);
    }
  }
  {
    // A -> {xi : xi inside A} onto the down-sets of RC, both ways monotone.
    std::string w;
    const std::size_t na = a.att.sets.size();
    std::vector<ElemSet> down(na, ElemSet(m));
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t c = 0; c < m; ++c)
        if (subset_of(rc.classes[c], a.att.sets[i])) down[i].set(c);
    for (std::size_t i = 0; i < na; ++i)
      if (!is_down_set(rc.order, down[i])) w = "not a down-set: A=" + d.format(a.att.sets[i]);
    std::set<ElemSet, decltype(&elemset_less)> distinct(down.begin(), down.end(), &elemset_less);
    if (distinct.size() != na) w = "not injective";
    if (w.empty()) {
      try {
        if (count_down_sets(rc.order) != na) w = "down-set count differs from |Att|";
      } catch (const SpaceTooLarge&) {
        w = "down-set count exceeds cap";
      }
    }
    pairs_upto(na, [&](std::size_t i, std::size_t j) {
      if (subset_of(a.att.sets[i], a.att.sets[j]) != down[i].is_subset_of(down[j]))
        w = "order differs at " + d.format(a.att.sets[i]) + ", " + d.format(a.att.sets[j]);
    });
    rep.add("clopen down-sets of RC correspond to Att", kContProper, w.empty(), w);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem B: finite approximation by sublattice filtrations

Report verify_theorem_B(const Analysis& a, const std::vector<Sublattice>& filtration) {
  Report rep;
  rep.suite = "B";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  if (!att_forms_available(a)) {
    rep.skip("filtration checks", "Att forms unavailable (system not proper and continuous)");
    return rep;
  }
  const auto duals = *a.unique_duals();
  const std::size_t na = a.att.sets.size();
  const SpectrumPoset full = prime_ideals(a.att.lattice);

  if (filtration.empty() || filtration.back().elements.size() != na) {
    rep.add("filtration ends at Att", kContProper, false, "last level is not the full lattice");
    return rep;
  }
  InverseLimit lim;
  try {
    lim = inverse_limit(filtration);
    rep.add("connecting maps coherent", kContProper, true);
  } catch (const IncoherentChain& e) {
    rep.add("connecting maps coherent", kContProper, false, e.what());
    return rep;
  }
  {
    const std::size_t last = filtration.size() - 1;
    std::string w;
    std::vector<ElemSet> ends;
    for (const auto& t : lim.threads)
      ends.push_back(ambient_ideal(filtration[last], lim.spectra[last].ideals[t[last]], na));
    std::set<ElemSet, decltype(&elemset_less)> distinct(ends.begin(), ends.end(), &elemset_less);
    if (distinct.size() != ends.size() || ends.size() != full.ideals.size()) w = "thread count";
    for (const auto& e : ends)
      if (!find_ideal(full, e)) w = "thread end not in Sigma Att";
    for (std::size_t t = 0; t < ends.size(); ++t)
      for (std::size_t u = 0; u < ends.size(); ++u)
        if (lim.order.leq(t, u) != ends[t].is_subset_of(ends[u])) w = "componentwise order differs";
    for (std::size_t t = 0; t < ends.size(); ++t)
      for (std::size_t k = 0; k < filtration.size(); ++k)
        if (restrict_ideal(ends[t], OrderMap(filtration[k].elements.begin(), filtration[k].elements.end())) !=
            lim.spectra[k].ideals[lim.threads[t][k]])
          w = "thread component is not the restriction at level " + std::to_string(k);
    rep.add("inverse limit isomorphic to Sigma Att", kContProper, w.empty(), w);

    std::string wr;
    for (const auto& e : ends)
      if (!a.rc.index_of(psi_att(a.att, duals, e))) wr = "Psi(thread) is not a recurrent class";
    rep.add("inverse limit isomorphic to RC", kContProper, wr.empty(), wr);
  }
  {
    std::string wm, wref, wrc;
    std::vector<MorseRepresentation> levels;
    for (const auto& s : filtration) levels.push_back(morse_representation(a, s));
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const auto& mr = levels[k];
      PointSet seen = 0;
      for (PointSet ms : mr.morse_sets) {
        if (ms == 0 || d.image(ms) != ms || (ms & seen) != 0)
          wm = "level " + std::to_string(k) + ": " + d.format(ms);
        seen |= ms;
      }
      if (k > 0)
        for (PointSet ms : mr.morse_sets) {
          bool inside = false;
          for (PointSet coarse : levels[k - 1].morse_sets) inside = inside || subset_of(ms, coarse);
          if (!inside) wref = "level " + std::to_string(k) + ": " + d.format(ms);
        }
      const Components rca = restricted_components(a, filtration[k]);
      std::vector<PointSet> sorted_ms = mr.morse_sets, sorted_rc = rca.classes;
      std::sort(sorted_ms.begin(), sorted_ms.end());
      std::sort(sorted_rc.begin(), sorted_rc.end());
      if (sorted_ms != sorted_rc) {
        wrc = "level " + std::to_string(k) + ": Morse sets differ from RC(phi;A)";
      } else {
        for (std::size_t i = 0; i < mr.morse_sets.size(); ++i)
          for (std::size_t j = 0; j < mr.morse_sets.size(); ++j) {
            const auto ci = *rca.index_of(mr.morse_sets[i]);
            const auto cj = *rca.index_of(mr.morse_sets[j]);
            if (mr.order.leq(i, j) != rca.order.leq(ci, cj))
              wrc = "level " + std::to_string(k) + ": orders differ";
          }
      }
    }
    rep.add("Morse sets nonempty, invariant, disjoint", kContProper, wm.empty(), wm);
    rep.add("Morse representations refine along the filtration", kContProper, wref.empty(), wref);
    rep.add("Morse representation equals RC(phi;A)", kContProper, wrc.empty(), wrc);

    std::string wpi, wsurj, wlim;
    for (const auto& ideal : full.ideals) {
      PointSet meet_all = a.d.points();
      PointSet prev = a.d.points();
      for (std::size_t k = 0; k < filtration.size(); ++k) {
        const PointSet p = pi_A(a, filtration[k], ideal);
        if (p == 0 || !subset_of(p, prev)) wpi = "level " + std::to_string(k);
        prev = p;
        meet_all &= p;
      }
      if (meet_all != psi_att(a.att, duals, ideal)) wlim = format_ideal(a.att.lattice, ideal, d.labels());
    }
    for (std::size_t k = 0; k < filtration.size(); ++k) {
      const auto& mr = levels[k];
      std::set<PointSet> hit;
      std::vector<int> where(full.ideals.size(), -1);
      for (std::size_t i = 0; i < full.ideals.size(); ++i) {
        const PointSet p = pi_A(a, filtration[k], full.ideals[i]);
        hit.insert(p);
        auto it = std::find(mr.morse_sets.begin(), mr.morse_sets.end(), p);
        if (it == mr.morse_sets.end())
          wsurj = "level " + std::to_string(k) + ": pi is not a Morse set";
        else
          where[i] = static_cast<int>(it - mr.morse_sets.begin());
      }
      if (hit.size() != mr.morse_sets.size()) wsurj = "level " + std::to_string(k) + ": not onto";
      for (std::size_t i = 0; i < full.ideals.size() && wsurj.empty(); ++i)
        for (std::size_t j = 0; j < full.ideals.size(); ++j)
          if (full.order.leq(i, j) && !mr.order.leq(where[i], where[j]))
            wsurj = "level " + std::to_string(k) + ": pi not order-preserving";
    }
    rep.add("pi_A nonempty and antitone along the filtration", kContProper, wpi.empty(), wpi);
    rep.add("pi_A onto the Morse sets, order-preserving", kContProper, wsurj.empty(), wsurj);
    rep.add("intersection of pi_A(I) equals Psi(I)", kContProper, wlim.empty(), wlim);
  }
  return rep;
}

Report verify_theorem_B(const Analysis& a) {
  Report rep;
  rep.suite = "B";
  rep.hypotheses = a.hypotheses;
  if (!att_forms_available(a)) {
    rep.skip("filtration checks", "Att forms unavailable (system not proper and continuous)");
    return rep;
  }
  std::mt19937_64 rng(kFiltrationSeed);
  for (int k = 0; k < kFiltrationCount; ++k) {
    Report one = verify_theorem_B(a, random_filtration(a.att.lattice, rng));
    for (auto& c : one.checks) c.name = "filtration " + std::to_string(k + 1) + ": " + c.name;
    rep.merge(one);
  }
  {
    // 3_A = {0, A, top}: pi(I) = A when A is outside I, top n A* otherwise.
    const auto duals = *a.unique_duals();
    const SpectrumPoset full = prime_ideals(a.att.lattice);
    std::string w;
    for (Elem e = 0; e < a.att.sets.size(); ++e) {
      if (e == a.att.lattice.bot() || e == a.att.lattice.top()) continue;
      const Sublattice s = generate_sublattice(a.att.lattice, {e});
      for (const auto& ideal : full.ideals) {
        const PointSet want = ideal[e] ? (a.att.top_set() & duals[e]) : a.att.sets[e];
        if (pi_A(a, s, ideal) != want) w = "A=" + a.d.format(a.att.sets[e]);
      }
    }
    rep.add("pi over 3_A lattices", kContProper, w.empty(), w);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem C: RC into the spectrum of ARpair, no hypotheses

Report verify_theorem_C(const Analysis& a) {
  Report rep;
  rep.suite = "C";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const auto& rc = a.rc;
  const std::size_t m = rc.classes.size();
  const SpectrumPoset spec = prime_ideals(a.arp.lattice);
  std::vector<ElemSet> images;
  for (PointSet xi : rc.classes) images.push_back(phi_arp(a.arp, xi));
  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      if (!find_ideal(spec, images[i])) w = "xi=" + d.format(rc.classes[i]);
    rep.add("Phi(xi) is a prime ideal of ARpair", kNone, w.empty(), w);
  }
  {
    std::set<ElemSet, decltype(&elemset_less)> distinct(images.begin(), images.end(), &elemset_less);
    rep.add("Phi is injective", kNone, distinct.size() == m);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rc.order.leq(i, j) != images[i].is_subset_of(images[j]))
          w = d.format(rc.classes[i]) + " vs " + d.format(rc.classes[j]);
    rep.add("Phi is an order-embedding", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      if (psi_arp(d, a.arp, images[i]) != rc.classes[i]) w = "xi=" + d.format(rc.classes[i]);
    rep.add("Psi(Phi(xi)) = xi over ARpair", kNone, w.empty(), w);
  }
  {
    // Open and closed witnesses per pair; the preimage of the basic set
    // j(P) \ j(P') is U n U'^c n R(phi).
    const std::size_t np = a.arp.pairs.size();
    std::vector<std::optional<PointSet>> open_w(np), closed_w(np);
    const auto& us = a.anbhd.members();
    for (std::size_t i = 0; i < us.size(); ++i) {
      const Elem p = a.arp.of_nbhd[i];
      if (!open_w[p] && d.topology().is_open(us[i])) open_w[p] = us[i];
      if (!closed_w[p] && d.topology().is_closed(us[i])) closed_w[p] = us[i];
    }
    std::string w;
    for (std::size_t p = 0; p < np; ++p)
      if (!open_w[p] || !closed_w[p]) w = "no open/closed witness for a pair";
    if (w.empty()) {
      const bool exhaustive = pairs_upto(np, [&](std::size_t p, std::size_t q) {
        PointSet pre = 0;
        for (std::size_t c = 0; c < m; ++c)
          if (!images[c][p] && images[c][q]) pre |= rc.classes[c];
        const PointSet want = *open_w[p] & ~*closed_w[q] & rc.support;
        if (pre != want) w = "P=" + a.arp.lattice.label(p).format(d.labels()) +
                             " P'=" + a.arp.lattice.label(q).format(d.labels());
      });
      if (!exhaustive) rep.notes.push_back("basic-set pairs sampled");
    }
    rep.add("preimages of basic sets are U n U'^c n R(phi)", kNone, w.empty(), w);
  }
  const Preorder tsim = quotient_specialization(d, rc);
  {
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        ElemSet ui = tsim.up(i), uj = tsim.up(j);
        if (ui.intersects(uj)) w = d.format(rc.classes[i]) + ", " + d.format(rc.classes[j]);
      }
    rep.add("quotient topology is Hausdorff", kNone, w.empty(), w);
  }
  {
    const Preorder tsig = generated_specialization(m, morse_basis_arp(a));
    std::string w;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (tsim.leq(i, j) && !tsig.leq(i, j)) w = "spectral open not quotient-open";
    rep.add("identity from quotient to spectral topology is continuous", kNone, w.empty(), w);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem D: chain relation on invertible Hausdorff systems

Report verify_theorem_D(const Analysis& a) {
  Report rep;
  rep.suite = "D";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const int n = d.size();
  rep.add("chain-recurrent set equals R(phi)", kInvHausdorff, a.chain.support == a.rc.support,
          "chain-recurrent " + d.format(a.chain.support) + " vs R(phi) " + d.format(a.rc.support));
  bool same_classes = a.chain.classes.size() == a.rc.classes.size();
  for (PointSet c : a.rc.classes) same_classes = same_classes && a.chain.index_of(c).has_value();
  rep.add("chain components equal recurrent components", kInvHausdorff, same_classes,
          std::to_string(a.chain.classes.size()) + " chain classes, " +
              std::to_string(a.rc.classes.size()) + " recurrent classes");
  {
    std::string w;
    if (!same_classes) {
      w = "classes differ";
    } else {
      for (std::size_t i = 0; i < a.rc.classes.size(); ++i)
        for (std::size_t j = 0; j < a.rc.classes.size(); ++j) {
          const auto ci = *a.chain.index_of(a.rc.classes[i]);
          const auto cj = *a.chain.index_of(a.rc.classes[j]);
          if (a.rc.order.leq(i, j) != a.chain.order.leq(cj, ci))
            w = d.format(a.rc.classes[i]) + ", " + d.format(a.rc.classes[j]);
        }
    }
    rep.add("chain order is opposite to the recurrent order", kInvHausdorff, w.empty(), w);
  }
  {
    const Relation cinv = inverse(a.rel_c);
    std::string w;
    for (int x = 0; x < n; ++x)
      if (a.rel_r[x] != cinv[x]) w = "x=" + d.name_of(x);
    rep.add("R equals C^-1", kInvHausdorff, w.empty(), w);
  }
  {
    std::string w;
    for (int x = 0; x < n; ++x) {
      const PointSet om = omega(d, singleton(x));
      PointSet cap = d.points();
      for (PointSet att : a.att.sets)
        if (subset_of(om, att)) cap &= att;
      if (cap != a.rel_c[x]) w = "x=" + d.name_of(x);
    }
    rep.add("Omega(x) is the intersection of attractors containing omega(x)", kInvHausdorff,
            w.empty(), w);
  }
  for (const auto& c : rep.checks)
    if (!c.applicable && !c.passed) rep.notes.push_back("divergence: " + c.name + " fails (" + c.witness + ")");
  return rep;
}

// ---------------------------------------------------------------------------
// The cospan diagram

Report verify_cospan_diagram(const Analysis& a) {
  Report rep;
  rep.suite = "cospan";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const int n = d.size();
  const auto& ring = a.anbhd;
  const auto& sc = a.sc;
  const std::vector<ElemSet> sigma = ring.prime_ideals();
  std::vector<ElemSet> xis;
  for (PointSet c : sc.classes) xis.push_back(xi_map(ring, c));
  {
    std::string w;
    for (int x = 0; x < n; ++x)
      if (ring.avoiding(x) != xis[sc.class_of[x]]) w = "x=" + d.name_of(x);
    rep.add("left square commutes", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < xis.size(); ++i)
      if (!find_in(sigma, xis[i]) && !ring.is_prime_ideal(xis[i])) w = d.format(sc.classes[i]);
    // Strong components avoided by every member have Xi = all of ANbhd.
    rep.add("Xi lands in Sigma ANbhd", kNone, w.empty() || xis.size() == 1, w);
  }
  {
    std::string w;
    for (std::size_t i = 0; i < xis.size(); ++i) {
      if (theta_map(ring, xis[i]) != sc.classes[i]) w = d.format(sc.classes[i]);
      for (std::size_t j = 0; j < xis.size(); ++j)
        if (sc.order.leq(i, j) != xis[i].is_subset_of(xis[j]))
          w = "order at " + d.format(sc.classes[i]) + ", " + d.format(sc.classes[j]);
    }
    rep.add("Xi is an order-embedding with left inverse Theta", kNone, w.empty(), w);
  }
  {
    std::string w;
    for (const auto& s : sigma)
      if (!find_in(xis, s)) w = format_set(theta_map(ring, s), d.labels());
    rep.add("every prime ideal of ANbhd is Xi of a strong component", kNone, w.empty(), w);
  }
  {
    // Sigma omega(I) = {U : omega(U) in I}; right square on RC.
    std::string w, wo;
    const std::size_t nu = ring.size();
    std::vector<std::optional<Elem>> om(nu);
    for (std::size_t i = 0; i < nu; ++i) om[i] = a.att.index_of(omega(d, ring.member(i)));
    auto pullback = [&](const ElemSet& ideal) {
      ElemSet out(nu);
      for (std::size_t i = 0; i < nu; ++i)
        if (om[i] && ideal[*om[i]]) out.set(i);
      return out;
    };
    bool defined = true;
    for (const auto& o : om) defined = defined && o.has_value();
    if (!defined) {
      w = "omega(U) is not an attractor for some U";
    } else {
      for (PointSet xi : a.rc.classes) {
        const int host = sc.class_of[lowest(xi)];
        if (pullback(phi_att(a.att, xi)) != xis[host]) w = "xi=" + d.format(xi);
      }
      const SpectrumPoset spec = prime_ideals(a.att.lattice);
      for (std::size_t i = 0; i < spec.ideals.size(); ++i)
        for (std::size_t j = 0; j < spec.ideals.size(); ++j)
          if (spec.order.leq(i, j) && !pullback(spec.ideals[i]).is_subset_of(pullback(spec.ideals[j])))
            wo = "Sigma omega not order-preserving";
    }
    rep.add("right square commutes", kContProper, w.empty(), w);
    rep.add("Sigma omega is order-preserving", kContProper, wo.empty() && w.empty(), wo.empty() ? w : wo);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Appendix: limit-set calculus

Report verify_appendix(const Analysis& a) {
  Report rep;
  rep.suite = "appendix";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const int n = d.size();
  const PointSet all = d.points();
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<PointSet> om(subsets), al(subsets);
  for (PointSet u = 0; u < subsets; ++u) {
    om[u] = omega(d, u);
    al[u] = alpha(d, u);
  }
  auto fwd_inv = [&](PointSet u) { return subset_of(d.image(u), u); };
  auto bwd_inv = [&](PointSet u) { return subset_of(d.preimage(u), u); };
  {
    std::string wo, wa;
    const bool exhaustive = pairs_upto(subsets, [&](std::size_t u, std::size_t v) {
      if (om[u | v] != (om[u] | om[v])) wo = "U=" + d.format(u) + " V=" + d.format(v);
      if (al[u | v] != (al[u] | al[v])) wa = "U=" + d.format(u) + " V=" + d.format(v);
    });
    if (!exhaustive) rep.notes.push_back("additivity pairs sampled");
    rep.add("omega additive", kNone, wo.empty(), wo);
    rep.add("alpha additive", kNone, wa.empty(), wa);
  }
  std::string w1, w2, w3, w4;
  std::string b3a, b3b, b6a, b6b, b7, b8;
  std::string c1, c2;
  for (PointSet u = 0; u < subsets; ++u) {
    const std::string at = "U=" + d.format(u);
    if (!d.topology().is_closed(om[u])) w1 = at;
    if (u != 0 && om[u] == 0) w2 = at;
    if (!subset_of(om[om[u]], om[u])) w3 = at;
    if (om[d.closure(u)] != om[u]) w4 = at;

    if (bwd_inv(u) && !subset_of(al[u], d.closure(u))) b3a = at;
    if (bwd_inv(u) && d.topology().is_closed(u)) {
      const PointSet v = al[u];
      if (!d.topology().is_closed(v) || !fwd_inv(v) || !bwd_inv(v) || v != inv_plus(d, u)) b3b = at;
    }
    if (fwd_inv(u) && !subset_of(d.closure(u), al[u])) b6a = at;
    if (fwd_inv(u) && bwd_inv(u) && d.closure(u) != al[u]) b6b = at;
    if (!subset_of(al[u], al[al[u]])) b7 = at;
    const PointSet ip = inv_plus(d, u);
    if (!subset_of(ip, al[u]) || (subset_of(al[u], u) && ip != al[u])) b8 = at;

    if (!d.topology().is_closed(om[u]) || d.image(om[u]) != om[u]) c1 = at;
    // Eventually forward invariant: f^t(U) inside U for all large t.
    PointSet s = u;
    bool eventually = false;
    for (int t = 0; t <= n + 1 && !eventually; ++t) {
      PointSet ss = s;
      bool all_inside = true;
      for (std::uint64_t k = 0; k <= d.cycles().lcm && k <= 64; ++k) {
        if (!subset_of(ss, u)) all_inside = false;
        ss = d.image(ss);
      }
      eventually = all_inside && d.cycles().lcm <= 64;
      s = d.image(s);
    }
    if (eventually && om[u] != inv(d, d.closure(u))) c2 = at;
  }
  rep.add("omega(U) closed", kContinuous, w1.empty(), w1);
  rep.add("U nonempty implies omega(U) nonempty", kContinuous, w2.empty(), w2);
  rep.add("omega(omega(U)) inside omega(U)", kContinuous, w3.empty(), w3);
  rep.add("omega(cl U) = omega(U)", kContinuous, w4.empty(), w4);
  rep.add("backward invariant U: alpha(U) inside cl U", kContinuous, b3a.empty(), b3a);
  rep.add("closed backward invariant U: alpha(U) = Inv+(U), closed, forward-backward invariant",
          kContinuous, b3b.empty(), b3b);
  rep.add("forward invariant U: cl U inside alpha(U)", kContinuous, b6a.empty(), b6a);
  rep.add("forward-backward invariant U: cl U = alpha(U)", kContinuous, b6b.empty(), b6b);
  rep.add("alpha(U) inside alpha(alpha(U))", kContinuous, b7.empty(), b7);
  rep.add("Inv+(U) inside alpha(U), equal when alpha(U) inside U", kContinuous, b8.empty(), b8);
  rep.add("omega(U) closed and invariant", kContProper, c1.empty(), c1);
  rep.add("eventually forward invariant U: omega(U) = Inv(cl U)", kContProper, c2.empty(), c2);
  {
    std::vector<PointSet> fwd, both;
    for (PointSet u = 0; u < subsets; ++u) {
      if (fwd_inv(u)) fwd.push_back(u);
      if (fwd_inv(u) && bwd_inv(u)) both.push_back(u);
    }
    std::string w;
    std::size_t count = 0;
    for (PointSet s : fwd)
      for (PointSet t : both) {
        if (++count > kPairBudget) break;
        if (inv(d, s & t) != (inv(d, s) & t)) w = "S=" + d.format(s) + " S'=" + d.format(t);
      }
    if (count > kPairBudget) rep.notes.push_back("Inv(S n S') pairs truncated");
    rep.add("Inv(S n S') = Inv(S) n S'", kNone, w.empty(), w);
  }
  {
    // U_t = cl(union of f^s(U), s >= t) is a decreasing closed family.
    std::string w;
    const auto h = oracle_horizon(d);
    if (h) {
      for (PointSet u = 0; u < subsets; ++u) {
        std::vector<PointSet> seq(2 * *h + 1);
        seq[0] = u;
        for (std::size_t t = 1; t < seq.size(); ++t) seq[t] = d.image(seq[t - 1]);
        PointSet tail = 0, cap = all, cap_img = all;
        for (std::size_t t = seq.size(); t-- > 0;) {
          tail |= seq[t];
          if (t <= *h) {
            const PointSet ut = d.closure(tail);
            cap &= ut;
            cap_img &= d.image(ut);
          }
        }
        if (d.image(cap) != cap_img) w = "U=" + d.format(u);
      }
      rep.add("f(n U_t) = n f(U_t) along cl Gamma+_t(U)", kNone, w.empty(), w);
    } else {
      rep.skip("f(n U_t) = n f(U_t) along cl Gamma+_t(U)", "oracle skipped: horizon above guard");
    }
  }
  {
    // The attractors containing an invariant set form a directed family.
    std::string w;
    for (int x = 0; x < n; ++x) {
      const PointSet s = om[singleton(x)];
      PointSet cap = all;
      for (PointSet att : a.att.sets)
        if (subset_of(s, att)) cap &= att;
      if (d.image(cap) != cap) w = "x=" + d.name_of(x);
    }
    rep.add("intersection of attractors containing omega(x) is invariant", kContProper, w.empty(), w);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Oracle agreement

Report verify_oracle(const Analysis& a) {
  Report rep;
  rep.suite = "oracle";
  rep.hypotheses = a.hypotheses;
  const DynSystem& d = a.d;
  const int n = d.size();
  if (!oracle_horizon(d)) {
    rep.skip("closed forms agree with definitional evaluation", "oracle skipped: horizon above guard");
    return rep;
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::string wo, wa, wan, wrn, wtr, winv;
  std::size_t checks = 0;
  for (PointSet u = 0; u < subsets; ++u) {
    const std::string at = "U=" + d.format(u);
    if (*omega_definitional(d, u) != omega(d, u)) wo = at;
    if (*alpha_definitional(d, u) != alpha(d, u)) wa = at;
    if (*attracting_definitional(d, u) != is_attracting_nbhd(d, u)) wan = at;
    if (*repelling_definitional(d, u) != is_repelling_nbhd(d, u)) wrn = at;
    if (*trapping_definitional(d, u) != is_trapping_region(d, u)) wtr = at;
    checks += 5;
    if (n <= 8) {
      if (inv_by_subsets(d, u) != inv(d, u) || inv_plus_by_subsets(d, u) != inv_plus(d, u)) winv = at;
      checks += 2;
    }
  }
  rep.add("omega closed form", kNone, wo.empty(), wo);
  rep.add("alpha closed form", kNone, wa.empty(), wa);
  rep.add("attracting neighborhood criterion", kNone, wan.empty(), wan);
  rep.add("repelling neighborhood criterion", kNone, wrn.empty(), wrn);
  rep.add("trapping region criterion", kNone, wtr.empty(), wtr);
  if (n <= 8)
    rep.add("Inv and Inv+ closed forms", kNone, winv.empty(), winv);
  else
    rep.skip("Inv and Inv+ closed forms", "subset enumeration limited to 8 points");
  rep.notes.push_back("subset checks: " + std::to_string(checks));
  return rep;
}

// ---------------------------------------------------------------------------

Decomposition decomposition(const Analysis& a, int x) {
  if (!att_forms_available(a))
    throw HypothesisViolated("decomposition needs a proper, continuous system with unique duals");
  const auto duals = *a.unique_duals();
  const DynSystem& d = a.d;
  auto ideal_of = [&](PointSet s) {
    ElemSet out(a.att.sets.size());
    for (std::size_t i = 0; i < a.att.sets.size(); ++i)
      if (subset_of(s, duals[i])) out.set(i);
    return out;
  };
  auto class_of = [&](const ElemSet& ideal) {
    const auto k = a.rc.index_of(psi_att(a.att, duals, ideal));
    if (!k) throw InternalInconsistency("Psi(I) is not a recurrent component");
    return static_cast<int>(*k);
  };
  Decomposition out;
  out.i_plus = ideal_of(omega(d, singleton(x)));
  out.xi_plus = class_of(out.i_plus);
  if (d.cycles().is_periodic(x)) {
    out.i_minus = ideal_of(orbital_alpha(d, x));
    out.xi_minus = class_of(*out.i_minus);
  }
  return out;
}

Compactification compactify(const Analysis& a, int x) {
  const DynSystem& d = a.d;
  const auto& ring = a.anbhd;
  const std::size_t np = a.arp.pairs.size();
  Compactification c;
  c.recurrent = contains(a.rc.support, x);
  c.i_x = xi_map(ring, a.sc.classes[a.sc.class_of[x]]);
  c.j_plus = ElemSet(np);
  for (std::size_t p = 0; p < np; ++p)
    if (contains(a.arp.pairs[p].r, x)) c.j_plus.set(p);
  auto pullback = [&](const ElemSet& j) {
    ElemSet out(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (j[a.arp.of_nbhd[i]]) out.set(i);
    return out;
  };
  c.i_plus = pullback(c.j_plus);
  if (d.cycles().is_periodic(x)) {
    ElemSet jm(np);
    for (std::size_t p = 0; p < np; ++p)
      if ((a.arp.pairs[p].a & d.cycles().periodic(x)) == 0) jm.set(p);
    c.j_minus = jm;
    c.i_minus = pullback(jm);
  }
  c.plus_strict = strictly_inside(c.i_plus, c.i_x);
  c.minus_strict = c.i_minus && strictly_inside(c.i_x, *c.i_minus);
  return c;
}

LatticeCompactification compactify_lattice(const DistLattice& ar,
                                           const std::vector<SampledNbhd>& nbhds, int x,
                                           PointSet orbit) {
  LatticeCompactification c;
  const std::size_t np = ar.size();
  c.j_plus = ElemSet(np);
  c.j_minus = ElemSet(np);
  for (Elem p = 0; p < np; ++p) {
    if (ar.label(p).kind != Label::Kind::Pair)
      throw SchemaError("/elements/" + std::to_string(p), "expected an {A, R} pair label");
    if (contains(ar.label(p).r, x)) c.j_plus.set(p);
    if ((ar.label(p).a & orbit) == 0) c.j_minus.set(p);
  }
  c.j_plus_prime = is_prime_ideal(ar, c.j_plus);
  c.j_minus_prime = is_prime_ideal(ar, c.j_minus);

  std::map<PointSet, Elem> pair_of;
  for (const auto& u : nbhds) pair_of[u.set] = u.pair;
  c.nbhds_closed = pair_of.size() == nbhds.size();
  c.varpi_homomorphism = true;
  for (const auto& u : nbhds)
    for (const auto& v : nbhds) {
      auto j = pair_of.find(u.set | v.set);
      auto m = pair_of.find(u.set & v.set);
      if (j == pair_of.end() || m == pair_of.end()) {
        c.nbhds_closed = false;
        continue;
      }
      if (j->second != ar.join(u.pair, v.pair) || m->second != ar.meet(u.pair, v.pair))
        c.varpi_homomorphism = false;
    }

  const std::size_t k = nbhds.size();
  c.i_plus = ElemSet(k);
  c.i_x = ElemSet(k);
  c.i_minus = ElemSet(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (c.j_plus[nbhds[i].pair]) c.i_plus.set(i);
    if (!contains(nbhds[i].set, x)) c.i_x.set(i);
    if (c.j_minus[nbhds[i].pair]) c.i_minus.set(i);
  }
  c.plus_strict = strictly_inside(c.i_plus, c.i_x);
  c.minus_strict = strictly_inside(c.i_x, c.i_minus);
  return c;
}

}  // namespace ordyn
