#pragma once

// Brute-force evaluations straight from the definitions, sharing no code with
// the library beyond reading the map and the specialization preorder.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ordyn/dynsys.hpp"
#include "ordyn/lattice.hpp"

namespace oracle {

using Set = std::uint64_t;

struct Sys {
  int n = 0;
  std::vector<int> f;
  std::vector<Set> opens;
  int horizon = 0;  // n + lcm of cycle lengths

  explicit Sys(const ordyn::DynSystem& d) : n(d.size()), f(d.map()) {
    for (Set u = 0; u < (Set{1} << n); ++u) {
      bool open = true;
      for (int x = 0; x < n && open; ++x)
        for (int y = 0; y < n && open; ++y)
          if ((u >> x & 1) && d.topology().leq(x, y) && !(u >> y & 1)) open = false;
      if (open) opens.push_back(u);
    }
    long long l = 1;
    for (int x = 0; x < n; ++x) {
      int y = x;
      for (int k = 1; k <= n; ++k) {
        y = f[y];
        if (y == x) {
          l = std::lcm(l, static_cast<long long>(k));
          break;
        }
      }
    }
    horizon = n + static_cast<int>(l);
  }

  Set all() const { return (Set{1} << n) - 1; }
  Set closure(Set u) const {
    Set c = all();
    for (Set o : opens)
      if ((o & u) == 0) c &= ~o;
    return c;
  }
  Set interior(Set u) const {
    Set i = 0;
    for (Set o : opens)
      if ((o & ~u) == 0) i |= o;
    return i;
  }
  Set image(Set s) const {
    Set out = 0;
    for (int x = 0; x < n; ++x)
      if (s >> x & 1) out |= Set{1} << f[x];
    return out;
  }
  Set preimage(Set s) const {
    Set out = 0;
    for (int x = 0; x < n; ++x)
      if (s >> f[x] & 1) out |= Set{1} << x;
    return out;
  }
  bool periodic(int x) const {
    int y = x;
    for (int k = 0; k < n; ++k) {
      y = f[y];
      if (y == x) return true;
    }
    return false;
  }
  Set cycle(int x) const {
    Set c = 0;
    int y = x;
    for (int k = 0; k < n; ++k) {
      c |= Set{1} << y;
      y = f[y];
    }
    return c;
  }

  // Intersection over t <= H of cl(union of the step^s(U), t <= s <= 3H).
  template <class Step>
  Set limit(Set u, Step step) const {
    const int last = 3 * horizon;
    std::vector<Set> seq(last + 1);
    seq[0] = u;
    for (int t = 1; t <= last; ++t) seq[t] = step(seq[t - 1]);
    Set out = all(), tail = 0;
    for (int t = last; t >= 0; --t) {
      tail |= seq[t];
      if (t <= horizon) out &= closure(tail);
    }
    return out;
  }
  Set omega(Set u) const { return limit(u, [&](Set s) { return image(s); }); }
  Set alpha(Set u) const { return limit(u, [&](Set s) { return preimage(s); }); }

  // Exists tau in [1, H] with step^t(cl U) inside int U for t in [tau, 3H].
  template <class Step>
  bool eventually_inside(Set u, Step step) const {
    const Set in = interior(u);
    Set s = closure(u);
    int first_bad_after = 0;
    for (int t = 1; t <= 3 * horizon; ++t) {
      s = step(s);
      if ((s & ~in) != 0) first_bad_after = t;
    }
    return first_bad_after < horizon;
  }
  bool attracting(Set u) const { return eventually_inside(u, [&](Set s) { return image(s); }); }
  bool repelling(Set u) const { return eventually_inside(u, [&](Set s) { return preimage(s); }); }

  // Unions of invariant / forward invariant subsets, by enumeration.
  Set inv(Set u) const {
    Set out = 0;
    for (Set s = u;; s = (s - 1) & u) {
      if (image(s) == s) out |= s;
      if (s == 0) break;
    }
    return out;
  }
  Set inv_plus(Set u) const {
    Set out = 0;
    for (Set s = u;; s = (s - 1) & u) {
      if ((image(s) & ~s) == 0) out |= s;
      if (s == 0) break;
    }
    return out;
  }

  std::vector<Set> anbhds() const {
    std::vector<Set> out;
    for (Set u = 0; u <= all(); ++u)
      if (attracting(u)) out.push_back(u);
    return out;
  }
  std::vector<Set> attractors() const {
    std::set<Set> a;
    for (Set u : anbhds()) a.insert(inv(closure(u)));
    return {a.begin(), a.end()};
  }
  std::vector<std::pair<Set, Set>> arpairs() const {
    std::set<std::pair<Set, Set>> p;
    for (Set u : anbhds()) p.insert({inv(u), inv_plus(all() & ~u)});
    return {p.begin(), p.end()};
  }

  Set recurrent_set() const {
    const auto pairs = arpairs();
    Set r = 0;
    for (int x = 0; x < n; ++x) {
      if (!periodic(x)) continue;
      bool ok = true;
      for (auto [a, rep] : pairs)
        if ((cycle(x) & ~(a | rep)) != 0) ok = false;
      if (ok) r |= Set{1} << x;
    }
    return r;
  }

  // Classes of x <= x' iff every member of `family` containing x' contains x,
  // over the points of `support`, each sorted by least point; plus the order.
  static std::pair<std::vector<Set>, std::set<std::pair<int, int>>> classes(
      int n, Set support, const std::vector<Set>& family) {
    auto leq = [&](int x, int y) {
      for (Set a : family)
        if ((a >> y & 1) && !(a >> x & 1)) return false;
      return true;
    };
    std::vector<Set> cls;
    std::vector<int> rep;
    for (int x = 0; x < n; ++x) {
      if (!(support >> x & 1)) continue;
      bool placed = false;
      for (std::size_t c = 0; c < cls.size() && !placed; ++c)
        if (leq(x, rep[c]) && leq(rep[c], x)) {
          cls[c] |= Set{1} << x;
          placed = true;
        }
      if (!placed) {
        cls.push_back(Set{1} << x);
        rep.push_back(x);
      }
    }
    std::set<std::pair<int, int>> order;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j)
        if (i != j && leq(rep[i], rep[j])) order.insert({static_cast<int>(i), static_cast<int>(j)});
    return {cls, order};
  }

  // Conley relation: (x, y) iff for every open cover and every tau there is
  // a chain. Covers are enumerated literally when there are at most
  // kLiteralOpens opens; otherwise only the cover by minimal neighborhoods,
  // which refines every open cover.
  static constexpr std::size_t kLiteralOpens = 10;
  std::vector<Set> conley() const {
    std::vector<std::vector<Set>> covers;
    if (opens.size() <= kLiteralOpens) {
      for (std::uint32_t fam = 1; fam < (1u << opens.size()); ++fam) {
        std::vector<Set> c;
        Set cov = 0;
        for (std::size_t k = 0; k < opens.size(); ++k)
          if (fam >> k & 1) {
            c.push_back(opens[k]);
            cov |= opens[k];
          }
        if (cov == all()) covers.push_back(c);
      }
    } else {
      std::vector<Set> c;
      for (int x = 0; x < n; ++x) {
        Set m = all();
        for (Set o : opens)
          if (o >> x & 1) m &= o;
        c.push_back(m);
      }
      covers.push_back(c);
    }
    std::vector<Set> rel(n, all());
    for (const auto& cover : covers)
      for (int tau = 1; tau <= horizon; ++tau) {
        // One chain step from x: some t in [tau, tau + H] and a member
        // containing f^t(x) and the next point.
        std::vector<Set> step(n, 0);
        for (int x = 0; x < n; ++x) {
          int y = x;
          for (int t = 1; t <= tau + horizon; ++t) {
            y = f[y];
            if (t < tau) continue;
            for (Set u : cover)
              if (u >> y & 1) step[x] |= u;
          }
        }
        std::vector<Set> reach = step;
        for (bool grew = true; grew;) {
          grew = false;
          for (int x = 0; x < n; ++x) {
            Set next = reach[x];
            for (int z = 0; z < n; ++z)
              if (reach[x] >> z & 1) next |= step[z];
            if (next != reach[x]) {
              reach[x] = next;
              grew = true;
            }
          }
        }
        for (int x = 0; x < n; ++x) rel[x] &= reach[x];
      }
    return rel;
  }
};

// Prime ideals of a small lattice by testing every subset against the axioms.
inline std::vector<ordyn::ElemSet> prime_ideals(const ordyn::DistLattice& l) {
  const std::size_t m = l.size();
  std::vector<ordyn::ElemSet> out;
  for (std::uint32_t s = 1; s + 1 < (1u << m); ++s) {
    auto in = [&](std::size_t a) { return (s >> a & 1) != 0; };
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = 0; b < m && ok; ++b) {
        if (in(a) && l.leq(b, a) && !in(b)) ok = false;
        if (in(a) && in(b) && !in(l.join(a, b))) ok = false;
        if (in(l.meet(a, b)) && !in(a) && !in(b)) ok = false;
      }
    if (!ok) continue;
    ordyn::ElemSet e(m);
    for (std::size_t a = 0; a < m; ++a)
      if (in(a)) e.set(a);
    out.push_back(e);
  }
  return out;
}

}  // namespace oracle
