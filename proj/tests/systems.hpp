#pragma once

#include <random>
#include <string>
#include <vector>

#include "ordyn/sweep.hpp"

namespace testing_support {

// Calls fn(d) for every map on n points, over every preorder topology or only
// the discrete one.
template <class F>
void for_all_systems(int n, bool all_topologies, F&& fn) {
  const auto tops = all_topologies ? ordyn::all_preorders(n) : std::vector<ordyn::Preorder>{ordyn::Preorder(n)};
  int maps = 1;
  for (int i = 0; i < n; ++i) maps *= n;
  for (const auto& p : tops) {
    const ordyn::Topology t(p);
    for (int code = 0; code < maps; ++code) {
      std::vector<int> f(n);
      for (int x = 0, c = code; x < n; ++x, c /= n) f[x] = c % n;
      fn(ordyn::DynSystem(t, f));
    }
  }
}

inline ordyn::DynSystem random_system(int n, std::mt19937_64& rng, double edge = 0.2) {
  std::vector<ordyn::Pair> pairs;
  std::bernoulli_distribution e(edge);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && e(rng)) pairs.emplace_back(i, j);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> f(n);
  for (auto& v : f) v = pick(rng);
  return ordyn::DynSystem(ordyn::Topology(ordyn::Preorder::closure_of(n, pairs)), f);
}

// Random poset on n elements: i < j allowed only for i < j, then closed.
inline ordyn::FinitePoset random_poset(int n, std::mt19937_64& rng, double edge = 0.3) {
  std::vector<ordyn::Pair> pairs;
  std::bernoulli_distribution e(edge);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (e(rng)) pairs.emplace_back(i, j);
  return ordyn::FinitePoset(ordyn::Preorder::closure_of(n, pairs));
}

}  // namespace testing_support
