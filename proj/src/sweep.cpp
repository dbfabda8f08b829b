#include "ordyn/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ordyn/spectra.hpp"

namespace ordyn {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"conley", "A", "B", "C", "D", "cospan", "appendix", "oracle"};
  return names;
}

Report run_suite(const Analysis& a, const std::string& suite) {
  if (suite == "conley") return conley_checks(a);
  if (suite == "A") return verify_theorem_A(a);
  if (suite == "B") return verify_theorem_B(a);
  if (suite == "C") return verify_theorem_C(a);
  if (suite == "D") return verify_theorem_D(a);
  if (suite == "cospan") return verify_cospan_diagram(a);
  if (suite == "appendix") return verify_appendix(a);
  if (suite == "oracle") return verify_oracle(a);
  throw SchemaError("--suite", "unknown suite '" + suite + "'");
}

std::vector<Preorder> all_preorders(int n) {
  if (n < 1 || n > kExhaustiveMaxPoints)
    throw SpaceTooLarge("preorder enumeration is limited to " + std::to_string(kExhaustiveMaxPoints) + " points");
  std::vector<std::pair<int, int>> offs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) offs.emplace_back(i, j);
  std::vector<Preorder> out;
  std::vector<std::uint32_t> up(n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << offs.size()); ++mask) {
    for (int i = 0; i < n; ++i) up[i] = std::uint32_t{1} << i;
    for (std::size_t k = 0; k < offs.size(); ++k)
      if ((mask >> k) & 1u) up[offs[k].first] |= std::uint32_t{1} << offs[k].second;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        if (((up[i] >> j) & 1u) && (up[j] & ~up[i]) != 0) transitive = false;
    if (!transitive) continue;
    std::vector<ElemSet> rows(n, ElemSet(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((up[i] >> j) & 1u) rows[i].set(j);
    out.push_back(Preorder::from_up_rows(std::move(rows)));
  }
  return out;
}

namespace {

struct Plan {
  std::vector<Preorder> topologies;
  std::vector<std::vector<int>> maps;  // exhaustive mode
  std::size_t count = 0;
  bool sampled = false;
};

std::uint64_t saturating_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = r > (std::uint64_t{1} << 40) ? r : r * b;
  return r;
}

Plan plan(const SweepOptions& o) {
  Plan p;
  if (o.n < 1) throw SchemaError("--n", "expected a positive point count");
  p.sampled = o.samples > 0 || o.n > kExhaustiveMaxPoints;
  if (p.sampled) {
    if (o.n > kSampledMaxPoints)
      throw SpaceTooLarge("sampled sweeps are limited to " + std::to_string(kSampledMaxPoints) + " points");
    p.count = o.samples > 0 ? o.samples : std::size_t{1000};
    if (p.count > o.budget) throw SpaceTooLarge("sample count exceeds the budget");
    return p;
  }
  std::uint64_t maps = saturating_pow(o.n, o.n);
  if (o.invertible_only) {
    maps = 1;
    for (int k = 2; k <= o.n; ++k) maps *= k;
  }
  p.topologies = o.all_topologies ? all_preorders(o.n) : std::vector<Preorder>{Preorder(o.n)};
  const std::uint64_t total = maps * p.topologies.size();
  if (total > o.budget)
    throw SpaceTooLarge(std::to_string(total) + " systems exceed the budget of " + std::to_string(o.budget));
  std::vector<int> f(o.n);
  if (o.invertible_only) {
    std::iota(f.begin(), f.end(), 0);
    do p.maps.push_back(f);
    while (std::next_permutation(f.begin(), f.end()));
  } else {
    for (std::uint64_t code = 0; code < maps; ++code) {
      std::uint64_t c = code;
      for (int x = 0; x < o.n; ++x) {
        f[x] = static_cast<int>(c % o.n);
        c /= o.n;
      }
      p.maps.push_back(f);
    }
  }
  p.count = total;
  return p;
}

std::vector<std::string> point_names(int n) {
  std::vector<std::string> out;
  for (int x = 0; x < n; ++x) out.push_back(std::to_string(x));
  return out;
}

// Random system k of a sampled sweep, independent of evaluation order.
DynSystem sampled_system(const SweepOptions& o, std::size_t k, std::size_t& topology_id) {
  std::mt19937_64 rng(o.seed + 0x9e37'79b9'7f4a'7c15ULL * (k + 1));
  const int n = o.n;
  Preorder spec(n);
  topology_id = 0;
  if (o.all_topologies) {
    std::vector<Pair> pairs;
    std::bernoulli_distribution edge(1.5 / n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && edge(rng)) pairs.emplace_back(i, j);
    spec = Preorder::closure_of(n, pairs);
    topology_id = pairs.size();
  }
  std::vector<int> f(n);
  if (o.invertible_only) {
    std::iota(f.begin(), f.end(), 0);
    std::shuffle(f.begin(), f.end(), rng);
  } else {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (auto& v : f) v = pick(rng);
  }
  return DynSystem(Topology(spec), f, point_names(n));
}

std::string map_code(const std::vector<int>& f) {
  std::string s;
  for (int v : f) s += std::to_string(v) + (f.size() > 10 ? "." : "");
  return s;
}

SweepRow row_at(const SweepOptions& o, const Plan& p, std::size_t k) {
  if (p.sampled) {
    std::size_t tid = 0;
    DynSystem d = sampled_system(o, k, tid);
    return sweep_one(d, "n" + std::to_string(o.n) + "-s" + std::to_string(k), tid);
  }
  const std::size_t tid = k / p.maps.size();
  const auto& f = p.maps[k % p.maps.size()];
  DynSystem d(Topology(p.topologies[tid]), f, point_names(o.n));
  return sweep_one(d, "n" + std::to_string(o.n) + "-t" + std::to_string(tid) + "-f" + map_code(f), tid);
}

}  // namespace

std::size_t sweep_size(const SweepOptions& o) { return plan(o).count; }

SweepRow sweep_one(const DynSystem& d, std::string name, std::size_t topology_id) {
  SweepRow row;
  row.name = std::move(name);
  row.n = d.size();
  row.topology_id = topology_id;
  row.system = d;
  try {
    const Analysis a = analyze(d);
    row.continuous = a.predicates.continuous;
    row.closed = a.predicates.closed;
    for (const auto& suite : suite_names()) {
      const Report r = run_suite(a, suite);
      if (suite == "A") row.a = r.tally();
      if (suite == "B") row.b = r.tally();
      if (suite == "C") row.c = r.tally();
      if (suite == "D") row.d = r.tally();
      for (const auto& c : r.checks)
        if (c.applicable && !c.passed) row.failures.push_back(suite + ":" + c.name);
    }
  } catch (const Error& e) {
    row.failures.push_back(std::string("error:") + e.what());
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepOptions& o) {
  const Plan p = plan(o);
  std::vector<SweepRow> rows(p.count);
  const auto count = static_cast<std::int64_t>(p.count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k) rows[k] = row_at(o, p, static_cast<std::size_t>(k));
  return rows;
}

std::vector<SweepRow> sweep_serial(const SweepOptions& o) {
  const Plan p = plan(o);
  std::vector<SweepRow> rows;
  rows.reserve(p.count);
  for (std::size_t k = 0; k < p.count; ++k) rows.push_back(row_at(o, p, k));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "name,n,topology-id,continuous,closed,checksA,checksB,checksC,checksD,failures\n";
  for (const auto& r : rows) {
    std::string fails;
    for (const auto& f : r.failures) {
      if (!fails.empty()) fails += ";";
      for (char ch : f) fails += ch == '"' ? '\'' : ch;
    }
    out += r.name + "," + std::to_string(r.n) + "," + std::to_string(r.topology_id) + "," +
           (r.continuous ? "1" : "0") + "," + (r.closed ? "1" : "0") + "," + r.a.str() + "," +
           r.b.str() + "," + r.c.str() + "," + r.d.str() + ",\"" + fails + "\"\n";
  }
  return out;
}

namespace {

// Removes x, sending its preimages to f(x) (or to a remaining point when x is
// fixed) and restricting the specialization preorder.
std::optional<DynSystem> drop_point(const DynSystem& d, int x) {
  const int n = d.size();
  if (n <= 1) return std::nullopt;
  std::vector<int> keep;
  std::vector<int> index(n, -1);
  for (int y = 0; y < n; ++y)
    if (y != x) {
      index[y] = static_cast<int>(keep.size());
      keep.push_back(y);
    }
  int target = d(x) != x ? d(x) : keep.front();
  for (int guard = 0; target == x && guard < n; ++guard) target = d(target);
  if (target == x) return std::nullopt;
  const Preorder& spec = d.topology().specialization();
  std::vector<ElemSet> rows(n - 1, ElemSet(n - 1));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      if (spec.leq(keep[i], keep[j])) rows[i].set(j);
  std::vector<int> f(n - 1);
  std::vector<std::string> labels;
  for (int i = 0; i < n - 1; ++i) {
    const int img = d(keep[i]);
    f[i] = index[img == x ? target : img];
    labels.push_back(d.labels()[keep[i]]);
  }
  return DynSystem(Topology(Preorder::from_up_rows(std::move(rows))), f, labels);
}

}  // namespace

DynSystem shrink(const DynSystem& d, const std::function<bool(const DynSystem&)>& fails) {
  DynSystem cur = d;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int x = 0; x < cur.size() && !progress; ++x) {
      auto smaller = drop_point(cur, x);
      if (smaller && fails(*smaller)) {
        cur = std::move(*smaller);
        progress = true;
      }
    }
    for (int x = 0; x < cur.size() && !progress; ++x) {
      if (cur(x) == x) continue;
      auto f = cur.map();
      f[x] = x;
      DynSystem cand(cur.topology(), f, cur.labels());
      if (fails(cand)) {
        cur = std::move(cand);
        progress = true;
      }
    }
  }
  return cur;
}

}  // namespace ordyn
