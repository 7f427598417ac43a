#include "wordlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace wordlab {

int ground_raw(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ground_raw: key size mismatch");
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

namespace {

// Successive shortest augmenting paths with Johnson potentials on the
// bipartite transportation graph. Supplies/demands are exact integers;
// edge costs are raw Hamming counts, so the optimum is exact.
struct Mcmf {
  struct E {
    int to;
    long long cap;
    long long cost;
    int rev;
  };
  std::vector<std::vector<E>> g;

  explicit Mcmf(int n) : g(n) {}

  void add(int u, int v, long long cap, long long cost) {
    g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
    g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
  }

  // Returns total cost of a maximum flow from s to t.
  __int128 solve(int s, int t) {
    int n = static_cast<int>(g.size());
    const long long INF = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> pot(n, 0), dist(n);
    std::vector<int> pv(n), pe(n);
    __int128 total = 0;
    for (;;) {
      std::fill(dist.begin(), dist.end(), INF);
      dist[s] = 0;
      using Item = std::pair<long long, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int i = 0; i < static_cast<int>(g[u].size()); ++i) {
          const E& e = g[u][i];
          if (e.cap <= 0) continue;
          long long nd = d + e.cost + pot[u] - pot[e.to];
          if (nd < dist[e.to]) {
            dist[e.to] = nd;
            pv[e.to] = u;
            pe[e.to] = i;
            pq.push({nd, e.to});
          }
        }
      }
      if (dist[t] >= INF) break;
      for (int u = 0; u < n; ++u)
        if (dist[u] < INF) pot[u] += dist[u];
      long long push = INF;
      for (int u = t; u != s; u = pv[u]) push = std::min(push, g[pv[u]][pe[u]].cap);
      for (int u = t; u != s; u = pv[u]) {
        E& e = g[pv[u]][pe[u]];
        e.cap -= push;
        g[u][e.rev].cap += push;
        total += __int128(push) * e.cost;
      }
    }
    return total;
  }
};

long long lcm_ll(long long a, long long b) {
  long long g = std::gcd(a, b);
  __int128 l = __int128(a / g) * b;
  if (l > std::numeric_limits<long long>::max()) throw std::overflow_error("kr_exact: mass scale overflow");
  return static_cast<long long>(l);
}

}  // namespace

std::pair<Rat, TransportPlan> kr_exact(const Distribution& mu, const Distribution& nu) {
  if (mu.n != nu.n || mu.arity != nu.arity)
    throw std::invalid_argument("kr_exact: degree/arity mismatch");
  long long a = mu.support_size(), b = nu.support_size();
  if (a * b > kTransportPairBudget)
    throw std::invalid_argument("kr_exact: support pair budget |A|*|B| <= 1e7 exceeded");

  TransportPlan plan;
  for (const auto& [key, count] : mu.atoms) plan.left_atoms.push_back(key);
  for (const auto& [key, count] : nu.atoms) plan.right_atoms.push_back(key);
  std::sort(plan.left_atoms.begin(), plan.left_atoms.end());
  std::sort(plan.right_atoms.begin(), plan.right_atoms.end());

  long long scale = lcm_ll(mu.denom, nu.denom);
  int A = static_cast<int>(a), B = static_cast<int>(b);
  int S = A + B, T = A + B + 1;
  Mcmf flow(A + B + 2);
  for (int i = 0; i < A; ++i)
    flow.add(S, i, mu.atoms.at(plan.left_atoms[i]) * (scale / mu.denom), 0);
  for (int j = 0; j < B; ++j)
    flow.add(A + j, T, nu.atoms.at(plan.right_atoms[j]) * (scale / nu.denom), 0);
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < B; ++j)
      flow.add(i, A + j, std::numeric_limits<long long>::max() / 8,
               ground_raw(plan.left_atoms[i], plan.right_atoms[j]));
  __int128 raw_total = flow.solve(S, T);

  // Read flows off the residual graph: forward transport edges start at
  // index offset 1 in each left node's adjacency (0 is the reverse of S->i).
  for (int i = 0; i < A; ++i) {
    for (const Mcmf::E& e : flow.g[i]) {
      if (e.to >= A && e.to < A + B && e.cost >= 0) {
        long long used = flow.g[e.to][e.rev].cap;  // reverse capacity = pushed flow
        if (used > 0) plan.flows.push_back({i, e.to - A, Rat(used, scale)});
      }
    }
  }
  long long total_ll = static_cast<long long>(raw_total);
  Rat value = Rat(total_ll, scale) / Rat(mu.n);
  plan.cost = value;
  return {value, plan};
}

Rat plan_cost_checked(const TransportPlan& plan, const Distribution& mu, const Distribution& nu) {
  std::map<int, Rat> row, col;
  Rat cost(0);
  for (const auto& f : plan.flows) {
    if (f.mass < Rat(0)) throw std::invalid_argument("plan: negative flow");
    row[f.i] += f.mass;
    col[f.j] += f.mass;
    cost += f.mass * Rat(ground_raw(plan.left_atoms[f.i], plan.right_atoms[f.j]), mu.n);
  }
  for (size_t i = 0; i < plan.left_atoms.size(); ++i)
    if (row[static_cast<int>(i)] != mu.weight(plan.left_atoms[i]))
      throw std::invalid_argument("plan: row sum mismatch");
  for (size_t j = 0; j < plan.right_atoms.size(); ++j)
    if (col[static_cast<int>(j)] != nu.weight(plan.right_atoms[j]))
      throw std::invalid_argument("plan: column sum mismatch");
  return cost;
}

namespace {

// Reads a class member and an n-cycle off one arrangement of {1,...,n}:
// the blocks (sizes = cycle type, fixed order) read as cycles give the
// member, the whole line read as one cycle gives the n-cycle.
std::pair<Permutation, Permutation> arrangement_pair(const std::vector<int>& arr,
                                                     const std::vector<int>& type) {
  int n = static_cast<int>(arr.size());
  std::vector<int> member(n), cycle(n);
  std::iota(member.begin(), member.end(), 1);
  size_t pos = 0;
  for (int len : type) {
    for (int i = 0; i < len; ++i)
      member[arr[pos + i] - 1] = arr[pos + (i + 1) % len];
    pos += len;
  }
  for (int i = 0; i < n; ++i) cycle[arr[i] - 1] = arr[(i + 1) % n];
  return {Permutation::from_images(member), Permutation::from_images(cycle)};
}

}  // namespace

TransportPlan coupling_class_to_ncycles(const Permutation& rep, long long samples,
                                        std::uint64_t seed) {
  int n = rep.degree();
  if (n < 1) throw std::invalid_argument("coupling: bad degree");
  std::vector<int> type = cycle_stats(rep).cycle_lengths;
  std::map<std::pair<std::string, std::string>, long long> counts;
  long long denom;
  if (n <= 8 && samples == 0) {
    std::vector<int> arr(n);
    std::iota(arr.begin(), arr.end(), 1);
    denom = factorial(n);
    do {
      auto [member, cyc] = arrangement_pair(arr, type);
      counts[{member.packed(), cyc.packed()}] += 1;
    } while (std::next_permutation(arr.begin(), arr.end()));
  } else {
    if (samples <= 0) samples = 100000;
    denom = samples;
    Rng rng(seed);
    std::vector<int> arr(n);
    std::iota(arr.begin(), arr.end(), 1);
    for (long long s = 0; s < samples; ++s) {
      for (int i = n - 1; i > 0; --i)
        std::swap(arr[i], arr[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      auto [member, cyc] = arrangement_pair(arr, type);
      counts[{member.packed(), cyc.packed()}] += 1;
    }
  }
  TransportPlan plan;
  std::map<std::string, int> li, ri;
  for (const auto& [pair, count] : counts) {
    if (!li.count(pair.first)) {
      li[pair.first] = static_cast<int>(plan.left_atoms.size());
      plan.left_atoms.push_back(pair.first);
    }
    if (!ri.count(pair.second)) {
      ri[pair.second] = static_cast<int>(plan.right_atoms.size());
      plan.right_atoms.push_back(pair.second);
    }
  }
  Rat cost(0);
  for (const auto& [pair, count] : counts) {
    Rat mass(count, denom);
    plan.flows.push_back({li[pair.first], ri[pair.second], mass});
    cost += mass * Rat(ground_raw(pair.first, pair.second), n);
  }
  plan.cost = cost;
  return plan;
}

double ncycle_bound(int n) {
  if (n < 1) throw std::invalid_argument("ncycle_bound: n >= 1 required");
  return (std::log(static_cast<double>(n)) + 1.0) / n;
}

Rat harmonic_coupling_cost(int n) {
  if (n < 1) throw std::invalid_argument("harmonic_coupling_cost: n >= 1 required");
  Rat h(0);
  for (int k = 1; k <= n; ++k) h += Rat(1, k);
  return h / Rat(n);
}

SupportDiagnostic support_diagnostic(const Distribution& dist, double epsilon,
                                     std::optional<double> kr_value) {
  if (epsilon < 0 || epsilon > 1)
    throw std::invalid_argument("support_diagnostic: epsilon in [0,1] required");
  SupportDiagnostic out;
  out.support = dist.support_size();
  double log_nfact = std::lgamma(static_cast<double>(dist.n) + 1.0);
  out.rhs = std::exp((1.0 - std::sqrt(epsilon)) * dist.arity * log_nfact);
  out.ratio = static_cast<double>(out.support) / out.rhs;
  if (kr_value) out.lp_bound = std::sqrt(*kr_value);
  return out;
}

}  // namespace wordlab
