#include "wordlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wordlab/rng.hpp"

namespace wordlab {

Rat lemma_bound(const BoundParams& p) {
  if (p.d < 1) throw std::invalid_argument("lemma_bound: d >= 1 required");
  if (p.h < 1 || p.h > p.n) throw std::invalid_argument("lemma_bound: h out of range");
  long long dlh = static_cast<long long>(p.d) * p.l * p.h;
  if (p.n - dlh <= 0) throw std::invalid_argument("lemma_bound: n - d*l*h must be positive");
  Rat base(( p.n - p.crit + dlh) * static_cast<long long>(p.l) * p.h, p.n - dlh);
  return Rat::pow(base, p.d);
}

Rat corollary_bound(int n, int d, int l, int h) {
  return lemma_bound(BoundParams{n, d, l, h, n});
}

double proposition_tail(double f, int l, int h, double c) {
  if (f < 0) throw std::invalid_argument("proposition_tail: f >= 0 required");
  if (c <= 0) throw std::invalid_argument("proposition_tail: c > 0 required");
  double lh = static_cast<double>(l) * h;
  return std::exp(-c * f / (lh * lh));
}

McEstimate make_estimate(long long hits, long long N) {
  McEstimate e;
  e.hits = hits;
  e.N = N;
  double p = static_cast<double>(hits) / static_cast<double>(N);
  e.estimate = p;
  e.sigma = std::sqrt(p * (1 - p) / static_cast<double>(N));
  const double z = 1.959963984540054;
  double z2 = z * z, nn = static_cast<double>(N);
  double center = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  e.ci_low = std::max(0.0, center - half);
  e.ci_high = std::min(1.0, center + half);
  return e;
}

namespace {

bool subset_in_short_cycles(const Permutation& v, const std::vector<int>& X, int h) {
  for (int x : X)
    if (cycle_length_through(v, x) > h) return false;
  return true;
}

template <typename F>
long long count_hits(const Word& w, int n, long long N, std::uint64_t seed, int workers, F hit) {
  if (workers < 1) workers = 1;
  std::vector<long long> parts(workers, 0);
  long long base = N / workers, extra = N % workers;
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    long long quota = base + (t < extra ? 1 : 0);
    threads.emplace_back([&, t, quota] {
      Rng rng = Rng::derive(seed, 0, static_cast<std::uint64_t>(t));
      std::vector<Permutation> sigma;
      for (long long i = 0; i < quota; ++i) {
        sigma.clear();
        for (int v = 0; v < w.rank(); ++v) sigma.push_back(random_uniform(n, rng));
        if (hit(evaluate(w, sigma))) ++parts[t];
      }
    });
  }
  for (auto& th : threads) th.join();
  return std::accumulate(parts.begin(), parts.end(), 0LL);
}

}  // namespace

McEstimate mc_subset_prob(const Word& w, int n, const std::vector<int>& X, int h, long long N,
                          std::uint64_t seed, int workers) {
  if (N < 1000) throw std::invalid_argument("mc_subset_prob: N >= 1000 required");
  if (h < 1 || h > n) throw std::invalid_argument("mc_subset_prob: h out of range");
  for (int x : X)
    if (x < 1 || x > n) throw std::invalid_argument("mc_subset_prob: point out of range");
  if (X.empty()) return make_estimate(N, N);
  long long hits = count_hits(w, n, N, seed, workers,
                              [&](const Permutation& v) { return subset_in_short_cycles(v, X, h); });
  return make_estimate(hits, N);
}

McEstimate mc_tail_prob(const Word& w, int n, int h, int f, long long N, std::uint64_t seed,
                        int workers) {
  if (N < 1000) throw std::invalid_argument("mc_tail_prob: N >= 1000 required");
  if (h < 1 || h > n) throw std::invalid_argument("mc_tail_prob: h out of range");
  if (f <= 0) return make_estimate(N, N);
  if (f > n) return make_estimate(0, N);
  long long hits =
      count_hits(w, n, N, seed, workers, [&](const Permutation& v) { return f_leq(v, h) >= f; });
  return make_estimate(hits, N);
}

std::vector<AuditRow> bound_audit(const Word& w, int n, int h, int d_max, long long N,
                                  std::uint64_t seed, int workers) {
  Word wr = w.reduced_flag() ? w : reduce(w);
  if (!is_regular(wr)) throw std::invalid_argument("bound_audit: word is not regular");
  int l = wr.var_length();
  struct Case {
    int d;
    std::string id;
    std::vector<int> X;
  };
  std::vector<Case> cases;
  Rng subset_rng = Rng::derive(seed, 1, 0);
  for (int d = 1; d <= d_max; ++d) {
    if (n - static_cast<long long>(d) * l * h <= 0)
      throw std::invalid_argument("bound_audit: n - d*l*h must be positive for all d <= d_max");
    std::vector<int> first(d);
    std::iota(first.begin(), first.end(), 1);
    cases.push_back({d, "first", first});
    for (int k = 0; k < 10; ++k) {
      // seeded d-subset without replacement
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 1);
      std::vector<int> X;
      for (int i = 0; i < d; ++i) {
        int j = static_cast<int>(subset_rng.below(pool.size() - i)) + i;
        std::swap(pool[i], pool[j]);
        X.push_back(pool[i]);
      }
      std::sort(X.begin(), X.end());
      cases.push_back({d, "rand" + std::to_string(k), X});
    }
  }
  // One shared sample set: evaluate once, test every case per sample.
  if (workers < 1) workers = 1;
  std::vector<std::vector<long long>> parts(workers, std::vector<long long>(cases.size(), 0));
  long long base = N / workers, extra = N % workers;
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    long long quota = base + (t < extra ? 1 : 0);
    threads.emplace_back([&, t, quota] {
      Rng rng = Rng::derive(seed, 0, static_cast<std::uint64_t>(t));
      std::vector<Permutation> sigma;
      for (long long i = 0; i < quota; ++i) {
        sigma.clear();
        for (int v = 0; v < wr.rank(); ++v) sigma.push_back(random_uniform(n, rng));
        Permutation val = evaluate(wr, sigma);
        for (size_t c = 0; c < cases.size(); ++c)
          if (subset_in_short_cycles(val, cases[c].X, h)) ++parts[t][c];
      }
    });
  }
  for (auto& th : threads) th.join();
  std::vector<AuditRow> rows;
  for (size_t c = 0; c < cases.size(); ++c) {
    long long hits = 0;
    for (int t = 0; t < workers; ++t) hits += parts[t][c];
    AuditRow row;
    row.d = cases[c].d;
    row.h = h;
    row.subset_id = cases[c].id;
    row.X = cases[c].X;
    row.est = make_estimate(hits, N);
    row.bound = corollary_bound(n, cases[c].d, l, h).to_double();
    row.pass = row.est.estimate - 3 * row.est.sigma <= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wordlab
