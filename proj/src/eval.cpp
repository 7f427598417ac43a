#include "wordlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace wordlab {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > (1LL << 62) / i) throw std::overflow_error("factorial: overflow");
    f *= i;
  }
  return f;
}

long long assignment_count(int n, int r) {
  long long f = factorial(n);
  long long total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > kEnumerationBudget / f) return -1;
    total *= f;
  }
  return total;
}

Rat Distribution::weight(const std::string& key) const {
  auto it = atoms.find(key);
  return it == atoms.end() ? Rat(0) : Rat(it->second, denom);
}

std::string pack_tuple(const std::vector<Permutation>& tuple) {
  std::string key;
  for (const Permutation& p : tuple) key += p.packed();
  return key;
}

std::vector<Permutation> unpack_tuple(const std::string& key, int n, int arity) {
  if (static_cast<int>(key.size()) != n * arity)
    throw std::invalid_argument("unpack_tuple: key size mismatch");
  std::vector<Permutation> out;
  for (int i = 0; i < arity; ++i)
    out.push_back(Permutation::unpack(key.substr(static_cast<size_t>(i) * n, n)));
  return out;
}

namespace {

// Image-chasing evaluation; inverses of the assignment are built once per
// call, only for variables that occur inverted.
Permutation evaluate_with_inverses(const Word& w, const std::vector<Permutation>& sigma,
                                   std::vector<std::vector<int>>& inv_cache) {
  int n = w.degree();
  if (inv_cache.empty()) {
    inv_cache.assign(sigma.size(), {});
    for (const Letter& l : w.letters()) {
      if (!is_const(l) && var_part(l).sign < 0) {
        int v = var_part(l).var - 1;
        if (inv_cache[v].empty()) {
          inv_cache[v].resize(n);
          for (int i = 0; i < n; ++i) inv_cache[v][sigma[v].apply0(i)] = i;
        }
      }
    }
  }
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (const Letter& l : w.letters()) {
    if (is_const(l)) {
      const Permutation& c = const_part(l);
      for (int i = 0; i < n; ++i) cur[i] = c.apply0(cur[i]);
    } else {
      const VarLetter& v = var_part(l);
      if (v.sign > 0) {
        const Permutation& s = sigma[v.var - 1];
        for (int i = 0; i < n; ++i) cur[i] = s.apply0(cur[i]);
      } else {
        const std::vector<int>& inv = inv_cache[v.var - 1];
        for (int i = 0; i < n; ++i) cur[i] = inv[cur[i]];
      }
    }
  }
  std::vector<int> one_based(n);
  for (int i = 0; i < n; ++i) one_based[i] = cur[i] + 1;
  return Permutation::from_images(one_based);
}

void check_word_degree(const Word& w, int n) {
  if (w.degree() != n) throw std::invalid_argument("word degree does not match requested n");
}

// Runs fn(worker_index, samples_for_worker, rng) on `workers` threads with
// derived generators; the per-(seed, workers) layout is deterministic.
template <typename F>
void sharded(long long N, std::uint64_t seed, int workers, F fn) {
  if (workers < 1) workers = 1;
  long long base = N / workers, extra = N % workers;
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    long long quota = base + (t < extra ? 1 : 0);
    threads.emplace_back([t, quota, seed, &fn] {
      Rng rng = Rng::derive(seed, 0, static_cast<std::uint64_t>(t));
      fn(t, quota, rng);
    });
  }
  for (auto& th : threads) th.join();
}

void merge_counts(std::unordered_map<std::string, long long>& into,
                  const std::unordered_map<std::string, long long>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

// Iterates all (n!)^r assignments in lexicographic one-line order.
template <typename F>
void for_each_assignment(int n, int r, F fn) {
  std::vector<std::vector<int>> lines(r);
  for (auto& line : lines) {
    line.resize(n);
    std::iota(line.begin(), line.end(), 1);
  }
  std::vector<Permutation> sigma;
  for (;;) {
    sigma.clear();
    for (const auto& line : lines) sigma.push_back(Permutation::from_images(line));
    fn(sigma);
    int pos = r - 1;
    while (pos >= 0 && !std::next_permutation(lines[pos].begin(), lines[pos].end())) --pos;
    if (pos < 0) break;
  }
}

}  // namespace

Permutation evaluate(const Word& w, const std::vector<Permutation>& assignment) {
  if (static_cast<int>(assignment.size()) < w.rank())
    throw std::invalid_argument("evaluate: assignment shorter than word rank");
  for (const Permutation& p : assignment)
    if (p.degree() != w.degree()) throw std::invalid_argument("evaluate: degree mismatch");
  std::vector<std::vector<int>> inv;
  return evaluate_with_inverses(w, assignment, inv);
}

Distribution exact_distribution(const Word& w, int n) {
  check_word_degree(w, n);
  long long total = assignment_count(n, w.rank());
  if (total < 0)
    throw std::invalid_argument("exact_distribution: enumeration budget (n!)^r <= 1e8 exceeded");
  Distribution dist;
  dist.n = n;
  dist.arity = 1;
  dist.kind = Distribution::kExact;
  dist.denom = total;
  for_each_assignment(n, w.rank(), [&](const std::vector<Permutation>& sigma) {
    std::vector<std::vector<int>> inv;
    dist.atoms[evaluate_with_inverses(w, sigma, inv).packed()] += 1;
  });
  return dist;
}

Distribution sample_distribution(const Word& w, int n, long long N, std::uint64_t seed,
                                 int workers) {
  check_word_degree(w, n);
  if (N < 1) throw std::invalid_argument("sample_distribution: N must be >= 1");
  std::vector<std::unordered_map<std::string, long long>> parts(std::max(workers, 1));
  sharded(N, seed, workers, [&](int t, long long quota, Rng& rng) {
    std::vector<Permutation> sigma;
    for (long long i = 0; i < quota; ++i) {
      sigma.clear();
      for (int v = 0; v < w.rank(); ++v) sigma.push_back(random_uniform(n, rng));
      std::vector<std::vector<int>> inv;
      parts[t][evaluate_with_inverses(w, sigma, inv).packed()] += 1;
    }
  });
  Distribution dist;
  dist.n = n;
  dist.arity = 1;
  dist.kind = Distribution::kEmpirical;
  dist.denom = N;
  for (const auto& part : parts) merge_counts(dist.atoms, part);
  return dist;
}

Distribution uniform_exact(int n, int arity) {
  long long size = 1;
  long long f = factorial(n);
  for (int i = 0; i < arity; ++i) size *= f;
  if (size > 1'000'000) throw std::invalid_argument("uniform_exact: (n!)^d too large");
  Distribution dist;
  dist.n = n;
  dist.arity = arity;
  dist.kind = Distribution::kExact;
  dist.denom = size;
  std::vector<Permutation> all = all_permutations(n);
  std::vector<int> idx(arity, 0);
  for (;;) {
    std::vector<Permutation> tuple;
    for (int i : idx) tuple.push_back(all[i]);
    dist.atoms[pack_tuple(tuple)] = 1;
    int pos = arity - 1;
    while (pos >= 0 && ++idx[pos] == static_cast<int>(all.size())) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return dist;
}

Distribution ncycle_uniform(int n) {
  Distribution dist;
  dist.n = n;
  dist.arity = 1;
  dist.kind = Distribution::kExact;
  dist.denom = factorial(n - 1);
  for (const Permutation& p : all_permutations(n))
    if (cycle_stats(p).num_cycles == 1 || n == 1) dist.atoms[p.packed()] = 1;
  return dist;
}

Distribution class_uniform(const Permutation& rep) {
  int n = rep.degree();
  if (n > 8) throw std::invalid_argument("class_uniform: n <= 8 required");
  std::vector<int> type = cycle_stats(rep).cycle_lengths;
  Distribution dist;
  dist.n = n;
  dist.arity = 1;
  dist.kind = Distribution::kExact;
  dist.denom = conjugacy_class_size(n, type);
  for (const Permutation& p : all_permutations(n))
    if (cycle_stats(p).cycle_lengths == type) dist.atoms[p.packed()] = 1;
  return dist;
}

Distribution dirac(const Permutation& p) {
  Distribution dist;
  dist.n = p.degree();
  dist.arity = 1;
  dist.kind = Distribution::kExact;
  dist.denom = 1;
  dist.atoms[p.packed()] = 1;
  return dist;
}

Distribution symmetrize(const Distribution& dist) {
  if (dist.arity != 1) throw std::invalid_argument("symmetrize: arity 1 only");
  if (dist.n > 8) throw std::invalid_argument("symmetrize: exact variant requires n <= 8");
  long long nf = factorial(dist.n);
  if (dist.denom > (1LL << 62) / nf) throw std::overflow_error("symmetrize: denominator overflow");
  // Group mass by cycle type, then spread uniformly over each class.
  std::map<std::vector<int>, long long> class_mass;
  for (const auto& [key, count] : dist.atoms)
    class_mass[cycle_stats(Permutation::unpack(key)).cycle_lengths] += count;
  Distribution out;
  out.n = dist.n;
  out.arity = 1;
  out.kind = dist.kind;
  out.denom = dist.denom * nf;
  for (const Permutation& p : all_permutations(dist.n)) {
    std::vector<int> type = cycle_stats(p).cycle_lengths;
    auto it = class_mass.find(type);
    if (it == class_mass.end()) continue;
    long long cls = conjugacy_class_size(dist.n, type);
    out.atoms[p.packed()] = it->second * (nf / cls);
  }
  return out;
}

Distribution symmetrized_sample(const Word& w, int n, long long N, std::uint64_t seed,
                                int workers) {
  check_word_degree(w, n);
  std::vector<std::unordered_map<std::string, long long>> parts(std::max(workers, 1));
  sharded(N, seed, workers, [&](int t, long long quota, Rng& rng) {
    std::vector<Permutation> sigma;
    for (long long i = 0; i < quota; ++i) {
      sigma.clear();
      for (int v = 0; v < w.rank(); ++v) sigma.push_back(random_uniform(n, rng));
      std::vector<std::vector<int>> inv;
      Permutation val = evaluate_with_inverses(w, sigma, inv);
      Permutation g = random_uniform(n, rng);
      parts[t][conjugate(val, g).packed()] += 1;
    }
  });
  Distribution dist;
  dist.n = n;
  dist.arity = 1;
  dist.kind = Distribution::kEmpirical;
  dist.denom = N;
  for (const auto& part : parts) merge_counts(dist.atoms, part);
  return dist;
}

Distribution tuple_pushforward_exact(const std::vector<Word>& words, int n) {
  if (words.empty()) throw std::invalid_argument("tuple_pushforward: empty word list");
  int r = 0;
  for (const Word& w : words) {
    check_word_degree(w, n);
    r = std::max(r, w.rank());
  }
  long long total = assignment_count(n, r);
  if (total < 0)
    throw std::invalid_argument("tuple_pushforward: enumeration budget (n!)^r <= 1e8 exceeded");
  Distribution dist;
  dist.n = n;
  dist.arity = static_cast<int>(words.size());
  dist.kind = Distribution::kExact;
  dist.denom = total;
  for_each_assignment(n, r, [&](const std::vector<Permutation>& sigma) {
    std::string key;
    for (const Word& w : words) {
      std::vector<std::vector<int>> inv;
      key += evaluate_with_inverses(w, sigma, inv).packed();
    }
    dist.atoms[key] += 1;
  });
  return dist;
}

Distribution tuple_pushforward_sampled(const std::vector<Word>& words, int n, long long N,
                                       std::uint64_t seed, int workers) {
  if (words.empty()) throw std::invalid_argument("tuple_pushforward: empty word list");
  int r = 0;
  for (const Word& w : words) {
    check_word_degree(w, n);
    r = std::max(r, w.rank());
  }
  std::vector<std::unordered_map<std::string, long long>> parts(std::max(workers, 1));
  sharded(N, seed, workers, [&](int t, long long quota, Rng& rng) {
    std::vector<Permutation> sigma;
    for (long long i = 0; i < quota; ++i) {
      sigma.clear();
      for (int v = 0; v < r; ++v) sigma.push_back(random_uniform(n, rng));
      std::string key;
      for (const Word& w : words) {
        std::vector<std::vector<int>> inv;
        key += evaluate_with_inverses(w, sigma, inv).packed();
      }
      parts[t][key] += 1;
    }
  });
  Distribution dist;
  dist.n = n;
  dist.arity = static_cast<int>(words.size());
  dist.kind = Distribution::kEmpirical;
  dist.denom = N;
  for (const auto& part : parts) merge_counts(dist.atoms, part);
  return dist;
}

Distribution marginal(const Distribution& dist, int coord) {
  if (coord < 1 || coord > dist.arity) throw std::invalid_argument("marginal: coord out of range");
  Distribution out;
  out.n = dist.n;
  out.arity = 1;
  out.kind = dist.kind;
  out.denom = dist.denom;
  for (const auto& [key, count] : dist.atoms)
    out.atoms[key.substr(static_cast<size_t>(coord - 1) * dist.n, dist.n)] += count;
  return out;
}

bool dist_equal(const Distribution& a, const Distribution& b) {
  if (a.n != b.n || a.arity != b.arity) return false;
  for (const auto& [key, count] : a.atoms)
    if (__int128(count) * b.denom != __int128(b.atoms.count(key) ? b.atoms.at(key) : 0) * a.denom)
      return false;
  for (const auto& [key, count] : b.atoms)
    if (!a.atoms.count(key) && count != 0) return false;
  return true;
}

bool is_class_function(const Distribution& dist) {
  if (dist.arity != 1) return false;
  std::map<std::vector<int>, Rat> seen;
  for (const auto& [key, count] : dist.atoms) {
    std::vector<int> type = cycle_stats(Permutation::unpack(key)).cycle_lengths;
    Rat w(count, dist.denom);
    auto [it, fresh] = seen.try_emplace(type, w);
    if (!fresh && it->second != w) return false;
  }
  // Every class member must carry mass if the class carries any.
  for (const auto& [type, w] : seen) {
    long long cls = conjugacy_class_size(dist.n, type);
    long long present = 0;
    for (const auto& [key, count] : dist.atoms)
      if (cycle_stats(Permutation::unpack(key)).cycle_lengths == type) ++present;
    if (present != cls) return false;
  }
  return true;
}

Rat tv_distance(const Distribution& a, const Distribution& b) {
  if (a.n != b.n || a.arity != b.arity)
    throw std::invalid_argument("tv_distance: shape mismatch");
  Rat total(0);
  for (const auto& [key, count] : a.atoms) {
    Rat d = Rat(count, a.denom) - b.weight(key);
    total += (d < Rat(0)) ? -d : d;
  }
  for (const auto& [key, count] : b.atoms)
    if (!a.atoms.count(key)) total += Rat(count, b.denom);
  return total / Rat(2);
}

double CycleStatSummary::quantile_f_leq(double q) const {
  long long target = static_cast<long long>(q * static_cast<double>(N));
  long long acc = 0;
  for (const auto& [value, count] : f_leq_histogram) {
    acc += count;
    if (acc > target) return static_cast<double>(value);
  }
  return static_cast<double>(n);
}

CycleStatSummary cycle_stat_stream(const Word& w, int n, long long N, int h,
                                   const std::vector<int>& tail_thresholds, std::uint64_t seed,
                                   int workers) {
  check_word_degree(w, n);
  if (h < 1 || h > n) throw std::invalid_argument("cycle_stat_stream: h out of range");
  struct Acc {
    long long sum_f = 0, sum_cycles = 0, sum_fixed = 0;
    std::map<int, long long> hist;
  };
  std::vector<Acc> parts(std::max(workers, 1));
  sharded(N, seed, workers, [&](int t, long long quota, Rng& rng) {
    std::vector<Permutation> sigma;
    for (long long i = 0; i < quota; ++i) {
      sigma.clear();
      for (int v = 0; v < w.rank(); ++v) sigma.push_back(random_uniform(n, rng));
      std::vector<std::vector<int>> inv;
      Permutation val = evaluate_with_inverses(w, sigma, inv);
      CycleStats st = cycle_stats(val);
      int fl = 0;
      for (const auto& [len, cnt] : st.f)
        if (len <= h) fl += cnt;
      parts[t].sum_f += fl;
      parts[t].sum_cycles += st.num_cycles;
      parts[t].sum_fixed += st.f.count(1) ? st.f.at(1) : 0;
      parts[t].hist[fl] += 1;
    }
  });
  CycleStatSummary out;
  out.N = N;
  out.n = n;
  out.h = h;
  long long sf = 0, sc = 0, sfix = 0;
  for (const Acc& a : parts) {
    sf += a.sum_f;
    sc += a.sum_cycles;
    sfix += a.sum_fixed;
    for (const auto& [v, c] : a.hist) out.f_leq_histogram[v] += c;
  }
  out.mean_f_leq = static_cast<double>(sf) / static_cast<double>(N);
  out.mean_num_cycles = static_cast<double>(sc) / static_cast<double>(N);
  out.fixed_point_fraction = static_cast<double>(sfix) / (static_cast<double>(N) * n);
  for (int f : tail_thresholds) {
    long long cnt = 0;
    for (const auto& [v, c] : out.f_leq_histogram)
      if (v >= f) cnt += c;
    out.tail_counts[f] = cnt;
  }
  return out;
}

}  // namespace wordlab
