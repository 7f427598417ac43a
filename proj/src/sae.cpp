#include "wordlab/sae.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "wordlab/rng.hpp"

namespace wordlab {

std::vector<FreeWord> sofic_battery(int d, int maxlen) {
  std::set<FreeWord> seen;
  std::vector<FreeWord> out;
  std::vector<FreeWord> frontier = {FreeWord{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<FreeWord> next;
    for (const FreeWord& w : frontier) {
      for (int g = 1; g <= d; ++g) {
        for (int s : {g, -g}) {
          if (!w.empty() && w.back() == -s) continue;
          FreeWord ext = w;
          ext.push_back(s);
          next.push_back(ext);
          FreeWord canon = std::min(ext, free_inverse(ext));
          if (seen.insert(canon).second) out.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

Permutation eval_free(const FreeWord& v, const std::vector<Permutation>& g) {
  int n = g.at(0).degree();
  Permutation out = identity(n);
  for (int s : v) {
    const Permutation& p = g.at(std::abs(s) - 1);
    out = compose(out, s > 0 ? p : inverse(p));
  }
  return out;
}

}  // namespace

std::vector<SoficRow> sofic_check(const std::vector<std::string>& word_texts, int r,
                                  const std::vector<int>& degrees, long long N,
                                  std::uint64_t seed, const std::vector<FreeWord>& battery,
                                  int workers) {
  int d = static_cast<int>(word_texts.size());
  for (const FreeWord& v : battery) {
    if (free_reduce(v).empty() || free_reduce(v) != v)
      throw std::invalid_argument("sofic_check: battery elements must be nonempty and reduced");
    for (int s : v)
      if (std::abs(s) > d) throw std::invalid_argument("sofic_check: battery element exceeds F_d");
  }
  std::vector<SoficRow> rows;
  for (int n : degrees) {
    std::vector<Word> words;
    for (const std::string& t : word_texts) words.push_back(reduce(parse_word(t, n, r)));
    if (workers < 1) workers = 1;
    std::vector<std::vector<long long>> parts(workers, std::vector<long long>(battery.size(), 0));
    long long base = N / workers, extra = N % workers;
    std::vector<std::thread> threads;
    for (int t = 0; t < workers; ++t) {
      long long quota = base + (t < extra ? 1 : 0);
      threads.emplace_back([&, t, quota, n] {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t));
        std::vector<Permutation> sigma, values;
        for (long long i = 0; i < quota; ++i) {
          sigma.clear();
          for (int v = 0; v < r; ++v) sigma.push_back(random_uniform(n, rng));
          values.clear();
          for (const Word& w : words) values.push_back(evaluate(w, sigma));
          for (size_t b = 0; b < battery.size(); ++b) {
            Permutation val = eval_free(battery[b], values);
            int fixed = 0;
            for (int p = 0; p < n; ++p)
              if (val.apply0(p) == p) ++fixed;
            parts[t][b] += fixed;
          }
        }
      });
    }
    for (auto& th : threads) th.join();
    for (size_t b = 0; b < battery.size(); ++b) {
      long long total = 0;
      for (int t = 0; t < workers; ++t) total += parts[t][b];
      SoficRow row;
      row.v = battery[b];
      row.n = n;
      row.mean_fixed_fraction = static_cast<double>(total) / (static_cast<double>(N) * n);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

SaeResult sae_estimate(const std::vector<Word>& words, int n, bool exact, long long N,
                       std::uint64_t seed, int workers) {
  int d = static_cast<int>(words.size());
  SaeResult res;
  res.exact = exact;
  if (exact) {
    Distribution push = tuple_pushforward_exact(words, n);
    Distribution unif = uniform_exact(n, d);
    res.kr_value = kr_exact(push, unif).first;
  } else {
    Distribution push = tuple_pushforward_sampled(words, n, N, seed, workers);
    std::vector<Word> primitives;
    for (int i = 1; i <= d; ++i)
      primitives.push_back(reduce(Word(n, d, {VarLetter{i, 1}})));
    Distribution unif_a = tuple_pushforward_sampled(primitives, n, N, splitmix64(seed) + 1, workers);
    Distribution unif_b = tuple_pushforward_sampled(primitives, n, N, splitmix64(seed) + 2, workers);
    res.kr_sampled = kr_exact(push, unif_a).first.to_double();
    res.baseline = kr_exact(unif_b, unif_a).first.to_double();
  }
  return res;
}

FreenessReport freeness_report(const std::vector<FreeWord>& words, int r) {
  FreenessReport rep;
  rep.d = static_cast<int>(words.size());
  rep.r = r;
  rep.rank = stallings_rank(words, r);
  rep.free_of_rank_d = (rep.rank == rep.d);
  rep.rank_excess_obstruction = rep.d > rep.r;
  if (rep.d == 3) {
    // {a^2, b^2, ab} up to ordering, for generators a != b.
    for (int a = 1; a <= r && !rep.exemplar_obstruction; ++a) {
      for (int b = 1; b <= r; ++b) {
        if (a == b) continue;
        std::multiset<FreeWord> expect = {FreeWord{a, a}, FreeWord{b, b}, FreeWord{a, b}};
        std::multiset<FreeWord> got;
        for (const FreeWord& w : words) got.insert(free_reduce(w));
        if (got == expect) {
          rep.exemplar_obstruction = true;
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace wordlab
