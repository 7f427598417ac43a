#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "wordlab/rat.hpp"
#include "wordlab/word.hpp"

namespace wordlab {

// Hard cap on exact enumeration: number of assignments (n!)^r.
inline constexpr long long kEnumerationBudget = 100'000'000;

long long factorial(int n);
// (n!)^r, or -1 if it exceeds the enumeration budget.
long long assignment_count(int n, int r);

// A finitely supported measure on S_n^arity. Exact distributions carry
// integer counts over a common denominator (weights sum to 1 exactly);
// empirical ones carry sample counts over denom = N. Keys are the packed
// one-line images of the tuple components, concatenated.
struct Distribution {
  enum Kind { kExact, kEmpirical };
  int n = 1;
  int arity = 1;
  Kind kind = kExact;
  long long denom = 1;
  std::unordered_map<std::string, long long> atoms;

  Rat weight(const std::string& key) const;
  long long support_size() const { return static_cast<long long>(atoms.size()); }
};

std::string pack_tuple(const std::vector<Permutation>& tuple);
std::vector<Permutation> unpack_tuple(const std::string& key, int n, int arity);

// Substitutes the assignment into the word under the left-to-right
// composition convention.
Permutation evaluate(const Word& w, const std::vector<Permutation>& assignment);

Distribution exact_distribution(const Word& w, int n);
Distribution sample_distribution(const Word& w, int n, long long N, std::uint64_t seed,
                                 int workers = 1);

Distribution uniform_exact(int n, int arity = 1);
Distribution ncycle_uniform(int n);
Distribution class_uniform(const Permutation& rep);  // n <= 8
Distribution dirac(const Permutation& p);

// Exact conjugation-averaging (class projection); arity 1, n <= 8.
Distribution symmetrize(const Distribution& dist);
// Unbiased sampled variant: each sample conjugated by an independent
// uniform permutation.
Distribution symmetrized_sample(const Word& w, int n, long long N, std::uint64_t seed,
                                int workers = 1);

// Joint distribution of (w_1(sigma),...,w_d(sigma)) with one shared
// assignment.
Distribution tuple_pushforward_exact(const std::vector<Word>& words, int n);
Distribution tuple_pushforward_sampled(const std::vector<Word>& words, int n, long long N,
                                       std::uint64_t seed, int workers = 1);

Distribution marginal(const Distribution& dist, int coord);

// Exact equality of measures (weights compared as rationals).
bool dist_equal(const Distribution& a, const Distribution& b);
// Constant on conjugacy classes (arity 1)?
bool is_class_function(const Distribution& dist);
Rat tv_distance(const Distribution& a, const Distribution& b);

// Streaming cycle statistics of word values; no samples are stored.
struct CycleStatSummary {
  long long N = 0;
  int n = 0;
  int h = 1;
  double mean_f_leq = 0;
  double mean_num_cycles = 0;
  double fixed_point_fraction = 0;  // mean f_1 / n
  std::map<int, long long> f_leq_histogram;
  std::map<int, long long> tail_counts;  // f -> #{samples with f_leq >= f}

  double quantile_f_leq(double q) const;
};

CycleStatSummary cycle_stat_stream(const Word& w, int n, long long N, int h,
                                   const std::vector<int>& tail_thresholds, std::uint64_t seed,
                                   int workers = 1);

}  // namespace wordlab
