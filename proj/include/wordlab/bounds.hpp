#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wordlab/eval.hpp"
#include "wordlab/rat.hpp"
#include "wordlab/word.hpp"

namespace wordlab {

// Parameters of the subset return-probability bound. Valid only when
// n - d*l*h > 0.
struct BoundParams {
  int n = 1;   // degree
  int d = 1;   // subset size
  int l = 1;   // word length
  int h = 1;   // max cycle length
  int crit = 1;  // ||w^h||_crit
};

// ((n - crit + d*l*h) * l*h / (n - d*l*h))^d, exact; may exceed 1.
Rat lemma_bound(const BoundParams& p);
// (d*(l*h)^2 / (n - d*l*h))^d, exact; equals lemma_bound with crit = n.
Rat corollary_bound(int n, int d, int l, int h);
// exp(-c*f/(l*h)^2); c is caller-supplied.
double proposition_tail(double f, int l, int h, double c);

struct McEstimate {
  long long hits = 0;
  long long N = 0;
  double estimate = 0;
  double sigma = 0;     // sqrt(p(1-p)/N)
  double ci_low = 0;    // Wilson score, 95%
  double ci_high = 0;
};

McEstimate make_estimate(long long hits, long long N);

// P(X subset of F_{<=h}(w(sigma))) by Monte Carlo; X is 1-based, possibly
// empty (probability 1).
McEstimate mc_subset_prob(const Word& w, int n, const std::vector<int>& X, int h, long long N,
                          std::uint64_t seed, int workers = 1);

// P(f_{<=h}(w(sigma)) >= f).
McEstimate mc_tail_prob(const Word& w, int n, int h, int f, long long N, std::uint64_t seed,
                        int workers = 1);

struct AuditRow {
  int d = 1;
  int h = 1;
  std::string subset_id;
  std::vector<int> X;
  McEstimate est;
  double bound = 0;
  bool pass = false;  // estimate - 3 sigma <= bound
};

// For each d <= d_max, checks the first-d-points subset plus 10 seeded
// random d-subsets against corollary_bound, sharing one sample set per
// audit. Rejects non-regular words.
std::vector<AuditRow> bound_audit(const Word& w, int n, int h, int d_max, long long N,
                                  std::uint64_t seed, int workers = 1);

}  // namespace wordlab
