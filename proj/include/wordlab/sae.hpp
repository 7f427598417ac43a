#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wordlab/eval.hpp"
#include "wordlab/rat.hpp"
#include "wordlab/transport.hpp"
#include "wordlab/word.hpp"

namespace wordlab {

// Default finite test battery: all nonempty freely reduced words of
// F_d of length <= maxlen, one representative per {v, v^-1} pair.
std::vector<FreeWord> sofic_battery(int d, int maxlen = 4);

struct SoficRow {
  FreeWord v;
  int n = 0;
  double mean_fixed_fraction = 0;  // E[f_1(v(w_1(sigma),...,w_d(sigma)))/n]
};

// Estimates the fixed-point fraction of every battery element under the
// tuple pushforward, per degree. Word texts are parsed per degree.
std::vector<SoficRow> sofic_check(const std::vector<std::string>& word_texts, int r,
                                  const std::vector<int>& degrees, long long N,
                                  std::uint64_t seed, const std::vector<FreeWord>& battery,
                                  int workers = 1);

struct SaeResult {
  bool exact = false;
  Rat kr_value;              // exact mode
  double kr_sampled = 0;     // sampled mode: plug-in estimate
  double baseline = 0;       // sampled mode: uniform-vs-uniform same-N reference
};

// KR distance between the tuple pushforward and product uniform under the
// l^1 product metric. Exact mode enumerates assignments and solves the
// transportation problem exactly; sampled mode compares two empirical
// measures of matched size and reports a same-law baseline alongside.
SaeResult sae_estimate(const std::vector<Word>& words, int n, bool exact, long long N,
                       std::uint64_t seed, int workers = 1);

struct FreenessReport {
  int d = 0;
  int r = 0;
  int rank = 0;
  bool free_of_rank_d = false;
  bool rank_excess_obstruction = false;  // d > r
  // Set for the documented exemplar family {a^2, b^2, ab} (containment in
  // a rank-2 subgroup); general detection is out of scope.
  bool exemplar_obstruction = false;
};

FreenessReport freeness_report(const std::vector<FreeWord>& words, int r);

}  // namespace wordlab
