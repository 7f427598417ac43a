#pragma once

#include <map>
#include <string>
#include <vector>

#include "wordlab/rat.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

// A permutation of {1,...,n} in one-line notation. Points are 1-based in
// all I/O and cycle notation; internal storage is 0-based. Immutable after
// construction and safe to share across threads.
class Permutation {
 public:
  // Identity on {1,...,n}.
  explicit Permutation(int n);

  // From 1-based one-line images. Throws std::invalid_argument unless the
  // array is a bijection of {1,...,n}.
  static Permutation from_images(const std::vector<int>& one_based);

  // Parses cycle notation, e.g. "(1 2 3)(4 5)"; "e" is the identity.
  // Entries must lie in {1,...,n}.
  static Permutation from_cycles(const std::string& text, int n);

  int degree() const { return static_cast<int>(images_.size()); }

  // 0-based application.
  int apply0(int i) const { return images_[i]; }
  // 1-based application.
  int apply(int i) const { return images_[i - 1] + 1; }

  bool is_identity() const;

  // 1-based one-line images.
  std::vector<int> one_line() const;

  // Cycle notation; fixed points omitted, identity prints as "e".
  std::string cycles_str() const;

  // Packed byte key (requires n <= 255); used as hash-map key.
  std::string packed() const;
  static Permutation unpack(const std::string& key);

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

 private:
  std::vector<int> images_;
};

// Cycle statistics of a permutation: f[h] counts points lying in h-cycles.
struct CycleStats {
  std::vector<int> cycle_lengths;  // sorted descending
  std::map<int, int> f;            // h -> f_h
  int num_cycles = 0;
};

// Left-to-right composition: result(i) = q(p(i)), i.e. apply p first.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
Permutation identity(int n);
// g^{-1} p g under the left-to-right convention; preserves cycle type.
Permutation conjugate(const Permutation& p, const Permutation& g);

int hamming_raw(const Permutation& p, const Permutation& q);
Rat hamming(const Permutation& p, const Permutation& q);

CycleStats cycle_stats(const Permutation& p);
// Number of points in cycles of length <= h; requires 1 <= h <= n.
int f_leq(const Permutation& p, int h);
// Length of the cycle through 1-based point i.
int cycle_length_through(const Permutation& p, int point);

// Exactly uniform over S_n (unbiased Fisher-Yates).
Permutation random_uniform(int n, Rng& rng);

// All permutations of S_n in lexicographic one-line order (n <= 8 sized use).
std::vector<Permutation> all_permutations(int n);

// Size of the conjugacy class with the given cycle type.
long long conjugacy_class_size(int n, const std::vector<int>& cycle_lengths);

}  // namespace wordlab
