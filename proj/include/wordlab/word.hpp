#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wordlab/perm.hpp"

namespace wordlab {

// A signed variable letter x_var^sign, var in {1,...,r}, sign in {+1,-1}.
struct VarLetter {
  int var = 1;
  int sign = +1;
  friend bool operator==(const VarLetter&, const VarLetter&) = default;
};

using Letter = std::variant<Permutation, VarLetter>;

inline bool is_const(const Letter& l) { return std::holds_alternative<Permutation>(l); }
inline const Permutation& const_part(const Letter& l) { return std::get<Permutation>(l); }
inline const VarLetter& var_part(const Letter& l) { return std::get<VarLetter>(l); }

// A word with constants in S_n * F_r: a sequence of constant permutations
// and signed variables. The ambient degree n and rank r are fixed at
// construction; mixing degrees is a hard error. Immutable value type.
class Word {
 public:
  Word(int n, int r, std::vector<Letter> letters);

  int degree() const { return n_; }
  int rank() const { return r_; }
  const std::vector<Letter>& letters() const { return letters_; }

  // Number of variable letters (the length l of a reduced word).
  int var_length() const;

  bool reduced_flag() const { return reduced_; }

  std::string str() const;

 private:
  friend Word reduce(const Word&);
  int n_;
  int r_;
  std::vector<Letter> letters_;
  bool reduced_ = false;
};

// View of a word in canonical reduced shape c0 x1 c1 ... xl cl.
struct ReducedView {
  std::vector<Permutation> consts;  // length l+1
  std::vector<VarLetter> vars;      // length l
};

// J0/J+/J- partition of intermediate indices, critical data and flags.
struct Classification {
  int length = 0;
  std::vector<int> J0, Jplus, Jminus;  // 1-based indices in {1,...,l-1}
  std::vector<Permutation> critical_constants;
  bool strong = false;
  bool non_singular = false;
  bool regular = false;
  int crit_norm = 0;  // min raw non-fixed count over critical constants; n if none
};

// A freely reduced element of F_r: signed generator indices (+i or -i).
using FreeWord = std::vector<int>;

// Parses the word grammar (x1, x2^-1, cycle constants, "e"); throws
// std::invalid_argument with a position on syntax errors. Returns the raw
// unreduced letter sequence; integer exponents expand to repeated letters.
Word parse_word(const std::string& text, int n, int r);

// Fixpoint reduction: merges adjacent constants and cancels same-variable
// +/- patterns around central constants (identity for n >= 3; everything
// for n <= 2). The result is in canonical shape c0 x c1 ... x cl and
// induces the same word map.
Word reduce(const Word& w);

// Structural check for the canonical reduced shape.
bool is_reduced(const Word& w);

// Requires reduced input (throws otherwise).
ReducedView reduced_view(const Word& w);
Classification classify(const Word& w);

// Constant-erasing homomorphism to F_r, freely reduced.
FreeWord epsilon(const Word& w);

// Returns (core, conjugator) with w = conjugator * core * conjugator^-1
// in S_n * F_r and core cyclically reduced. w is conjugate to a constant
// iff core has no variable letter.
std::pair<Word, Word> cyclically_reduce(const Word& w);

// Reduced k-fold concatenation, k >= 1.
Word power(const Word& w, int k);

// Regular: core contains a variable and every critical constant of the
// reduced square is fixed point free.
bool is_regular(const Word& w);

// Free reduction of a generator string.
FreeWord free_reduce(const FreeWord& w);
FreeWord free_inverse(const FreeWord& w);
std::string free_word_str(const FreeWord& w);

// Rank of the subgroup of F_r generated by the given nonempty elements,
// via Stallings folding of the wedge of loops.
int stallings_rank(const std::vector<FreeWord>& words, int r);

}  // namespace wordlab
