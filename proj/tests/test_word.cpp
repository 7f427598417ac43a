#include "doctest.h"

#include <vector>

#include "wordlab/eval.hpp"
#include "wordlab/word.hpp"

using namespace wordlab;

namespace {

// Evaluation agreement at random assignments; the workhorse oracle for
// reduce/power/cyclically_reduce.
bool same_word_map(const Word& a, const Word& b, int cases = 100, std::uint64_t seed = 123) {
  Rng rng(seed);
  int r = std::max(a.rank(), b.rank());
  for (int k = 0; k < cases; ++k) {
    std::vector<Permutation> sigma;
    for (int v = 0; v < r; ++v) sigma.push_back(random_uniform(a.degree(), rng));
    if (evaluate(a, sigma) != evaluate(b, sigma)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse expands exponents and splits cycles") {
  Word w = parse_word("x1^2", 5, 1);
  REQUIRE(w.letters().size() == 2);
  CHECK(!is_const(w.letters()[0]));
  CHECK(var_part(w.letters()[0]) == VarLetter{1, 1});

  Word v = parse_word("x1^-1 (1 2) x1", 5, 1);
  REQUIRE(v.letters().size() == 3);
  CHECK(var_part(v.letters()[0]) == VarLetter{1, -1});
  CHECK(const_part(v.letters()[1]) == Permutation::from_cycles("(1 2)", 5));
  CHECK(var_part(v.letters()[2]) == VarLetter{1, 1});

  Word u = parse_word("(1 2)(1 2)", 5, 1);
  REQUIRE(u.letters().size() == 2);
  CHECK(reduce(u).var_length() == 0);
  CHECK(const_part(reduce(u).letters()[0]).is_identity());

  CHECK_THROWS(parse_word("x2", 5, 1));
  CHECK_THROWS(parse_word("(1 6)", 5, 1));
  CHECK_THROWS(parse_word("y1", 5, 1));
}

TEST_CASE("reduce cancels inverse pairs and merges constants") {
  Word w = reduce(parse_word("x1 x1^-1", 6, 1));
  CHECK(w.var_length() == 0);
  CHECK(w.letters().size() == 1);
  CHECK(const_part(w.letters()[0]).is_identity());

  // x c x^-1 x c x^-1 -> x c^2 x^-1 when c^2 != e
  Word v = reduce(parse_word("x1 (1 2 3) x1^-1 x1 (1 2 3) x1^-1", 6, 1));
  CHECK(v.var_length() == 2);
  CHECK(same_word_map(v, parse_word("x1 (1 3 2) x1^-1", 6, 1)));

  // c = (1 2) is an involution: total cancellation
  Word u = reduce(parse_word("x1 (1 2) x1^-1 x1 (1 2) x1^-1", 6, 1));
  CHECK(u.var_length() == 0);
  CHECK(const_part(u.letters()[0]).is_identity());
}

TEST_CASE("reduce is idempotent and preserves evaluation") {
  Rng rng(3);
  std::vector<std::string> texts = {
      "x1 x1^-1 x1",      "x1 (1 2) x1^-1 x1 (1 2 3) x1^-1", "x1^2 x2 x1^-2 e x2^-1",
      "(1 2)(2 3) x1 e x1^-1", "x2 x2 (1 3) (1 3) x2^-1"};
  for (const auto& t : texts) {
    for (int n = 3; n <= 8; ++n) {
      Word w = parse_word(t, n, 2);
      Word red = reduce(w);
      CHECK(is_reduced(red));
      Word red2 = reduce(red);
      CHECK(red2.letters().size() == red.letters().size());
      CHECK(same_word_map(w, red, 100, rng.next()));
    }
  }
}

TEST_CASE("classify partitions the intermediate indices") {
  Word sq = reduce(parse_word("x1^2", 5, 1));
  Classification c1 = classify(sq);
  CHECK(c1.length == 2);
  CHECK(c1.Jplus == std::vector<int>{1});
  CHECK(c1.strong);

  Word conj = reduce(parse_word("x1^-1 (1 2 3 4 5) x1", 5, 1));
  Classification c2 = classify(conj);
  CHECK(c2.Jminus == std::vector<int>{1});
  REQUIRE(c2.critical_constants.size() == 1);
  CHECK(c2.critical_constants[0] == Permutation::from_cycles("(1 2 3 4 5)", 5));
  CHECK(c2.crit_norm == 5);
  CHECK(!c2.strong);

  Word mixed = reduce(parse_word("x1 (1 2) x2", 5, 2));
  Classification c3 = classify(mixed);
  CHECK(c3.J0 == std::vector<int>{1});
  CHECK(c3.strong);
  CHECK(c3.crit_norm == 5);

  // partition covers {1,...,l-1} exactly once
  Word big = reduce(parse_word("x1 x1 (1 2) x2^-1 x2^-1 (2 3) x1", 6, 2));
  Classification c4 = classify(big);
  CHECK(static_cast<int>(c4.J0.size() + c4.Jplus.size() + c4.Jminus.size()) == c4.length - 1);

  CHECK_THROWS(classify(parse_word("x1 x1^-1", 5, 1)));
}

TEST_CASE("epsilon erases constants and is multiplicative") {
  Word singular = reduce(parse_word("(1 2) x1 (2 3) x1^-1 (1 3)", 5, 1));
  CHECK(epsilon(singular).empty());
  CHECK(!classify(singular).non_singular);

  Word w = reduce(parse_word("x1 (1 2) x1", 5, 1));
  CHECK(epsilon(w) == FreeWord{1, 1});
  CHECK(classify(w).non_singular);

  Rng rng(29);
  for (int k = 0; k < 100; ++k) {
    std::vector<Letter> la, lb;
    auto random_letters = [&](std::vector<Letter>& out) {
      int len = 1 + static_cast<int>(rng.below(4));
      for (int i = 0; i < len; ++i) {
        if (rng.below(2)) {
          out.push_back(random_uniform(5, rng));
        } else {
          out.push_back(VarLetter{1 + static_cast<int>(rng.below(2)),
                                  rng.below(2) ? 1 : -1});
        }
      }
    };
    random_letters(la);
    random_letters(lb);
    std::vector<Letter> lab = la;
    lab.insert(lab.end(), lb.begin(), lb.end());
    Word a(5, 2, la), b(5, 2, lb), ab(5, 2, lab);
    FreeWord concat = epsilon(a);
    FreeWord eb = epsilon(b);
    concat.insert(concat.end(), eb.begin(), eb.end());
    CHECK(free_reduce(concat) == epsilon(ab));
  }
}

TEST_CASE("cyclic reduction extracts the conjugator") {
  Word w = reduce(parse_word("x1^-1 (1 2 3) x1", 6, 1));
  auto [core, conj] = cyclically_reduce(w);
  CHECK(core.var_length() == 0);
  CHECK(const_part(core.letters()[0]) == Permutation::from_cycles("(1 2 3)", 6));
  // w = conj core conj^-1 as word maps
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    std::vector<Permutation> sigma = {random_uniform(6, rng)};
    Permutation g = evaluate(conj, sigma);
    CHECK(evaluate(w, sigma) == compose(compose(g, evaluate(core, sigma)), inverse(g)));
  }

  Word sq = reduce(parse_word("x1^2", 6, 1));
  auto [core2, conj2] = cyclically_reduce(sq);
  CHECK(core2.var_length() == 2);
  CHECK(conj2.var_length() == 0);

  // generic constants: core keeps its variables
  Word g = reduce(parse_word("(1 2) x1 (2 3 4) x1^-1", 6, 1));
  auto [core3, conj3] = cyclically_reduce(g);
  CHECK(core3.var_length() > 0);
  for (int k = 0; k < 50; ++k) {
    std::vector<Permutation> sigma = {random_uniform(6, rng)};
    Permutation gg = evaluate(conj3, sigma);
    CHECK(evaluate(g, sigma) == compose(compose(gg, evaluate(core3, sigma)), inverse(gg)));
  }
}

TEST_CASE("power concatenates and reduces") {
  Word x = reduce(parse_word("x1", 6, 1));
  CHECK(power(x, 2).var_length() == 2);

  Word w = reduce(parse_word("x1 (1 2 3) x1^-1", 6, 1));
  Word w2 = power(w, 2);
  CHECK(w2.var_length() == 2);  // x c^2 x^-1

  Rng rng(37);
  for (int k = 0; k < 100; ++k) {
    std::vector<Permutation> sigma = {random_uniform(6, rng), random_uniform(6, rng)};
    Word v = reduce(parse_word("x1 (1 2) x2^-1", 6, 2));
    Permutation val = evaluate(v, sigma);
    CHECK(evaluate(power(v, 3), sigma) == compose(compose(val, val), val));
  }
}

TEST_CASE("regularity") {
  CHECK(is_regular(reduce(parse_word("x1^2", 5, 1))));
  CHECK(!is_regular(reduce(parse_word("x1^-1 (1 2 3) x1", 5, 1))));
  // w^2 collapses: x c x^-1 with c an involution product
  CHECK(!is_regular(reduce(parse_word("x1 (1 2)(3 4) x1^-1", 4, 1))));
  // critical constant with fixed points
  CHECK(!is_regular(reduce(parse_word("x1^-1 (1 2) x1 x2", 5, 2))));
  // critical constant fixed point free
  CHECK(is_regular(reduce(parse_word("x1^-1 (1 2)(3 4) x1 x2", 4, 2))));
  CHECK_THROWS(is_regular(parse_word("x1 x1^-1", 5, 1)));

  // constant-free reduced words are regular iff nonempty
  for (const char* t : {"x1", "x1^2", "x1 x2 x1^-1 x2^-1", "x1^3"}) {
    Word w = reduce(parse_word(t, 5, 2));
    CHECK(is_regular(w) == (w.var_length() > 0));
  }
  CHECK(!is_regular(reduce(parse_word("x1 x1^-1", 5, 2))));
}

TEST_CASE("stallings rank") {
  CHECK(stallings_rank({{1}, {2}}, 2) == 2);
  CHECK(stallings_rank({{1}, {1, 1}}, 2) == 1);
  CHECK(stallings_rank({{1, 1}, {2, 2}, {1, 2}}, 2) == 3);
  CHECK(stallings_rank({{1, 2, -1, -2}}, 2) == 1);
  CHECK_THROWS(stallings_rank({}, 2));
  CHECK_THROWS(stallings_rank({{1, -1}}, 2));
}

TEST_CASE("stallings rank is invariant under Nielsen moves") {
  Rng rng(41);
  std::vector<std::vector<FreeWord>> tuples = {
      {{1, 1}, {2, 2}, {1, 2}}, {{1}, {2}}, {{1, 2}, {2, 1}}, {{1, 2, 1}, {2}}};
  for (const auto& tuple : tuples) {
    int base = stallings_rank(tuple, 2);
    for (int k = 0; k < 20; ++k) {
      auto moved = tuple;
      size_t i = rng.below(moved.size());
      size_t j = rng.below(moved.size());
      switch (rng.below(2)) {
        case 0:
          moved[i] = free_inverse(moved[i]);
          break;
        default: {
          if (i == j) break;
          // conjugate generator i by generator j
          FreeWord c = moved[j];
          FreeWord out = c;
          out.insert(out.end(), moved[i].begin(), moved[i].end());
          FreeWord ci = free_inverse(c);
          out.insert(out.end(), ci.begin(), ci.end());
          moved[i] = free_reduce(out);
          if (moved[i].empty()) moved[i] = tuple[i];
          break;
        }
      }
      CHECK(stallings_rank(moved, 2) == base);
    }
  }
}

TEST_CASE("degree n <= 2 collapses all critical patterns") {
  Word w = reduce(parse_word("x1 (1 2) x1^-1", 2, 1));
  CHECK(w.var_length() == 0);
  CHECK(const_part(w.letters()[0]) == Permutation::from_cycles("(1 2)", 2));
}
