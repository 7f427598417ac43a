#include "doctest.h"

#include <vector>

#include "wordlab/eval.hpp"

using namespace wordlab;

TEST_CASE("evaluate substitutes under the composition convention") {
  Rng rng(1);
  Permutation s = random_uniform(6, rng);
  Word x = reduce(parse_word("x1", 6, 1));
  CHECK(evaluate(x, {s}) == s);

  Word conj = reduce(parse_word("x1^-1 (1 2 3) x1", 6, 1));
  Permutation c = Permutation::from_cycles("(1 2 3)", 6);
  CHECK(evaluate(conj, {s}) == conjugate(c, s));
  CHECK(cycle_stats(evaluate(conj, {s})).cycle_lengths == cycle_stats(c).cycle_lengths);

  Word sq = reduce(parse_word("x1^2", 3, 1));
  CHECK(evaluate(sq, {Permutation::from_cycles("(1 2 3)", 3)}) ==
        Permutation::from_cycles("(1 3 2)", 3));

  CHECK_THROWS(evaluate(x, {identity(5)}));
}

TEST_CASE("exact distribution of primitive and square words at n=3") {
  Word x = reduce(parse_word("x1", 3, 1));
  Distribution dx = exact_distribution(x, 3);
  CHECK(dx.support_size() == 6);
  for (const auto& [key, count] : dx.atoms) CHECK(Rat(count, dx.denom) == Rat(1, 6));

  Word sq = reduce(parse_word("x1^2", 3, 1));
  Distribution ds = exact_distribution(sq, 3);
  CHECK(ds.weight(identity(3).packed()) == Rat(2, 3));
  CHECK(ds.weight(Permutation::from_cycles("(1 2 3)", 3).packed()) == Rat(1, 6));
  CHECK(ds.weight(Permutation::from_cycles("(1 3 2)", 3).packed()) == Rat(1, 6));
  CHECK(ds.support_size() == 3);

  Word conj = reduce(parse_word("x1^-1 (1 2) x1", 3, 1));
  Distribution dc = exact_distribution(conj, 3);
  CHECK(dc.support_size() == 3);
  for (const auto& [key, count] : dc.atoms) {
    CHECK(Rat(count, dc.denom) == Rat(1, 3));
    CHECK(cycle_stats(Permutation::unpack(key)).cycle_lengths == std::vector<int>{2, 1});
  }
}

TEST_CASE("exact weights sum to one") {
  for (const char* t : {"x1", "x1^2", "x1 (1 2 3) x1", "x1 x2 x1^-1 x2^-1"}) {
    Word w = reduce(parse_word(t, 4, 2));
    Distribution d = exact_distribution(w, 4);
    Rat total(0);
    for (const auto& [key, count] : d.atoms) total += Rat(count, d.denom);
    CHECK(total == Rat(1));
  }
}

TEST_CASE("enumeration budget guard") {
  Word w = reduce(parse_word("x1 x2 x3", 9, 3));
  CHECK_THROWS(exact_distribution(w, 9));
}

TEST_CASE("sampled distribution approaches the exact one") {
  Word x = reduce(parse_word("x1", 4, 1));
  Distribution emp = sample_distribution(x, 4, 1000000, 99, 4);
  CHECK(emp.denom == 1000000);
  long long total = 0;
  for (const auto& [key, count] : emp.atoms) total += count;
  CHECK(total == 1000000);
  CHECK(tv_distance(emp, uniform_exact(4)).to_double() < 0.01);

  Word sq = reduce(parse_word("x1^2", 3, 1));
  Distribution se = sample_distribution(sq, 3, 1000000, 7, 4);
  double p = se.weight(identity(3).packed()).to_double();
  double sigma = std::sqrt((2.0 / 3) * (1.0 / 3) / 1000000);
  CHECK(std::abs(p - 2.0 / 3) < 3 * sigma);

  Distribution one = sample_distribution(sq, 3, 1, 5, 1);
  CHECK(one.support_size() == 1);
}

TEST_CASE("sampling is deterministic under (seed, workers)") {
  Word sq = reduce(parse_word("x1^2", 5, 1));
  Distribution a = sample_distribution(sq, 5, 20000, 31, 3);
  Distribution b = sample_distribution(sq, 5, 20000, 31, 3);
  CHECK(a.atoms == b.atoms);
  Distribution c = sample_distribution(sq, 5, 20000, 32, 3);
  CHECK(a.atoms != c.atoms);
}

TEST_CASE("TV distance to exact shrinks with N") {
  Word sq = reduce(parse_word("x1^2", 4, 1));
  Distribution exact = exact_distribution(sq, 4);
  double prev = 1e9;
  for (long long N : {1000LL, 10000LL, 100000LL, 1000000LL}) {
    double tv = tv_distance(sample_distribution(sq, 4, N, 17, 2), exact).to_double();
    CHECK(tv < prev);
    prev = tv;
  }
}

TEST_CASE("symmetrize projects onto class functions") {
  CHECK(dist_equal(symmetrize(dirac(identity(4))), dirac(identity(4))));

  Distribution st = symmetrize(dirac(Permutation::from_cycles("(1 2)", 3)));
  CHECK(dist_equal(st, class_uniform(Permutation::from_cycles("(1 2)", 3))));

  Rng rng(71);
  for (int k = 0; k < 20; ++k) {
    // random small measure: a few atoms with random small weights
    Distribution d;
    d.n = 4;
    d.arity = 1;
    d.kind = Distribution::kExact;
    int atoms = 1 + static_cast<int>(rng.below(5));
    long long total = 0;
    for (int a = 0; a < atoms; ++a) {
      long long m = 1 + static_cast<long long>(rng.below(5));
      d.atoms[random_uniform(4, rng).packed()] += m;
    }
    for (const auto& [key, count] : d.atoms) total += count;
    d.denom = total;
    Distribution s1 = symmetrize(d);
    CHECK(is_class_function(s1));
    CHECK(dist_equal(symmetrize(s1), s1));
  }
}

TEST_CASE("constant-free word measures are conjugation invariant") {
  for (const char* t : {"x1^2", "x1 x2 x1^-1 x2^-1", "x1^3"}) {
    for (int n = 3; n <= 5; ++n) {
      Word w = reduce(parse_word(t, n, 2));
      Distribution d = exact_distribution(w, n);
      CHECK(is_class_function(d));
      CHECK(dist_equal(symmetrize(d), d));
    }
  }
}

TEST_CASE("tuple pushforwards") {
  Word x1 = reduce(parse_word("x1", 3, 2)), x2 = reduce(parse_word("x2", 3, 2));
  Distribution ind = tuple_pushforward_exact({x1, x2}, 3);
  CHECK(ind.arity == 2);
  CHECK(ind.support_size() == 36);
  for (const auto& [key, count] : ind.atoms) CHECK(Rat(count, ind.denom) == Rat(1, 36));

  Word x = reduce(parse_word("x1", 3, 1));
  Distribution diag = tuple_pushforward_exact({x, x}, 3);
  CHECK(diag.support_size() == 6);
  for (const auto& [key, count] : diag.atoms) {
    CHECK(Rat(count, diag.denom) == Rat(1, 6));
    auto tuple = unpack_tuple(key, 3, 2);
    CHECK(tuple[0] == tuple[1]);
  }

  Word y_conj = reduce(parse_word("x2 x1 x2^-1", 3, 2));
  Distribution pair = tuple_pushforward_exact({x1, y_conj}, 3);
  CHECK(dist_equal(marginal(pair, 1), uniform_exact(3)));
  CHECK(dist_equal(marginal(pair, 2), uniform_exact(3)));
  for (const auto& [key, count] : pair.atoms) {
    auto tuple = unpack_tuple(key, 3, 2);
    CHECK(cycle_stats(tuple[0]).cycle_lengths == cycle_stats(tuple[1]).cycle_lengths);
  }
}

TEST_CASE("cycle stat streaming") {
  Word x = reduce(parse_word("x1", 6, 1));
  CycleStatSummary s = cycle_stat_stream(x, 6, 1000000, 6, {0, 7}, 3, 4);
  double h6 = 1 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6;
  CHECK(std::abs(s.mean_num_cycles - h6) < 3 * std::sqrt(0.958 / 1e6));
  CHECK(s.mean_f_leq == 6.0);  // h = n catches every point
  CHECK(s.tail_counts.at(0) == 1000000);
  CHECK(s.tail_counts.at(7) == 0);

  Word sq = reduce(parse_word("x1^2", 20, 1));
  CycleStatSummary t = cycle_stat_stream(sq, 20, 1000000, 1, {}, 13, 4);
  // P(point fixed by sigma^2) = 2/n
  double sigma = std::sqrt(0.1 * 0.9 / 1e6);
  CHECK(std::abs(t.fixed_point_fraction - 0.1) < 5 * sigma);
}
