#include "doctest.h"

#include <cmath>

#include "wordlab/bounds.hpp"

using namespace wordlab;

TEST_CASE("closed-form bound values") {
  // n=100, d=1, l=2, h=1, crit=100: (0 + 1*2*1)*2*1 / (100 - 2) = 4/98.
  CHECK(lemma_bound({100, 1, 2, 1, 100}) == Rat(4, 98));
  CHECK(lemma_bound({20, 1, 2, 1, 20}) == Rat(4, 18));
  // d=2 squares the base: ((100-50+2*2)*2 / (100-4))^2 with crit=50, l=2, h=1.
  CHECK(lemma_bound({100, 2, 2, 1, 50}) == Rat::pow(Rat(108, 96), 2));
  CHECK_THROWS(lemma_bound({10, 2, 3, 2, 10}));  // n - dlh = -2
  CHECK_THROWS(lemma_bound({12, 2, 3, 2, 12}));  // n - dlh = 0
}

TEST_CASE("corollary is the lemma at full criticality") {
  for (int n : {30, 50, 101}) {
    for (int d : {1, 2, 3}) {
      for (int l : {1, 2, 4}) {
        for (int h : {1, 2, 3}) {
          if (n - d * l * h <= 0) continue;
          CHECK(corollary_bound(n, d, l, h) == lemma_bound({n, d, l, h, n}));
          CHECK(corollary_bound(n, d, l, h) == Rat::pow(Rat(d * l * h * l * h, n - d * l * h), d));
        }
      }
    }
  }
}

TEST_CASE("bound monotonicity") {
  // Larger crit shrinks the lemma bound; larger n shrinks the corollary.
  for (int crit = 10; crit < 100; crit += 10)
    CHECK(lemma_bound({100, 1, 2, 1, crit + 10}) <= lemma_bound({100, 1, 2, 1, crit}));
  for (int n = 20; n < 200; n += 20)
    CHECK(corollary_bound(n + 20, 2, 2, 1) <= corollary_bound(n, 2, 2, 1));
}

TEST_CASE("tail bound laws") {
  CHECK(proposition_tail(0, 2, 3, 1.0) == doctest::Approx(1.0));
  CHECK(proposition_tail(36, 2, 3, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(proposition_tail(72, 2, 3, 0.5) == doctest::Approx(std::exp(-1.0)));
  for (double f = 0; f < 50; f += 10)
    CHECK(proposition_tail(f + 10, 2, 2, 1.0) < proposition_tail(f, 2, 2, 1.0));
}

TEST_CASE("Wilson interval basics") {
  McEstimate e = make_estimate(0, 100);
  CHECK(e.estimate == 0.0);
  CHECK(e.ci_low == doctest::Approx(0.0));
  CHECK(e.ci_high > 0.0);
  McEstimate half = make_estimate(500, 1000);
  CHECK(half.estimate == doctest::Approx(0.5));
  CHECK(half.ci_low < 0.5);
  CHECK(half.ci_high > 0.5);
  CHECK(half.sigma == doctest::Approx(std::sqrt(0.25 / 1000)));
}

TEST_CASE("subset fixed-point probabilities match exact values") {
  // For w = x, P({1} fixed) = 1/n; P({1,2} fixed) = 1/(n(n-1)).
  Word x = reduce(parse_word("x1", 10, 1));
  McEstimate p1 = mc_subset_prob(x, 10, {1}, 1, 400000, 3, 4);
  CHECK(std::abs(p1.estimate - 0.1) < 4 * p1.sigma + 1e-12);
  McEstimate p2 = mc_subset_prob(x, 10, {1, 2}, 1, 400000, 3, 4);
  CHECK(std::abs(p2.estimate - 1.0 / 90) < 4 * p2.sigma + 1e-12);
  // h = 2 allows 1 to sit in a 2-cycle as well: P = 1/n + (n-1)/n * 1/(n-1) * ... :
  // P(cycle through 1 has length <= 2) = 2/n.
  McEstimate q = mc_subset_prob(x, 10, {1}, 2, 400000, 5, 4);
  CHECK(std::abs(q.estimate - 0.2) < 4 * q.sigma + 1e-12);
  // Empty subset: probability exactly 1.
  McEstimate e = mc_subset_prob(x, 10, {}, 1, 1000, 1, 1);
  CHECK(e.estimate == 1.0);

  // For w = x^2, a point is fixed iff its x-cycle has length 1 or 2: P = 2/n.
  Word sq = reduce(parse_word("x1^2", 10, 1));
  McEstimate s = mc_subset_prob(sq, 10, {4}, 1, 400000, 11, 4);
  CHECK(std::abs(s.estimate - 0.2) < 4 * s.sigma + 1e-12);
}

TEST_CASE("tail probabilities") {
  Word x = reduce(parse_word("x1", 8, 1));
  CHECK(mc_tail_prob(x, 8, 1, 0, 1000, 1, 1).estimate == 1.0);
  CHECK(mc_tail_prob(x, 8, 1, 9, 1000, 1, 1).estimate == 0.0);
  CHECK(mc_tail_prob(x, 8, 8, 1, 1000, 1, 1).estimate == 1.0);  // f_{<=n} = n always
  // Monotone decreasing in f on a shared sample set size.
  double prev = 2.0;
  for (int f = 0; f <= 8; f += 2) {
    double p = mc_tail_prob(x, 8, 2, f, 200000, 77, 4).estimate;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("audit accepts regular words and the bound holds") {
  // A fixed-point-free constant keeps the conjugated word regular.
  std::string fpf;
  for (int i = 1; i <= 60; i += 2)
    fpf += "(" + std::to_string(i) + " " + std::to_string(i + 1) + ")";
  Word w = reduce(parse_word("x1^2 " + fpf + " x1^-1", 60, 1));
  REQUIRE(is_regular(w));
  auto rows = bound_audit(w, 60, 1, 3, 200000, 19, 4);
  CHECK(rows.size() == 3 * 11);
  for (const auto& row : rows) {
    CHECK(row.pass);
    CHECK(static_cast<int>(row.X.size()) == row.d);
    CHECK(row.est.estimate - 3 * row.est.sigma <= row.bound);
  }
}

TEST_CASE("audit rejects non-regular words") {
  Word c = reduce(parse_word("(1 2)", 6, 1));
  CHECK_THROWS(bound_audit(c, 6, 1, 2, 1000, 1, 1));
  Word notreg = reduce(parse_word("x1 (1 2)(3 4) x1^-1", 4, 1));
  REQUIRE_FALSE(is_regular(notreg));
  CHECK_THROWS(bound_audit(notreg, 4, 1, 1, 1000, 1, 1));
}
