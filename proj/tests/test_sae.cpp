#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "wordlab/sae.hpp"

using namespace wordlab;

TEST_CASE("battery enumerates reduced words up to inversion") {
  auto b1 = sofic_battery(1, 4);
  CHECK(b1.size() == 4);  // x, x^2, x^3, x^4

  auto b2 = sofic_battery(2, 1);
  CHECK(b2.size() == 2);  // x, y (up to inversion)

  auto b2l2 = sofic_battery(2, 2);
  // Length-2 reduced words over {x,y}^+-: 4*3=12, in inverse pairs -> 6.
  CHECK(b2l2.size() == 2 + 6);

  std::set<FreeWord> seen;
  for (const auto& v : sofic_battery(2, 4)) {
    CHECK(!v.empty());
    CHECK(free_reduce(v) == v);
    CHECK(!seen.count(v));
    CHECK(!seen.count(free_inverse(v)));
    seen.insert(v);
  }
}

TEST_CASE("identical coordinates are detected by x1 x2^-1") {
  std::vector<SoficRow> rows =
      sofic_check({"x1", "x1"}, 1, {8, 12}, 4000, 7, {FreeWord{1, -2}}, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) CHECK(row.mean_fixed_fraction == 1.0);
}

TEST_CASE("primitive tuples look uniform to the battery") {
  // Non-power battery elements evaluate to uniform permutations, so the
  // mean fixed fraction is 1/n; a square v = u^2 fixes points in u-cycles
  // of length <= 2, giving 2/n.
  std::vector<SoficRow> rows =
      sofic_check({"x1", "x2"}, 2, {16}, 60000, 21, sofic_battery(2, 2), 4);
  for (const auto& row : rows) {
    bool square = row.v.size() == 2 && row.v[0] == row.v[1];
    double expected = (square ? 2.0 : 1.0) / 16;
    double sigma = std::sqrt(2.0) / 16 / std::sqrt(60000.0);  // Var(f_1) <= 2
    CHECK(std::abs(row.mean_fixed_fraction - expected) < 6 * sigma);
  }
}

TEST_CASE("fixed fractions shrink with degree for a free-looking pair") {
  std::vector<SoficRow> rows = sofic_check({"x1 x2 x1^-1 x2^-1", "x2 x1"}, 2, {6, 24}, 30000,
                                           99, {FreeWord{1}, FreeWord{2}, FreeWord{1, 2}}, 4);
  REQUIRE(rows.size() == 6);
  for (size_t i = 0; i < 3; ++i)
    CHECK(rows[i + 3].mean_fixed_fraction < rows[i].mean_fixed_fraction + 0.05);
}

TEST_CASE("independent coordinates have zero distance to product uniform") {
  std::vector<Word> pair = {reduce(parse_word("x1", 4, 2)), reduce(parse_word("x2", 4, 2))};
  SaeResult r = sae_estimate(pair, 4, true, 0, 0);
  CHECK(r.exact);
  CHECK(r.kr_value == Rat(0));

  // (x1, x1 x2) is a free basis, so the tuple law is exactly product uniform.
  std::vector<Word> prim = {reduce(parse_word("x1", 4, 2)),
                            reduce(parse_word("x1 x2", 4, 2))};
  SaeResult p = sae_estimate(prim, 4, true, 0, 0);
  CHECK(p.kr_value == Rat(0));
}

TEST_CASE("a repeated coordinate is far from product uniform") {
  std::vector<Word> diag = {reduce(parse_word("x1", 4, 1)), reduce(parse_word("x1", 4, 1))};
  SaeResult r = sae_estimate(diag, 4, true, 0, 0);
  CHECK(r.kr_value > Rat(1, 2));  // diagonal support is n! of (n!)^2 atoms

  SaeResult s = sae_estimate(diag, 4, false, 40000, 17, 4);
  CHECK_FALSE(s.exact);
  CHECK(s.kr_sampled > s.baseline + 0.2);
}

TEST_CASE("sampled mode baseline is small for genuinely uniform tuples") {
  std::vector<Word> pair = {reduce(parse_word("x1", 4, 2)), reduce(parse_word("x2", 4, 2))};
  SaeResult r = sae_estimate(pair, 4, false, 2000, 23, 4);
  CHECK(r.kr_sampled < r.baseline + 0.05);
}

TEST_CASE("freeness report ranks subgroups") {
  FreenessReport basis = freeness_report({{1}, {2}}, 2);
  CHECK(basis.rank == 2);
  CHECK(basis.free_of_rank_d);
  CHECK_FALSE(basis.rank_excess_obstruction);

  FreenessReport redundant = freeness_report({{1}, {1, 1}}, 1);
  CHECK(redundant.rank == 1);
  CHECK_FALSE(redundant.free_of_rank_d);

  // {a^2, b^2, ab} is a basis of the index-2 even-length subgroup of F_2
  // (free of rank 3), but rank 3 > 2 generators obstructs any automorphic
  // origin.
  FreenessReport ex = freeness_report({{1, 1}, {2, 2}, {1, 2}}, 2);
  CHECK(ex.rank == 3);
  CHECK(ex.free_of_rank_d);
  CHECK(ex.rank_excess_obstruction);
  CHECK(ex.exemplar_obstruction);

  FreenessReport three = freeness_report({{1}, {2}, {3}}, 3);
  CHECK(three.rank == 3);
  CHECK(three.free_of_rank_d);
  CHECK_FALSE(three.exemplar_obstruction);
}
