#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/hanf.hpp"
#include "tesselogic/solve.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

TEST_CASE("ball sizes") {
  CHECK(ball_size(0) == 1);
  CHECK(ball_size(1) == 5);
  CHECK(ball_size(2) == 13);
  CHECK(ball_size(3) == 25);
  CHECK(ball_size(9) == 2 * 81 + 18 + 1);
}

TEST_CASE("count profiles cap at the threshold") {
  CountProfile p = count_profile(pat("D L D\nL L L\nD D D"), 0, 2);
  CHECK(p.count(pat("D")) == 3);
  CHECK(p.more_than_k(pat("D")));
  CHECK(p.count(pat("L")) == 3);
  CountProfile q = count_profile(pat("D L D\nL L L\nD D D"), 0, 9);
  CHECK(q.count(pat("D")) == 5);
  CHECK(q.count(pat("L")) == 4);
  // Radius 1 in a 3×3 host: only the centre square fits.
  CountProfile r = count_profile(pat("D L D\nL L L\nD D D"), 1, 2);
  CHECK(r.counts.size() == 1);
}

TEST_CASE("periodic hosts count every present pattern as many") {
  CountProfile p = count_profile(parse_config(testing::fixture("stripes.cfg")), 1, 5);
  CHECK(p.counts.size() == 2);
  for (const auto& [k, v] : p.counts) CHECK(v == 6);
}

TEST_CASE("one-sided and two-sided relations") {
  Pattern one = pat("D L L\nL L L\nL L L"), two = pat("D L L\nL L L\nL L D");
  // two has more D cells: at threshold 1, two ≥ one but not conversely.
  CHECK(ge_nk(two, one, 0, 1));
  CHECK_FALSE(ge_nk(one, two, 0, 1));
  CHECK_FALSE(equiv_nk(one, two, 0, 1));
  // Above the threshold both look the same.
  Pattern three = pat("D L L\nL D L\nL L D");
  CHECK(equiv_nk(two, three, 0, 1));
  CHECK(ge_nk(two, three, 0, 1));
  CHECK(equiv_nk(parse_config(testing::fixture("all-L.cfg")), PeriodicConfig::uniform(dl(), 1), 2, 3));
  CHECK_FALSE(equiv_nk(parse_config(testing::fixture("all-L.cfg")), parse_config(testing::fixture("stripes.cfg")), 0, 1));
}

TEST_CASE("equivalence is the one-sided relation both ways") {
  const auto squares = all_colorings(dl(), window_domain(3, 3));
  const std::vector<Pattern> list(squares.begin(), squares.end());
  for (std::size_t i = 0; i < list.size(); i += 13)
    for (std::size_t j = 0; j < list.size(); j += 7)
      CHECK(equiv_nk(list[i], list[j], 1, 2) == (ge_nk(list[i], list[j], 1, 2) && ge_nk(list[j], list[i], 1, 2)));
}

TEST_CASE("universal bound") {
  HanfBound b = universal_bound(parse_formula("forall x. @D(x) | @L(x)", dl()));
  CHECK(b.quantifiers == 1);
  CHECK(b.radius == 3);
  CHECK(b.threshold == 26);
  HanfBound psi = universal_bound(parse_formula(testing::kPsi, dl()));
  CHECK(psi.quantifiers == 2);
  CHECK(psi.radius == 9);
  CHECK(psi.threshold == 2 * ball_size(9) + 1);
  // Compound terms add guarded variables.
  CHECK(universal_bound(parse_formula("forall x. @L(E(x))", dl())).quantifiers == 2);
  HanfBound none = universal_bound(parse_formula("true", dl()));
  CHECK(none.radius == 1);
  CHECK(none.threshold == 1);
}
