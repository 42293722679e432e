#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/eval.hpp"
#include "tesselogic/solve.hpp"
#include "tesselogic/translate.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

namespace {
Formula parse(const std::string& s) { return parse_formula(s, dl()); }
Formula rel(const std::string& s) { return to_relational(prenex(parse(s))); }
}  // namespace

TEST_CASE("pattern semantics of psi") {
  Formula psi = rel(testing::kPsi);
  CHECK(eval_pattern(psi, pat("L L\nL D")));
  CHECK_FALSE(eval_pattern(psi, pat("D L\nL D")));
  CHECK(eval_pattern(psi, pat("L")));
}

TEST_CASE("corner clauses on the three-cell window") {
  Formula phi = rel(testing::kPhi);
  SFT s = parse_sft(testing::fixture("corners.sft"));
  std::vector<Vec2> dom = {{0, 1}, {0, 0}, {1, 0}};
  int falsified = 0;
  for (const auto& p : all_colorings(dl(), dom)) {
    bool forbidden = std::find(s.forbidden().begin(), s.forbidden().end(), p) != s.forbidden().end();
    CHECK(eval_pattern(phi, p) == !forbidden);
    falsified += !eval_pattern(phi, p);
  }
  CHECK(falsified == 4);
}

TEST_CASE("a missing neighbour satisfies the guarded atom") {
  CHECK(eval_pattern(rel("forall x. @L(E(x))"), pat("D\nL")));
  CHECK_FALSE(eval_pattern(rel("forall x. @L(E(x))"), pat("L D")));
}

TEST_CASE("relational psi agrees with the functional form on tori") {
  Formula f = parse(testing::kPsi), r = rel(testing::kPsi);
  for (int w = 1; w <= 2; ++w)
    for (int h = 1; h <= 2; ++h)
      for (const auto& p : all_colorings(dl(), window_domain(w, h))) {
        std::vector<Color> fund(static_cast<std::size_t>(w * h));
        for (const auto& [z, c] : p.cells()) fund[static_cast<std::size_t>(z.y * w + z.x)] = c;
        PeriodicConfig t(dl(), w, h, fund);
        CHECK(eval_torus(f, t) == eval_pattern(r, p));
      }
}

TEST_CASE("set quantifiers on tori") {
  PeriodicConfig stripes = parse_config(testing::fixture("stripes.cfg"));
  // A set closed under East containing a cell is everything on a torus.
  CHECK(eval_torus(parse("forall X. (exists x. X(x)) & (forall x. X(x) -> X(E(x))) -> forall x. X(x)"),
                   PeriodicConfig::uniform(dl(), 0)));
  CHECK(eval_torus(parse("exists X. forall x. X(x) <-> !X(E(x))"), stripes));
  CHECK_FALSE(eval_torus(parse("exists X. forall x. X(x) <-> !X(E(x))"), PeriodicConfig::uniform(dl(), 0)));
}

TEST_CASE("budget for set quantification") {
  Budget b;
  b.max_subset_bits = 3;
  CHECK_THROWS_AS(eval_pattern(rel("exists X. forall x. X(x)"), pat("D D\nD D"), b), BudgetExceeded);
}

TEST_CASE("plane semantics of universal formulas on periodic configs") {
  PeriodicConfig sparse = parse_config(testing::fixture("one-D-per-3x3.cfg"));
  Formula psi = parse(testing::kPsi);
  // The 3×3 torus alone has a single D; the plane has infinitely many.
  CHECK(eval_torus(psi, sparse));
  CHECK_FALSE(eval_universal_periodic(psi, sparse));
  CHECK(universal_torus_side(psi, sparse) == 6);
  CHECK(eval_universal_periodic(parse(testing::kPhi), PeriodicConfig::uniform(dl(), 0)));
  CHECK_FALSE(eval_universal_periodic(parse(testing::kPhi), parse_config(testing::fixture("stripes.cfg"))));
}

TEST_CASE("SFT membership") {
  SFT s = parse_sft(testing::fixture("corners.sft"));
  CHECK(sft_membership(s, PeriodicConfig::uniform(dl(), 0)));
  CHECK(sft_membership(s, PeriodicConfig::uniform(dl(), 1)));
  CHECK_FALSE(sft_membership(s, parse_config(testing::fixture("stripes.cfg"))));
}

TEST_CASE("pattern checking by growing squares") {
  Formula psi = parse(testing::kPsi);
  PeriodicConfig sparse = parse_config(testing::fixture("one-D-per-3x3.cfg"));
  CheckVerdict v = pattern_check(psi, sparse, 3);
  CHECK(v.refuted());
  // Two D cells three apart first fit in a radius-2 square.
  CHECK(v.radius == 2);
  REQUIRE(v.witness.has_value());
  CHECK(testing::count_color(*v.witness, 0) >= 2);
  CHECK_FALSE(pattern_check(psi, sparse, 1).refuted());
  CheckVerdict ok = pattern_check(psi, PeriodicConfig::uniform(dl(), 1), 4);
  CHECK(ok.status == CheckVerdict::Status::ConsistentUpTo);
  CHECK(ok.radius == 4);
  CHECK_FALSE(pattern_check(parse(testing::kPhi), PeriodicConfig::uniform(dl(), 0), 2).refuted());
}
