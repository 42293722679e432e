#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/eval.hpp"
#include "tesselogic/marked.hpp"
#include "tesselogic/solve.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

namespace {
PatternSet projections(const MarkedSFT& m, int w, int h) {
  PatternSet out;
  visit_marked_solutions(m, w, h, [&](const MarkedSolution& s) {
    out.insert(s.projected);
    return true;
  });
  return out;
}

MarkedSFT fixture_marked(const std::string& name) { return marked_of_flat(parse_marked(testing::fixture(name))); }
}  // namespace

TEST_CASE("full shift marked by a and b") {
  Alphabet ab = parse_alphabet("a b");
  FlatMarked fm{SFT(ab), {0}, {1}, ProjectionMap::identity(ab)};
  auto sols = marked_solutions(marked_of_flat(fm), 2, 2);
  // 16 - |no a| - |no b| + |neither|
  CHECK(sols.size() == 16 - 1 - 1 + 0);
  auto first = marked_solutions(marked_of_flat(fm), 2, 2, 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0].cells == sols[0].cells);
  CHECK(first[0].cells == std::vector<std::vector<int>>{{0}, {0}, {0}, {1}});
}

TEST_CASE("marked text format") {
  FlatMarked fm = parse_marked(testing::fixture("has-d-and-l.marked"));
  CHECK(fm.q0 == std::vector<Color>{1});
  CHECK(fm.q1 == std::vector<Color>{0});
  FlatMarked again = parse_marked(format_marked(fm));
  CHECK(again.base == fm.base);
  CHECK(again.q0 == fm.q0);
  CHECK(again.proj == fm.proj);
}

TEST_CASE("window too small") {
  MarkedSFT m = counting_marked_sft(pat("D"), 1, CountMode::Exact);
  CHECK_THROWS_AS(marked_solutions(m, 1, 1), InvalidArgument);
}

TEST_CASE("counting tileset, exactly one") {
  MarkedSFT m = counting_marked_sft(pat("D"), 1, CountMode::Exact);
  PatternSet p = projections(m, 4, 4);
  CHECK(p.size() == 16);
  for (const auto& w : p) CHECK(testing::count_color(w, 0) == 1);
  std::size_t n = 0;
  visit_marked_solutions(m, 4, 4, [&](const MarkedSolution&) { return ++n < 1000000; });
  CHECK(n == 1296);
  CHECK(projected_marked_windows(m, 3, 3) == projections(m, 3, 3));
}

TEST_CASE("counting tileset, zero") {
  MarkedSFT m = counting_marked_sft(pat("D"), 0, CountMode::Exact);
  PatternSet p = projections(m, 4, 4);
  REQUIRE(p.size() == 1);
  CHECK(testing::count_color(*p.begin(), 0) == 0);
}

TEST_CASE("counting tileset, at least one") {
  MarkedSFT m = counting_marked_sft(pat("D"), 1, CountMode::AtLeast);
  PatternSet p = projected_marked_windows(m, 3, 3);
  CHECK(p.size() == 511);
  // An uncounted D outside the zone is allowed.
  bool outside = false;
  visit_marked_solutions(m, 3, 3, [&](const MarkedSolution& s) {
    outside = testing::count_color(s.projected, 0) >= 2;
    return !outside;
  });
  CHECK(outside);
}

TEST_CASE("counting a two-cell pattern") {
  MarkedSFT m = counting_marked_sft(pat("D L"), 1, CountMode::Exact);
  PatternSet p = projected_marked_windows(m, 3, 2);
  for (const auto& w : p) CHECK(occurrences(pat("D L"), w).size() <= 1);
  // The counted occurrence may stick out of the window on the east side.
  CHECK(p.count(pat("D D D\nD D D")) == 1);
  CHECK(p.count(pat("D L D\nL L L")) == 1);
  CHECK(p.count(pat("D L D\nL D L")) == 0);
}

TEST_CASE("union laws") {
  MarkedSFT c0 = counting_marked_sft(pat("D"), 0, CountMode::Exact);
  MarkedSFT c1 = counting_marked_sft(pat("D"), 1, CountMode::Exact);
  MarkedSFT u = union_marked(c0, c1);
  PatternSet want = projections(c0, 3, 3);
  PatternSet p1 = projections(c1, 3, 3);
  want.insert(p1.begin(), p1.end());
  CHECK(projections(u, 3, 3) == want);
  CHECK(projections(union_marked(c1, c1), 3, 3) == p1);
  // Solutions never mix the two sides.
  const int side = u.system.field_index("side");
  visit_marked_solutions(u, 3, 3, [&](const MarkedSolution& s) {
    for (const auto& c : s.cells) CHECK(c[static_cast<std::size_t>(side)] == s.cells[0][static_cast<std::size_t>(side)]);
    return true;
  });
  Alphabet xy = parse_alphabet("x y");
  FlatMarked other{SFT(xy), {0}, {0}, ProjectionMap::identity(xy)};
  CHECK_THROWS_AS(union_marked(c1, marked_of_flat(other)), AlphabetMismatch);
}

TEST_CASE("intersection laws") {
  MarkedSFT f1 = fixture_marked("has-d.marked"), f2 = fixture_marked("has-d-and-l.marked");
  PatternSet a = projected_marked_windows(f1, 3, 3), b = projected_marked_windows(f2, 3, 3);
  CHECK(a.size() == 511);
  CHECK(b.size() == 510);
  PatternSet both;
  for (const auto& p : a)
    if (b.count(p)) both.insert(p);
  CHECK(projected_marked_windows(intersect_marked(f1, f2), 3, 3) == both);

  MarkedSFT g1 = counting_marked_sft(pat("D"), 1, CountMode::AtLeast);
  MarkedSFT g2 = counting_marked_sft(pat("L"), 1, CountMode::AtLeast);
  PatternSet i = projected_marked_windows(intersect_marked(g1, g2), 2, 2);
  CHECK(i.size() == 14);
  for (const auto& p : i) {
    CHECK(testing::count_color(p, 0) >= 1);
    CHECK(testing::count_color(p, 1) >= 1);
  }
}

TEST_CASE("disjoint projections have an empty fiber product") {
  Alphabet ab = parse_alphabet("a b");
  FlatMarked only_a{SFT(ab), {0}, {0}, ProjectionMap(ab, dl(), {0, 0})};
  FlatMarked only_b{SFT(ab), {0}, {0}, ProjectionMap(ab, dl(), {1, 1})};
  CHECK_THROWS_AS(intersect_marked(marked_of_flat(only_a), marked_of_flat(only_b)), InvalidArgument);
}

TEST_CASE("flattening") {
  MarkedSFT f = fixture_marked("has-d.marked");
  FlatMarked flat = flatten(f);
  CHECK(flat.base.alphabet().size() == 2);
  MarkedSFT c1 = counting_marked_sft(pat("D"), 1, CountMode::Exact);
  CHECK_THROWS_AS(flatten(c1, 1000), BudgetExceeded);
  FlatMarked big = flatten(c1);
  // Marker and counter flags leave far fewer states than 2^13.
  CHECK(big.base.alphabet().size() < 8192);
  CHECK(!big.q0.empty());
  // Same projected windows through the explicit form.
  CHECK(projected_marked_windows(marked_of_flat(big), 3, 3) == projections(c1, 3, 3));
}

TEST_CASE("existential formula of a marked set") {
  Alphabet ab = parse_alphabet("a b");
  FlatMarked fm{SFT(ab, {parse_pattern("alphabet: a b\nb a\n")}), {0}, {1}, ProjectionMap(ab, dl(), {0, 1})};
  Formula f = emso_of_marked(marked_of_flat(fm));
  CHECK(classify(f).emso);
  // The plane has no D directly east of an L, and contains both colours.
  CHECK(eval_torus(f, parse_config(testing::fixture("all-D.cfg"))) == false);
  CHECK(eval_torus(f, parse_config(testing::fixture("stripes.cfg"))) == false);
  PeriodicConfig rows(dl(), 1, 2, {0, 1});
  CHECK(eval_torus(f, rows));
}

TEST_CASE("description lists layers") {
  std::string d = describe(counting_marked_sft(pat("D"), 2, CountMode::Exact));
  CHECK(d.find("color/2") != std::string::npos);
  CHECK(d.find("counters distinct") != std::string::npos);
}
