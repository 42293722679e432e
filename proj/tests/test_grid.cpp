#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/grid.hpp"
#include "tesselogic/text_io.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

TEST_CASE("alphabet lookup") {
  Alphabet a = dl();
  CHECK(a.size() == 2);
  CHECK(a.require("L") == 1);
  CHECK_FALSE(a.index_of("W").has_value());
  CHECK_THROWS_AS(a.require("W"), FormatError);
  CHECK_THROWS_AS(parse_alphabet("D D"), FormatError);
}

TEST_CASE("pattern rows are read north to south") {
  Pattern p = pat("D L\nL .");
  CHECK(p.size() == 3);
  CHECK(*p.at({0, 1}) == 0);
  CHECK(*p.at({1, 1}) == 1);
  CHECK(*p.at({0, 0}) == 1);
  CHECK_FALSE(p.at({1, 0}).has_value());
  CHECK(p.bounds() == Rect{0, 0, 2, 2});
}

TEST_CASE("pattern text round trip") {
  for (const char* rows : {"D", "D L\nL D", "D . L\n. L .", "L\nD\nL"}) {
    Pattern p = pat(rows);
    CHECK(parse_pattern(format_pattern(p)) == p);
  }
}

TEST_CASE("malformed grids report a line") {
  CHECK_THROWS_AS(parse_pattern("alphabet: D L\nD X\n"), FormatError);
  CHECK_THROWS_AS(parse_pattern("D L\n"), FormatError);
  CHECK_THROWS_AS(parse_config("alphabet: D L\nperiodic: 2 2\nD L\n"), FormatError);
  try {
    parse_pattern("alphabet: D L\nD L\nD Q\n");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("periodic configurations wrap") {
  PeriodicConfig c = parse_config(testing::fixture("stripes.cfg"));
  CHECK(c.width() == 2);
  CHECK(c.height() == 1);
  CHECK(c.at({0, 0}) == 0);
  CHECK(c.at({1, 7}) == 1);
  CHECK(c.at({-1, 0}) == 1);
  CHECK(c.at({-2, -3}) == 0);
  Pattern w = c.window({0, 0, 3, 2});
  CHECK(w == pat("D L D\nD L D"));
  CHECK(parse_config(format_config(c)) == c);
}

TEST_CASE("occurrences in patterns and periodic hosts") {
  Pattern host = pat("D L D\nL D L\nD L D");
  Pattern d = pat("D");
  CHECK(occurrences(d, host).size() == 5);
  Pattern diag = pat(". D\nD .");
  // Row-major: northern positions first.
  std::vector<Vec2> want = {{1, 1}, {0, 0}};
  CHECK(occurrences(diag, host) == want);
  PeriodicConfig sparse = parse_config(testing::fixture("one-D-per-3x3.cfg"));
  CHECK(occurrences(d, sparse).size() == 1);
  CHECK(occurrences(d, sparse, Rect{0, 0, 6, 6}).size() == 4);
}

TEST_CASE("canonical translate") {
  Pattern p = translate_pattern(pat("D L"), {3, -2});
  auto [c, off] = canonicalize(p);
  CHECK(c == pat("D L"));
  CHECK(off == Vec2{-3, 2});
}

TEST_CASE("square patterns and languages") {
  PeriodicConfig c = parse_config(testing::fixture("stripes.cfg"));
  Pattern s = square_pattern(c, {0, 0}, 1);
  CHECK(s.size() == 9);
  CHECK(*s.at({-1, -1}) == 1);
  CHECK(pattern_language(c, 1).size() == 2);
  CHECK(pattern_language(PeriodicConfig::uniform(dl(), 0), 2).size() == 1);
}

TEST_CASE("projection maps") {
  Alphabet src = parse_alphabet("a b c");
  ProjectionMap pi(src, dl(), {0, 0, 1});
  CHECK(pi.preimage(0) == std::vector<Color>{0, 1});
  Pattern p = parse_pattern("alphabet: a b c\na c\n");
  CHECK(apply_projection(pi, p) == pat("D L"));
  ProjectionMap flip(dl(), dl(), {1, 0});
  ProjectionMap both = compose(flip, pi);
  CHECK(both(2) == 0);
  CHECK_THROWS_AS(ProjectionMap(src, dl(), {0, 1}), InvalidArgument);
}

TEST_CASE("SFT forbidden sets are canonical and sorted") {
  SFT s(dl(), {translate_pattern(pat("D L"), {5, 5}), pat("D L"), pat("L\nD")});
  CHECK(s.forbidden().size() == 2);
  CHECK(s.extent() == Vec2{2, 2});
  SFT e = parse_sft(testing::fixture("corners.sft"));
  CHECK(e.forbidden().size() == 4);
  CHECK(parse_sft(format_sft(e)) == e);
}

TEST_CASE("sofic and pattern-set text") {
  SoficPresentation s = parse_sofic(testing::fixture("single-d.sofic"));
  CHECK(s.base.alphabet().size() == 3);
  CHECK(s.proj.target().names() == std::vector<std::string>{"D", "W"});
  SoficPresentation again = parse_sofic(format_sofic(s));
  CHECK(again.base == s.base);
  CHECK(again.proj == s.proj);
  PatternSet set{pat("D L"), pat("L L")};
  CHECK(parse_pattern_set(format_pattern_set(set, dl())) == set);
}
