#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/eval.hpp"
#include "tesselogic/local_rules.hpp"
#include "tesselogic/solve.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

namespace {
// Brute-force oracle: every coloring of a w×h torus, filtered by membership.
std::vector<std::vector<Color>> brute_torus(const SFT& s, int w, int h) {
  std::vector<std::vector<Color>> out;
  for (const auto& p : all_colorings(s.alphabet(), window_domain(w, h))) {
    std::vector<Color> fund(static_cast<std::size_t>(w * h));
    for (const auto& [z, c] : p.cells()) fund[static_cast<std::size_t>(z.y * w + z.x)] = c;
    if (sft_membership(s, PeriodicConfig(s.alphabet(), w, h, fund))) out.push_back(fund);
  }
  return out;
}
}  // namespace

TEST_CASE("corner-rule tori") {
  SFT s = parse_sft(testing::fixture("corners.sft"));
  auto sols = torus_solutions(s, 4, 4);
  REQUIRE(sols.size() == 2);
  CHECK(sols[0] == PeriodicConfig(dl(), 4, 4, std::vector<Color>(16, 0)));
  CHECK(sols[1] == PeriodicConfig(dl(), 4, 4, std::vector<Color>(16, 1)));
  CHECK(torus_solutions(s, 4, 4, 1).size() == 1);
  CHECK(torus_solutions(s, 3, 3).size() == 2);
}

TEST_CASE("torus search agrees with brute force up to 3×3") {
  std::vector<SFT> systems = {parse_sft(testing::fixture("corners.sft")), SFT(dl(), {pat("D L")}),
                              SFT(dl(), {pat("D D"), pat("L\nL")}), SFT(dl())};
  for (const auto& s : systems)
    for (int w = 2; w <= 3; ++w)
      for (int h = 2; h <= 3; ++h) {
        std::vector<std::vector<Color>> got;
        for (const auto& c : torus_solutions(s, w, h)) {
          CHECK(sft_membership(s, c));
          got.push_back(c.fundamental());
        }
        auto want = brute_torus(s, w, h);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
}

TEST_CASE("torus smaller than a forbidden pattern") {
  CHECK_THROWS_AS(torus_solutions(SFT(dl(), {pat("D L D")}), 2, 2), InvalidArgument);
}

TEST_CASE("admissible windows") {
  SFT s = parse_sft(testing::fixture("corners.sft"));
  // Margin 0: only the south-west corner anchors a whole forbidden shape.
  CHECK(admissible_patterns(s, {2, 2, 0}).size() == 8);
  CHECK(admissible_patterns(s, {2, 2, 1}).size() == 5);
  PatternSet full = admissible_patterns(SFT(dl()), {2, 2, 1});
  CHECK(full.size() == 16);
  // More margin never adds windows.
  for (int m = 0; m < 2; ++m) {
    PatternSet a = admissible_patterns(s, {3, 3, m}), b = admissible_patterns(s, {3, 3, m + 1});
    for (const auto& p : b) CHECK(a.count(p) == 1);
  }
  CHECK(admissible_patterns(s, {3, 3, 2}).size() == 12);
}

TEST_CASE("single-D sofic languages") {
  SoficPresentation s = parse_sofic(testing::fixture("single-d.sofic"));
  PatternSet forb = forbidden_language(s, {1, 2, 2});
  Alphabet t = s.proj.target();
  Pattern dd(t);
  dd.set({0, 0}, 0);
  dd.set({0, 1}, 0);
  CHECK(forb == PatternSet{dd});
  PatternSet adm = projected_admissible(s, {2, 2, 2});
  CHECK(adm.size() == 5);
  for (const auto& p : adm) CHECK(testing::count_color(p, 0) <= 1);
  CHECK(forbidden_language(s.base, {1, 1, 0}).empty());
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(all_colorings(parse_alphabet("a b c d"), window_domain(4, 4)), BudgetExceeded);
}

TEST_CASE("E and A operators") {
  Alphabet src = parse_alphabet("a b c");
  ProjectionMap pi(src, dl(), {0, 0, 1});
  auto dom = window_domain(2, 1);
  PatternSet s;
  for (const auto& p : all_colorings(src, dom))
    if (p.at({0, 0}) != 1) s.insert(p);
  // E: some preimage in s; A: every preimage in s.
  CHECK(e_operator(pi, s, dom).size() == 4);
  PatternSet a = a_operator(pi, s, dom);
  CHECK(a.size() == 2);
  for (const auto& p : a) CHECK(*p.at({0, 0}) == 1);
  CHECK(a_operator(pi, all_colorings(src, dom), dom).size() == 4);
  CHECK(a_operator(pi, {}, dom).empty());
  CHECK(e_operator(pi, {}, dom).empty());
}

TEST_CASE("cell systems: distinct prefixes and orders") {
  CellSystem sys = sft_system(SFT(dl(), {pat("D L")}));
  RuleSearch search(sys, 3, 1, false);
  std::vector<std::vector<int>> seen;
  search.run([&](const std::vector<int>& v) {
    seen.push_back(v);
    return true;
  });
  // Rows with no D directly west of an L.
  CHECK(seen.size() == 4);
  CHECK(seen.front() == std::vector<int>{0, 0, 0});
  std::size_t prefixes = 0;
  search.run(
      [&](const std::vector<int>&) {
        ++prefixes;
        return true;
      },
      1);
  CHECK(prefixes == 2);
  CHECK_THROWS_AS(search.set_order({0, 0, 1}), InvalidArgument);
}
