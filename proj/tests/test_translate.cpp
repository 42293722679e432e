#include <random>

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

std::vector<PeriodicConfig> tori(const Alphabet& a, int w, int h) {
  std::vector<PeriodicConfig> out;
  for (const auto& p : all_colorings(a, window_domain(w, h))) {
    std::vector<Color> fund(static_cast<std::size_t>(w * h));
    for (const auto& [z, c] : p.cells()) fund[static_cast<std::size_t>(z.y * w + z.x)] = c;
    out.emplace_back(a, w, h, fund);
  }
  return out;
}
}  // namespace

TEST_CASE("occurrence formula matches occurrences") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Pattern p(dl());
    const int w = 1 + static_cast<int>(rng() % 2), h = 1 + static_cast<int>(rng() % 2);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (rng() % 4 != 0 || p.empty()) p.set({x, y}, static_cast<Color>(rng() % 2));
    std::vector<Color> fund(9);
    for (auto& c : fund) c = static_cast<Color>(rng() % 2);
    PeriodicConfig c(dl(), 3, 3, fund);
    Formula f{quant(Kind::ExistsFO, "z", occurrence_formula(p)), Mode::Functional};
    // Occurs somewhere on the torus iff the formula holds.
    CHECK(eval_torus(f, c) == !occurrences(p, c).empty());
  }
  CHECK(to_string(occurrence_formula(pat("D L"))) == "@D(z) & @L(E(z))");
}

TEST_CASE("universal formulas compile to SFTs and back") {
  SFT s = sft_of_universal(parse("forall z. !(@D(z) & @L(E(z)))"), dl());
  REQUIRE(s.forbidden().size() == 1);
  CHECK(s.forbidden()[0] == pat("D L"));
  CHECK(to_string(formula_of_sft(s)) == "forall z. !(@D(z) & @L(E(z)))");

  SFT e1 = sft_of_universal(parse(testing::kPhi), dl());
  CHECK(e1 == parse_sft(testing::fixture("corners.sft")));
  // Round trip through the formula keeps the SFT.
  CHECK(sft_of_universal(formula_of_sft(e1), dl()) == e1);
  CHECK_THROWS_AS(sft_of_universal(parse(testing::kPsi), dl()), FragmentError);
}

TEST_CASE("set quantifier elimination") {
  Formula f = parse("forall X. forall x. X(x) -> X(E(x))");
  Formula g = eliminate_so_universal(f);
  CHECK(classify(g).universal_fo);
  CHECK(to_string(eliminate_so_universal(f, true)) == "forall x. E(x) = x");
  // False everywhere except on tori of width 1.
  for (int w = 1; w <= 3; ++w)
    for (const auto& t : tori(dl(), w, 1)) {
      CHECK(eval_torus(f, t) == (w == 1));
      CHECK(eval_torus(g, t) == (w == 1));
    }
  CHECK_THROWS_AS(eliminate_so_universal(parse("exists X. forall x. X(x)")), FragmentError);
}

TEST_CASE("at-most formulas") {
  CHECK(to_string(formula_atmost(pat("D"), 0)) == "forall x. !@D(x)");
  Formula f = formula_atmost(pat("D L"), 1);
  Formula r = to_relational(prenex(f));
  CHECK(eval_pattern(r, pat("D L L\nL L L")));
  CHECK_FALSE(eval_pattern(r, pat("D L L\nL D L")));
  CHECK(eval_pattern(r, pat("D D D\nL L L")));
}

TEST_CASE("counting formulas have the expected shape") {
  CHECK(to_string(formula_count(pat("D"), 1, CountMode::Exact)) ==
        "exists X1. exists A1. (forall x. (A1(x) <-> A1(N(x)) & A1(E(x))) & (X1(x) <-> A1(x) & !A1(S(x)) & "
        "!A1(W(x))) & (X1(x) <-> @D(x))) & (exists z1. X1(z1))");
  CHECK(to_string(formula_count(pat("D"), 0, CountMode::Exact)) == "forall x. !@D(x)");
  CHECK(to_string(formula_count(pat("D"), 0, CountMode::AtLeast)) == "forall x. true");
  CHECK(classify(formula_count(pat("D"), 2, CountMode::AtLeast)).theorem5_form);
  // No torus carries a quarter-plane marker set.
  CHECK_FALSE(eval_torus(formula_count(pat("D"), 1, CountMode::AtLeast), PeriodicConfig::uniform(dl(), 1)));
}

TEST_CASE("sofic-form at-most") {
  Formula f = soficform_atmost(pat("D"), 1);
  CHECK(to_string(f) ==
        "exists S1. exists A1. forall x. (A1(x) <-> A1(N(x)) & A1(E(x))) & (S1(x) <-> A1(x) & !A1(S(x)) & "
        "!A1(W(x))) & (@D(x) -> S1(x))");
  CHECK(classify(f).cform);
  CHECK_THROWS_AS(soficform_atmost(pat("D"), 0), InvalidArgument);
}

TEST_CASE("union of existential formulas") {
  Formula f = parse("exists X. (forall z. X(z) <-> @D(z)) & (exists z1. X(z1))");
  Formula g = parse("exists Y. (forall z. Y(z) <-> @L(E(z))) & (exists z1. Y(z1) & @L(z1))");
  Formula u = combine_union(f, g);
  for (int w = 1; w <= 2; ++w)
    for (int h = 1; h <= 2; ++h)
      for (const auto& t : tori(dl(), w, h)) CHECK(eval_torus(u, t) == (eval_torus(f, t) || eval_torus(g, t)));
}

TEST_CASE("universal fusion keeps the meaning") {
  Formula f = parse("exists X. (forall x. X(x) -> @D(x)) & (forall y. X(E(y)) | @L(y))");
  Formula g = fuse_universal(f);
  CHECK(classify(g).cform);
  for (const auto& t : tori(dl(), 2, 2)) CHECK(eval_torus(f, t) == eval_torus(g, t));
}

TEST_CASE("colour bits for set variables") {
  Formula f = parse("exists X. forall x. X(x) <-> @D(E(x))");
  Prop1Image img = prop1_forward(f, dl());
  CHECK(img.proj.source().names() == std::vector<std::string>{"D0", "D1", "L0", "L1"});
  CHECK(to_string(img.formula) == "forall x. @D1(x) | @L1(x) <-> @D0(E(x)) | @D1(E(x))");
  Formula back = prop1_backward(img.formula, img.proj);
  CHECK(classify(back).emso);
  for (int w = 1; w <= 2; ++w)
    for (const auto& t : tori(dl(), w, 2)) CHECK(eval_torus(back, t) == eval_torus(f, t));
}

TEST_CASE("sofic presentations and their formulas") {
  SoficPresentation s = parse_sofic(testing::fixture("single-d.sofic"));
  Formula f = formula_of_sofic(s);
  CHECK(classify(f).cform);
  const Alphabet& t = s.proj.target();
  // Members among 3×3 tori are exactly the images of base solutions.
  std::set<std::vector<Color>> images;
  for (const auto& c : torus_solutions(s.base, 3, 3)) images.insert(apply_projection(s.proj, c).fundamental());
  for (const auto& c : tori(t, 3, 3)) CHECK(eval_torus(f, c) == (images.count(c.fundamental()) == 1));
}

TEST_CASE("sofic round trip through the formula") {
  SoficPresentation s = parse_sofic("alphabet: a b c\n\nforbid:\na b\n\ntarget: D L\nproject: a->D b->D c->L\n");
  Formula f = formula_of_sofic(s);
  SoficPresentation again = sofic_of_cform(f, s.proj.target());
  for (int w = 2; w <= 3; ++w)
    for (int h = 2; h <= 3; ++h) {
      std::set<std::vector<Color>> want, got;
      for (const auto& c : torus_solutions(s.base, w, h)) want.insert(apply_projection(s.proj, c).fundamental());
      for (const auto& c : torus_solutions(again.base, w, h)) got.insert(apply_projection(again.proj, c).fundamental());
      CHECK(got == want);
      for (const auto& c : tori(s.proj.target(), w, h)) CHECK(eval_torus(f, c) == (want.count(c.fundamental()) == 1));
    }
}

TEST_CASE("finiteness formula") {
  Formula fin = fin_formula("S");
  CHECK(free_so_vars(fin.root) == std::set<std::string>{"S"});
  CHECK(classify(subshift_normal_form(parse("forall x. @D(x) -> @D(E(x))"), dl())).mso);
}
