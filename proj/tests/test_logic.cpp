#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/logic.hpp"

using namespace tesselogic;
using testing::dl;

namespace {
Formula parse(const std::string& s) { return parse_formula(s, dl()); }
}  // namespace

TEST_CASE("printing round trips through the parser") {
  for (const char* s : {"forall x. @L(E(x))", "forall x. forall y. @D(x) & @D(y) -> x = y",
                        "exists X. forall x. X(x) <-> !X(N(x))", "(forall x. @D(x)) | (exists y. @L(W(S(y))))",
                        "forall x. true", "exists x. !(x = E(x))"}) {
    Formula f = parse(s);
    Formula g = parse(to_string(f));
    CHECK(structurally_equal(f.root, g.root));
  }
  CHECK(to_string(parse("forall x. (@D(x) & @D(E(x)))")) == "forall x. @D(x) & @D(E(x))");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("forall x. @Q(x)"), FormatError);
  CHECK_THROWS_AS(parse("forall x. @D(x"), FormatError);
  CHECK_THROWS_AS(parse("forall x @D(x)"), FormatError);
  CHECK_THROWS_AS(parse("forall x. @D(x) &"), FormatError);
}

TEST_CASE("free variables and closure") {
  Formula f = parse("forall x. exists X. X(x) & @D(E(x))");
  CHECK(is_closed(f.root));
  CHECK(free_fo_vars(f.root).empty());
  CHECK(color_names(f.root) == std::set<std::string>{"D"});
}

TEST_CASE("fragment classification") {
  auto names = [](const std::string& s) { return classify(parse(s)).names(); };
  FragmentClass psi = classify(parse(testing::kPsi));
  CHECK(psi.universal_fo);
  CHECK_FALSE(psi.theorem6_form);
  CHECK(psi.fo);
  CHECK(classify(parse("forall x. !(@D(x) & @L(E(x)))")).theorem6_form);
  FragmentClass c = classify(parse("exists X. forall x. X(x) <-> @D(E(x))"));
  CHECK(c.cform);
  CHECK(c.emso);
  CHECK_FALSE(c.fo);
  CHECK(classify(parse("forall X. forall x. X(x) -> X(E(x))")).universal_mso);
  FragmentClass alt = classify(parse("forall X. exists Y. forall x. X(x) -> Y(x)"));
  CHECK_FALSE(alt.emso);
  CHECK(alt.mso);
  CHECK_FALSE(names(testing::kPsi).empty());
}

TEST_CASE("term offsets") {
  Formula f = parse("forall z. @D(E(E(N(W(z)))))");
  const Expr& atom = split_prefix(f.root).matrix;
  auto [v, off] = term_offset(atom->terms[0]);
  CHECK(v == "z");
  CHECK(off == Vec2{1, 1});
}

TEST_CASE("prenex renames bound variables") {
  Formula f = prenex(parse("(forall x. @D(x)) & exists y. @L(y)"));
  CHECK(is_prenex(f.root));
  CHECK(to_string(f) == "forall x1. exists x2. @D(x1) & @L(x2)");
  CHECK(to_string(prenex(parse(testing::kPsi))) == "forall x1. forall x2. @D(x1) & @D(x2) -> x1 = x2");
}

TEST_CASE("relational form guards compound terms") {
  CHECK(to_string(to_relational(prenex(parse("forall x. @L(E(x))")))) ==
        "forall x1. forall w1. edgeE(x1,w1) -> @L(w1)");
  // Variables only: unchanged.
  Formula psi = prenex(parse(testing::kPsi));
  CHECK(structurally_equal(to_relational(psi).root, psi.root));
  Formula r = to_relational(prenex(parse("forall x. @D(E(x)) | @D(N(E(x)))")));
  CHECK(r.mode == Mode::Relational);
  CHECK(split_prefix(r.root).quantifiers.size() == 3);
}

TEST_CASE("simplifier folds constants") {
  CHECK(to_string(simplify(parse("forall x. true & @D(x)"))) == "forall x. @D(x)");
  CHECK(to_string(simplify(parse("forall x. x = x -> @D(x)"))) == "forall x. @D(x)");
  CHECK(to_string(simplify(parse("forall x. @D(x) | !(x = x)"))) == "forall x. @D(x)");
}
