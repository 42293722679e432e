#pragma once

// MSO formulas over the four-direction signature.
//
// Concrete syntax:
//   forall x. φ   exists x. φ     first-order (lowercase names)
//   forall X. φ   exists X. φ     second-order (uppercase-initial names)
//   @c(t)  X(t)  t1 = t2  edgeN(x,y)  true  false
//   ! & | -> <->                  tightest to loosest; quantifier bodies extend right
// Terms are variables or N(t), S(t), E(t), W(t).

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tesselogic/grid.hpp"

namespace tesselogic {

enum class Dir { N, S, E, W };

Vec2 dir_vector(Dir d);
char dir_letter(Dir d);

/// A variable with directions applied; path[0] is applied first (innermost).
struct Term {
  std::string var;
  std::vector<Dir> path;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Mode { Functional, Relational };

enum class Kind {
  True,
  False,
  Eq,
  Color,   // @name(t)
  SetVar,  // X(t)
  Edge,    // edge<dir>(terms[0], terms[1]), both bare variables
  Not,
  And,
  Or,
  Implies,
  Iff,
  ForallFO,
  ExistsFO,
  ForallSO,
  ExistsSO,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;  // color, set variable or bound variable
  Dir dir = Dir::N;  // Edge only
  std::vector<Term> terms;
  std::vector<Expr> kids;
};

bool is_quantifier(Kind k);
bool is_so_quantifier(Kind k);
bool is_universal(Kind k);

struct Formula {
  Expr root;
  Mode mode = Mode::Functional;
};

// Builders. and_/or_ flatten nested nodes of the same kind; with zero
// operands they return true/false, with one they return it unchanged.
Term var(std::string name);
Term apply(Dir d, Term t);
Term offset_term(const std::string& v, Vec2 offset);

Expr mk_true();
Expr mk_false();
Expr eq(Term a, Term b);
Expr color(std::string name, Term t);
Expr set_var(std::string name, Term t);
Expr edge(Dir d, std::string from, std::string to);
Expr not_(Expr e);
Expr and_(std::vector<Expr> kids);
Expr or_(std::vector<Expr> kids);
Expr implies(Expr a, Expr b);
Expr iff(Expr a, Expr b);
Expr quant(Kind k, std::string v, Expr body);
Expr forall(std::string v, Expr body);
Expr exists(std::string v, Expr body);
Expr forall_so(std::string v, Expr body);
Expr exists_so(std::string v, Expr body);

/// Rebuilds n with new children (all other fields kept).
Expr with_kids(const Node& n, std::vector<Expr> kids);

/// Top-down rewrite: `f` returns a replacement or nullopt to recurse.
Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f);

bool structurally_equal(const Expr& a, const Expr& b);

std::string to_string(const Term& t);
std::string to_string(const Expr& e);
std::string to_string(const Formula& f);

/// Colors are checked against `alphabet` when given. `hint` fixes the mode of
/// formulas that use neither edges nor compound terms.
Formula parse_formula(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt,
                      Mode hint = Mode::Functional);

std::set<std::string> free_fo_vars(const Expr& e);
std::set<std::string> free_so_vars(const Expr& e);
std::set<std::string> color_names(const Expr& e);
/// Every variable name occurring anywhere (bound, free, FO or SO).
std::set<std::string> all_var_names(const Expr& e);
bool is_closed(const Expr& e);
bool quantifier_free(const Expr& e);

struct FragmentClass {
  bool quantifier_free = false;
  bool theorem6_form = false;
  bool universal_fo = false;
  bool universal_mso = false;
  bool cform = false;
  bool sofic_form = false;
  bool theorem5_form = false;
  bool emso = false;
  bool fo = false;
  bool mso = true;

  std::vector<std::string> names() const;
};

FragmentClass classify(const Formula& f);

/// Base variable and net displacement of a term.
std::pair<std::string, Vec2> term_offset(const Term& t);

/// Prenex form with bound variables renamed x1, x2, ... / X1, X2, ...
Formula prenex(const Formula& f);
bool is_prenex(const Expr& e);

struct QuantifierPrefix {
  std::vector<std::pair<Kind, std::string>> quantifiers;
  Expr matrix;
};
QuantifierPrefix split_prefix(const Expr& e);
Expr attach_prefix(const std::vector<std::pair<Kind, std::string>>& q, Expr matrix);

/// Unfolds compound terms into direction edges guarded by fresh universal
/// variables. Requires prenex input.
Formula to_relational(const Formula& f);

/// Constant folding, idempotence and x = x elimination.
Expr simplify(const Expr& e);
Formula simplify(const Formula& f);

/// Returns `base` if unused in `used`, else base1, base2, ...
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace tesselogic
