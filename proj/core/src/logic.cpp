#include "tesselogic/logic.hpp"

#include <algorithm>

#include "tesselogic/error.hpp"

namespace tesselogic {

Vec2 dir_vector(Dir d) {
  switch (d) {
    case Dir::N:
      return kNorth;
    case Dir::S:
      return kSouth;
    case Dir::E:
      return kEast;
    case Dir::W:
      return kWest;
  }
  return {};
}

char dir_letter(Dir d) {
  switch (d) {
    case Dir::N:
      return 'N';
    case Dir::S:
      return 'S';
    case Dir::E:
      return 'E';
    case Dir::W:
      return 'W';
  }
  return '?';
}

bool is_quantifier(Kind k) {
  return k == Kind::ForallFO || k == Kind::ExistsFO || k == Kind::ForallSO || k == Kind::ExistsSO;
}
bool is_so_quantifier(Kind k) { return k == Kind::ForallSO || k == Kind::ExistsSO; }
bool is_universal(Kind k) { return k == Kind::ForallFO || k == Kind::ForallSO; }

// ---------------------------------------------------------------------------
// Builders

Term var(std::string name) { return Term{std::move(name), {}}; }

Term apply(Dir d, Term t) {
  t.path.push_back(d);
  return t;
}

Term offset_term(const std::string& v, Vec2 offset) {
  Term t = var(v);
  for (int i = 0; i < offset.x; ++i) t.path.push_back(Dir::E);
  for (int i = 0; i < -offset.x; ++i) t.path.push_back(Dir::W);
  for (int i = 0; i < offset.y; ++i) t.path.push_back(Dir::N);
  for (int i = 0; i < -offset.y; ++i) t.path.push_back(Dir::S);
  return t;
}

namespace {

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Expr make_nary(Kind k, std::vector<Expr> kids) {
  std::vector<Expr> flat;
  for (auto& c : kids) {
    if (c->kind == k)
      flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.empty()) return k == Kind::And ? mk_true() : mk_false();
  if (flat.size() == 1) return flat.front();
  return make(Node{k, {}, Dir::N, {}, std::move(flat)});
}

}  // namespace

Expr mk_true() {
  static const Expr t = make(Node{Kind::True, {}, Dir::N, {}, {}});
  return t;
}

Expr mk_false() {
  static const Expr f = make(Node{Kind::False, {}, Dir::N, {}, {}});
  return f;
}

Expr eq(Term a, Term b) { return make(Node{Kind::Eq, {}, Dir::N, {std::move(a), std::move(b)}, {}}); }
Expr color(std::string name, Term t) { return make(Node{Kind::Color, std::move(name), Dir::N, {std::move(t)}, {}}); }
Expr set_var(std::string name, Term t) { return make(Node{Kind::SetVar, std::move(name), Dir::N, {std::move(t)}, {}}); }
Expr edge(Dir d, std::string from, std::string to) {
  return make(Node{Kind::Edge, {}, d, {var(std::move(from)), var(std::move(to))}, {}});
}
Expr not_(Expr e) { return make(Node{Kind::Not, {}, Dir::N, {}, {std::move(e)}}); }
Expr and_(std::vector<Expr> kids) { return make_nary(Kind::And, std::move(kids)); }
Expr or_(std::vector<Expr> kids) { return make_nary(Kind::Or, std::move(kids)); }
Expr implies(Expr a, Expr b) { return make(Node{Kind::Implies, {}, Dir::N, {}, {std::move(a), std::move(b)}}); }
Expr iff(Expr a, Expr b) { return make(Node{Kind::Iff, {}, Dir::N, {}, {std::move(a), std::move(b)}}); }
Expr quant(Kind k, std::string v, Expr body) { return make(Node{k, std::move(v), Dir::N, {}, {std::move(body)}}); }
Expr forall(std::string v, Expr body) { return quant(Kind::ForallFO, std::move(v), std::move(body)); }
Expr exists(std::string v, Expr body) { return quant(Kind::ExistsFO, std::move(v), std::move(body)); }
Expr forall_so(std::string v, Expr body) { return quant(Kind::ForallSO, std::move(v), std::move(body)); }
Expr exists_so(std::string v, Expr body) { return quant(Kind::ExistsSO, std::move(v), std::move(body)); }

Expr with_kids(const Node& n, std::vector<Expr> kids) {
  Node copy = n;
  copy.kids = std::move(kids);
  return make(std::move(copy));
}

Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f) {
  if (auto r = f(e)) return *r;
  if (e->kids.empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e->kids.size());
  bool changed = false;
  for (const auto& k : e->kids) {
    kids.push_back(rewrite(k, f));
    changed |= kids.back() != k;
  }
  return changed ? with_kids(*e, std::move(kids)) : e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->terms != b->terms || a->kids.size() != b->kids.size())
    return false;
  if (a->kind == Kind::Edge && a->dir != b->dir) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printer

std::string to_string(const Term& t) {
  std::string out;
  for (auto it = t.path.rbegin(); it != t.path.rend(); ++it) {
    out += dir_letter(*it);
    out += '(';
  }
  out += t.var;
  out.append(t.path.size(), ')');
  return out;
}

namespace {

int level(Kind k) {
  switch (k) {
    case Kind::Iff:
      return 1;
    case Kind::Implies:
      return 2;
    case Kind::Or:
      return 3;
    case Kind::And:
      return 4;
    case Kind::Not:
      return 5;
    case Kind::ForallFO:
    case Kind::ExistsFO:
    case Kind::ForallSO:
    case Kind::ExistsSO:
      return 0;
    default:
      return 6;
  }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  const int lv = level(e->kind);
  switch (e->kind) {
    case Kind::True:
      out += "true";
      return;
    case Kind::False:
      out += "false";
      return;
    case Kind::Eq:
      out += to_string(e->terms[0]) + " = " + to_string(e->terms[1]);
      return;
    case Kind::Color:
      out += "@" + e->name + "(" + to_string(e->terms[0]) + ")";
      return;
    case Kind::SetVar:
      out += e->name + "(" + to_string(e->terms[0]) + ")";
      return;
    case Kind::Edge:
      out += std::string("edge") + dir_letter(e->dir) + "(" + e->terms[0].var + "," + e->terms[1].var + ")";
      return;
    case Kind::Not: {
      const Expr& c = e->kids[0];
      out += '!';
      print_child(c, level(c->kind) < lv || c->kind == Kind::Eq, out);
      return;
    }
    case Kind::And:
    case Kind::Or: {
      const char* op = e->kind == Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += op;
        print_child(e->kids[i], level(e->kids[i]->kind) <= lv, out);
      }
      return;
    }
    case Kind::Implies:
      print_child(e->kids[0], level(e->kids[0]->kind) <= lv, out);
      out += " -> ";
      print_child(e->kids[1], level(e->kids[1]->kind) < lv, out);
      return;
    case Kind::Iff:
      print_child(e->kids[0], level(e->kids[0]->kind) <= lv, out);
      out += " <-> ";
      print_child(e->kids[1], level(e->kids[1]->kind) <= lv, out);
      return;
    case Kind::ForallFO:
    case Kind::ForallSO:
      out += "forall " + e->name + ". ";
      print(e->kids[0], out);
      return;
    case Kind::ExistsFO:
    case Kind::ExistsSO:
      out += "exists " + e->name + ". ";
      print(e->kids[0], out);
      return;
  }
}

void collect(const Expr& e, const std::function<void(const Node&)>& f) {
  f(*e);
  for (const auto& k : e->kids) collect(k, f);
}

void free_vars(const Expr& e, bool so, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e->kind) {
    case Kind::Eq:
    case Kind::Color:
    case Kind::Edge:
      if (!so)
        for (const auto& t : e->terms)
          if (!bound.count(t.var)) out.insert(t.var);
      return;
    case Kind::SetVar:
      if (so && !bound.count(e->name)) out.insert(e->name);
      if (!so && !bound.count(e->terms[0].var)) out.insert(e->terms[0].var);
      return;
    default:
      break;
  }
  if (is_quantifier(e->kind) && is_so_quantifier(e->kind) == so) {
    bool inserted = bound.insert(e->name).second;
    free_vars(e->kids[0], so, bound, out);
    if (inserted) bound.erase(e->name);
    return;
  }
  for (const auto& k : e->kids) free_vars(k, so, bound, out);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string to_string(const Formula& f) { return to_string(f.root); }

std::set<std::string> free_fo_vars(const Expr& e) {
  std::set<std::string> bound, out;
  free_vars(e, false, bound, out);
  return out;
}

std::set<std::string> free_so_vars(const Expr& e) {
  std::set<std::string> bound, out;
  free_vars(e, true, bound, out);
  return out;
}

std::set<std::string> color_names(const Expr& e) {
  std::set<std::string> out;
  collect(e, [&](const Node& n) {
    if (n.kind == Kind::Color) out.insert(n.name);
  });
  return out;
}

std::set<std::string> all_var_names(const Expr& e) {
  std::set<std::string> out;
  collect(e, [&](const Node& n) {
    if (is_quantifier(n.kind) || n.kind == Kind::SetVar) out.insert(n.name);
    for (const auto& t : n.terms) out.insert(t.var);
  });
  return out;
}

bool is_closed(const Expr& e) { return free_fo_vars(e).empty() && free_so_vars(e).empty(); }

bool quantifier_free(const Expr& e) {
  bool qf = true;
  collect(e, [&](const Node& n) { qf &= !is_quantifier(n.kind); });
  return qf;
}

std::pair<std::string, Vec2> term_offset(const Term& t) {
  Vec2 v;
  for (Dir d : t.path) v = v + dir_vector(d);
  return {t.var, v};
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (used.insert(base).second) return base;
  for (int i = 1;; ++i) {
    std::string n = base + std::to_string(i);
    if (used.insert(n).second) return n;
  }
}

std::vector<std::string> FragmentClass::names() const {
  std::vector<std::string> out;
  auto add = [&](bool b, const char* n) {
    if (b) out.emplace_back(n);
  };
  add(quantifier_free, "QuantifierFree");
  add(theorem6_form, "Theorem6Form");
  add(universal_fo, "UniversalFO");
  add(universal_mso, "UniversalMSO");
  add(cform, "CForm");
  add(sofic_form, "SoficForm");
  add(theorem5_form, "Theorem5Form");
  add(emso, "EMSO");
  add(fo, "FO");
  add(mso, "MSO");
  return out;
}

}  // namespace tesselogic
