#include <algorithm>
#include <map>

#include "tesselogic/error.hpp"
#include "tesselogic/logic.hpp"

namespace tesselogic {

using Prefix = std::vector<std::pair<Kind, std::string>>;

QuantifierPrefix split_prefix(const Expr& e) {
  QuantifierPrefix out;
  Expr cur = e;
  while (is_quantifier(cur->kind)) {
    out.quantifiers.emplace_back(cur->kind, cur->name);
    cur = cur->kids[0];
  }
  out.matrix = cur;
  return out;
}

Expr attach_prefix(const Prefix& q, Expr matrix) {
  for (auto it = q.rbegin(); it != q.rend(); ++it) matrix = quant(it->first, it->second, std::move(matrix));
  return matrix;
}

bool is_prenex(const Expr& e) { return quantifier_free(split_prefix(e).matrix); }

namespace {

Kind flip(Kind k) {
  switch (k) {
    case Kind::ForallFO:
      return Kind::ExistsFO;
    case Kind::ExistsFO:
      return Kind::ForallFO;
    case Kind::ForallSO:
      return Kind::ExistsSO;
    case Kind::ExistsSO:
      return Kind::ForallSO;
    default:
      return k;
  }
}

// Pull order when interleaving independent prefixes: set quantifiers first,
// existential before universal, so sofic shapes stay recognizable.
int rank(Kind k) {
  switch (k) {
    case Kind::ExistsSO:
      return 0;
    case Kind::ForallSO:
      return 1;
    case Kind::ForallFO:
      return 2;
    default:
      return 3;
  }
}

Prefix flipped(Prefix p) {
  for (auto& q : p) q.first = flip(q.first);
  return p;
}

Prefix merge(const Prefix& a, const Prefix& b) {
  Prefix out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (rank(a[i].first) <= rank(b[j].first))
      out.push_back(a[i++]);
    else
      out.push_back(b[j++]);
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

Expr expand_quantified_iff(const Expr& e) {
  return rewrite(e, [](const Expr& n) -> std::optional<Expr> {
    if (n->kind != Kind::Iff) return std::nullopt;
    Expr a = expand_quantified_iff(n->kids[0]);
    Expr b = expand_quantified_iff(n->kids[1]);
    if (quantifier_free(a) && quantifier_free(b)) return iff(a, b);
    return and_({implies(a, b), implies(b, a)});
  });
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& m) {
  auto it = m.find(t.var);
  if (it == m.end()) return t;
  return Term{it->second, t.path};
}

struct Renamer {
  std::set<std::string> avoid;
  int fo = 0;
  int so = 0;

  std::string next(bool second_order) {
    while (true) {
      std::string n = (second_order ? "X" : "x") + std::to_string(second_order ? ++so : ++fo);
      if (!avoid.count(n)) return n;
    }
  }

  Expr run(const Expr& e, std::map<std::string, std::string> m) {
    if (is_quantifier(e->kind)) {
      std::string fresh = next(is_so_quantifier(e->kind));
      m[e->name] = fresh;
      return quant(e->kind, fresh, run(e->kids[0], std::move(m)));
    }
    if (e->kids.empty()) {
      Node n = *e;
      for (auto& t : n.terms) t = rename_term(t, m);
      if (n.kind == Kind::SetVar)
        if (auto it = m.find(n.name); it != m.end()) n.name = it->second;
      return std::make_shared<const Node>(std::move(n));
    }
    std::vector<Expr> kids;
    for (const auto& k : e->kids) kids.push_back(run(k, m));
    return with_kids(*e, std::move(kids));
  }
};

std::pair<Prefix, Expr> pull(const Expr& e) {
  switch (e->kind) {
    case Kind::Not: {
      auto [p, m] = pull(e->kids[0]);
      return {flipped(std::move(p)), not_(m)};
    }
    case Kind::And:
    case Kind::Or: {
      Prefix p;
      std::vector<Expr> ms;
      for (const auto& k : e->kids) {
        auto [kp, km] = pull(k);
        p = merge(p, kp);
        ms.push_back(km);
      }
      return {p, with_kids(*e, std::move(ms))};
    }
    case Kind::Implies: {
      auto [pa, ma] = pull(e->kids[0]);
      auto [pb, mb] = pull(e->kids[1]);
      return {merge(flipped(std::move(pa)), pb), implies(ma, mb)};
    }
    case Kind::ForallFO:
    case Kind::ExistsFO:
    case Kind::ForallSO:
    case Kind::ExistsSO: {
      auto [p, m] = pull(e->kids[0]);
      p.insert(p.begin(), {e->kind, e->name});
      return {p, m};
    }
    default:
      // Atoms, and Iff whose sides are quantifier-free after expansion.
      return {{}, e};
  }
}

bool has_edges(const Expr& e) {
  if (e->kind == Kind::Edge) return true;
  return std::any_of(e->kids.begin(), e->kids.end(), has_edges);
}

bool is_conjunct_shape(const Expr& e) {
  if (quantifier_free(e)) return true;
  auto [q, m] = split_prefix(e);
  if (!quantifier_free(m)) return false;
  bool all_forall = std::all_of(q.begin(), q.end(), [](auto& x) { return x.first == Kind::ForallFO; });
  bool all_exists = std::all_of(q.begin(), q.end(), [](auto& x) { return x.first == Kind::ExistsFO; });
  return all_forall || all_exists;
}

}  // namespace

Formula prenex(const Formula& f) {
  Expr e = expand_quantified_iff(f.root);
  Renamer r;
  r.avoid = free_fo_vars(e);
  for (const auto& s : free_so_vars(e)) r.avoid.insert(s);
  e = r.run(e, {});
  auto [p, m] = pull(e);
  return Formula{attach_prefix(p, m), f.mode};
}

FragmentClass classify(const Formula& f) {
  FragmentClass c;
  Formula p = prenex(f);
  auto [q, m] = split_prefix(p.root);
  const bool edges = has_edges(p.root);

  std::size_t i = 0;
  while (i < q.size() && q[i].first == Kind::ExistsSO) ++i;
  const std::size_t leading_exists_so = i;
  std::size_t fo_universal = 0;
  while (i < q.size() && q[i].first == Kind::ForallFO) ++i, ++fo_universal;
  const bool exists_so_then_forall_fo = i == q.size();

  auto count = [&](auto pred) { return std::count_if(q.begin(), q.end(), pred); };
  const auto so_count = count([](auto& x) { return is_so_quantifier(x.first); });

  c.quantifier_free = q.empty();
  c.fo = so_count == 0;
  c.universal_fo = count([](auto& x) { return x.first != Kind::ForallFO; }) == 0;
  c.universal_mso = count([](auto& x) { return !is_universal(x.first); }) == 0;
  c.theorem6_form = q.size() == 1 && q[0].first == Kind::ForallFO && !edges;
  c.sofic_form = exists_so_then_forall_fo;
  c.cform = exists_so_then_forall_fo && fo_universal == 1 && !edges;
  c.emso = static_cast<std::size_t>(so_count) == leading_exists_so &&
           std::all_of(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(leading_exists_so),
                       [](auto& x) { return x.first == Kind::ExistsSO; });

  // The conjunct shape is read off the formula as written.
  Expr cur = f.root;
  while (cur->kind == Kind::ExistsSO) cur = cur->kids[0];
  if (cur->kind == Kind::And)
    c.theorem5_form = std::all_of(cur->kids.begin(), cur->kids.end(), is_conjunct_shape);
  else
    c.theorem5_form = is_conjunct_shape(cur);
  c.mso = true;
  return c;
}

Formula to_relational(const Formula& f) {
  if (f.mode == Mode::Relational) return f;
  if (!is_prenex(f.root)) throw FragmentError("to_relational needs a prenex formula");
  auto [q, matrix] = split_prefix(f.root);

  std::set<std::string> used = all_var_names(f.root);
  // Trie over (variable, path prefix): each node gets one fresh variable,
  // reached from its parent by one direction edge.
  std::map<std::pair<std::string, std::vector<Dir>>, std::string> names;
  std::vector<Expr> guards;
  std::vector<std::string> fresh;
  int counter = 0;

  auto node_of = [&](const Term& t) -> std::string {
    std::string parent = t.var;
    std::vector<Dir> prefix;
    for (Dir d : t.path) {
      prefix.push_back(d);
      auto [it, inserted] = names.emplace(std::make_pair(t.var, prefix), std::string());
      if (inserted) {
        do it->second = "w" + std::to_string(++counter);
        while (used.count(it->second));
        used.insert(it->second);
        fresh.push_back(it->second);
        guards.push_back(edge(d, parent, it->second));
      }
      parent = it->second;
    }
    return parent;
  };

  Expr body = rewrite(matrix, [&](const Expr& n) -> std::optional<Expr> {
    if (n->kind != Kind::Eq && n->kind != Kind::Color && n->kind != Kind::SetVar) return std::nullopt;
    Node copy = *n;
    for (auto& t : copy.terms)
      if (!t.path.empty()) t = var(node_of(t));
    return std::make_shared<const Node>(std::move(copy));
  });
  if (!guards.empty()) body = implies(and_(std::move(guards)), body);
  for (const auto& w : fresh) q.emplace_back(Kind::ForallFO, w);
  return Formula{attach_prefix(q, body), Mode::Relational};
}

// ---------------------------------------------------------------------------

Expr simplify(const Expr& e) {
  switch (e->kind) {
    case Kind::Eq:
      return e->terms[0] == e->terms[1] ? mk_true() : e;
    case Kind::Not: {
      Expr c = simplify(e->kids[0]);
      if (c->kind == Kind::True) return mk_false();
      if (c->kind == Kind::False) return mk_true();
      if (c->kind == Kind::Not) return c->kids[0];
      return c == e->kids[0] ? e : not_(c);
    }
    case Kind::And:
    case Kind::Or: {
      const bool conj = e->kind == Kind::And;
      const Kind unit = conj ? Kind::True : Kind::False;
      const Kind zero = conj ? Kind::False : Kind::True;
      std::vector<Expr> kids;
      std::vector<Expr> pending;
      for (const auto& k : e->kids) pending.push_back(simplify(k));
      for (std::size_t i = 0; i < pending.size(); ++i) {
        const Expr& k = pending[i];
        if (k->kind == zero) return k;
        if (k->kind == unit) continue;
        if (k->kind == e->kind) {
          pending.insert(pending.end(), k->kids.begin(), k->kids.end());
          continue;
        }
        if (std::none_of(kids.begin(), kids.end(), [&](const Expr& x) { return structurally_equal(x, k); }))
          kids.push_back(k);
      }
      if (kids.empty()) return conj ? mk_true() : mk_false();
      if (kids.size() == 1) return kids[0];
      return with_kids(*e, std::move(kids));
    }
    case Kind::Implies: {
      Expr a = simplify(e->kids[0]);
      Expr b = simplify(e->kids[1]);
      if (a->kind == Kind::True) return b;
      if (a->kind == Kind::False || b->kind == Kind::True) return mk_true();
      if (b->kind == Kind::False) return simplify(not_(a));
      if (structurally_equal(a, b)) return mk_true();
      return implies(a, b);
    }
    case Kind::Iff: {
      Expr a = simplify(e->kids[0]);
      Expr b = simplify(e->kids[1]);
      if (structurally_equal(a, b)) return mk_true();
      if (a->kind == Kind::True) return b;
      if (b->kind == Kind::True) return a;
      if (a->kind == Kind::False) return simplify(not_(b));
      if (b->kind == Kind::False) return simplify(not_(a));
      return iff(a, b);
    }
    case Kind::ForallFO:
    case Kind::ExistsFO:
    case Kind::ForallSO:
    case Kind::ExistsSO: {
      Expr body = simplify(e->kids[0]);
      // FO quantifiers over an empty universe block the other folds.
      if (e->kind == Kind::ForallFO || e->kind == Kind::ForallSO)
        if (body->kind == Kind::True) return body;
      if (e->kind == Kind::ExistsFO || e->kind == Kind::ExistsSO)
        if (body->kind == Kind::False) return body;
      if (is_so_quantifier(e->kind) && !free_so_vars(body).count(e->name)) return body;
      return quant(e->kind, e->name, body);
    }
    default:
      return e;
  }
}

Formula simplify(const Formula& f) { return Formula{simplify(f.root), f.mode}; }

}  // namespace tesselogic
