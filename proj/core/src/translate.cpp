#include "tesselogic/translate.hpp"

#include <algorithm>
#include <map>

#include "tesselogic/error.hpp"

namespace tesselogic {

namespace {

using Prefix = std::vector<std::pair<Kind, std::string>>;

std::vector<Expr> conjuncts_of(const Expr& e) { return e->kind == Kind::And ? e->kids : std::vector<Expr>{e}; }

// Renames first-order variables in a quantifier-free formula.
Expr rename_fo(const Expr& e, const std::map<std::string, std::string>& m) {
  return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
    if (n->terms.empty()) return std::nullopt;
    Node copy = *n;
    for (auto& t : copy.terms)
      if (auto it = m.find(t.var); it != m.end()) t.var = it->second;
    return std::make_shared<const Node>(std::move(copy));
  });
}

Expr rename_so(const Expr& e, const std::map<std::string, std::string>& m) {
  return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
    if (n->kind != Kind::SetVar) return std::nullopt;
    auto it = m.find(n->name);
    if (it == m.end()) return std::nullopt;
    return set_var(it->second, n->terms[0]);
  });
}

// Value of a quantifier-free single-variable matrix on a coloring of the
// window (offset -> color name).
bool eval_window(const Expr& e, const std::map<Vec2, std::string>& w) {
  switch (e->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Eq:
      return term_offset(e->terms[0]).second == term_offset(e->terms[1]).second;
    case Kind::Color:
      return w.at(term_offset(e->terms[0]).second) == e->name;
    case Kind::Not:
      return !eval_window(e->kids[0], w);
    case Kind::And:
      return std::all_of(e->kids.begin(), e->kids.end(), [&](const Expr& k) { return eval_window(k, w); });
    case Kind::Or:
      return std::any_of(e->kids.begin(), e->kids.end(), [&](const Expr& k) { return eval_window(k, w); });
    case Kind::Implies:
      return !eval_window(e->kids[0], w) || eval_window(e->kids[1], w);
    case Kind::Iff:
      return eval_window(e->kids[0], w) == eval_window(e->kids[1], w);
    default:
      throw FragmentError("unexpected node in a quantifier-free matrix");
  }
}

void collect_terms(const Expr& e, std::vector<Term>& out) {
  for (const auto& t : e->terms) out.push_back(t);
  for (const auto& k : e->kids) collect_terms(k, out);
}

// ∃X̄ (∀z φ1) ∧ (∃z̄ φ2) pieces; a missing part is nullptr.
struct CShape {
  std::vector<std::string> so;
  std::string fvar;
  Expr fbody;
  std::vector<std::string> evars;
  Expr ebody;
};

CShape decompose(const Formula& f) {
  CShape s;
  Expr cur = f.root;
  while (cur->kind == Kind::ExistsSO) {
    s.so.push_back(cur->name);
    cur = cur->kids[0];
  }
  std::vector<Expr> fparts, eparts;
  for (const auto& c : conjuncts_of(cur)) {
    if (quantifier_free(c)) {
      if (!free_fo_vars(c).empty()) throw FragmentError("free first-order variable outside a quantifier");
      fparts.push_back(c);
      continue;
    }
    auto [q, m] = split_prefix(c);
    if (!quantifier_free(m)) throw FragmentError("expected ∃X̄ (∀z φ) ∧ (∃z̄ φ') shape");
    if (q.size() == 1 && q[0].first == Kind::ForallFO) {
      if (s.fvar.empty()) s.fvar = q[0].second;
      fparts.push_back(rename_fo(m, {{q[0].second, s.fvar}}));
    } else if (std::all_of(q.begin(), q.end(), [](auto& x) { return x.first == Kind::ExistsFO; })) {
      if (s.ebody) throw FragmentError("more than one existential first-order block");
      for (auto& x : q) s.evars.push_back(x.second);
      s.ebody = m;
    } else {
      throw FragmentError("expected a single universal quantifier or an existential block");
    }
  }
  if (s.fvar.empty()) s.fvar = "x";
  s.fbody = and_(std::move(fparts));
  return s;
}

std::string bits_name(int value, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += ((value >> (n - 1 - i)) & 1) ? '1' : '0';
  return s;
}

}  // namespace

Expr occurrence_formula(const Pattern& p, const std::string& z) {
  if (p.empty()) throw InvalidArgument("occurrence formula of the empty pattern");
  Pattern c = canonicalize(p).first;
  std::vector<Expr> atoms;
  // Southern row first, west to east, so (0,0) leads.
  std::vector<std::pair<Vec2, Color>> cells(c.cells().begin(), c.cells().end());
  std::stable_sort(cells.begin(), cells.end(), [](auto& a, auto& b) {
    return a.first.y != b.first.y ? a.first.y < b.first.y : a.first.x < b.first.x;
  });
  for (const auto& [v, col] : cells) atoms.push_back(color(c.alphabet().name(col), offset_term(z, v)));
  return and_(std::move(atoms));
}

SFT sft_of_universal(const Formula& f, const Alphabet& alphabet) {
  if (!classify(f).theorem6_form) throw FragmentError("sft_of_universal needs a formula ∀z ψ(z) with ψ quantifier-free");
  for (const auto& c : color_names(f.root))
    if (!alphabet.index_of(c)) throw AlphabetMismatch("formula color '" + c + "' is not in the alphabet");
  Formula p = is_prenex(f.root) ? f : prenex(f);
  auto [q, m] = split_prefix(p.root);

  std::vector<Term> terms;
  collect_terms(m, terms);
  std::set<Vec2, RowMajorLess> window;
  for (const auto& t : terms) window.insert(term_offset(t).second);
  if (window.empty()) window.insert({0, 0});
  std::vector<Vec2> zs(window.begin(), window.end());

  std::vector<Pattern> forbidden;
  std::vector<int> digits(zs.size(), 0);
  const int k = static_cast<int>(alphabet.size());
  if (k == 0) return SFT(alphabet);
  while (true) {
    std::map<Vec2, std::string> w;
    Pattern::Cells cells;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      w[zs[i]] = alphabet.name(digits[i]);
      cells.emplace(zs[i], digits[i]);
    }
    if (!eval_window(m, w)) forbidden.emplace_back(alphabet, std::move(cells));
    std::size_t i = zs.size();
    while (i > 0 && ++digits[i - 1] == k) digits[--i] = 0;
    if (i == 0) break;
  }
  return SFT(alphabet, std::move(forbidden));
}

Formula formula_of_sft(const SFT& s) {
  std::vector<Expr> parts;
  for (const auto& p : s.forbidden()) parts.push_back(not_(occurrence_formula(p, "z")));
  return Formula{forall("z", and_(std::move(parts))), Mode::Functional};
}

Formula eliminate_so_universal(const Formula& f, bool simplify_result) {
  Formula p = is_prenex(f.root) ? f : prenex(f);
  auto [q, m] = split_prefix(p.root);
  Prefix fo;
  std::vector<std::string> so;
  for (const auto& [k, v] : q) {
    if (!is_universal(k)) throw FragmentError("eliminate_so_universal needs a universal formula");
    if (is_so_quantifier(k))
      so.push_back(v);
    else
      fo.emplace_back(k, v);
  }
  Expr matrix = m;
  for (auto it = so.rbegin(); it != so.rend(); ++it) {
    const std::string& x = *it;
    std::vector<Term> terms;
    std::function<void(const Expr&)> scan = [&](const Expr& e) {
      if (e->kind == Kind::SetVar && e->name == x &&
          std::find(terms.begin(), terms.end(), e->terms[0]) == terms.end())
        terms.push_back(e->terms[0]);
      for (const auto& k : e->kids) scan(k);
    };
    scan(matrix);
    const std::size_t k = terms.size();
    if (k == 0) continue;
    std::vector<Expr> parts;
    for (std::uint64_t rho = 0; rho < (1ULL << k); ++rho) {
      auto bit = [&](std::size_t i) { return ((rho >> (k - 1 - i)) & 1ULL) != 0; };
      std::vector<Expr> sound;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (bit(i) != bit(j)) sound.push_back(not_(eq(terms[j], terms[i])));
      Expr psi = rewrite(matrix, [&](const Expr& e) -> std::optional<Expr> {
        if (e->kind != Kind::SetVar || e->name != x) return std::nullopt;
        auto pos = static_cast<std::size_t>(std::find(terms.begin(), terms.end(), e->terms[0]) - terms.begin());
        // Constants written as t = t / !(t = t) keep every term in the
        // matrix, so relational unfolding guards the same cells as before.
        Expr same = eq(e->terms[0], e->terms[0]);
        return bit(pos) ? same : not_(same);
      });
      parts.push_back(implies(and_(std::move(sound)), psi));
    }
    matrix = with_kids(Node{Kind::And, {}, Dir::N, {}, {}}, std::move(parts));
    if (matrix->kids.size() == 1) matrix = matrix->kids[0];
  }
  Formula out{attach_prefix(fo, matrix), p.mode};
  return simplify_result ? simplify(out) : out;
}

Formula formula_atmost(const Pattern& p, int k) {
  if (k < 0) throw InvalidArgument("negative count");
  if (k == 0) return Formula{forall("x", not_(occurrence_formula(p, "x")))};
  std::vector<std::string> xs;
  for (int i = 1; i <= k + 1; ++i) xs.push_back("x" + std::to_string(i));
  std::vector<Expr> occ, same;
  for (const auto& x : xs) occ.push_back(occurrence_formula(p, x));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) same.push_back(eq(var(xs[i]), var(xs[j])));
  Expr body = implies(and_(std::move(occ)), or_(std::move(same)));
  Prefix q;
  for (const auto& x : xs) q.emplace_back(Kind::ForallFO, x);
  return Formula{attach_prefix(q, body)};
}

Formula formula_count(const Pattern& p, int k, CountMode mode) {
  if (k < 0) throw InvalidArgument("negative count");
  if (k == 0) {
    if (mode == CountMode::AtLeast) return Formula{forall("x", mk_true())};
    return Formula{forall("x", not_(occurrence_formula(p, "x")))};
  }
  auto X = [](int i) { return "X" + std::to_string(i); };
  auto A = [](int i) { return "A" + std::to_string(i); };
  const Term x = var("x");
  std::vector<Expr> clauses;
  for (int i = 1; i <= k; ++i)
    clauses.push_back(iff(set_var(A(i), x), and_({set_var(A(i), apply(Dir::N, x)), set_var(A(i), apply(Dir::E, x))})));
  for (int i = 1; i <= k; ++i)
    clauses.push_back(iff(set_var(X(i), x), and_({set_var(A(i), x), not_(set_var(A(i), apply(Dir::S, x))),
                                                  not_(set_var(A(i), apply(Dir::W, x)))})));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) clauses.push_back(implies(set_var(X(i), x), not_(set_var(X(j), x))));
  std::vector<Expr> marks;
  for (int i = 1; i <= k; ++i) marks.push_back(set_var(X(i), x));
  Expr any = or_(std::move(marks));
  Expr occ = occurrence_formula(p, "x");
  clauses.push_back(mode == CountMode::Exact ? iff(any, occ) : implies(any, occ));

  std::vector<Expr> witnesses;
  Prefix zs;
  for (int i = 1; i <= k; ++i) {
    std::string z = "z" + std::to_string(i);
    witnesses.push_back(set_var(X(i), var(z)));
    zs.emplace_back(Kind::ExistsFO, z);
  }
  Expr body = and_({forall("x", and_(std::move(clauses))), attach_prefix(zs, and_(std::move(witnesses)))});
  Prefix so;
  for (int i = 1; i <= k; ++i) so.emplace_back(Kind::ExistsSO, X(i));
  for (int i = 1; i <= k; ++i) so.emplace_back(Kind::ExistsSO, A(i));
  return Formula{attach_prefix(so, body)};
}

Formula combine_union(const Formula& f, const Formula& g) {
  CShape a = decompose(f);
  CShape b = decompose(g);
  const std::size_t n = std::max(a.so.size(), b.so.size());
  const std::size_t p = std::max(a.evars.size(), b.evars.size());

  auto normalize = [&](CShape& s) {
    std::map<std::string, std::string> so_map;
    for (std::size_t i = 0; i < s.so.size(); ++i) so_map[s.so[i]] = "X" + std::to_string(i + 1);
    std::map<std::string, std::string> e_map;
    for (std::size_t i = 0; i < s.evars.size(); ++i) e_map[s.evars[i]] = "z" + std::to_string(i + 1);
    s.fbody = rename_so(rename_fo(s.fbody, {{s.fvar, "z1"}}), so_map);
    if (s.ebody) s.ebody = rename_so(rename_fo(s.ebody, e_map), so_map);
  };
  normalize(a);
  normalize(b);

  const Term z1 = var("z1");
  Expr sel = set_var("X", z1);
  Expr universal = forall("z1", and_({iff(sel, set_var("X", apply(Dir::N, z1))),
                                      iff(sel, set_var("X", apply(Dir::E, z1))), implies(sel, a.fbody),
                                      implies(not_(sel), b.fbody)}));
  Expr body = universal;
  if (p > 0) {
    Expr ea = a.ebody ? a.ebody : mk_true();
    Expr eb = b.ebody ? b.ebody : mk_true();
    Prefix zs;
    for (std::size_t i = 1; i <= p; ++i) zs.emplace_back(Kind::ExistsFO, "z" + std::to_string(i));
    body = and_({universal, attach_prefix(zs, or_({and_({sel, ea}), and_({not_(sel), eb})}))});
  }
  Prefix so{{Kind::ExistsSO, "X"}};
  for (std::size_t i = 1; i <= n; ++i) so.emplace_back(Kind::ExistsSO, "X" + std::to_string(i));
  return Formula{attach_prefix(so, body), f.mode};
}

Formula fuse_universal(const Formula& f) {
  CShape s = decompose(f);
  Expr body = forall(s.fvar, s.fbody);
  if (s.ebody) {
    Prefix zs;
    for (const auto& v : s.evars) zs.emplace_back(Kind::ExistsFO, v);
    body = and_({body, attach_prefix(zs, s.ebody)});
  }
  Prefix so;
  for (const auto& v : s.so) so.emplace_back(Kind::ExistsSO, v);
  return Formula{attach_prefix(so, body), f.mode};
}

Formula soficform_atmost(const Pattern& p, int k) {
  if (k < 1) throw InvalidArgument("soficform_atmost needs k >= 1");
  auto S = [](int i) { return "S" + std::to_string(i); };
  auto A = [](int i) { return "A" + std::to_string(i); };
  const Term x = var("x");
  std::vector<Expr> clauses;
  for (int i = 1; i <= k; ++i) {
    clauses.push_back(iff(set_var(A(i), x), and_({set_var(A(i), apply(Dir::N, x)), set_var(A(i), apply(Dir::E, x))})));
    clauses.push_back(iff(set_var(S(i), x), and_({set_var(A(i), x), not_(set_var(A(i), apply(Dir::S, x))),
                                                  not_(set_var(A(i), apply(Dir::W, x)))})));
  }
  std::vector<Expr> cover;
  for (int i = 1; i <= k; ++i) cover.push_back(set_var(S(i), x));
  clauses.push_back(implies(occurrence_formula(p, "x"), or_(std::move(cover))));
  Prefix so;
  for (int i = 1; i <= k; ++i) so.emplace_back(Kind::ExistsSO, S(i));
  for (int i = 1; i <= k; ++i) so.emplace_back(Kind::ExistsSO, A(i));
  return Formula{attach_prefix(so, forall("x", and_(std::move(clauses))))};
}

Prop1Image prop1_forward(const Formula& f, const Alphabet& alphabet) {
  std::vector<std::string> so;
  Expr cur = f.root;
  while (cur->kind == Kind::ExistsSO) {
    so.push_back(cur->name);
    cur = cur->kids[0];
  }
  std::function<bool(const Expr&)> has_so = [&](const Expr& e) {
    if (is_so_quantifier(e->kind)) return true;
    return std::any_of(e->kids.begin(), e->kids.end(), has_so);
  };
  if (has_so(cur)) throw FragmentError("prop1_forward needs ∃X̄ followed by a first-order formula");
  for (const auto& c : color_names(cur))
    if (!alphabet.index_of(c)) throw AlphabetMismatch("formula color '" + c + "' is not in the alphabet");

  const int n = static_cast<int>(so.size());
  if (n == 0) return {f, ProjectionMap::identity(alphabet)};
  std::vector<std::string> names;
  std::vector<Color> assignment;
  for (std::size_t c = 0; c < alphabet.size(); ++c)
    for (int b = 0; b < (1 << n); ++b) {
      names.push_back(alphabet.name(static_cast<Color>(c)) + bits_name(b, n));
      assignment.push_back(static_cast<Color>(c));
    }
  Alphabet product(names);
  Expr body = rewrite(cur, [&](const Expr& e) -> std::optional<Expr> {
    if (e->kind == Kind::Color) {
      std::vector<Expr> alts;
      for (int b = 0; b < (1 << n); ++b) alts.push_back(color(e->name + bits_name(b, n), e->terms[0]));
      return or_(std::move(alts));
    }
    if (e->kind == Kind::SetVar) {
      auto it = std::find(so.begin(), so.end(), e->name);
      if (it == so.end()) return std::nullopt;
      const int i = static_cast<int>(it - so.begin());
      std::vector<Expr> alts;
      for (std::size_t c = 0; c < alphabet.size(); ++c)
        for (int b = 0; b < (1 << n); ++b)
          if ((b >> (n - 1 - i)) & 1)
            alts.push_back(color(alphabet.name(static_cast<Color>(c)) + bits_name(b, n), e->terms[0]));
      return or_(std::move(alts));
    }
    return std::nullopt;
  });
  return {Formula{body, f.mode}, ProjectionMap(product, alphabet, std::move(assignment))};
}

Formula prop1_backward(const Formula& f, const ProjectionMap& pi) {
  const Alphabet& q = pi.source();
  for (const auto& c : color_names(f.root))
    if (!q.index_of(c)) throw AlphabetMismatch("formula color '" + c + "' is not in the projection's source");
  std::set<std::string> used = all_var_names(f.root);
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::string n = "X" + std::to_string(i + 1);
    while (used.count(n)) n += "_";
    used.insert(n);
    xs.push_back(n);
  }
  const Term z = var("z");
  std::vector<Expr> some, excl, compat;
  for (std::size_t i = 0; i < xs.size(); ++i) some.push_back(set_var(xs[i], z));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      excl.push_back(or_({not_(set_var(xs[i], z)), not_(set_var(xs[j], z))}));
  for (std::size_t i = 0; i < xs.size(); ++i)
    compat.push_back(implies(set_var(xs[i], z), color(pi.target().name(pi(static_cast<Color>(i))), z)));
  Expr partition = forall("z", and_({or_(std::move(some)), and_(std::move(excl)), and_(std::move(compat))}));
  Expr body = rewrite(f.root, [&](const Expr& e) -> std::optional<Expr> {
    if (e->kind != Kind::Color) return std::nullopt;
    return set_var(xs[static_cast<std::size_t>(*q.index_of(e->name))], e->terms[0]);
  });
  Prefix so;
  for (const auto& x : xs) so.emplace_back(Kind::ExistsSO, x);
  return Formula{attach_prefix(so, and_({partition, body})), f.mode};
}

SoficPresentation sofic_of_cform(const Formula& f, const Alphabet& alphabet) {
  if (!classify(f).cform) throw FragmentError("sofic_of_cform needs a C-form formula ∃X̄ ∀z ψ");
  Formula p = is_prenex(f.root) ? f : prenex(f);
  Prop1Image img = prop1_forward(p, alphabet);
  return SoficPresentation(sft_of_universal(img.formula, img.proj.source()), img.proj);
}

Formula formula_of_sofic(const SoficPresentation& s) {
  return fuse_universal(prop1_backward(formula_of_sft(s.base), s.proj));
}

Formula fin_formula(const std::string& s_var) {
  std::set<std::string> used{s_var};
  const std::string a = fresh_name("A", used);
  const std::string b = fresh_name("B", used);
  const Term x = var("x");
  auto A = [&](Term t) { return set_var(a, std::move(t)); };
  auto B = [&](Term t) { return set_var(b, std::move(t)); };
  Expr body = and_({
      forall("x", iff(A(x), and_({A(apply(Dir::N, x)), A(apply(Dir::E, x))}))),
      forall("x", iff(B(x), and_({B(apply(Dir::S, x)), B(apply(Dir::W, x))}))),
      exists("x", and_({A(x), not_(A(apply(Dir::S, x))), not_(A(apply(Dir::W, x)))})),
      exists("x", and_({B(x), not_(B(apply(Dir::N, x))), not_(B(apply(Dir::E, x)))})),
      forall("x", implies(set_var(s_var, x), and_({A(x), B(x)}))),
  });
  return Formula{exists_so(a, exists_so(b, body))};
}

Formula subshift_normal_form(const Formula& f, const Alphabet& alphabet) {
  std::set<std::string> used = all_var_names(f.root);
  const std::string s = fresh_name("S", used);
  std::map<std::string, std::string> bname;
  std::vector<std::string> bs;
  for (const auto& c : alphabet.names()) {
    bname[c] = fresh_name("B" + c, used);
    bs.push_back(bname[c]);
  }
  for (const auto& c : color_names(f.root))
    if (!bname.count(c)) throw AlphabetMismatch("formula color '" + c + "' is not in the alphabet");

  Expr psi1 = rewrite(f.root, [&](const Expr& e) -> std::optional<Expr> {
    if (e->kind != Kind::Color) return std::nullopt;
    return set_var(bname.at(e->name), e->terms[0]);
  });
  // Bound-variable name for the added clauses, kept clear of f's names.
  const std::string x = fresh_name("x", used);
  const Term tx = var(x);
  std::vector<Expr> some, excl, agree;
  for (const auto& b : bs) some.push_back(set_var(b, tx));
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j)
      if (i != j) excl.push_back(not_(and_({set_var(bs[i], tx), set_var(bs[j], tx)})));
  for (const auto& c : alphabet.names()) agree.push_back(iff(set_var(bname[c], tx), color(c, tx)));

  Expr psi = and_({forall(x, or_(std::move(some))), forall(x, and_(std::move(excl))), psi1});
  Expr inner = and_({psi, forall(x, implies(set_var(s, tx), and_(std::move(agree))))});
  Prefix bq;
  for (const auto& b : bs) bq.emplace_back(Kind::ExistsSO, b);
  Formula fin = fin_formula(s);
  return Formula{forall_so(s, implies(fin.root, attach_prefix(bq, inner))), f.mode};
}

}  // namespace tesselogic
