#include "tesselogic/eval.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tesselogic/error.hpp"

namespace tesselogic {

Structure Structure::of_pattern(const Pattern& p) {
  Structure s;
  s.alphabet = p.alphabet();
  std::map<Vec2, int> index;
  for (const auto& [z, c] : p.cells()) {
    index.emplace(z, s.size());
    s.cells.push_back(z);
    s.colors.push_back(c);
  }
  for (Vec2 z : s.cells) {
    std::array<int, 4> nb{};
    for (Dir d : {Dir::N, Dir::S, Dir::E, Dir::W}) {
      auto it = index.find(z + dir_vector(d));
      nb[static_cast<std::size_t>(d)] = it == index.end() ? -1 : it->second;
    }
    s.neighbors.push_back(nb);
  }
  return s;
}

Structure Structure::torus(const PeriodicConfig& c) {
  Structure s;
  s.alphabet = c.alphabet();
  const int w = c.width(), h = c.height();
  auto idx = [&](int x, int y) {
    x = ((x % w) + w) % w;
    y = ((y % h) + h) % h;
    return (h - 1 - y) * w + x;
  };
  for (int y = h - 1; y >= 0; --y)
    for (int x = 0; x < w; ++x) {
      s.cells.push_back({x, y});
      s.colors.push_back(c.at({x, y}));
    }
  for (Vec2 z : s.cells) {
    std::array<int, 4> nb{};
    for (Dir d : {Dir::N, Dir::S, Dir::E, Dir::W}) {
      Vec2 n = z + dir_vector(d);
      nb[static_cast<std::size_t>(d)] = idx(n.x, n.y);
    }
    s.neighbors.push_back(nb);
  }
  return s;
}

namespace {

// Kleene truth values; Unknown arises while set variables are partially
// assigned during the search.
enum V : std::uint8_t { F = 0, T = 1, U = 2 };

V v_not(V a) { return a == U ? U : a == T ? F : T; }

Dir opposite(Dir d) {
  switch (d) {
    case Dir::N:
      return Dir::S;
    case Dir::S:
      return Dir::N;
    case Dir::E:
      return Dir::W;
    default:
      return Dir::E;
  }
}

bool mentions(const Expr& e, const std::string& v) { return free_fo_vars(e).count(v) != 0; }

// Pushes first-order quantifiers inward (∀ over ∧, ∃ over ∨) and drops
// vacuous ones. Valid on non-empty universes only.
Expr miniscope(const Expr& e) {
  if (e->kids.empty()) return e;
  if (e->kind != Kind::ForallFO && e->kind != Kind::ExistsFO) {
    std::vector<Expr> kids;
    for (const auto& k : e->kids) kids.push_back(miniscope(k));
    return with_kids(*e, std::move(kids));
  }
  Expr body = miniscope(e->kids[0]);
  if (!mentions(body, e->name)) return body;
  const Kind spread = e->kind == Kind::ForallFO ? Kind::And : Kind::Or;
  if (body->kind != spread) return quant(e->kind, e->name, body);
  std::vector<Expr> parts;
  for (const auto& k : body->kids) parts.push_back(mentions(k, e->name) ? miniscope(quant(e->kind, e->name, k)) : k);
  return with_kids(*body, std::move(parts));
}

struct CTerm {
  int slot;
  std::vector<Dir> path;
};

struct CNode {
  Kind kind;
  int index = -1;  // color, set slot or first-order slot
  Dir dir = Dir::N;
  std::vector<CTerm> terms;
  std::vector<int> kids;
  std::vector<int> block;  // set slots of a quantifier block
  int from_slot = -1;      // binding fixed to neighbors[env[from_slot]][from_dir]
  Dir from_dir = Dir::N;
};

class Evaluator {
 public:
  Evaluator(const Structure& s, const Budget& b) : s_(s), budget_(b) {}

  V run(const Expr& root) {
    std::vector<std::pair<std::string, int>> scope;
    int top = compile(root, scope);
    if (has_so_ && s_.size() > budget_.max_subset_bits)
      throw BudgetExceeded("set quantifiers over " + std::to_string(s_.size()) + " cells exceed the budget of " +
                           std::to_string(budget_.max_subset_bits));
    env_.assign(static_cast<std::size_t>(fo_slots_), -1);
    sets_.assign(static_cast<std::size_t>(so_slots_), std::vector<std::uint8_t>(static_cast<std::size_t>(s_.size()), U));
    return eval(top);
  }

 private:
  int lookup(const std::vector<std::pair<std::string, int>>& scope, const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    throw InvalidArgument("free variable '" + name + "' in a formula being evaluated");
  }

  CTerm compile_term(const Term& t, const std::vector<std::pair<std::string, int>>& scope) {
    if (!t.path.empty() && !total_) {
      bool total = true;
      for (const auto& nb : s_.neighbors)
        for (int x : nb) total &= x >= 0;
      if (!total)
        throw InvalidArgument("direction functions need a total structure; convert with to_relational first");
      total_ = true;
    }
    return CTerm{lookup(scope, t.var), t.path};
  }

  int add(CNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Finds a guard edge that pins the quantified variable to one neighbour.
  void find_shortcut(const Expr& e, CNode& n, const std::vector<std::pair<std::string, int>>& scope) {
    std::vector<std::string> chain;
    Expr cur = e;
    while (cur->kind == e->kind) {
      chain.push_back(cur->name);
      cur = cur->kids[0];
    }
    Expr guard;
    if (e->kind == Kind::ForallFO && cur->kind == Kind::Implies) guard = cur->kids[0];
    if (e->kind == Kind::ExistsFO) guard = cur;
    if (!guard) return;
    std::vector<Expr> lits = guard->kind == Kind::And ? guard->kids : std::vector<Expr>{guard};
    auto outer = [&](const std::string& v) {
      if (std::find(chain.begin(), chain.end(), v) != chain.end()) return false;
      return std::any_of(scope.begin(), scope.end(), [&](auto& p) { return p.first == v; });
    };
    for (const auto& l : lits) {
      if (l->kind != Kind::Edge) continue;
      const std::string& a = l->terms[0].var;
      const std::string& b = l->terms[1].var;
      if (b == e->name && outer(a)) {
        n.from_slot = lookup(scope, a);
        n.from_dir = l->dir;
        return;
      }
      if (a == e->name && outer(b)) {
        n.from_slot = lookup(scope, b);
        n.from_dir = opposite(l->dir);
        return;
      }
    }
  }

  int compile(const Expr& e, std::vector<std::pair<std::string, int>>& scope) {
    CNode n;
    n.kind = e->kind;
    switch (e->kind) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Eq:
      case Kind::Edge:
        n.dir = e->dir;
        for (const auto& t : e->terms) n.terms.push_back(compile_term(t, scope));
        break;
      case Kind::Color: {
        auto c = s_.alphabet.index_of(e->name);
        if (!c) throw AlphabetMismatch("formula color '" + e->name + "' is not in the structure's alphabet");
        n.index = *c;
        n.terms.push_back(compile_term(e->terms[0], scope));
        break;
      }
      case Kind::SetVar:
        n.index = lookup(scope, e->name);
        n.terms.push_back(compile_term(e->terms[0], scope));
        break;
      case Kind::ForallFO:
      case Kind::ExistsFO: {
        n.index = fo_slots_++;
        find_shortcut(e, n, scope);
        scope.emplace_back(e->name, n.index);
        n.kids.push_back(compile(e->kids[0], scope));
        scope.pop_back();
        break;
      }
      case Kind::ForallSO:
      case Kind::ExistsSO: {
        has_so_ = true;
        Expr cur = e;
        std::size_t pushed = 0;
        while (cur->kind == e->kind) {
          n.block.push_back(so_slots_);
          scope.emplace_back(cur->name, so_slots_++);
          ++pushed;
          cur = cur->kids[0];
        }
        n.kids.push_back(compile(cur, scope));
        scope.resize(scope.size() - pushed);
        break;
      }
      default:
        for (const auto& k : e->kids) n.kids.push_back(compile(k, scope));
    }
    return add(std::move(n));
  }

  int cell_of(const CTerm& t) const {
    int c = env_[static_cast<std::size_t>(t.slot)];
    for (Dir d : t.path) c = s_.neighbors[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
    return c;
  }

  void tick() {
    if (++steps_ > budget_.max_assignments) throw BudgetExceeded("evaluation exceeded the assignment budget");
  }

  V eval(int i) {
    const CNode& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case Kind::True:
        return T;
      case Kind::False:
        return F;
      case Kind::Eq:
        return cell_of(n.terms[0]) == cell_of(n.terms[1]) ? T : F;
      case Kind::Edge: {
        int a = env_[static_cast<std::size_t>(n.terms[0].slot)];
        int b = env_[static_cast<std::size_t>(n.terms[1].slot)];
        return s_.neighbors[static_cast<std::size_t>(a)][static_cast<std::size_t>(n.dir)] == b ? T : F;
      }
      case Kind::Color:
        return s_.colors[static_cast<std::size_t>(cell_of(n.terms[0]))] == n.index ? T : F;
      case Kind::SetVar:
        return static_cast<V>(sets_[static_cast<std::size_t>(n.index)][static_cast<std::size_t>(cell_of(n.terms[0]))]);
      case Kind::Not:
        return v_not(eval(n.kids[0]));
      case Kind::And: {
        V out = T;
        for (int k : n.kids) {
          V v = eval(k);
          if (v == F) return F;
          if (v == U) out = U;
        }
        return out;
      }
      case Kind::Or: {
        V out = F;
        for (int k : n.kids) {
          V v = eval(k);
          if (v == T) return T;
          if (v == U) out = U;
        }
        return out;
      }
      case Kind::Implies: {
        V a = eval(n.kids[0]);
        if (a == F) return T;
        V b = eval(n.kids[1]);
        if (b == T) return T;
        return a == T ? b : U;
      }
      case Kind::Iff: {
        V a = eval(n.kids[0]);
        V b = eval(n.kids[1]);
        if (a == U || b == U) return U;
        return a == b ? T : F;
      }
      case Kind::ForallFO:
      case Kind::ExistsFO:
        return eval_fo(n);
      case Kind::ForallSO:
      case Kind::ExistsSO:
        return eval_so(n);
    }
    return U;
  }

  V eval_fo(const CNode& n) {
    const bool exists = n.kind == Kind::ExistsFO;
    int& slot = env_[static_cast<std::size_t>(n.index)];
    const int saved = slot;
    V out = exists ? F : T;
    if (n.from_slot >= 0) {
      int c = s_.neighbors[static_cast<std::size_t>(env_[static_cast<std::size_t>(n.from_slot)])]
                          [static_cast<std::size_t>(n.from_dir)];
      if (c < 0) return out;
      tick();
      slot = c;
      out = eval(n.kids[0]);
      slot = saved;
      return out;
    }
    for (int c = 0; c < s_.size(); ++c) {
      tick();
      slot = c;
      V v = eval(n.kids[0]);
      if (exists ? v == T : v == F) {
        out = v;
        break;
      }
      if (v == U) out = U;
    }
    slot = saved;
    return out;
  }

  V eval_so(const CNode& n) {
    // A block nested under a partially assigned block cannot be decided yet.
    if (partial_ > 0) return U;
    for (int b : n.block) std::fill(sets_[static_cast<std::size_t>(b)].begin(), sets_[static_cast<std::size_t>(b)].end(), U);
    ++partial_;
    V v = search(n, 0);
    --partial_;
    return v;
  }

  // Cells in row-major order; per cell the block's bits form a counter with
  // the first variable most significant, 0 tried before 1.
  V search(const CNode& n, int cell) {
    const bool exists = n.kind == Kind::ExistsSO;
    if (cell == s_.size()) {
      tick();
      --partial_;
      V v = eval(n.kids[0]);
      ++partial_;
      return v;
    }
    V v = eval(n.kids[0]);
    if (v != U) return v;
    const std::size_t m = n.block.size();
    for (std::uint32_t combo = 0; combo < (1u << m); ++combo) {
      for (std::size_t j = 0; j < m; ++j)
        sets_[static_cast<std::size_t>(n.block[j])][static_cast<std::size_t>(cell)] =
            static_cast<std::uint8_t>((combo >> (m - 1 - j)) & 1u);
      V r = search(n, cell + 1);
      if (exists ? r == T : r == F) return r;
    }
    for (int b : n.block) sets_[static_cast<std::size_t>(b)][static_cast<std::size_t>(cell)] = U;
    return exists ? F : T;
  }

  const Structure& s_;
  Budget budget_;
  std::vector<CNode> nodes_;
  std::vector<int> env_;
  std::vector<std::vector<std::uint8_t>> sets_;
  int fo_slots_ = 0;
  int so_slots_ = 0;
  int partial_ = 0;
  bool has_so_ = false;
  bool total_ = false;
  std::uint64_t steps_ = 0;
};

bool has_compound_terms(const Expr& e) {
  for (const auto& t : e->terms)
    if (!t.path.empty()) return true;
  return std::any_of(e->kids.begin(), e->kids.end(), has_compound_terms);
}

int max_offset(const Expr& e) {
  int m = e->kind == Kind::Edge ? 1 : 0;
  for (const auto& t : e->terms) {
    Vec2 v = term_offset(t).second;
    m = std::max({m, std::abs(v.x), std::abs(v.y)});
  }
  for (const auto& k : e->kids) m = std::max(m, max_offset(k));
  return m;
}

int count_fo_binders(const Expr& e) {
  int c = (e->kind == Kind::ForallFO || e->kind == Kind::ExistsFO) ? 1 : 0;
  for (const auto& k : e->kids) c += count_fo_binders(k);
  return c;
}

}  // namespace

bool evaluate(const Formula& f, const Structure& s, const Budget& b) {
  Expr root = s.size() > 0 ? miniscope(f.root) : f.root;
  V v = Evaluator(s, b).run(root);
  return v == T;
}

bool eval_pattern(const Formula& f, const Pattern& p, const Budget& b) {
  if (f.mode == Mode::Functional && has_compound_terms(f.root))
    throw InvalidArgument("pattern semantics needs a relational formula; convert with to_relational first");
  return evaluate(f, Structure::of_pattern(p), b);
}

bool eval_torus(const Formula& f, const PeriodicConfig& torus, const Budget& b) {
  return evaluate(f, Structure::torus(torus), b);
}

int universal_torus_side(const Formula& f, const PeriodicConfig& c) {
  const int p = count_fo_binders(f.root);
  const int r = 2 * max_offset(f.root);
  const int base = std::lcm(c.width(), c.height());
  // Large enough to separate every cluster of variables by more than the
  // interaction radius after snapping each cluster onto the period lattice.
  const int need = std::max({1, (p + 1) * (2 * r + 1), p * (p * r + std::max(c.width(), c.height()))});
  return base * ((need + base - 1) / base);
}

bool eval_universal_periodic(const Formula& f, const PeriodicConfig& c, const Budget& b) {
  if (!classify(f).universal_fo) throw FragmentError("plane evaluation needs a universal first-order formula");
  const int side = universal_torus_side(f, c);
  std::vector<Color> cells(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) cells[static_cast<std::size_t>(y * side + x)] = c.at({x, y});
  return eval_torus(f, PeriodicConfig(c.alphabet(), side, side, std::move(cells)), b);
}

bool sft_membership(const SFT& s, const PeriodicConfig& c) {
  if (!(s.alphabet() == c.alphabet())) throw AlphabetMismatch("sft_membership: alphabets differ");
  return std::all_of(s.forbidden().begin(), s.forbidden().end(),
                     [&](const Pattern& p) { return occurrences(p, c).empty(); });
}

CheckVerdict pattern_check(const Formula& f, const PeriodicConfig& c, int r, const Budget& b) {
  Formula p = prenex(f);
  auto [q, m] = split_prefix(p.root);
  std::size_t i = 0;
  while (i < q.size() && is_so_quantifier(q[i].first)) ++i;
  for (; i < q.size(); ++i)
    if (q[i].first != Kind::ForallFO)
      throw FragmentError("pattern_check needs set quantifiers followed by universal first-order quantifiers");
  Formula rel = to_relational(p);

  std::map<Pattern, bool> seen;
  for (int rad = 0; rad <= r; ++rad) {
    for (int y = c.height() - 1; y >= 0; --y) {
      for (int x = 0; x < c.width(); ++x) {
        Pattern sq = square_pattern(c, {x, y}, rad);
        auto it = seen.find(sq);
        if (it == seen.end()) it = seen.emplace(sq, eval_pattern(rel, sq, b)).first;
        if (!it->second) return {CheckVerdict::Status::Refuted, rad, sq};
      }
    }
  }
  return {CheckVerdict::Status::ConsistentUpTo, r, std::nullopt};
}

}  // namespace tesselogic
