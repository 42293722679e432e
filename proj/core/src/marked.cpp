#include "tesselogic/marked.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tesselogic/error.hpp"
#include "tesselogic/text_io.hpp"

namespace tesselogic {

namespace {

constexpr Vec2 kHere{0, 0};
using Vars = std::vector<std::pair<Vec2, int>>;

void add_rule(CellSystem& sys, std::string label, Vars vars, std::function<bool(const int*)> ok) {
  sys.rules.push_back({std::move(vars), std::move(ok), std::move(label)});
}

// Row flag n: constant along rows, closed northwards. Column flag e: constant
// along columns, closed eastwards. r and c mark the row and the column where
// the flags switch on, so r ∧ c holds in at most one cell.
struct Flags {
  int n, e, r, c;
};

Flags add_flags(CellSystem& sys, const std::string& tag) {
  Flags g{sys.add_field("n" + tag), sys.add_field("e" + tag), sys.add_field("r" + tag), sys.add_field("c" + tag)};
  auto same = [](const int* v) { return v[0] == v[1]; };
  auto closed = [](const int* v) { return !v[0] || v[1]; };
  auto flip = [](const int* v) { return static_cast<bool>(v[0]) == (!v[1] && v[2]); };
  add_rule(sys, "row n" + tag, {{kHere, g.n}, {kEast, g.n}}, same);
  add_rule(sys, "row r" + tag, {{kHere, g.r}, {kEast, g.r}}, same);
  add_rule(sys, "up n" + tag, {{kHere, g.n}, {kNorth, g.n}}, closed);
  add_rule(sys, "flip r" + tag, {{kHere, g.r}, {kHere, g.n}, {kNorth, g.n}}, flip);
  add_rule(sys, "col e" + tag, {{kHere, g.e}, {kNorth, g.e}}, same);
  add_rule(sys, "col c" + tag, {{kHere, g.c}, {kNorth, g.c}}, same);
  add_rule(sys, "right e" + tag, {{kHere, g.e}, {kEast, g.e}}, closed);
  add_rule(sys, "flip c" + tag, {{kHere, g.c}, {kHere, g.e}, {kEast, g.e}}, flip);
  // Unary halves of the flip rules; these also bind on the window rim where
  // the neighbour is missing.
  auto off = [](const int* v) { return !(v[0] && v[1]); };
  add_rule(sys, "rim r" + tag, {{kHere, g.r}, {kHere, g.n}}, off);
  add_rule(sys, "rim c" + tag, {{kHere, g.c}, {kHere, g.e}}, off);
  return g;
}

// Two marker flag groups; the zone is the closed rectangle they span.
struct Zone {
  Flags m0, m1;

  Vars vars() const {
    return {{kHere, m0.n}, {kHere, m0.e}, {kHere, m0.r}, {kHere, m0.c},
            {kHere, m1.n}, {kHere, m1.e}, {kHere, m1.r}, {kHere, m1.c}};
  }
  // Over the eight values of vars(): n0 e0 r0 c0 n1 e1 r1 c1.
  static bool inside(const int* v) {
    return (v[0] != v[4] || v[2] || v[6]) && (v[1] != v[5] || v[3] || v[7]);
  }
  static bool north_row(const int* v) { return (v[2] && (v[4] || v[6])) || (v[6] && (v[0] || v[2])); }
  static bool south_row(const int* v) { return (v[2] && !v[4]) || (v[6] && !v[0]); }
  static bool east_col(const int* v) { return (v[3] && (v[5] || v[7])) || (v[7] && (v[1] || v[3])); }
  static bool west_col(const int* v) { return (v[3] && !v[5]) || (v[7] && !v[1]); }
};

Zone add_zone(CellSystem& sys) { return {add_flags(sys, "0"), add_flags(sys, "1")}; }

// A counter layer whose flags are pinned on the zone border, which forces
// its unique r ∧ c cell to exist inside the zone.
Flags add_counter(CellSystem& sys, const Zone& z, const std::string& tag) {
  Flags g = add_flags(sys, tag);
  Vars vars = z.vars();
  vars.insert(vars.end(), {{kHere, g.n}, {kHere, g.r}, {kHere, g.e}, {kHere, g.c}});
  add_rule(sys, "pin " + tag, vars, [](const int* v) {
    if (!Zone::inside(v)) return true;
    const int n = v[8], r = v[9], e = v[10], c = v[11];
    if (Zone::north_row(v) && !(n || r)) return false;
    if (Zone::south_row(v) && n) return false;
    if (Zone::east_col(v) && !(e || c)) return false;
    if (Zone::west_col(v) && e) return false;
    return true;
  });
  vars = z.vars();
  vars.insert(vars.end(), {{kHere, g.r}, {kHere, g.c}});
  add_rule(sys, "counter in zone " + tag, vars, [](const int* v) { return !(v[8] && v[9]) || Zone::inside(v); });
  return g;
}

int append_system(CellSystem& dst, const CellSystem& src, const std::string& prefix, int gate = -1, int gate_value = 0) {
  const int offset = static_cast<int>(dst.fields.size());
  for (const auto& f : src.fields) dst.add_field(prefix + f.name, f.size);
  for (const auto& r : src.rules) {
    LocalRule copy;
    for (const auto& [off, f] : r.vars) copy.vars.emplace_back(off, f + offset);
    copy.label = prefix + r.label;
    if (gate < 0) {
      copy.allowed = r.allowed;
    } else {
      // The rule binds only where every cell it reads lies in this component.
      std::set<Vec2> cells;
      for (const auto& [off, f] : r.vars) cells.insert(off);
      const std::size_t n = r.vars.size(), m = cells.size();
      for (Vec2 c : cells) copy.vars.emplace_back(c, gate);
      auto inner = r.allowed;
      copy.allowed = [inner, n, m, gate_value](const int* v) {
        for (std::size_t i = 0; i < m; ++i)
          if (v[n + i] != gate_value) return true;
        return inner(v);
      };
    }
    dst.rules.push_back(std::move(copy));
  }
  return offset;
}

Vars cell_fields(int from, int count) {
  Vars v;
  for (int f = from; f < from + count; ++f) v.emplace_back(kHere, f);
  return v;
}

std::string digits(const CellSystem& sys, const int* v, int skip) {
  std::string s;
  for (std::size_t f = 0; f < sys.fields.size(); ++f) {
    if (static_cast<int>(f) == skip) continue;
    s += v[f] < 10 ? static_cast<char>('0' + v[f]) : static_cast<char>('a' + v[f] - 10);
  }
  return s;
}

// Enumerates every state of one cell (fields in order, first field most
// significant).
template <class F>
void for_each_state(const CellSystem& sys, std::uint64_t cap, F&& f) {
  std::uint64_t total = 1;
  for (const auto& fd : sys.fields) {
    total *= static_cast<std::uint64_t>(fd.size);
    if (total > cap) throw BudgetExceeded("cell state space exceeds the flattening cap");
  }
  std::vector<int> v(sys.fields.size(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    f(v);
    for (std::size_t k = v.size(); k-- > 0;) {
      if (++v[k] < sys.fields[k].size) break;
      v[k] = 0;
    }
  }
}

std::set<Color> image(const MarkedSFT& m, std::uint64_t cap) {
  std::set<Color> out;
  for_each_state(m.system, cap, [&](const std::vector<int>& v) { out.insert(m.proj(v.data())); });
  return out;
}

}  // namespace

std::string cell_name(const MarkedSFT& m, const int* values) {
  if (m.name) return m.name(values);
  int color_field = -1;
  for (std::size_t f = 0; f < m.system.fields.size(); ++f)
    if (m.system.fields[f].name == "color") color_field = static_cast<int>(f);
  std::string s = color_field >= 0 ? m.target.name(values[color_field]) : "s";
  std::string rest = digits(m.system, values, color_field);
  return rest.empty() ? s : s + "_" + rest;
}

MarkedSFT marked_of_flat(const FlatMarked& fm) {
  if (!(fm.proj.source() == fm.base.alphabet())) throw AlphabetMismatch("projection source differs from the base alphabet");
  MarkedSFT m;
  m.target = fm.proj.target();
  m.system = sft_system(fm.base);
  std::vector<char> in0(fm.base.alphabet().size(), 0), in1(fm.base.alphabet().size(), 0);
  for (Color c : fm.q0) in0.at(static_cast<std::size_t>(c)) = 1;
  for (Color c : fm.q1) in1.at(static_cast<std::size_t>(c)) = 1;
  m.q0 = [in0](const int* v) { return in0[static_cast<std::size_t>(v[0])] != 0; };
  m.q1 = [in1](const int* v) { return in1[static_cast<std::size_t>(v[0])] != 0; };
  m.proj = [pi = fm.proj](const int* v) { return pi(v[0]); };
  m.proj_fields = {0};
  m.marker_fields = {0};
  m.name = [a = fm.base.alphabet()](const int* v) { return a.name(v[0]); };
  return m;
}

FlatMarked flatten(const MarkedSFT& m, std::uint64_t cap) {
  const CellSystem& sys = m.system;
  // Structural single-cell rules prune the state list; forbidden patterns
  // coming from an SFT stay as patterns.
  std::vector<const LocalRule*> local;
  for (const auto& r : sys.rules) {
    bool single = std::all_of(r.vars.begin(), r.vars.end(), [](const auto& p) { return p.first == kHere; });
    if (single && r.label.find("forbid") == std::string::npos) local.push_back(&r);
  }
  std::vector<std::vector<int>> states;
  std::vector<int> buf;
  for_each_state(sys, cap, [&](const std::vector<int>& v) {
    for (const LocalRule* r : local) {
      buf.clear();
      for (const auto& [off, f] : r->vars) buf.push_back(v[static_cast<std::size_t>(f)]);
      if (!r->allowed(buf.data())) return;
    }
    states.push_back(v);
  });

  std::vector<std::string> names;
  std::vector<Color> q0, q1, assignment;
  for (std::size_t i = 0; i < states.size(); ++i) {
    names.push_back(cell_name(m, states[i].data()));
    if (m.q0(states[i].data())) q0.push_back(static_cast<Color>(i));
    if (m.q1(states[i].data())) q1.push_back(static_cast<Color>(i));
    assignment.push_back(m.proj(states[i].data()));
  }
  Alphabet alphabet(names);

  std::vector<Pattern> forbidden;
  const std::uint64_t n = states.size();
  for (const auto& r : sys.rules) {
    bool pruned = std::find(local.begin(), local.end(), &r) != local.end();
    if (pruned) continue;
    std::vector<Vec2> cells;
    for (const auto& [off, f] : r.vars)
      if (std::find(cells.begin(), cells.end(), off) == cells.end()) cells.push_back(off);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      total *= n;
      if (total > cap) throw BudgetExceeded("rule tuple space exceeds the flattening cap");
    }
    std::vector<std::size_t> slot;
    for (const auto& [off, f] : r.vars)
      slot.push_back(static_cast<std::size_t>(std::find(cells.begin(), cells.end(), off) - cells.begin()));
    std::vector<std::uint64_t> tuple(cells.size(), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      buf.clear();
      for (std::size_t i = 0; i < r.vars.size(); ++i)
        buf.push_back(states[tuple[slot[i]]][static_cast<std::size_t>(r.vars[i].second)]);
      if (!r.allowed(buf.data())) {
        Pattern p(alphabet);
        for (std::size_t i = 0; i < cells.size(); ++i) p.set(cells[i], static_cast<Color>(tuple[i]));
        forbidden.push_back(std::move(p));
      }
      for (std::size_t k = tuple.size(); k-- > 0;) {
        if (++tuple[k] < n) break;
        tuple[k] = 0;
      }
    }
  }
  return FlatMarked{SFT(alphabet, std::move(forbidden)), std::move(q0), std::move(q1),
                    ProjectionMap(alphabet, m.target, std::move(assignment))};
}

MarkedSFT counting_marked_sft(const Pattern& p, int k, CountMode mode) {
  if (p.empty()) throw InvalidArgument("counted pattern must be non-empty");
  if (k < 0) throw InvalidArgument("k must be non-negative");
  MarkedSFT m;
  m.target = p.alphabet();
  CellSystem& sys = m.system;
  const int color = sys.add_field("color", static_cast<int>(m.target.size()));
  const Zone zone = add_zone(sys);
  std::vector<Flags> counters;
  for (int i = 1; i <= k; ++i) counters.push_back(add_counter(sys, zone, "k" + std::to_string(i)));

  // Occurrence of p anchored at its south-west corner.
  const Pattern canon = canonicalize(p).first;
  Vars occ;
  std::vector<Color> want;
  for (const auto& [z, c] : canon.cells()) occ.emplace_back(z, color), want.push_back(c);
  auto occurs = [want](const int* v) {
    for (std::size_t i = 0; i < want.size(); ++i)
      if (v[i] != want[i]) return false;
    return true;
  };
  const std::size_t np = want.size();

  for (std::size_t i = 0; i < counters.size(); ++i) {
    Vars vars{{kHere, counters[i].r}, {kHere, counters[i].c}};
    vars.insert(vars.end(), occ.begin(), occ.end());
    add_rule(sys, "counter on occurrence", vars, [occurs](const int* v) { return !(v[0] && v[1]) || occurs(v + 2); });
    for (std::size_t j = i + 1; j < counters.size(); ++j)
      add_rule(sys, "counters distinct",
               {{kHere, counters[i].r}, {kHere, counters[i].c}, {kHere, counters[j].r}, {kHere, counters[j].c}},
               [](const int* v) { return !(v[0] && v[1] && v[2] && v[3]); });
  }
  if (!(mode == CountMode::AtLeast && k == 0)) {
    Vars vars = zone.vars();
    vars.insert(vars.end(), occ.begin(), occ.end());
    for (const auto& g : counters) vars.insert(vars.end(), {{kHere, g.r}, {kHere, g.c}});
    add_rule(sys, "covering", vars, [occurs, np, k](const int* v) {
      if (!Zone::inside(v) || !occurs(v + 8)) return true;
      const int* c = v + 8 + np;
      for (int i = 0; i < k; ++i)
        if (c[2 * i] && c[2 * i + 1]) return true;
      return false;
    });
  }
  if (mode == CountMode::Exact) {
    Vars vars = zone.vars();
    vars.insert(vars.end(), occ.begin(), occ.end());
    add_rule(sys, "occurrence in zone", vars, [occurs](const int* v) { return !occurs(v + 8) || Zone::inside(v); });
  }

  m.q0 = [g = zone.m0](const int* v) { return v[g.r] && v[g.c]; };
  m.q1 = [g = zone.m1](const int* v) { return v[g.r] && v[g.c]; };
  m.proj = [color](const int* v) { return v[color]; };
  m.proj_fields = {color};
  m.marker_fields = {zone.m0.r, zone.m0.c, zone.m1.r, zone.m1.c};
  return m;
}

MarkedSFT union_marked(const MarkedSFT& a, const MarkedSFT& b) {
  if (!(a.target == b.target)) throw AlphabetMismatch("union needs a common target alphabet");
  MarkedSFT m;
  m.target = a.target;
  CellSystem& sys = m.system;
  const int side = sys.add_field("side", 2);
  const int oa = append_system(sys, a.system, "a.", side, 0);
  const int ob = append_system(sys, b.system, "b.", side, 1);
  const int na = static_cast<int>(a.system.fields.size()), nb = static_cast<int>(b.system.fields.size());

  auto same = [](const int* v) { return v[0] == v[1]; };
  add_rule(sys, "side east", {{kHere, side}, {kEast, side}}, same);
  add_rule(sys, "side north", {{kHere, side}, {kNorth, side}}, same);
  // Fields of the inactive component are pinned to 0, one rule per field so
  // that a partial search prunes early.
  for (int f = 0; f < na + nb; ++f) {
    const int owner = f < na ? 0 : 1;
    add_rule(sys, "inactive", {{kHere, side}, {kHere, oa + f}},
             [owner](const int* v) { return v[0] == owner || v[1] == 0; });
  }

  auto pick = [side, oa, ob](const CellPredicate& pa, const CellPredicate& pb) -> CellPredicate {
    return [=](const int* v) { return v[side] == 0 ? pa(v + oa) : pb(v + ob); };
  };
  m.q0 = pick(a.q0, b.q0);
  m.q1 = pick(a.q1, b.q1);
  m.proj = [side, oa, ob, pa = a.proj, pb = b.proj](const int* v) { return v[side] == 0 ? pa(v + oa) : pb(v + ob); };
  m.proj_fields = {side};
  for (int f : a.proj_fields) m.proj_fields.push_back(oa + f);
  for (int f : b.proj_fields) m.proj_fields.push_back(ob + f);
  if (!a.marker_fields.empty() && !b.marker_fields.empty()) {
    m.marker_fields = {side};
    for (int f : a.marker_fields) m.marker_fields.push_back(oa + f);
    for (int f : b.marker_fields) m.marker_fields.push_back(ob + f);
  }
  MarkedSFT ca = a, cb = b;
  m.name = [side, oa, ob, ca, cb](const int* v) {
    return v[side] == 0 ? cell_name(ca, v + oa) + "_l" : cell_name(cb, v + ob) + "_r";
  };
  return m;
}

MarkedSFT intersect_marked(const MarkedSFT& a, const MarkedSFT& b) {
  if (!(a.target == b.target)) throw AlphabetMismatch("intersection needs a common target alphabet");
  {
    // Only decidable cheaply for small state spaces; large layered systems
    // skip the check.
    try {
      auto ia = image(a, 1u << 16), ib = image(b, 1u << 16);
      bool meet = std::any_of(ia.begin(), ia.end(), [&](Color c) { return ib.count(c) != 0; });
      if (!meet) throw InvalidArgument("empty fiber product: the projections are disjoint");
    } catch (const BudgetExceeded&) {
    }
  }
  MarkedSFT m;
  m.target = a.target;
  CellSystem& sys = m.system;
  const int na = static_cast<int>(a.system.fields.size()), nb = static_cast<int>(b.system.fields.size());
  const int oa = append_system(sys, a.system, "a.");
  const int ob = append_system(sys, b.system, "b.");
  add_rule(sys, "fiber", cell_fields(oa, na + nb),
           [pa = a.proj, pb = b.proj, na](const int* v) { return pa(v) == pb(v + na); });

  const Zone zone = add_zone(sys);
  struct Need {
    CellPredicate q;
    int offset, count;
    const char* tag;
  };
  const Need needs[] = {{a.q0, oa, na, "a0"}, {a.q1, oa, na, "a1"}, {b.q0, ob, nb, "b0"}, {b.q1, ob, nb, "b1"}};
  for (const auto& need : needs) {
    Flags g = add_counter(sys, zone, need.tag);
    Vars vars{{kHere, g.r}, {kHere, g.c}};
    for (const auto& v : cell_fields(need.offset, need.count)) vars.push_back(v);
    add_rule(sys, std::string("witness ") + need.tag, vars,
             [q = need.q](const int* v) { return !(v[0] && v[1]) || q(v + 2); });
  }
  m.q0 = [g = zone.m0](const int* v) { return v[g.r] && v[g.c]; };
  m.q1 = [g = zone.m1](const int* v) { return v[g.r] && v[g.c]; };
  m.proj = [oa, pa = a.proj](const int* v) { return pa(v + oa); };
  for (int f : a.proj_fields) m.proj_fields.push_back(oa + f);
  m.marker_fields = {zone.m0.r, zone.m0.c, zone.m1.r, zone.m1.c};
  MarkedSFT ca = a, cb = b;
  const int total = static_cast<int>(sys.fields.size());
  m.name = [oa, ob, ca, cb, zone_first = zone.m0.n, total](const int* v) {
    std::string s = cell_name(ca, v + oa) + "_x_" + cell_name(cb, v + ob) + "_";
    for (int f = zone_first; f < total; ++f) s += static_cast<char>('0' + v[f]);
    return s;
  };
  return m;
}

Formula emso_of_marked(const MarkedSFT& m, std::uint64_t cap) {
  FlatMarked fm = flatten(m, cap);
  const Alphabet& q = fm.base.alphabet();
  auto some = [&](const std::vector<Color>& colors, const std::string& v) {
    std::vector<Expr> alts;
    for (Color c : colors) alts.push_back(color(q.name(c), var(v)));
    return exists(v, or_(std::move(alts)));
  };
  Formula sft = formula_of_sft(fm.base);
  Formula marked{and_({sft.root, some(fm.q0, "u"), some(fm.q1, "v")}), Mode::Functional};
  return prop1_backward(marked, fm.proj);
}

FlatMarked parse_marked(std::string_view text) {
  std::string rest;
  std::optional<std::string> q0, q1;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0, q0_line = 0, q1_line = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = line.substr(line.find_first_not_of(" \t") == std::string::npos ? line.size()
                                                                                  : line.find_first_not_of(" \t"));
    if (t.rfind("q0:", 0) == 0) {
      q0 = t.substr(3), q0_line = number;
      rest += "#\n";
    } else if (t.rfind("q1:", 0) == 0) {
      q1 = t.substr(3), q1_line = number;
      rest += "#\n";
    } else {
      rest += line + "\n";
    }
  }
  if (!q0 || !q1) throw FormatError("marked SFT needs 'q0:' and 'q1:' lines");
  SoficPresentation s = parse_sofic(rest);
  auto colors = [&](const std::string& list, int at) {
    std::vector<Color> out;
    std::istringstream ss(list);
    std::string name;
    while (ss >> name) {
      auto c = s.base.alphabet().index_of(name);
      if (!c) throw FormatError("unknown marker color '" + name + "'", at, 1);
      out.push_back(*c);
    }
    if (out.empty()) throw FormatError("marker set must be non-empty", at, 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return FlatMarked{s.base, colors(*q0, q0_line), colors(*q1, q1_line), s.proj};
}

std::string format_marked(const FlatMarked& m) {
  std::string out = format_sofic(SoficPresentation(m.base, m.proj));
  auto list = [&](const char* key, const std::vector<Color>& cs) {
    out += key;
    for (Color c : cs) out += " " + m.base.alphabet().name(c);
    out += "\n";
  };
  list("q0:", m.q0);
  list("q1:", m.q1);
  return out;
}

std::string describe(const MarkedSFT& m) {
  std::ostringstream out;
  out << "target:";
  for (const auto& n : m.target.names()) out << ' ' << n;
  out << "\nfields:";
  for (const auto& f : m.system.fields) out << ' ' << f.name << '/' << f.size;
  std::map<std::string, int> labels;
  for (const auto& r : m.system.rules) ++labels[r.label];
  out << "\nrules: " << m.system.rules.size() << '\n';
  for (const auto& [l, n] : labels) out << "  " << l << (n > 1 ? " x" + std::to_string(n) : "") << '\n';
  return out.str();
}

}  // namespace tesselogic
