#include "tesselogic/solve.hpp"

#include <algorithm>
#include <functional>

#include "tesselogic/error.hpp"
#include "tesselogic/local_rules.hpp"

namespace tesselogic {

namespace {

std::vector<Vec2> domain_of(const Pattern& p) {
  std::vector<Vec2> d;
  for (const auto& [z, c] : p.cells()) d.push_back(z);
  return d;
}

std::vector<Vec2> common_domain(const PatternSet& s, const std::optional<std::vector<Vec2>>& given) {
  std::optional<std::vector<Vec2>> dom;
  if (given) {
    dom = *given;
    std::sort(dom->begin(), dom->end(), RowMajorLess{});
  }
  for (const auto& p : s) {
    auto d = domain_of(p);
    if (!dom)
      dom = d;
    else if (*dom != d)
      throw InvalidArgument("patterns do not share one domain");
  }
  if (!dom) throw InvalidArgument("domain unknown for an empty pattern set");
  return *dom;
}

void guard(std::size_t colors, std::size_t cells) {
  double n = 1;
  for (std::size_t i = 0; i < cells; ++i) n *= static_cast<double>(colors);
  if (n > static_cast<double>(1u << 30)) throw BudgetExceeded("window enumeration exceeds 2^30 candidates");
}

}  // namespace

std::vector<Vec2> window_domain(int w, int h) {
  std::vector<Vec2> d;
  for (int y = h - 1; y >= 0; --y)
    for (int x = 0; x < w; ++x) d.push_back({x, y});
  return d;
}

std::vector<PeriodicConfig> torus_solutions(const SFT& s, int w, int h, std::optional<std::size_t> limit) {
  const Vec2 ext = s.extent();
  if (w < ext.x || h < ext.y) throw InvalidArgument("torus smaller than a forbidden pattern");
  CellSystem sys = sft_system(s);
  RuleSearch search(sys, w, h, true);
  std::vector<PeriodicConfig> out;
  if (limit && *limit == 0) return out;
  search.run([&](const std::vector<int>& v) {
    std::vector<Color> fund(static_cast<std::size_t>(w * h));
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) fund[static_cast<std::size_t>(y * w + x)] = v[static_cast<std::size_t>(search.cell_index({x, y}))];
    out.emplace_back(s.alphabet(), w, h, std::move(fund));
    return !limit || out.size() < *limit;
  });
  return out;
}

PatternSet admissible_patterns(const SFT& s, const WindowSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0 || spec.margin < 0) throw InvalidArgument("bad window specification");
  guard(s.alphabet().size(), static_cast<std::size_t>(spec.width * spec.height));
  const int m = spec.margin;
  CellSystem sys = sft_system(s);
  RuleSearch search(sys, spec.width + 2 * m, spec.height + 2 * m, false);
  // Window cells first, so each window coloring is reported once.
  std::vector<int> order, rest;
  for (int i = 0; i < search.cell_count(); ++i) {
    Vec2 z = search.cell_at(i);
    bool inside = z.x >= m && z.x < m + spec.width && z.y >= m && z.y < m + spec.height;
    (inside ? order : rest).push_back(i);
  }
  const int window_cells = static_cast<int>(order.size());
  order.insert(order.end(), rest.begin(), rest.end());
  search.set_order(order);

  PatternSet out;
  search.run(
      [&](const std::vector<int>& v) {
        Pattern p(s.alphabet());
        for (int k = 0; k < window_cells; ++k) {
          int i = order[static_cast<std::size_t>(k)];
          p.set(search.cell_at(i) - Vec2{m, m}, v[static_cast<std::size_t>(i)]);
        }
        out.insert(std::move(p));
        return true;
      },
      window_cells);
  return out;
}

PatternSet projected_admissible(const SoficPresentation& s, const WindowSpec& spec) {
  return e_operator(s.proj, admissible_patterns(s.base, spec), window_domain(spec.width, spec.height));
}

PatternSet forbidden_language(const SFT& s, const WindowSpec& spec) {
  return complement(admissible_patterns(s, spec), s.alphabet(), window_domain(spec.width, spec.height));
}

PatternSet forbidden_language(const SoficPresentation& s, const WindowSpec& spec) {
  return complement(projected_admissible(s, spec), s.proj.target(), window_domain(spec.width, spec.height));
}

PatternSet all_colorings(const Alphabet& a, const std::vector<Vec2>& domain) {
  guard(a.size(), domain.size());
  PatternSet out;
  std::vector<Color> c(domain.size(), 0);
  const int q = static_cast<int>(a.size());
  if (q == 0 && !domain.empty()) return out;
  while (true) {
    Pattern p(a);
    for (std::size_t i = 0; i < domain.size(); ++i) p.set(domain[i], c[i]);
    out.insert(std::move(p));
    std::size_t k = c.size();
    while (k > 0 && ++c[k - 1] == q) c[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

PatternSet complement(const PatternSet& s, const Alphabet& a, const std::vector<Vec2>& domain) {
  PatternSet out;
  for (const auto& p : all_colorings(a, domain))
    if (!s.count(p)) out.insert(p);
  return out;
}

PatternSet e_operator(const ProjectionMap& pi, const PatternSet& s, std::optional<std::vector<Vec2>> domain) {
  if (s.empty()) return {};
  common_domain(s, domain);
  PatternSet out;
  for (const auto& p : s) {
    if (!(p.alphabet() == pi.source())) throw AlphabetMismatch("pattern alphabet differs from the projection source");
    out.insert(apply_projection(pi, p));
  }
  return out;
}

PatternSet a_operator(const ProjectionMap& pi, const PatternSet& s, std::optional<std::vector<Vec2>> domain) {
  const std::vector<Vec2> dom = common_domain(s, domain);
  for (const auto& p : s)
    if (!(p.alphabet() == pi.source())) throw AlphabetMismatch("pattern alphabet differs from the projection source");
  PatternSet out;
  for (const auto& t : all_colorings(pi.target(), dom)) {
    // Every preimage of t must lie in s.
    Pattern pre(pi.source());
    std::function<bool(std::size_t)> all_in = [&](std::size_t i) {
      if (i == dom.size()) return s.count(pre) != 0;
      for (Color c : pi.preimage(*t.at(dom[i]))) {
        pre.set(dom[i], c);
        if (!all_in(i + 1)) return false;
      }
      return true;
    };
    if (all_in(0)) out.insert(t);
  }
  return out;
}

void visit_marked_solutions(const MarkedSFT& m, int w, int h,
                            const std::function<bool(const MarkedSolution&)>& visit) {
  const Rect ext = m.system.rule_extent();
  if (w < ext.width || h < ext.height) throw InvalidArgument("window smaller than a rule neighbourhood");
  RuleSearch search(m.system, w, h, false);
  const std::size_t fields = m.system.fields.size();
  search.run([&](const std::vector<int>& v) {
    bool has0 = false, has1 = false;
    for (int i = 0; i < search.cell_count(); ++i) {
      const int* cell = v.data() + static_cast<std::size_t>(i) * fields;
      has0 = has0 || m.q0(cell);
      has1 = has1 || m.q1(cell);
    }
    if (!has0 || !has1) return true;
    MarkedSolution sol{{}, Pattern(m.target)};
    for (int i = 0; i < search.cell_count(); ++i) {
      auto first = v.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * fields);
      sol.cells.emplace_back(first, first + static_cast<std::ptrdiff_t>(fields));
      sol.projected.set(search.cell_at(i), m.proj(sol.cells.back().data()));
    }
    return visit(sol);
  });
}

std::vector<MarkedSolution> marked_solutions(const MarkedSFT& m, int w, int h, std::optional<std::size_t> limit) {
  std::vector<MarkedSolution> out;
  if (limit && *limit == 0) return out;
  visit_marked_solutions(m, w, h, [&](const MarkedSolution& s) {
    out.push_back(s);
    return !limit || out.size() < *limit;
  });
  return out;
}

PatternSet projected_marked_windows(const MarkedSFT& m, int w, int h) {
  PatternSet out;
  if (m.proj_fields.empty()) {
    visit_marked_solutions(m, w, h, [&](const MarkedSolution& s) {
      out.insert(s.projected);
      return true;
    });
    return out;
  }
  const Rect ext = m.system.rule_extent();
  if (w < ext.width || h < ext.height) throw InvalidArgument("window smaller than a rule neighbourhood");
  RuleSearch search(m.system, w, h, false);
  const int fields = static_cast<int>(m.system.fields.size());
  std::vector<char> is_proj(static_cast<std::size_t>(fields), 0);
  for (int f : m.proj_fields) is_proj.at(static_cast<std::size_t>(f)) = 1;
  std::vector<int> order;
  for (int i = 0; i < search.cell_count(); ++i)
    for (int f : m.proj_fields) order.push_back(i * fields + f);
  const std::size_t prefix = order.size();
  for (int i = 0; i < search.cell_count(); ++i)
    for (int f = 0; f < fields; ++f)
      if (!is_proj[static_cast<std::size_t>(f)]) order.push_back(i * fields + f);
  search.set_variable_order(order);

  auto project = [&](const std::vector<int>& v) {
    Pattern p(m.target);
    for (int i = 0; i < search.cell_count(); ++i)
      p.set(search.cell_at(i), m.proj(v.data() + static_cast<std::size_t>(i * fields)));
    return p;
  };
  // Projections are read from the prefix alone, so known ones are skipped.
  search.set_prefix_filter([&](const std::vector<int>& v) { return out.count(project(v)) == 0; });
  // Split on the first q0 cell and the first q1 cell in row-major order;
  // the marker requirement then prunes like any other cell constraint.
  const int n = search.cell_count();
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1) {
      for (int c = 0; c < n; ++c) {
        if (c > i0 && c > i1) break;
        search.set_cell_check(c, m.marker_fields, [&m, c, i0, i1](const int* v) {
          if (c <= i0 && m.q0(v) != (c == i0)) return false;
          if (c <= i1 && m.q1(v) != (c == i1)) return false;
          return true;
        });
      }
      search.search(
          [&](const std::vector<int>& v) {
            out.insert(project(v));
            return RuleSearch::Verdict::Accept;
          },
          prefix);
      search.clear_cell_checks();
    }
  return out;
}

}  // namespace tesselogic
