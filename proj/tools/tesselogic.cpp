// tesselogic: command-line front end.
//
// Exit status: 0 success / true, 1 false / refuted / no solution,
// 2 usage or format error, 3 search budget exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/eval.hpp"
#include "tesselogic/hanf.hpp"
#include "tesselogic/logic.hpp"
#include "tesselogic/marked.hpp"
#include "tesselogic/render.hpp"
#include "tesselogic/solve.hpp"
#include "tesselogic/text_io.hpp"
#include "tesselogic/translate.hpp"

using namespace tesselogic;

namespace {

enum Status { kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string expr, formula_file, alphabet, sft_file, config_file, pattern_file, other_file, marked_file;
  std::string project, target, palette, format = "text", form = "fo", mode = "exact", output;
  int k = 1, n = 1, w = 0, h = 0, margin = 0, radius = 1;
  std::size_t limit = 0;
  int budget_bits = -1;
  bool simplify = false;
};

class Usage : public Error {
 public:
  using Error::Error;
};

Options opt;

void emit(const std::string& text) {
  if (opt.output.empty())
    std::cout << text;
  else
    write_file(opt.output, text);
}

Budget budget() {
  Budget b;
  if (const char* env = std::getenv("TESSELOGIC_BUDGET_BITS")) b.max_subset_bits = std::atoi(env);
  if (opt.budget_bits >= 0) b.max_subset_bits = opt.budget_bits;
  return b;
}

std::optional<Alphabet> alphabet_opt() {
  if (opt.alphabet.empty()) return std::nullopt;
  return parse_alphabet(opt.alphabet);
}

Alphabet alphabet_req() {
  auto a = alphabet_opt();
  if (!a) throw Usage("--alphabet is required");
  return *a;
}

Formula formula(std::optional<Alphabet> a = std::nullopt) {
  if (!a) a = alphabet_opt();
  if (!opt.expr.empty() && !opt.formula_file.empty()) throw Usage("give either --expr or --formula");
  if (!opt.expr.empty()) return parse_formula(opt.expr, a);
  if (!opt.formula_file.empty()) return parse_formula(read_file(opt.formula_file), a);
  throw Usage("a formula is required (--expr or --formula)");
}

std::string required(const std::string& value, const char* flag) {
  if (value.empty()) throw Usage(std::string(flag) + " is required");
  return value;
}

bool is_sofic_text(const std::string& text) { return text.find("project:") != std::string::npos; }

void need_window() {
  if (opt.w <= 0 || opt.h <= 0) throw Usage("-w and -h must be positive");
}

std::optional<std::size_t> limit() { return opt.limit ? std::optional<std::size_t>(opt.limit) : std::nullopt; }

CountMode count_mode(const std::string& m) {
  if (m == "exact") return CountMode::Exact;
  if (m == "atleast") return CountMode::AtLeast;
  throw Usage("mode must be exact or atleast");
}

std::string pattern_block(const Pattern& p) {
  std::string s = format_pattern(p);
  return s.substr(s.find('\n') + 1);
}

// ---------------------------------------------------------------------------

int cmd_parse() {
  emit(to_string(formula()) + "\n");
  return kTrue;
}

int cmd_classify() {
  std::string out;
  for (const auto& n : classify(formula()).names()) out += n + "\n";
  emit(out);
  return kTrue;
}

int cmd_compile(const std::string& what) {
  if (what == "sft") {
    emit(format_sft(sft_of_universal(formula(alphabet_req()), alphabet_req())));
  } else if (what == "sofic") {
    emit(format_sofic(sofic_of_cform(formula(alphabet_req()), alphabet_req())));
  } else if (what == "formula") {
    std::string text = read_file(required(opt.sft_file, "--sft"));
    Formula f = is_sofic_text(text) ? formula_of_sofic(parse_sofic(text)) : formula_of_sft(parse_sft(text));
    emit(to_string(f) + "\n");
  } else if (what == "cform") {
    std::string text = read_file(required(opt.sft_file, "--sft"));
    SoficPresentation s = is_sofic_text(text) ? parse_sofic(text)
                                              : [&] {
                                                  SFT base = parse_sft(text);
                                                  return SoficPresentation(base, ProjectionMap::identity(base.alphabet()));
                                                }();
    emit(to_string(formula_of_sofic(s)) + "\n");
  }
  return kTrue;
}

int cmd_eliminate() {
  emit(to_string(eliminate_so_universal(formula(), opt.simplify)) + "\n");
  return kTrue;
}

int cmd_counting(const std::string& kind) {
  Pattern p = parse_pattern(read_file(required(opt.pattern_file, "--pattern")));
  if (kind == "atmost") {
    if (opt.form == "fo")
      emit(to_string(formula_atmost(p, opt.k)) + "\n");
    else if (opt.form == "sofic" || opt.form == "emso")
      emit(to_string(soficform_atmost(p, opt.k)) + "\n");
    else
      throw Usage("atmost supports --form fo, emso or sofic");
    return kTrue;
  }
  CountMode mode = kind == "exact" ? CountMode::Exact : CountMode::AtLeast;
  if (opt.form == "emso") {
    emit(to_string(formula_count(p, opt.k, mode)) + "\n");
  } else if (opt.form == "marked") {
    MarkedSFT m = counting_marked_sft(p, opt.k, mode);
    emit(describe(m));
  } else {
    throw Usage(kind + " supports --form emso or marked");
  }
  return kTrue;
}

int cmd_check(const std::string& what) {
  if (what == "pattern") {
    Pattern p = parse_pattern(read_file(required(opt.pattern_file, "--pattern")));
    Formula f = formula(p.alphabet());
    Formula rel = f.mode == Mode::Functional ? to_relational(prenex(f)) : f;
    bool v = eval_pattern(rel, p, budget());
    emit(v ? "true\n" : "false\n");
    return v ? kTrue : kFalse;
  }
  PeriodicConfig c = parse_config(read_file(required(opt.config_file, "--config")));
  if (what == "periodic") {
    bool v;
    if (!opt.sft_file.empty() && opt.expr.empty() && opt.formula_file.empty()) {
      v = sft_membership(parse_sft(read_file(opt.sft_file)), c);
    } else {
      Formula f = formula(c.alphabet());
      if (classify(f).universal_fo) {
        v = eval_universal_periodic(f, c, budget());
      } else {
        std::cerr << "note: not universal first-order; evaluated on the fundamental torus\n";
        v = eval_torus(f, c, budget());
      }
    }
    emit(v ? "true\n" : "false\n");
    return v ? kTrue : kFalse;
  }
  CheckVerdict v = pattern_check(formula(c.alphabet()), c, opt.radius, budget());
  std::string out = v.refuted() ? "refuted at radius " + std::to_string(v.radius) + "\n"
                                : "consistent up to radius " + std::to_string(v.radius) + "\n";
  if (v.witness) out += pattern_block(*v.witness);
  emit(out);
  return v.refuted() ? kFalse : kTrue;
}

int cmd_solve(const std::string& what) {
  need_window();
  std::string out;
  std::size_t count = 0;
  if (what == "torus") {
    SFT s = parse_sft(read_file(required(opt.sft_file, "--sft")));
    auto sols = torus_solutions(s, opt.w, opt.h, limit());
    count = sols.size();
    out = std::to_string(count) + " solution(s)\n";
    for (const auto& c : sols) out += "\n" + format_config(c);
  } else {
    MarkedSFT m = !opt.marked_file.empty()
                      ? marked_of_flat(parse_marked(read_file(opt.marked_file)))
                      : counting_marked_sft(parse_pattern(read_file(required(opt.pattern_file, "--pattern"))), opt.k,
                                            count_mode(opt.mode));
    auto sols = marked_solutions(m, opt.w, opt.h, limit());
    count = sols.size();
    out = std::to_string(count) + " solution(s)\n";
    for (const auto& s : sols) out += "\n" + pattern_block(s.projected);
  }
  emit(out);
  return count ? kTrue : kFalse;
}

int cmd_lang(const std::string& what) {
  need_window();
  std::string text = read_file(required(opt.sft_file, "--sft"));
  WindowSpec spec{opt.w, opt.h, opt.margin};
  PatternSet set;
  Alphabet a;
  if (is_sofic_text(text)) {
    SoficPresentation s = parse_sofic(text);
    a = s.proj.target();
    set = what == "admissible" ? projected_admissible(s, spec) : forbidden_language(s, spec);
  } else {
    SFT s = parse_sft(text);
    a = s.alphabet();
    set = what == "admissible" ? admissible_patterns(s, spec) : forbidden_language(s, spec);
  }
  emit("# " + std::to_string(set.size()) + " pattern(s)\n" + format_pattern_set(set, a));
  return kTrue;
}

int cmd_hanf(const std::string& what) {
  if (what == "ball") {
    emit(std::to_string(ball_size(opt.n)) + "\n");
    return kTrue;
  }
  if (what == "bound") {
    HanfBound b = universal_bound(formula());
    emit("quantifiers " + std::to_string(b.quantifiers) + "\nradius " + std::to_string(b.radius) + "\nthreshold " +
         std::to_string(b.threshold) + "\n");
    return kTrue;
  }
  Grid left = parse_grid(read_file(required(opt.pattern_file, "--pattern")));
  Grid right = parse_grid(read_file(required(opt.other_file, "--other")));
  bool ge_lr, ge_rl, eq;
  if (left.index() != right.index()) throw Usage("compare needs two patterns or two periodic configurations");
  if (auto* l = std::get_if<Pattern>(&left)) {
    const auto& r = std::get<Pattern>(right);
    ge_lr = ge_nk(*l, r, opt.n, opt.k), ge_rl = ge_nk(r, *l, opt.n, opt.k), eq = equiv_nk(*l, r, opt.n, opt.k);
  } else {
    const auto& l2 = std::get<PeriodicConfig>(left);
    const auto& r = std::get<PeriodicConfig>(right);
    ge_lr = ge_nk(l2, r, opt.n, opt.k), ge_rl = ge_nk(r, l2, opt.n, opt.k), eq = equiv_nk(l2, r, opt.n, opt.k);
  }
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  emit("left>=right " + b(ge_lr) + "\nright>=left " + b(ge_rl) + "\nequivalent " + b(eq) + "\n");
  return eq ? kTrue : kFalse;
}

int cmd_ea(const std::string& what) {
  PatternSet s = parse_pattern_set(read_file(required(opt.pattern_file, "--pattern")));
  if (s.empty()) throw Usage("pattern set is empty; its domain is unknown");
  const Alphabet source = s.begin()->alphabet();
  std::optional<Alphabet> target;
  if (!opt.target.empty()) target = parse_alphabet(opt.target);
  ProjectionMap pi = parse_projection(required(opt.project, "--project"), source, target ? &*target : nullptr);
  PatternSet out = what == "e" ? e_operator(pi, s) : a_operator(pi, s);
  emit("# " + std::to_string(out.size()) + " pattern(s)\n" + format_pattern_set(out, pi.target()));
  return kTrue;
}

int cmd_render() {
  Grid g = !opt.config_file.empty() ? Grid(parse_config(read_file(opt.config_file)))
                                    : Grid(parse_pattern(read_file(required(opt.pattern_file, "--pattern or --config"))));
  RenderFormat fmt = parse_render_format(opt.format);
  std::optional<Palette> pal;
  if (!opt.palette.empty()) pal = parse_palette(opt.palette);
  emit(render(g, fmt, pal ? &*pal : nullptr));
  return kTrue;
}

// ---------------------------------------------------------------------------

CLI::App* sub(CLI::App& parent, const std::string& name, const std::string& help) {
  CLI::App* s = parent.add_subcommand(name, help);
  s->set_help_flag("--help", "Print this help message and exit");
  return s;
}

void formula_opts(CLI::App* s) {
  s->add_option("--expr", opt.expr, "Formula text");
  s->add_option("--formula", opt.formula_file, "File holding the formula");
  s->add_option("--alphabet", opt.alphabet, "Colors, e.g. \"D L\"");
  s->add_option("--budget-bits", opt.budget_bits, "Largest universe for set-quantifier enumeration");
}

void window_opts(CLI::App* s) {
  // -h is a dimension here; help is --help only.
  s->add_option("-w", opt.w, "Window width");
  s->add_option("-h", opt.h, "Window height");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic and two-dimensional subshifts: compile, check, solve."};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o", opt.output, "Write the result to FILE");

  std::function<int()> run;
  auto leaf = [&](CLI::App& parent, const std::string& name, const std::string& help, std::function<int()> f) {
    CLI::App* s = sub(parent, name, help);
    s->callback([&run, f] { run = f; });
    s->fallthrough();
    return s;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = sub(app, name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };

  formula_opts(leaf(app, "parse", "Parse and print a formula", cmd_parse));
  formula_opts(leaf(app, "classify", "List the fragments a formula belongs to", cmd_classify));

  CLI::App* compile = group("compile", "Translate between formulas and presentations");
  for (const char* what : {"sft", "formula", "sofic", "cform"}) {
    std::string w = what;
    CLI::App* s = leaf(*compile, w,
                       w == "sft"       ? "Single-variable universal formula -> SFT"
                       : w == "sofic"   ? "C-form formula -> sofic presentation"
                       : w == "formula" ? "SFT or sofic file -> formula"
                                        : "SFT or sofic file -> C-form formula",
                       [w] { return cmd_compile(w); });
    formula_opts(s);
    s->add_option("--sft", opt.sft_file, "SFT or sofic presentation file");
  }

  CLI::App* elim = leaf(app, "eliminate", "Eliminate universal set quantifiers", cmd_eliminate);
  formula_opts(elim);
  elim->add_flag("--simplify", opt.simplify, "Fold boolean constants in the result");

  CLI::App* counting = group("counting", "Pattern-counting formulas and tilesets");
  for (const char* kind : {"atmost", "exact", "atleast"}) {
    std::string k = kind;
    CLI::App* s = leaf(*counting, k, "Sets with " + k + " k occurrences of a pattern", [k] { return cmd_counting(k); });
    s->add_option("--pattern", opt.pattern_file, "Pattern file")->required();
    s->add_option("-k", opt.k, "Occurrence count")->check(CLI::NonNegativeNumber);
    s->add_option("--form", opt.form, "fo, emso, sofic or marked")
        ->check(CLI::IsMember({"fo", "emso", "sofic", "marked"}));
  }

  CLI::App* check = group("check", "Model checking");
  CLI::App* cp = leaf(*check, "pattern", "Evaluate on a finite pattern (relational semantics)", [] { return cmd_check("pattern"); });
  formula_opts(cp);
  cp->add_option("--pattern", opt.pattern_file, "Pattern file");
  CLI::App* cper = leaf(*check, "periodic", "Evaluate on a periodic configuration", [] { return cmd_check("periodic"); });
  formula_opts(cper);
  cper->add_option("--config", opt.config_file, "Periodic configuration file");
  cper->add_option("--sft", opt.sft_file, "Check SFT membership instead of a formula");
  CLI::App* cup = leaf(*check, "patterns-up-to", "Refute via square sub-patterns up to a radius",
                       [] { return cmd_check("patterns-up-to"); });
  formula_opts(cup);
  cup->add_option("--config", opt.config_file, "Periodic configuration file");
  cup->add_option("--radius", opt.radius, "Largest radius")->check(CLI::NonNegativeNumber);

  CLI::App* solve = group("solve", "Backtracking search");
  CLI::App* st = leaf(*solve, "torus", "Toroidal solutions of an SFT", [] { return cmd_solve("torus"); });
  st->add_option("--sft", opt.sft_file, "SFT file");
  window_opts(st);
  st->add_option("--limit", opt.limit, "Stop after this many solutions (0 = all)");
  CLI::App* sm = leaf(*solve, "marked", "Window solutions of a doubly-marked system", [] { return cmd_solve("marked"); });
  sm->add_option("--marked", opt.marked_file, "Marked SFT file");
  sm->add_option("--pattern", opt.pattern_file, "Counted pattern (builds the counting tileset)");
  sm->add_option("-k", opt.k, "Occurrence count")->check(CLI::NonNegativeNumber);
  sm->add_option("--mode", opt.mode, "exact or atleast")->check(CLI::IsMember({"exact", "atleast"}));
  window_opts(sm);
  sm->add_option("--limit", opt.limit, "Stop after this many solutions (0 = all)");

  CLI::App* lang = group("lang", "Window languages");
  for (const char* what : {"admissible", "forbidden"}) {
    std::string w = what;
    CLI::App* s = leaf(*lang, w, w == "admissible" ? "Locally admissible windows" : "Windows with no admissible preimage",
                       [w] { return cmd_lang(w); });
    s->add_option("--sft", opt.sft_file, "SFT or sofic presentation file");
    window_opts(s);
    s->add_option("--margin", opt.margin, "Extension margin")->check(CLI::NonNegativeNumber);
  }

  CLI::App* hanf = group("hanf", "Occurrence counting and Hanf bounds");
  formula_opts(leaf(*hanf, "bound", "Radius and threshold for a universal formula", [] { return cmd_hanf("bound"); }));
  CLI::App* hb = leaf(*hanf, "ball", "Size of the L1 ball of radius n", [] { return cmd_hanf("ball"); });
  hb->add_option("-n", opt.n, "Radius")->check(CLI::NonNegativeNumber);
  CLI::App* hc = leaf(*hanf, "compare", "Compare two hosts at (n, k)", [] { return cmd_hanf("compare"); });
  hc->add_option("--pattern", opt.pattern_file, "Left host (pattern or periodic file)");
  hc->add_option("--other", opt.other_file, "Right host");
  hc->add_option("-n", opt.n, "Square radius")->check(CLI::NonNegativeNumber);
  hc->add_option("-k", opt.k, "Threshold")->check(CLI::NonNegativeNumber);

  CLI::App* ea = group("ea", "Projection operators on finite pattern sets");
  for (const char* what : {"e", "a"}) {
    std::string w = what;
    CLI::App* s = leaf(*ea, w, w == "e" ? "Images of the set" : "Targets all of whose preimages are in the set",
                       [w] { return cmd_ea(w); });
    s->add_option("--pattern", opt.pattern_file, "Pattern-set file");
    s->add_option("--project", opt.project, "Projection, e.g. \"a->x b->x\"");
    s->add_option("--target", opt.target, "Target alphabet (defaults to the projection's targets)");
  }

  CLI::App* rend = leaf(app, "render", "Draw a pattern or configuration", cmd_render);
  rend->add_option("--config", opt.config_file, "Periodic configuration file");
  rend->add_option("--pattern", opt.pattern_file, "Pattern file");
  rend->add_option("--format", opt.format, "text, pgm or svg")->check(CLI::IsMember({"text", "pgm", "svg"}));
  rend->add_option("--palette", opt.palette, "name=value pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return run ? run() : kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
