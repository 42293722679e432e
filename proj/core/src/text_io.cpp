#include "tesselogic/text_io.hpp"

#include <fstream>
#include <sstream>

#include "tesselogic/error.hpp"

namespace tesselogic {

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

/// Trimmed lines with comments dropped; blank lines kept (they separate
/// forbid blocks).
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    std::string line = trim(text.substr(pos, nl - pos));
    if (line.empty() || line[0] != '#') out.push_back({number, line});
    pos = nl + 1;
  }
  return out;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.compare(0, prefix.size(), prefix) == 0; }

std::string after_key(const Line& l, std::string_view key) { return trim(std::string_view(l.text).substr(key.size())); }

/// Skips blank lines; returns index of the next non-blank line.
std::size_t skip_blank(const std::vector<Line>& lines, std::size_t i) {
  while (i < lines.size() && lines[i].text.empty()) ++i;
  return i;
}

Alphabet expect_alphabet(const std::vector<Line>& lines, std::size_t& i) {
  i = skip_blank(lines, i);
  if (i >= lines.size() || !starts_with(lines[i].text, "alphabet:"))
    throw FormatError("expected 'alphabet:' line", i < lines.size() ? lines[i].number : 0, 1);
  Alphabet a = parse_alphabet(after_key(lines[i], "alphabet:"));
  ++i;
  return a;
}

std::vector<std::string> tokens(const std::string& row) {
  std::istringstream in(row);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string format_rows(const Pattern& p, const Rect& b) {
  std::string out;
  for (int y = b.y0 + b.height - 1; y >= b.y0; --y) {
    for (int x = b.x0; x < b.x0 + b.width; ++x) {
      if (x > b.x0) out += ' ';
      auto c = p.at({x, y});
      out += c ? p.alphabet().name(*c) : ".";
    }
    out += '\n';
  }
  return out;
}

std::string alphabet_line(const Alphabet& a) {
  std::string out = "alphabet:";
  for (const auto& n : a.names()) out += " " + n;
  return out + "\n";
}

}  // namespace

Pattern parse_rows(const std::vector<std::string>& rows, const Alphabet& alphabet, int first_line) {
  Pattern p(alphabet);
  const int height = static_cast<int>(rows.size());
  for (int r = 0; r < height; ++r) {
    auto cells = tokens(rows[static_cast<std::size_t>(r)]);
    for (int x = 0; x < static_cast<int>(cells.size()); ++x) {
      const auto& t = cells[static_cast<std::size_t>(x)];
      if (t == ".") continue;
      auto c = alphabet.index_of(t);
      if (!c) throw FormatError("unknown color '" + t + "'", first_line + r, x + 1);
      p.set({x, height - 1 - r}, *c);
    }
  }
  return p;
}

Grid parse_grid(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  Alphabet alphabet = expect_alphabet(lines, i);
  i = skip_blank(lines, i);
  std::optional<std::pair<int, int>> periods;
  if (i < lines.size() && starts_with(lines[i].text, "periodic:")) {
    std::istringstream in(after_key(lines[i], "periodic:"));
    int w = 0, h = 0;
    if (!(in >> w >> h) || w < 1 || h < 1) throw FormatError("bad 'periodic:' line", lines[i].number, 1);
    periods = {w, h};
    ++i;
  }
  std::vector<std::string> rows;
  int first_line = i < lines.size() ? lines[i].number : 0;
  for (; i < lines.size(); ++i)
    if (!lines[i].text.empty()) rows.push_back(lines[i].text);
  if (!periods) return parse_rows(rows, alphabet, first_line);

  auto [w, h] = *periods;
  if (static_cast<int>(rows.size()) != h) throw FormatError("periodic grid needs exactly " + std::to_string(h) + " rows");
  std::vector<Color> cells(static_cast<std::size_t>(w * h));
  for (int r = 0; r < h; ++r) {
    auto row = tokens(rows[static_cast<std::size_t>(r)]);
    if (static_cast<int>(row.size()) != w)
      throw FormatError("periodic row needs exactly " + std::to_string(w) + " cells", first_line + r, 1);
    for (int x = 0; x < w; ++x) {
      const auto& t = row[static_cast<std::size_t>(x)];
      if (t == ".") throw FormatError("undefined cell in a periodic configuration", first_line + r, x + 1);
      auto c = alphabet.index_of(t);
      if (!c) throw FormatError("unknown color '" + t + "'", first_line + r, x + 1);
      cells[static_cast<std::size_t>((h - 1 - r) * w + x)] = *c;
    }
  }
  return PeriodicConfig(alphabet, w, h, std::move(cells));
}

Pattern parse_pattern(std::string_view text) {
  Grid g = parse_grid(text);
  if (auto* p = std::get_if<Pattern>(&g)) return std::move(*p);
  throw FormatError("expected a pattern, found a periodic configuration");
}

PeriodicConfig parse_config(std::string_view text) {
  Grid g = parse_grid(text);
  if (auto* c = std::get_if<PeriodicConfig>(&g)) return std::move(*c);
  throw FormatError("expected a periodic configuration ('periodic: W H' line missing)");
}

std::string format_pattern(const Pattern& p) {
  std::string out = alphabet_line(p.alphabet());
  if (!p.empty()) out += format_rows(p, p.bounds());
  return out;
}

std::string format_config(const PeriodicConfig& c) {
  std::string out = alphabet_line(c.alphabet());
  out += "periodic: " + std::to_string(c.width()) + " " + std::to_string(c.height()) + "\n";
  out += format_rows(c.window({0, 0, c.width(), c.height()}), {0, 0, c.width(), c.height()});
  return out;
}

std::string format_grid(const Grid& g) {
  return std::visit(
      [](const auto& v) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Pattern>)
          return format_pattern(v);
        else
          return format_config(v);
      },
      g);
}

namespace {

struct SftParts {
  Alphabet alphabet;
  std::vector<Pattern> forbidden;
  std::vector<Line> trailer;  // lines after the forbid blocks
};

SftParts parse_sft_parts(std::string_view text, std::initializer_list<std::string_view> trailer_keys,
                         const std::string& block = "forbid:") {
  auto lines = split_lines(text);
  std::size_t i = 0;
  SftParts parts{expect_alphabet(lines, i), {}, {}};
  auto is_trailer = [&](const std::string& s) {
    for (auto k : trailer_keys)
      if (starts_with(s, k)) return true;
    return false;
  };
  while (true) {
    i = skip_blank(lines, i);
    if (i >= lines.size()) break;
    if (is_trailer(lines[i].text)) break;
    if (lines[i].text != block) throw FormatError("expected '" + block + "'", lines[i].number, 1);
    ++i;
    std::vector<std::string> rows;
    int first = i < lines.size() ? lines[i].number : 0;
    while (i < lines.size() && !lines[i].text.empty() && lines[i].text != block && !is_trailer(lines[i].text))
      rows.push_back(lines[i++].text);
    Pattern p = parse_rows(rows, parts.alphabet, first);
    if (p.empty()) throw FormatError("empty pattern block", first, 1);
    parts.forbidden.push_back(std::move(p));
  }
  for (; i < lines.size(); ++i)
    if (!lines[i].text.empty()) parts.trailer.push_back(lines[i]);
  return parts;
}

}  // namespace

SFT parse_sft(std::string_view text) {
  auto parts = parse_sft_parts(text, {});
  return SFT(parts.alphabet, std::move(parts.forbidden));
}

std::string format_sft(const SFT& s) {
  std::string out = alphabet_line(s.alphabet());
  for (const auto& p : s.forbidden()) {
    out += "\nforbid:\n";
    out += format_rows(p, p.bounds());
  }
  return out;
}

PatternSet parse_pattern_set(std::string_view text) {
  auto parts = parse_sft_parts(text, {}, "pattern:");
  return PatternSet(parts.forbidden.begin(), parts.forbidden.end());
}

std::string format_pattern_set(const PatternSet& s, const Alphabet& alphabet) {
  std::string out = alphabet_line(alphabet);
  for (const auto& p : s) {
    out += "\npattern:\n";
    out += format_rows(p, p.bounds());
  }
  return out;
}

ProjectionMap parse_projection(std::string_view text, const Alphabet& source, const Alphabet* target) {
  std::istringstream in{std::string(text)};
  std::vector<Color> assignment(source.size(), -1);
  std::vector<std::string> target_names;
  std::vector<std::pair<Color, std::string>> pairs;
  for (std::string tok; in >> tok;) {
    auto arrow = tok.find("->");
    if (arrow == std::string::npos) throw FormatError("projection entries look like 'src->tgt', got '" + tok + "'");
    Color src = source.require(tok.substr(0, arrow));
    std::string tgt = tok.substr(arrow + 2);
    if (tgt.empty()) throw FormatError("empty projection target in '" + tok + "'");
    pairs.emplace_back(src, tgt);
    if (std::find(target_names.begin(), target_names.end(), tgt) == target_names.end()) target_names.push_back(tgt);
  }
  Alphabet tgt_alphabet = target ? *target : Alphabet(target_names);
  for (auto& [src, tgt] : pairs) {
    if (assignment[static_cast<std::size_t>(src)] != -1) throw FormatError("color mapped twice in projection");
    assignment[static_cast<std::size_t>(src)] = tgt_alphabet.require(tgt);
  }
  for (std::size_t c = 0; c < assignment.size(); ++c)
    if (assignment[c] == -1) throw FormatError("projection misses color '" + source.name(static_cast<Color>(c)) + "'");
  return ProjectionMap(source, tgt_alphabet, std::move(assignment));
}

std::string format_projection(const ProjectionMap& pi) {
  std::string out;
  for (std::size_t c = 0; c < pi.assignment().size(); ++c) {
    if (c) out += ' ';
    out += pi.source().name(static_cast<Color>(c)) + "->" + pi.target().name(pi.assignment()[c]);
  }
  return out;
}

SoficPresentation parse_sofic(std::string_view text) {
  auto parts = parse_sft_parts(text, {"target:", "project:"});
  std::optional<Alphabet> target;
  std::optional<Line> project;
  for (const auto& l : parts.trailer) {
    if (starts_with(l.text, "target:"))
      target = parse_alphabet(after_key(l, "target:"));
    else if (starts_with(l.text, "project:"))
      project = l;
    else
      throw FormatError("unexpected line after 'project:'", l.number, 1);
  }
  if (!project) throw FormatError("sofic presentation needs a 'project:' line");
  SFT base(parts.alphabet, std::move(parts.forbidden));
  auto pi = parse_projection(after_key(*project, "project:"), base.alphabet(), target ? &*target : nullptr);
  return SoficPresentation(std::move(base), std::move(pi));
}

std::string format_sofic(const SoficPresentation& s) {
  std::string out = format_sft(s.base);
  out += "\ntarget:";
  for (const auto& n : s.proj.target().names()) out += " " + n;
  out += "\nproject: " + format_projection(s.proj) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace tesselogic
