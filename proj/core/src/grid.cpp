#include "tesselogic/grid.hpp"

#include <algorithm>
#include <sstream>

#include "tesselogic/error.hpp"

namespace tesselogic {

namespace {

int floor_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void require_same(const Alphabet& a, const Alphabet& b, const char* what) {
  if (!(a == b)) throw AlphabetMismatch(std::string(what) + ": alphabets differ");
}

}  // namespace

Alphabet::Alphabet() : data_(std::make_shared<const Data>()) {}

Alphabet::Alphabet(std::vector<std::string> colors) {
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i].empty()) throw FormatError("empty color name");
    if (!data->index.emplace(colors[i], static_cast<Color>(i)).second)
      throw FormatError("duplicate color name '" + colors[i] + "'");
  }
  data->names = std::move(colors);
  data_ = std::move(data);
}

std::optional<Color> Alphabet::index_of(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Color Alphabet::require(std::string_view name) const {
  if (auto c = index_of(name)) return *c;
  throw FormatError("unknown color '" + std::string(name) + "'");
}

Alphabet parse_alphabet(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> names;
  for (std::string s; in >> s;) names.push_back(s);
  return Alphabet(std::move(names));
}

// ---------------------------------------------------------------------------

Pattern::Pattern(Alphabet alphabet, Cells cells) : alphabet_(std::move(alphabet)), cells_(std::move(cells)) {
  for (const auto& [z, c] : cells_)
    if (!alphabet_.contains(c)) throw InvalidArgument("pattern color index out of range");
}

std::optional<Color> Pattern::at(Vec2 z) const {
  auto it = cells_.find(z);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void Pattern::set(Vec2 z, Color c) {
  if (!alphabet_.contains(c)) throw InvalidArgument("pattern color index out of range");
  cells_[z] = c;
}

Rect Pattern::bounds() const {
  if (cells_.empty()) return {};
  int x0 = cells_.begin()->first.x, x1 = x0;
  int y0 = cells_.begin()->first.y, y1 = y0;
  for (const auto& [z, c] : cells_) {
    x0 = std::min(x0, z.x);
    x1 = std::max(x1, z.x);
    y0 = std::min(y0, z.y);
    y1 = std::max(y1, z.y);
  }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

bool operator<(const Pattern& a, const Pattern& b) {
  if (a.cells_.size() != b.cells_.size()) return a.cells_.size() < b.cells_.size();
  RowMajorLess less;
  auto ia = a.cells_.begin();
  auto ib = b.cells_.begin();
  for (; ia != a.cells_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return false;
}

// ---------------------------------------------------------------------------

PeriodicConfig::PeriodicConfig(Alphabet alphabet, int width, int height, std::vector<Color> fundamental)
    : alphabet_(std::move(alphabet)), width_(width), height_(height), cells_(std::move(fundamental)) {
  if (width_ < 1 || height_ < 1) throw InvalidArgument("periodic configuration needs positive periods");
  if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
    throw InvalidArgument("fundamental domain has the wrong number of cells");
  for (Color c : cells_)
    if (!alphabet_.contains(c)) throw InvalidArgument("configuration color index out of range");
}

PeriodicConfig PeriodicConfig::uniform(Alphabet alphabet, Color c) {
  return PeriodicConfig(std::move(alphabet), 1, 1, {c});
}

Color PeriodicConfig::at(Vec2 z) const {
  return cells_[static_cast<std::size_t>(floor_mod(z.y, height_) * width_ + floor_mod(z.x, width_))];
}

Pattern PeriodicConfig::window(const Rect& r) const {
  Pattern::Cells cells;
  for (int y = r.y0; y < r.y0 + r.height; ++y)
    for (int x = r.x0; x < r.x0 + r.width; ++x) cells.emplace(Vec2{x, y}, at({x, y}));
  return Pattern(alphabet_, std::move(cells));
}

// ---------------------------------------------------------------------------

ProjectionMap::ProjectionMap(Alphabet source, Alphabet target, std::vector<Color> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size()) throw InvalidArgument("projection must be defined on every source color");
  for (Color c : assignment_)
    if (!target_.contains(c)) throw InvalidArgument("projection maps outside the target alphabet");
}

ProjectionMap ProjectionMap::identity(const Alphabet& a) {
  std::vector<Color> id(a.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Color>(i);
  return ProjectionMap(a, a, std::move(id));
}

std::vector<Color> ProjectionMap::preimage(Color t) const {
  std::vector<Color> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i)
    if (assignment_[i] == t) out.push_back(static_cast<Color>(i));
  return out;
}

ProjectionMap compose(const ProjectionMap& second, const ProjectionMap& first) {
  require_same(first.target(), second.source(), "compose");
  std::vector<Color> a;
  a.reserve(first.assignment().size());
  for (Color c : first.assignment()) a.push_back(second(c));
  return ProjectionMap(first.source(), second.target(), std::move(a));
}

// ---------------------------------------------------------------------------

SFT::SFT(Alphabet alphabet, std::vector<Pattern> forbidden) : alphabet_(std::move(alphabet)) {
  forbidden_.reserve(forbidden.size());
  for (auto& p : forbidden) {
    require_same(alphabet_, p.alphabet(), "SFT forbidden pattern");
    if (p.empty()) throw InvalidArgument("empty pattern in a forbidden set");
    forbidden_.push_back(canonicalize(p).first);
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

Vec2 SFT::extent() const {
  Vec2 e;
  for (const auto& p : forbidden_) {
    Rect b = p.bounds();
    e.x = std::max(e.x, b.width);
    e.y = std::max(e.y, b.height);
  }
  return e;
}

SoficPresentation::SoficPresentation(SFT base_, ProjectionMap proj_) : base(std::move(base_)), proj(std::move(proj_)) {
  require_same(base.alphabet(), proj.source(), "sofic presentation");
}

// ---------------------------------------------------------------------------

Pattern translate_pattern(const Pattern& p, Vec2 v) {
  Pattern::Cells cells;
  for (const auto& [z, c] : p.cells()) cells.emplace_hint(cells.end(), z + v, c);
  return Pattern(p.alphabet(), std::move(cells));
}

std::vector<Vec2> occurrences(const Pattern& p, const Pattern& host, std::optional<Rect> region) {
  require_same(p.alphabet(), host.alphabet(), "occurrences");
  std::vector<Vec2> out;
  if (p.empty()) {
    // The empty pattern occurs everywhere; report the searched positions.
    Rect r = region ? *region : host.bounds();
    for (int y = r.y0 + r.height - 1; y >= r.y0; --y)
      for (int x = r.x0; x < r.x0 + r.width; ++x) out.push_back({x, y});
    return out;
  }
  const Vec2 anchor = p.cells().begin()->first;
  for (const auto& [hz, hc] : host.cells()) {
    Vec2 z0 = hz - anchor;
    if (region && !region->contains(z0)) continue;
    bool ok = true;
    for (const auto& [z, c] : p.cells()) {
      auto h = host.at(z + z0);
      if (!h || *h != c) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z0);
  }
  // The anchor is the row-major first cell, so host iteration is already
  // row-major in z0.
  return out;
}

std::vector<Vec2> occurrences(const Pattern& p, const PeriodicConfig& host, std::optional<Rect> region) {
  require_same(p.alphabet(), host.alphabet(), "occurrences");
  Rect r = region ? *region : Rect{0, 0, host.width(), host.height()};
  std::vector<Vec2> out;
  for (int y = r.y0 + r.height - 1; y >= r.y0; --y) {
    for (int x = r.x0; x < r.x0 + r.width; ++x) {
      bool ok = true;
      for (const auto& [z, c] : p.cells()) {
        if (host.at({z.x + x, z.y + y}) != c) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back({x, y});
    }
  }
  return out;
}

Pattern square_pattern(const PeriodicConfig& c, Vec2 center, int n) {
  Pattern::Cells cells;
  for (int dy = n; dy >= -n; --dy)
    for (int dx = -n; dx <= n; ++dx) cells.emplace_hint(cells.end(), Vec2{dx, dy}, c.at(center + Vec2{dx, dy}));
  return Pattern(c.alphabet(), std::move(cells));
}

PatternSet pattern_language(const PeriodicConfig& c, int n) {
  if (n < 0) throw InvalidArgument("negative radius");
  PatternSet out;
  for (int y = 0; y < c.height(); ++y)
    for (int x = 0; x < c.width(); ++x) out.insert(square_pattern(c, {x, y}, n));
  return out;
}

Pattern apply_projection(const ProjectionMap& pi, const Pattern& p) {
  require_same(pi.source(), p.alphabet(), "apply_projection");
  Pattern::Cells cells;
  for (const auto& [z, c] : p.cells()) cells.emplace_hint(cells.end(), z, pi(c));
  return Pattern(pi.target(), std::move(cells));
}

PeriodicConfig apply_projection(const ProjectionMap& pi, const PeriodicConfig& c) {
  require_same(pi.source(), c.alphabet(), "apply_projection");
  std::vector<Color> cells;
  cells.reserve(c.fundamental().size());
  for (Color k : c.fundamental()) cells.push_back(pi(k));
  return PeriodicConfig(pi.target(), c.width(), c.height(), std::move(cells));
}

std::pair<Pattern, Vec2> canonicalize(const Pattern& p) {
  if (p.empty()) throw InvalidArgument("cannot canonicalize the empty pattern");
  Rect b = p.bounds();
  Vec2 offset{-b.x0, -b.y0};
  return {translate_pattern(p, offset), offset};
}

}  // namespace tesselogic
