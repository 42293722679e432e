#pragma once

// Symbolic-space values: cells, alphabets, finite patterns, fully periodic
// configurations, projections, SFTs and sofic presentations.
//
// Coordinates: x grows east, y grows north. "Row-major" order everywhere in
// the library means north-to-south, then west-to-east.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace tesselogic {

using Color = int;

struct Vec2 {
  int x = 0;
  int y = 0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
  friend constexpr auto operator<=>(Vec2, Vec2) = default;
};

inline constexpr Vec2 kNorth{0, 1};
inline constexpr Vec2 kSouth{0, -1};
inline constexpr Vec2 kEast{1, 0};
inline constexpr Vec2 kWest{-1, 0};

/// North-to-south, then west-to-east.
struct RowMajorLess {
  constexpr bool operator()(Vec2 a, Vec2 b) const { return a.y != b.y ? a.y > b.y : a.x < b.x; }
};

/// Axis-aligned rectangle [x0, x0+width) x [y0, y0+height).
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  bool contains(Vec2 z) const { return z.x >= x0 && z.x < x0 + width && z.y >= y0 && z.y < y0 + height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Ordered set of distinct color names. Copies share storage.
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::vector<std::string> colors);

  std::size_t size() const { return data_->names.size(); }
  const std::string& name(Color c) const { return data_->names.at(static_cast<std::size_t>(c)); }
  const std::vector<std::string>& names() const { return data_->names; }
  std::optional<Color> index_of(std::string_view name) const;
  /// Throws FormatError for unknown names.
  Color require(std::string_view name) const;
  bool contains(Color c) const { return c >= 0 && static_cast<std::size_t>(c) < size(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.data_ == b.data_ || a.data_->names == b.data_->names;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, Color> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Splits a whitespace-separated list of color names.
Alphabet parse_alphabet(std::string_view text);

/// Finite partial coloring of the plane.
class Pattern {
 public:
  using Cells = std::map<Vec2, Color, RowMajorLess>;

  Pattern() = default;
  explicit Pattern(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  Pattern(Alphabet alphabet, Cells cells);

  const Alphabet& alphabet() const { return alphabet_; }
  const Cells& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  std::optional<Color> at(Vec2 z) const;
  bool contains(Vec2 z) const { return cells_.count(z) != 0; }
  void set(Vec2 z, Color c);
  /// Bounding box; zero-sized at the origin for the empty pattern.
  Rect bounds() const;

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.cells_ == b.cells_ && a.alphabet_ == b.alphabet_;
  }
  /// Total order on patterns over one alphabet (size, then row-major cells).
  friend bool operator<(const Pattern& a, const Pattern& b);

 private:
  Alphabet alphabet_;
  Cells cells_;
};

using PatternSet = std::set<Pattern>;

/// Configuration equal to its fundamental domain [0,w) x [0,h) repeated in
/// both directions.
class PeriodicConfig {
 public:
  /// `fundamental` is indexed [y * width + x] with y = 0 the southern row.
  PeriodicConfig(Alphabet alphabet, int width, int height, std::vector<Color> fundamental);
  static PeriodicConfig uniform(Alphabet alphabet, Color c);

  const Alphabet& alphabet() const { return alphabet_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Color>& fundamental() const { return cells_; }
  Color at(Vec2 z) const;
  /// Restriction to a rectangle.
  Pattern window(const Rect& r) const;

  friend bool operator==(const PeriodicConfig&, const PeriodicConfig&) = default;

 private:
  Alphabet alphabet_;
  int width_;
  int height_;
  std::vector<Color> cells_;
};

/// Map from source colors to target colors, applied cellwise.
class ProjectionMap {
 public:
  ProjectionMap(Alphabet source, Alphabet target, std::vector<Color> assignment);
  static ProjectionMap identity(const Alphabet& a);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const std::vector<Color>& assignment() const { return assignment_; }
  Color operator()(Color c) const { return assignment_.at(static_cast<std::size_t>(c)); }
  /// Colors of `source` mapped onto `t`.
  std::vector<Color> preimage(Color t) const;

  friend bool operator==(const ProjectionMap&, const ProjectionMap&) = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Color> assignment_;
};

/// second ∘ first.
ProjectionMap compose(const ProjectionMap& second, const ProjectionMap& first);

/// Subshift of finite type given by canonical forbidden patterns.
class SFT {
 public:
  explicit SFT(Alphabet alphabet, std::vector<Pattern> forbidden = {});

  const Alphabet& alphabet() const { return alphabet_; }
  /// Canonical, sorted, deduplicated.
  const std::vector<Pattern>& forbidden() const { return forbidden_; }
  /// Largest width and height over the forbidden patterns (0 if none).
  Vec2 extent() const;

  friend bool operator==(const SFT&, const SFT&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Pattern> forbidden_;
};

struct SoficPresentation {
  SFT base;
  ProjectionMap proj;

  SoficPresentation(SFT base, ProjectionMap proj);
};

Pattern translate_pattern(const Pattern& p, Vec2 v);

/// Positions z0 with p occurring at z0, sorted row-major. For pattern hosts the
/// translated domain must lie inside the host's domain.
std::vector<Vec2> occurrences(const Pattern& p, const Pattern& host, std::optional<Rect> region = std::nullopt);
/// For periodic hosts the region defaults to one fundamental domain.
std::vector<Vec2> occurrences(const Pattern& p, const PeriodicConfig& host, std::optional<Rect> region = std::nullopt);

/// Square pattern of radius n (domain [-n,n]^2) read around `center`.
Pattern square_pattern(const PeriodicConfig& c, Vec2 center, int n);
/// All radius-n square patterns of c.
PatternSet pattern_language(const PeriodicConfig& c, int n);

Pattern apply_projection(const ProjectionMap& pi, const Pattern& p);
PeriodicConfig apply_projection(const ProjectionMap& pi, const PeriodicConfig& c);

/// Translate so that min x = min y = 0; returns the applied offset.
std::pair<Pattern, Vec2> canonicalize(const Pattern& p);

}  // namespace tesselogic
