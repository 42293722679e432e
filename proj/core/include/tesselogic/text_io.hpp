#pragma once

// Plain-text formats for patterns, periodic configurations, SFTs and sofic
// presentations.
//
//   alphabet: D L
//   periodic: 2 1          <- optional; makes the grid a PeriodicConfig
//   D L                    <- rows north-to-south, '.' = undefined cell
//
// SFT files repeat `forbid:` blocks (separated by blank lines) after the
// alphabet line; sofic files add `project: a->x b->y ...` at the end.
// Pattern sets use `pattern:` blocks the same way.
// Lines starting with '#' are comments.

#include <string>
#include <string_view>
#include <variant>

#include "tesselogic/grid.hpp"

namespace tesselogic {

using Grid = std::variant<Pattern, PeriodicConfig>;

Grid parse_grid(std::string_view text);
Pattern parse_pattern(std::string_view text);
PeriodicConfig parse_config(std::string_view text);
/// Rows north-to-south; the southern row gets y = 0 and the western column x = 0.
Pattern parse_rows(const std::vector<std::string>& rows, const Alphabet& alphabet, int first_line = 1);

std::string format_pattern(const Pattern& p);
std::string format_config(const PeriodicConfig& c);
std::string format_grid(const Grid& g);

SFT parse_sft(std::string_view text);
std::string format_sft(const SFT& s);

SoficPresentation parse_sofic(std::string_view text);
std::string format_sofic(const SoficPresentation& s);

/// Alphabet line followed by `pattern:` blocks. Patterns are placed with
/// their south-west corner at the origin.
PatternSet parse_pattern_set(std::string_view text);
std::string format_pattern_set(const PatternSet& s, const Alphabet& alphabet);

/// `src->tgt` pairs; the target alphabet lists targets in order of first use
/// unless `target` is given.
ProjectionMap parse_projection(std::string_view text, const Alphabet& source, const Alphabet* target = nullptr);
std::string format_projection(const ProjectionMap& pi);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace tesselogic
