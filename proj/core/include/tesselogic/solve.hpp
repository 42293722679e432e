#pragma once

// Search oracles over SFTs, sofic presentations and marked systems.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tesselogic/grid.hpp"
#include "tesselogic/marked.hpp"

namespace tesselogic {

struct WindowSpec {
  int width = 1;
  int height = 1;
  int margin = 0;
};

/// w×h toroidal colorings avoiding every forbidden pattern, in row-major
/// lexicographic order.
std::vector<PeriodicConfig> torus_solutions(const SFT& s, int w, int h, std::optional<std::size_t> limit = {});

/// Window colorings on [0,w)×[0,h) that extend to the margin-enlarged window
/// without a forbidden occurrence.
PatternSet admissible_patterns(const SFT& s, const WindowSpec& spec);
/// Target windows with at least one margin-admissible preimage.
PatternSet projected_admissible(const SoficPresentation& s, const WindowSpec& spec);

PatternSet forbidden_language(const SFT& s, const WindowSpec& spec);
PatternSet forbidden_language(const SoficPresentation& s, const WindowSpec& spec);

/// Every coloring of `domain`.
PatternSet all_colorings(const Alphabet& a, const std::vector<Vec2>& domain);
PatternSet complement(const PatternSet& s, const Alphabet& a, const std::vector<Vec2>& domain);
std::vector<Vec2> window_domain(int w, int h);

/// The domain is read from the patterns unless given; all must share it.
PatternSet e_operator(const ProjectionMap& pi, const PatternSet& s, std::optional<std::vector<Vec2>> domain = {});
PatternSet a_operator(const ProjectionMap& pi, const PatternSet& s, std::optional<std::vector<Vec2>> domain = {});

struct MarkedSolution {
  /// Field values per cell, cells in row-major order.
  std::vector<std::vector<int>> cells;
  Pattern projected;
};

/// Window assignments satisfying every rule instance inside the window and
/// containing a q0 cell and a q1 cell.
/// Streaming form; stops when `visit` returns false.
void visit_marked_solutions(const MarkedSFT& m, int w, int h,
                            const std::function<bool(const MarkedSolution&)>& visit);
std::vector<MarkedSolution> marked_solutions(const MarkedSFT& m, int w, int h,
                                             std::optional<std::size_t> limit = {});

/// Distinct projections of the marked window solutions. Falls back to full
/// enumeration when `m.proj_fields` is empty.
PatternSet projected_marked_windows(const MarkedSFT& m, int w, int h);

}  // namespace tesselogic
