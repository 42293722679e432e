#pragma once

// Doubly-marked sets of finite type: the configurations of a cell system that
// contain a Q0 cell and a Q1 cell, projected cellwise onto a target alphabet.
//
// The counting construction stacks many bit layers, so a MarkedSFT is kept as
// a layered cell system; `flatten` produces the explicit SFT over the product
// alphabet when that is small enough.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tesselogic/grid.hpp"
#include "tesselogic/local_rules.hpp"
#include "tesselogic/logic.hpp"
#include "tesselogic/translate.hpp"

namespace tesselogic {

/// Predicates and maps read the field values of a single cell.
using CellPredicate = std::function<bool(const int*)>;
using CellProjection = std::function<Color(const int*)>;

struct MarkedSFT {
  Alphabet target;
  CellSystem system;
  CellPredicate q0;
  CellPredicate q1;
  CellProjection proj;
  /// Fields `proj` depends on; searched first when enumerating projections.
  std::vector<int> proj_fields;
  /// Fields q0 and q1 depend on (empty: all).
  std::vector<int> marker_fields;
  /// Optional naming of cell states; identifiers only.
  std::function<std::string(const int*)> name;
};

/// Explicit form: SFT over a flat alphabet with marker color sets.
struct FlatMarked {
  SFT base;
  std::vector<Color> q0;
  std::vector<Color> q1;
  ProjectionMap proj;
};

MarkedSFT marked_of_flat(const FlatMarked& m);
/// Product alphabet restricted to cells passing the single-cell rules. Throws
/// BudgetExceeded when the alphabet or a rule's tuple space exceeds `cap`.
FlatMarked flatten(const MarkedSFT& m, std::uint64_t cap = 1u << 20);

/// Human-readable name of one cell's field values.
std::string cell_name(const MarkedSFT& m, const int* values);

MarkedSFT counting_marked_sft(const Pattern& p, int k, CountMode mode);
MarkedSFT union_marked(const MarkedSFT& a, const MarkedSFT& b);
MarkedSFT intersect_marked(const MarkedSFT& a, const MarkedSFT& b);

/// Existential MSO definition of the projected doubly-marked set.
Formula emso_of_marked(const MarkedSFT& m, std::uint64_t cap = 1u << 20);

/// Sofic format plus `q0: ...` and `q1: ...` lines.
FlatMarked parse_marked(std::string_view text);
std::string format_marked(const FlatMarked& m);

/// Field list and rule labels of a layered system.
std::string describe(const MarkedSFT& m);

}  // namespace tesselogic
