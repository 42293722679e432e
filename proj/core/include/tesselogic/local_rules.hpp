#pragma once

// Cell systems: every cell carries a vector of small-domain fields and a
// finite list of translation-invariant local rules constrains them. SFTs are
// the one-field case; the layered marked constructions use many fields.
//
// RuleSearch enumerates the assignments of a rectangular window (or torus)
// by backtracking. Cells are visited in a fixed order (row-major unless told
// otherwise), fields in declaration order, values from 0 upwards; a rule
// instance is checked as soon as its last variable is assigned. The output
// order is therefore lexicographic in the visiting order.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tesselogic/grid.hpp"

namespace tesselogic {

struct Field {
  std::string name;
  int size = 2;
};

struct LocalRule {
  /// (offset from the anchor cell, field index).
  std::vector<std::pair<Vec2, int>> vars;
  /// Receives the values in `vars` order.
  std::function<bool(const int*)> allowed;
  std::string label;
};

struct CellSystem {
  std::vector<Field> fields;
  std::vector<LocalRule> rules;

  int add_field(std::string name, int size = 2);
  int field_index(const std::string& name) const;
  /// Offsets used by any rule, relative to its anchor; bounding box.
  Rect rule_extent() const;
};

/// One-field system forbidding the SFT's patterns.
CellSystem sft_system(const SFT& s);

class RuleSearch {
 public:
  RuleSearch(const CellSystem& system, int width, int height, bool torus);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }
  /// Row-major index: y = height-1 is row 0.
  int cell_index(Vec2 z) const { return (height_ - 1 - z.y) * width_ + z.x; }
  Vec2 cell_at(int index) const { return {index % width_, height_ - 1 - index / width_}; }

  /// Only values with allowed[v] != 0 are tried for this variable.
  void restrict(int cell, int field, std::vector<char> allowed);
  /// Visiting order of the cells; must be a permutation.
  void set_order(std::vector<int> cells);
  /// Visiting order of the variables (cell * fields + field).
  void set_variable_order(std::vector<int> vars);
  void set_node_budget(std::uint64_t nodes) { node_budget_ = nodes; }
  /// Extra predicate over one cell's fields, checked once the listed fields
  /// (all of them if empty) are assigned. It may read only those.
  void set_cell_check(int cell, std::vector<int> fields, std::function<bool(const int*)> check);
  void clear_cell_checks();
  /// Called once the distinct prefix is assigned; false skips the subtree.
  void set_prefix_filter(std::function<bool(const std::vector<int>&)> filter) { prefix_filter_ = std::move(filter); }

  /// Calls `visit` with values[cell * fields + field] for each solution
  /// until it returns false. With `distinct_cells` = d >= 0 only the first
  /// solution for each assignment of the first d visited cells is reported.
  void run(const std::function<bool(const std::vector<int>&)>& visit, int distinct_cells = -1);

  enum class Verdict { Accept, Reject, Stop };
  /// General form: a rejected complete assignment does not count as a hit
  /// for the distinct prefix of `distinct_vars` visited variables.
  void search(const std::function<Verdict(const std::vector<int>&)>& visit, std::size_t distinct_vars);

  bool exists();

 private:
  enum class Outcome { Continue, Found, Stop };
  Outcome dfs(std::size_t pos);
  // Existence search below the distinct prefix with conflict-directed
  // backjumping; returns kFound, kStop or the level to resume at.
  static constexpr long kFound = -2, kStop = -3;
  long backjump(std::size_t pos);
  bool consistent(std::size_t pos, std::vector<std::uint64_t>* conflict);
  void add_conflict(std::vector<std::uint64_t>& conflict, int var, std::size_t pos) const;
  void index_instances();

  const CellSystem& system_;
  int width_;
  int height_;
  bool torus_;
  int fields_;
  std::vector<int> var_order_;
  std::vector<std::vector<char>> allowed_;
  // Instances: variable lists flattened, indexed by the position at which
  // they become checkable.
  struct Instance {
    int rule;
    std::vector<int> vars;
  };
  std::vector<Instance> instances_;
  std::vector<std::vector<int>> due_;
  struct CellCheck {
    int cell = -1;
    std::vector<int> vars;
    std::function<bool(const int*)> check;
  };
  std::vector<CellCheck> cell_checks_;
  std::vector<std::vector<int>> due_checks_;
  void index_checks();
  std::function<bool(const std::vector<int>&)> prefix_filter_;
  std::vector<int> var_of_pos_;
  std::vector<int> pos_of_var_;
  std::vector<std::vector<std::uint64_t>> conflicts_;
  std::vector<int> values_;
  std::vector<int> scratch_;
  std::size_t prefix_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_budget_ = 0;
  const std::function<Verdict(const std::vector<int>&)>* visit_ = nullptr;
  bool indexed_ = false;
};

}  // namespace tesselogic
