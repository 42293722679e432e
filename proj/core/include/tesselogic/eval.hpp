#pragma once

// Finite model checking: pattern semantics (relational signature, universe =
// pattern domain), torus semantics (wrap-around), and exact plane semantics of
// universal first-order formulas on periodic configurations.

#include <array>
#include <cstdint>
#include <optional>

#include "tesselogic/grid.hpp"
#include "tesselogic/logic.hpp"

namespace tesselogic {

struct Budget {
  /// Largest universe on which set quantifiers are enumerated.
  int max_subset_bits = 20;
  /// Cap on first-order bindings plus set-assignment leaves explored.
  std::uint64_t max_assignments = 4'000'000'000ULL;
};

/// A finite structure: cells numbered in row-major order, neighbour tables
/// with -1 for a missing neighbour.
struct Structure {
  Alphabet alphabet;
  std::vector<Vec2> cells;
  std::vector<Color> colors;
  std::vector<std::array<int, 4>> neighbors;  // indexed by Dir

  static Structure of_pattern(const Pattern& p);
  static Structure torus(const PeriodicConfig& c);
  int size() const { return static_cast<int>(cells.size()); }
};

/// Evaluates a closed formula. Terms with directions need total neighbour
/// tables; edges are read off the tables in both modes.
bool evaluate(const Formula& f, const Structure& s, const Budget& b = {});

bool eval_pattern(const Formula& f, const Pattern& p, const Budget& b = {});
bool eval_torus(const Formula& f, const PeriodicConfig& torus, const Budget& b = {});

/// Side length of the square torus used by eval_universal_periodic.
int universal_torus_side(const Formula& f, const PeriodicConfig& c);
bool eval_universal_periodic(const Formula& f, const PeriodicConfig& c, const Budget& b = {});

bool sft_membership(const SFT& s, const PeriodicConfig& c);

struct CheckVerdict {
  enum class Status { Refuted, ConsistentUpTo };
  Status status;
  /// Radius of the witness when refuted, else the radius checked.
  int radius;
  std::optional<Pattern> witness;

  bool refuted() const { return status == Status::Refuted; }
};

/// Semi-decision of membership via square sub-patterns of radius 0..r.
CheckVerdict pattern_check(const Formula& f, const PeriodicConfig& c, int r, const Budget& b = {});

}  // namespace tesselogic
