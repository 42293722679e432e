#pragma once

// Occurrence-count profiles of radius-n square patterns, the (n,k)
// equivalence and its one-sided version, and the explicit Hanf bound for
// universal first-order formulas.

#include <cstdint>
#include <map>

#include "tesselogic/grid.hpp"
#include "tesselogic/logic.hpp"

namespace tesselogic {

/// Number of cells at L1 distance at most r.
std::int64_t ball_size(std::int64_t r);

struct CountProfile {
  int radius = 0;
  int threshold = 0;
  /// Square pattern (domain [-n,n]^2) -> count; values above the threshold
  /// are stored as threshold + 1 ("more than k").
  std::map<Pattern, int> counts;

  int count(const Pattern& p) const;
  bool more_than_k(const Pattern& p) const { return count(p) > threshold; }
};

/// Finite hosts count only positions where the whole square fits.
CountProfile count_profile(const Pattern& host, int n, int k);
/// Every pattern of a periodic configuration occurs infinitely often.
CountProfile count_profile(const PeriodicConfig& host, int n, int k);

bool ge_nk(const Pattern& m, const Pattern& other, int n, int k);
bool ge_nk(const PeriodicConfig& m, const PeriodicConfig& other, int n, int k);
bool equiv_nk(const Pattern& m, const Pattern& other, int n, int k);
bool equiv_nk(const PeriodicConfig& m, const PeriodicConfig& other, int n, int k);

/// Profile-level relations shared by both host kinds.
bool ge_profiles(const CountProfile& m, const CountProfile& other);
bool equal_profiles(const CountProfile& m, const CountProfile& other);

struct HanfBound {
  std::int64_t radius;
  std::int64_t threshold;
  int quantifiers;
};

/// (3^q, q * ball_size(3^q) + 1) with q the first-order quantifier count of
/// the relational form; (1, 1) when q = 0.
HanfBound universal_bound(const Formula& f);

}  // namespace tesselogic
