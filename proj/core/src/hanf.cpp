#include "tesselogic/hanf.hpp"

#include <limits>
#include <set>

#include "tesselogic/error.hpp"

namespace tesselogic {

std::int64_t ball_size(std::int64_t r) {
  if (r < 0) throw InvalidArgument("negative radius");
  return 2 * r * r + 2 * r + 1;
}

int CountProfile::count(const Pattern& p) const {
  auto it = counts.find(p);
  return it == counts.end() ? 0 : it->second;
}

namespace {

void check_args(int n, int k) {
  if (n < 0 || k < 0) throw InvalidArgument("radius and threshold must be non-negative");
}

Pattern square_at(const Pattern& host, Vec2 center, int n) {
  Pattern p(host.alphabet());
  for (int dy = -n; dy <= n; ++dy)
    for (int dx = -n; dx <= n; ++dx) {
      auto c = host.at(center + Vec2{dx, dy});
      if (!c) return Pattern(host.alphabet());
      p.set({dx, dy}, *c);
    }
  return p;
}

}  // namespace

CountProfile count_profile(const Pattern& host, int n, int k) {
  check_args(n, k);
  CountProfile prof{n, k, {}};
  for (const auto& [z, c] : host.cells()) {
    Pattern sq = square_at(host, z, n);
    if (sq.empty()) continue;
    int& slot = prof.counts[sq];
    if (slot <= k) ++slot;
  }
  return prof;
}

CountProfile count_profile(const PeriodicConfig& host, int n, int k) {
  check_args(n, k);
  CountProfile prof{n, k, {}};
  for (const auto& p : pattern_language(host, n)) prof.counts[p] = k + 1;
  return prof;
}

bool ge_profiles(const CountProfile& m, const CountProfile& other) {
  if (m.radius != other.radius || m.threshold != other.threshold)
    throw InvalidArgument("profiles taken at different (n, k)");
  // Patterns absent from m have count 0 there and must be absent from other.
  std::set<Pattern> keys;
  for (const auto& [p, c] : m.counts) keys.insert(p);
  for (const auto& [p, c] : other.counts) keys.insert(p);
  for (const auto& p : keys) {
    const int pm = m.count(p);
    if (pm <= m.threshold && other.count(p) > pm) return false;
  }
  return true;
}

bool equal_profiles(const CountProfile& m, const CountProfile& other) {
  if (m.radius != other.radius || m.threshold != other.threshold)
    throw InvalidArgument("profiles taken at different (n, k)");
  return m.counts == other.counts;
}

namespace {

void same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw AlphabetMismatch("hosts use different alphabets");
}

}  // namespace

bool ge_nk(const Pattern& m, const Pattern& other, int n, int k) {
  same_alphabet(m.alphabet(), other.alphabet());
  return ge_profiles(count_profile(m, n, k), count_profile(other, n, k));
}

bool ge_nk(const PeriodicConfig& m, const PeriodicConfig& other, int n, int k) {
  same_alphabet(m.alphabet(), other.alphabet());
  return ge_profiles(count_profile(m, n, k), count_profile(other, n, k));
}

bool equiv_nk(const Pattern& m, const Pattern& other, int n, int k) {
  same_alphabet(m.alphabet(), other.alphabet());
  return equal_profiles(count_profile(m, n, k), count_profile(other, n, k));
}

bool equiv_nk(const PeriodicConfig& m, const PeriodicConfig& other, int n, int k) {
  same_alphabet(m.alphabet(), other.alphabet());
  return equal_profiles(count_profile(m, n, k), count_profile(other, n, k));
}

HanfBound universal_bound(const Formula& f) {
  if (!classify(f).universal_fo) throw FragmentError("universal_bound needs a universal first-order formula");
  Formula rel = to_relational(prenex(f));
  const int q = static_cast<int>(split_prefix(rel.root).quantifiers.size());
  if (q == 0) return {1, 1, 0};
  std::int64_t n = 1;
  for (int i = 0; i < q; ++i) {
    if (n > std::numeric_limits<std::int64_t>::max() / 3) throw InvalidArgument("bound overflows 64 bits");
    n *= 3;
  }
  if (n > 1'000'000'000) throw InvalidArgument("bound overflows 64 bits");
  const std::int64_t e = ball_size(n);
  if (e > std::numeric_limits<std::int64_t>::max() / q) throw InvalidArgument("bound overflows 64 bits");
  return {n, q * e + 1, q};
}

}  // namespace tesselogic
