#pragma once

#include <string>

#include "tesselogic/grid.hpp"
#include "tesselogic/text_io.hpp"

namespace testing {

inline const std::string kFixtures = FIXTURE_DIR;

inline std::string fixture(const std::string& name) { return tesselogic::read_file(kFixtures + "/" + name); }

inline tesselogic::Alphabet dl() { return tesselogic::parse_alphabet("D L"); }

/// Rows north to south over {D, L}.
inline tesselogic::Pattern pat(const std::string& rows) {
  return tesselogic::parse_pattern("alphabet: D L\n" + rows + "\n");
}

inline int count_color(const tesselogic::Pattern& p, tesselogic::Color c) {
  int n = 0;
  for (const auto& [z, v] : p.cells()) n += v == c;
  return n;
}

inline const char* kPhi =
    "forall x. !(@D(x) & @L(E(x))) & !(@D(x) & @L(N(x))) & !(@L(x) & @D(E(x)) & @L(N(x)))";
inline const char* kPsi = "forall x. forall y. (@D(x) & @D(y)) -> x = y";

}  // namespace testing
