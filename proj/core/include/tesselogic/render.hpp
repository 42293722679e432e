#pragma once

// Text, binary PGM and SVG pictures of patterns and periodic configurations
// (one fundamental domain). Rows are emitted north to south.

#include <map>
#include <string>
#include <string_view>

#include "tesselogic/text_io.hpp"

namespace tesselogic {

enum class RenderFormat { Text, Pgm, Svg };

/// Color name -> display value: a gray level 0..255 for PGM, any SVG paint
/// (e.g. "#1f77b4") for SVG. Undefined pattern cells use the key ".".
using Palette = std::map<std::string, std::string>;

RenderFormat parse_render_format(std::string_view name);
/// `D=0 L=255` or `D=#000 L=#fff`.
Palette parse_palette(std::string_view text);
/// Evenly spaced grays (PGM) or a fixed qualitative list (SVG).
Palette default_palette(const Alphabet& a, RenderFormat fmt);

std::string render(const Grid& g, RenderFormat fmt, const Palette* palette = nullptr);

}  // namespace tesselogic
