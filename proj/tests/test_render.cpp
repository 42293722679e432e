#include "doctest.h"
#include "helpers.hpp"
#include "tesselogic/error.hpp"
#include "tesselogic/render.hpp"

using namespace tesselogic;
using testing::dl;
using testing::pat;

TEST_CASE("text rendering is the grid format") {
  Grid g = pat("D L\n. D");
  CHECK(render(g, RenderFormat::Text) == format_pattern(std::get<Pattern>(g)));
}

TEST_CASE("binary PGM") {
  Grid g = PeriodicConfig::uniform(dl(), 0);
  CHECK(render(g, RenderFormat::Pgm) == std::string("P5 1 1 255\n\0", 12));
  Palette pal = parse_palette("D=10 L=200");
  std::string img = render(Grid{pat("D L\nL D")}, RenderFormat::Pgm, &pal);
  CHECK(img.substr(0, 11) == "P5 2 2 255\n");
  CHECK(img.substr(11) == std::string("\x0a\xc8\xc8\x0a", 4));
}

TEST_CASE("SVG has one rectangle per cell") {
  std::string svg = render(Grid{pat("D L\n. D")}, RenderFormat::Svg);
  std::size_t rects = 0;
  for (std::size_t pos = 0; (pos = svg.find("<rect", pos)) != std::string::npos; ++pos) ++rects;
  CHECK(rects == 4);
  CHECK(svg.find("<svg") == 0);
}

TEST_CASE("formats and palettes") {
  CHECK(parse_render_format("svg") == RenderFormat::Svg);
  CHECK_THROWS_AS(parse_render_format("gif"), InvalidArgument);
  Palette p = parse_palette("D=#000 L=#fff");
  CHECK(p.at("L") == "#fff");
  CHECK_THROWS_AS(parse_palette("D"), FormatError);
  Palette d = default_palette(dl(), RenderFormat::Pgm);
  CHECK(d.size() >= 2);
  CHECK(d.at("D") != d.at("L"));
}
