#include "tesselogic/render.hpp"

#include <sstream>

#include "tesselogic/error.hpp"

namespace tesselogic {

RenderFormat parse_render_format(std::string_view name) {
  if (name == "text") return RenderFormat::Text;
  if (name == "pgm") return RenderFormat::Pgm;
  if (name == "svg") return RenderFormat::Svg;
  throw InvalidArgument("unknown render format '" + std::string(name) + "'");
}

Palette parse_palette(std::string_view text) {
  Palette p;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw FormatError("palette entry '" + item + "' is not name=value");
    p[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return p;
}

Palette default_palette(const Alphabet& a, RenderFormat fmt) {
  static const char* kSvg[] = {"#222222", "#f2f2f2", "#1f77b4", "#d62728", "#2ca02c",
                               "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  Palette p;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (fmt == RenderFormat::Svg)
      p[a.name(static_cast<Color>(i))] = kSvg[i % (sizeof kSvg / sizeof *kSvg)];
    else
      p[a.name(static_cast<Color>(i))] = std::to_string(n == 1 ? 0 : static_cast<int>(i * 255 / (n - 1)));
  }
  p["."] = fmt == RenderFormat::Svg ? "none" : "128";
  return p;
}

namespace {

struct Raster {
  int width = 0, height = 0;
  std::vector<std::string> names;  // row-major, "." for undefined
};

Raster raster(const Grid& g) {
  Raster r;
  if (const auto* c = std::get_if<PeriodicConfig>(&g)) {
    r.width = c->width(), r.height = c->height();
    for (int y = r.height - 1; y >= 0; --y)
      for (int x = 0; x < r.width; ++x) r.names.push_back(c->alphabet().name(c->at({x, y})));
    return r;
  }
  const auto& p = std::get<Pattern>(g);
  Rect b = p.bounds();
  r.width = b.width, r.height = b.height;
  for (int y = b.y0 + b.height - 1; y >= b.y0; --y)
    for (int x = b.x0; x < b.x0 + b.width; ++x) {
      auto c = p.at({x, y});
      r.names.push_back(c ? p.alphabet().name(*c) : ".");
    }
  return r;
}

const std::string& lookup(const Palette& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw InvalidArgument("palette has no entry for '" + name + "'");
  return it->second;
}

}  // namespace

std::string render(const Grid& g, RenderFormat fmt, const Palette* palette) {
  if (fmt == RenderFormat::Text) return format_grid(g);
  const Alphabet& a = std::visit([](const auto& v) -> const Alphabet& { return v.alphabet(); }, g);
  Palette pal = palette ? *palette : default_palette(a, fmt);
  if (palette && !pal.count(".")) pal["."] = fmt == RenderFormat::Svg ? "none" : "128";
  Raster r = raster(g);

  if (fmt == RenderFormat::Pgm) {
    std::string out = "P5 " + std::to_string(r.width) + " " + std::to_string(r.height) + " 255\n";
    for (const auto& n : r.names) {
      const std::string& v = lookup(pal, n);
      int level = -1;
      try {
        std::size_t used = 0;
        level = std::stoi(v, &used);
        if (used != v.size()) level = -1;
      } catch (const std::exception&) {
      }
      if (level < 0 || level > 255) throw InvalidArgument("gray level for '" + n + "' must be 0..255");
      out += static_cast<char>(static_cast<unsigned char>(level));
    }
    return out;
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << r.width << ' ' << r.height
      << "\" width=\"" << 16 * r.width << "\" height=\"" << 16 * r.height << "\" shape-rendering=\"crispEdges\">\n";
  for (int row = 0; row < r.height; ++row)
    for (int x = 0; x < r.width; ++x) {
      const auto& n = r.names[static_cast<std::size_t>(row * r.width + x)];
      out << "  <rect x=\"" << x << "\" y=\"" << row << "\" width=\"1\" height=\"1\" fill=\"" << lookup(pal, n)
          << "\"><title>" << n << "</title></rect>\n";
    }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tesselogic
