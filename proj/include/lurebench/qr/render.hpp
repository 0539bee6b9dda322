#pragma once

// Image output for symbols: PBM (P1) and SVG, both with a 4-module quiet zone,
// plus parsers that recover the module grid from either format.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "lurebench/dom/dom.hpp"
#include "lurebench/errors.hpp"
#include "lurebench/qr/matrix.hpp"

namespace lurebench::qr {

// P1: "1" = dark. One row per line, modules separated by single spaces.
inline std::string to_pbm(const QrMatrix& m) {
  int dim = m.side + 2 * kQuietZone;
  std::string out = "P1\n" + std::to_string(dim) + " " + std::to_string(dim) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(dim) * (dim * 2));
  for (int y = 0; y < dim; ++y) {
    for (int x = 0; x < dim; ++x) {
      bool dark = x >= kQuietZone && x < kQuietZone + m.side && y >= kQuietZone &&
                  y < kQuietZone + m.side && m.dark(x - kQuietZone, y - kQuietZone);
      if (x)
        out.push_back(' ');
      out.push_back(dark ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

inline BitGrid parse_pbm(const std::string& text) {
  std::istringstream in(text);
  auto next_token = [&]() -> std::string {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw DecodeError("pbm: truncated header");
  };
  if (next_token() != "P1")
    throw DecodeError("pbm: expected P1 magic");
  int w = 0, h = 0;
  try {
    w = std::stoi(next_token());
    h = std::stoi(next_token());
  } catch (const std::exception&) {
    throw DecodeError("pbm: bad dimensions");
  }
  if (w <= 0 || h <= 0 || w != h)
    throw DecodeError("pbm: grid must be square and non-empty");
  BitGrid g;
  g.side = w;
  g.modules.reserve(static_cast<std::size_t>(w) * h);
  // Pixels may be packed without whitespace; read digit by digit.
  char c;
  while (g.modules.size() < static_cast<std::size_t>(w) * h && in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (c == '0' || c == '1')
      g.modules.push_back(c == '1' ? 1 : 0);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw DecodeError("pbm: unexpected character in pixel data");
  }
  if (g.modules.size() != static_cast<std::size_t>(w) * h)
    throw DecodeError("pbm: pixel data truncated");
  return g;
}

// One <rect> per dark module, 1 unit per module, quiet zone included in the
// viewBox. No background element, so light modules are absent from the DOM.
inline std::string to_svg(const QrMatrix& m) {
  int dim = m.side + 2 * kQuietZone;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(dim) + " " + std::to_string(dim) +
                    "\" shape-rendering=\"crispEdges\" fill=\"#000000\">\n";
  for (int y = 0; y < m.side; ++y)
    for (int x = 0; x < m.side; ++x)
      if (m.dark(x, y))
        out += "<rect x=\"" + std::to_string(x + kQuietZone) + "\" y=\"" +
               std::to_string(y + kQuietZone) + "\" width=\"1\" height=\"1\"/>\n";
  out += "</svg>\n";
  return out;
}

inline BitGrid parse_svg_grid(const std::string& text) {
  dom::Node root = dom::parse(text);
  const dom::Node* svg = dom::first_by_tag(root, "svg");
  if (!svg)
    throw DecodeError("svg: no <svg> element");
  auto view_box = svg->attr("viewBox");
  if (!view_box)
    view_box = svg->attr("viewbox");
  if (!view_box)
    throw DecodeError("svg: missing viewBox");
  std::istringstream vb(*view_box);
  double min_x = 0, min_y = 0, w = 0, h = 0;
  if (!(vb >> min_x >> min_y >> w >> h) || w <= 0 || h <= 0 || w != h)
    throw DecodeError("svg: viewBox must be a square region");
  BitGrid g;
  g.side = static_cast<int>(w);
  g.modules.assign(static_cast<std::size_t>(g.side) * g.side, 0);
  for (const dom::Node* rect : dom::elements_by_tag(*svg, "rect")) {
    auto get = [&](const char* name) -> double {
      auto v = rect->attr(name);
      if (!v)
        return 0;
      try {
        return std::stod(*v);
      } catch (const std::exception&) {
        throw DecodeError(std::string("svg: bad rect attribute ") + name);
      }
    };
    int x = static_cast<int>(get("x") - min_x);
    int y = static_cast<int>(get("y") - min_y);
    int rw = static_cast<int>(get("width"));
    int rh = static_cast<int>(get("height"));
    for (int dy = 0; dy < rh; ++dy)
      for (int dx = 0; dx < rw; ++dx)
        if (x + dx >= 0 && x + dx < g.side && y + dy >= 0 && y + dy < g.side)
          g.modules[static_cast<std::size_t>(y + dy) * g.side + (x + dx)] = 1;
  }
  return g;
}

}  // namespace lurebench::qr
