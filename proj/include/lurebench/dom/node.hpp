#pragma once

// Value-semantic DOM. Text nodes and attribute values hold the RAW source
// slice (entity references intact); decoded views are computed on demand.
// Keeping raw text makes serialize(parse(x)) streams stable and lets the
// text-encoding pass and its detector agree on what "encoded" means.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lurebench/core/entities.hpp"

namespace lurebench::dom {

enum class NodeKind {
  Document,  // synthetic root; children are the top-level nodes
  Element,
  Text,     // text holds raw source text
  Comment,  // text holds the comment body
  Opaque,   // doctype / processing instruction / anything we pass through
};

struct Node {
  NodeKind kind = NodeKind::Element;
  std::string tag;  // lowercase element name
  std::vector<std::pair<std::string, std::string>> attrs;  // raw values, source order
  std::string text;
  std::vector<Node> children;

  bool is_element(std::string_view name) const {
    return kind == NodeKind::Element && tag == name;
  }

  const std::string* attr_raw(std::string_view name) const {
    for (const auto& [k, v] : attrs)
      if (k == name)
        return &v;
    return nullptr;
  }

  std::optional<std::string> attr(std::string_view name) const {
    const std::string* raw = attr_raw(name);
    if (!raw)
      return std::nullopt;
    return decode_entities(*raw);
  }

  void set_attr_raw(std::string_view name, std::string value) {
    for (auto& [k, v] : attrs) {
      if (k == name) {
        v = std::move(value);
        return;
      }
    }
    attrs.emplace_back(std::string(name), std::move(value));
  }

  void remove_attr(std::string_view name) {
    std::erase_if(attrs, [&](const auto& kv) { return kv.first == name; });
  }

  // Decoded text of this subtree, script/style excluded.
  std::string text_content() const {
    std::string out;
    collect_text(*this, out);
    return out;
  }

 private:
  static void collect_text(const Node& n, std::string& out) {
    if (n.kind == NodeKind::Text) {
      out += decode_entities(n.text);
      return;
    }
    if (n.kind == NodeKind::Element && (n.tag == "script" || n.tag == "style"))
      return;
    for (const Node& c : n.children)
      collect_text(c, out);
  }
};

inline std::string escape_text(std::string_view decoded) {
  std::string out;
  out.reserve(decoded.size());
  for (char c : decoded) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string escape_attr(std::string_view decoded) {
  std::string out;
  out.reserve(decoded.size());
  for (char c : decoded) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// ---- builders -------------------------------------------------------------

inline Node text(std::string_view decoded) {
  Node n;
  n.kind = NodeKind::Text;
  n.text = escape_text(decoded);
  return n;
}

// Pre-escaped (or deliberately entity-encoded) source text.
inline Node raw_text(std::string raw) {
  Node n;
  n.kind = NodeKind::Text;
  n.text = std::move(raw);
  return n;
}

inline Node element(std::string_view tag,
                    std::vector<std::pair<std::string, std::string>> attrs = {},
                    std::vector<Node> children = {}) {
  Node n;
  n.kind = NodeKind::Element;
  n.tag = std::string(tag);
  for (auto& [k, v] : attrs)
    n.attrs.emplace_back(k, escape_attr(v));
  n.children = std::move(children);
  return n;
}

inline Node document(std::vector<Node> children) {
  Node n;
  n.kind = NodeKind::Document;
  n.children = std::move(children);
  return n;
}

// ---- traversal ------------------------------------------------------------

inline void walk(Node& node, const std::function<void(Node&)>& fn) {
  fn(node);
  for (Node& c : node.children)
    walk(c, fn);
}

inline void walk(const Node& node, const std::function<void(const Node&)>& fn) {
  fn(node);
  for (const Node& c : node.children)
    walk(c, fn);
}

inline std::vector<Node*> find_all(Node& root, const std::function<bool(const Node&)>& pred) {
  std::vector<Node*> out;
  walk(root, [&](Node& n) {
    if (pred(n))
      out.push_back(&n);
  });
  return out;
}

inline std::vector<const Node*> find_all(const Node& root,
                                         const std::function<bool(const Node&)>& pred) {
  std::vector<const Node*> out;
  walk(root, [&](const Node& n) {
    if (pred(n))
      out.push_back(&n);
  });
  return out;
}

inline std::vector<Node*> elements_by_tag(Node& root, std::string_view tag) {
  return find_all(root, [&](const Node& n) { return n.kind == NodeKind::Element && n.tag == tag; });
}

inline std::vector<const Node*> elements_by_tag(const Node& root, std::string_view tag) {
  return find_all(root, [&](const Node& n) { return n.kind == NodeKind::Element && n.tag == tag; });
}

inline const Node* first_by_tag(const Node& root, std::string_view tag) {
  auto found = elements_by_tag(root, tag);
  return found.empty() ? nullptr : found.front();
}

inline Node* first_by_tag(Node& root, std::string_view tag) {
  auto found = elements_by_tag(root, tag);
  return found.empty() ? nullptr : found.front();
}

// ---- locators -------------------------------------------------------------
// Stable path strings like "/html/body/div[2]/iframe[1]": ordinal among
// same-tag siblings, with the singleton html/head/body segments left bare.

inline void for_each_element_with_locator(
    const Node& root, const std::function<void(const Node&, const std::string&)>& fn) {
  std::function<void(const Node&, const std::string&)> rec = [&](const Node& parent,
                                                                 const std::string& prefix) {
    std::map<std::string, int> seen;
    for (const Node& child : parent.children) {
      if (child.kind != NodeKind::Element)
        continue;
      int ordinal = ++seen[child.tag];
      std::string segment = child.tag;
      if (!(child.tag == "html" || child.tag == "head" || child.tag == "body"))
        segment += "[" + std::to_string(ordinal) + "]";
      std::string path = prefix + "/" + segment;
      fn(child, path);
      rec(child, path);
    }
  };
  rec(root, "");
}

inline std::string locator_of(const Node& root, const Node& target) {
  std::string found;
  for_each_element_with_locator(root, [&](const Node& n, const std::string& path) {
    if (&n == &target)
      found = path;
  });
  return found;
}

inline const Node* resolve_locator(const Node& root, std::string_view locator) {
  const Node* found = nullptr;
  for_each_element_with_locator(root, [&](const Node& n, const std::string& path) {
    if (path == locator)
      found = &n;
  });
  return found;
}

// ---- inline style ---------------------------------------------------------

inline std::map<std::string, std::string> parse_inline_style(std::string_view style) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return std::string(s);
  };
  while (pos < style.size()) {
    auto semi = style.find(';', pos);
    std::string_view decl = style.substr(pos, semi == std::string_view::npos ? std::string_view::npos
                                                                             : semi - pos);
    auto colon = decl.find(':');
    if (colon != std::string_view::npos) {
      std::string key = trim(decl.substr(0, colon));
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (!key.empty())
        out[key] = trim(decl.substr(colon + 1));
    }
    if (semi == std::string_view::npos)
      break;
    pos = semi + 1;
  }
  return out;
}

inline std::optional<std::string> style_value(const Node& node, std::string_view prop) {
  auto style = node.attr("style");
  if (!style)
    return std::nullopt;
  auto decls = parse_inline_style(*style);
  auto it = decls.find(std::string(prop));
  if (it == decls.end())
    return std::nullopt;
  return it->second;
}

inline std::optional<double> parse_px(std::string_view value) {
  std::string digits;
  for (char c : value) {
    if ((c >= '0' && c <= '9') || c == '.' || c == '-')
      digits.push_back(c);
    else
      break;
  }
  if (digits.empty())
    return std::nullopt;
  std::string_view rest = value.substr(digits.size());
  if (!rest.empty() && rest != "px")
    return std::nullopt;
  try {
    return std::stod(digits);
  } catch (...) {
    return std::nullopt;
  }
}

// Axis-aligned rectangle from inline absolute positioning. This is the whole
// layout model: anything not positioned inline with all four lengths has no
// geometry here.
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;

  double area() const { return w > 0 && h > 0 ? w * h : 0.0; }

  static double overlap_area(const Rect& a, const Rect& b) {
    double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    return ix > 0 && iy > 0 ? ix * iy : 0.0;
  }
};

inline std::optional<Rect> rect_of(const Node& node) {
  auto left = style_value(node, "left");
  auto top = style_value(node, "top");
  auto width = style_value(node, "width");
  auto height = style_value(node, "height");
  if (!left || !top || !width || !height)
    return std::nullopt;
  auto x = parse_px(*left), y = parse_px(*top), w = parse_px(*width), h = parse_px(*height);
  if (!x || !y || !w || !h)
    return std::nullopt;
  return Rect{*x, *y, *w, *h};
}

inline double opacity_of(const Node& node) {
  auto value = style_value(node, "opacity");
  if (!value)
    return 1.0;
  try {
    return std::stod(*value);
  } catch (...) {
    return 1.0;
  }
}

}  // namespace lurebench::dom
