#pragma once

// What a reader sees: text nodes outside script/style/noscript/template plus
// the handful of attribute values browsers paint (placeholders, button
// labels, tooltips, alt text).

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lurebench/dom/node.hpp"

namespace lurebench::dom {

inline bool is_invisible_container(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template";
}

inline bool has_visible_chars(std::string_view text) {
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      return true;
  return false;
}

namespace detail {

inline void collect_visible_text(Node& n, std::vector<Node*>& out) {
  if (n.kind == NodeKind::Element && is_invisible_container(n.tag))
    return;
  if (n.kind == NodeKind::Text) {
    if (has_visible_chars(n.text))
      out.push_back(&n);
    return;
  }
  for (Node& c : n.children)
    collect_visible_text(c, out);
}

inline void collect_visible_text(const Node& n, std::vector<const Node*>& out) {
  if (n.kind == NodeKind::Element && is_invisible_container(n.tag))
    return;
  if (n.kind == NodeKind::Text) {
    if (has_visible_chars(n.text))
      out.push_back(&n);
    return;
  }
  for (const Node& c : n.children)
    collect_visible_text(c, out);
}

}  // namespace detail

inline std::vector<Node*> visible_text_nodes(Node& root) {
  std::vector<Node*> out;
  detail::collect_visible_text(root, out);
  return out;
}

inline std::vector<const Node*> visible_text_nodes(const Node& root) {
  std::vector<const Node*> out;
  detail::collect_visible_text(root, out);
  return out;
}

// Attribute slots whose value is rendered. The value attribute only paints
// on button-like inputs.
struct VisibleAttrSlot {
  Node* node;
  std::string attr;
};

inline std::vector<VisibleAttrSlot> visible_attr_slots(Node& root) {
  std::vector<VisibleAttrSlot> out;
  walk(root, [&](Node& n) {
    if (n.kind != NodeKind::Element || is_invisible_container(n.tag))
      return;
    for (const char* name : {"placeholder", "title", "alt", "aria-label"}) {
      if (const std::string* raw = n.attr_raw(name); raw && !raw->empty())
        out.push_back({&n, name});
    }
    if (n.tag == "input") {
      auto type = n.attr("type").value_or("text");
      if ((type == "submit" || type == "button" || type == "reset") && n.attr_raw("value"))
        out.push_back({&n, "value"});
    }
  });
  return out;
}

}  // namespace lurebench::dom
