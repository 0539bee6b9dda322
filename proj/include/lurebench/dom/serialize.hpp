#pragma once

#include <string>

#include "lurebench/dom/node.hpp"
#include "lurebench/dom/parse.hpp"

namespace lurebench::dom {

namespace detail {

inline void serialize_attr(const std::string& name, const std::string& raw, std::string& out) {
  out.push_back(' ');
  out += name;
  out += "=";
  bool has_dq = raw.find('"') != std::string::npos;
  bool has_sq = raw.find('\'') != std::string::npos;
  if (has_dq && !has_sq) {
    out.push_back('\'');
    out += raw;
    out.push_back('\'');
  } else if (has_dq) {
    // Both quote kinds present: fold double quotes into references once;
    // the re-parsed value then serializes unchanged.
    out.push_back('"');
    for (char c : raw)
      out += c == '"' ? std::string("&quot;") : std::string(1, c);
    out.push_back('"');
  } else {
    out.push_back('"');
    out += raw;
    out.push_back('"');
  }
}

inline void serialize_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Document:
      for (const Node& c : n.children)
        serialize_node(c, out);
      return;
    case NodeKind::Text:
      out += n.text;
      return;
    case NodeKind::Comment:
      out += "<!--" + n.text + "-->";
      return;
    case NodeKind::Opaque:
      out += "<" + n.text + ">";
      return;
    case NodeKind::Element:
      break;
  }
  out.push_back('<');
  out += n.tag;
  for (const auto& [name, value] : n.attrs)
    serialize_attr(name, value, out);
  out.push_back('>');
  if (is_void_element(n.tag))
    return;
  for (const Node& c : n.children)
    serialize_node(c, out);
  out += "</" + n.tag + ">";
}

}  // namespace detail

inline std::string serialize(const Node& node) {
  std::string out;
  detail::serialize_node(node, out);
  return out;
}

}  // namespace lurebench::dom
