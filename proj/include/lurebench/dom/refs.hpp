#pragma once

// Reference extraction. Resource references are URLs the page would fetch
// while loading (src/href of loadable elements); anchor hrefs are navigation
// only and tracked separately — the offline-closure rule constrains the
// former, the DOM-evasion link signal reads the latter.

#include <string>
#include <vector>

#include "lurebench/dom/node.hpp"

namespace lurebench::dom {

struct RefSlot {
  Node* node;
  std::string attr;
  std::string value;  // decoded
};

struct ConstRefSlot {
  const Node* node;
  std::string attr;
  std::string value;
};

namespace detail {

inline const char* resource_attr_for(const Node& n) {
  if (n.kind != NodeKind::Element)
    return nullptr;
  if (n.tag == "img" || n.tag == "script" || n.tag == "iframe" || n.tag == "source" ||
      n.tag == "embed" || n.tag == "audio" || n.tag == "video" || n.tag == "track")
    return "src";
  if (n.tag == "link")
    return "href";
  return nullptr;
}

}  // namespace detail

inline std::vector<RefSlot> resource_refs(Node& root) {
  std::vector<RefSlot> out;
  walk(root, [&](Node& n) {
    const char* attr = detail::resource_attr_for(n);
    if (!attr)
      return;
    if (auto value = n.attr(attr); value && !value->empty())
      out.push_back({&n, attr, *value});
  });
  return out;
}

inline std::vector<ConstRefSlot> resource_refs(const Node& root) {
  std::vector<ConstRefSlot> out;
  walk(root, [&](const Node& n) {
    const char* attr = detail::resource_attr_for(n);
    if (!attr)
      return;
    if (auto value = n.attr(attr); value && !value->empty())
      out.push_back({&n, attr, *value});
  });
  return out;
}

inline std::vector<ConstRefSlot> anchor_refs(const Node& root) {
  std::vector<ConstRefSlot> out;
  walk(root, [&](const Node& n) {
    if (!n.is_element("a"))
      return;
    if (auto href = n.attr("href"); href && !href->empty())
      out.push_back({&n, "href", *href});
  });
  return out;
}

inline std::vector<RefSlot> anchor_refs(Node& root) {
  std::vector<RefSlot> out;
  walk(root, [&](Node& n) {
    if (!n.is_element("a"))
      return;
    if (auto href = n.attr("href"); href && !href->empty())
      out.push_back({&n, "href", *href});
  });
  return out;
}

inline std::vector<ConstRefSlot> form_actions(const Node& root) {
  std::vector<ConstRefSlot> out;
  walk(root, [&](const Node& n) {
    if (!n.is_element("form"))
      return;
    if (auto action = n.attr("action"); action && !action->empty())
      out.push_back({&n, "action", *action});
  });
  return out;
}

}  // namespace lurebench::dom
