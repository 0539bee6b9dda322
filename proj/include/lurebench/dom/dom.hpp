#pragma once

#include "lurebench/dom/node.hpp"
#include "lurebench/dom/parse.hpp"
#include "lurebench/dom/refs.hpp"
#include "lurebench/dom/serialize.hpp"
#include "lurebench/dom/visible.hpp"

// The dom:: vocabulary doubles as lurebench:: vocabulary; modules above the
// DOM layer use these names constantly.
namespace lurebench {

using dom::Node;
using dom::NodeKind;
using dom::Rect;
using dom::VisibleAttrSlot;
using dom::RefSlot;
using dom::ConstRefSlot;

using dom::walk;
using dom::find_all;
using dom::elements_by_tag;
using dom::first_by_tag;
using dom::for_each_element_with_locator;
using dom::locator_of;
using dom::resolve_locator;
using dom::parse_inline_style;
using dom::style_value;
using dom::parse_px;
using dom::rect_of;
using dom::opacity_of;
using dom::visible_text_nodes;
using dom::visible_attr_slots;
using dom::resource_refs;
using dom::anchor_refs;
using dom::form_actions;
using dom::is_invisible_container;
using dom::has_visible_chars;
using dom::escape_text;
using dom::escape_attr;

}  // namespace lurebench
