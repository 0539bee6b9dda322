#pragma once

// Deterministic page rendering shared by every attack class: a sign-in card
// shell, a stylesheet derived from the brand palette, a single behavior
// script, and the inert transfer-sink template.

#include <string>
#include <vector>

#include "lurebench/brand/objects.hpp"
#include "lurebench/brand/profile.hpp"
#include "lurebench/dom/dom.hpp"

namespace lurebench {
namespace render {

inline std::string monogram_letter(const BrandProfile& p) {
  if (p.display_name.empty())
    return "?";
  char c = p.display_name[0];
  if (c >= 'a' && c <= 'z')
    c = static_cast<char>(c - 'a' + 'A');
  return std::string(1, c);
}

inline Node logo_node(const BrandProfile& p) {
  return dom::element("div",
                      {{"class", "logo"}, {"aria-label", p.display_name + " logo"}},
                      {dom::text(monogram_letter(p))});
}

inline Node field_row(const FieldSpec& f) {
  std::string id = "f-" + f.name;
  Node label = dom::element("label", {{"for", id}}, {dom::text(f.label)});
  Node input = dom::element("input", {{"id", id},
                                      {"name", f.name},
                                      {"type", f.input_kind},
                                      {"placeholder", f.label},
                                      {"autocomplete", "off"},
                                      {"required", ""}},
                            {});
  return dom::element("div", {{"class", "field"}}, {std::move(label), std::move(input)});
}

inline Node credential_form_node(const CredentialFormSpec& form) {
  std::vector<Node> kids;
  for (const auto& f : form.fields)
    kids.push_back(field_row(f));
  kids.push_back(dom::element("button", {{"type", "submit"}, {"class", "btn-primary"}},
                              {dom::text(form.submit_label)}));
  return dom::element(
      "form", {{"method", "post"}, {"action", form.action_path}, {"class", "login-form"}},
      std::move(kids));
}

inline Node footer_links() {
  return dom::element("nav", {{"class", "links"}},
                      {dom::element("a", {{"href", "#help"}}, {dom::text("Help")}),
                       dom::element("a", {{"href", "#privacy"}}, {dom::text("Privacy")}),
                       dom::element("a", {{"href", "#terms"}}, {dom::text("Terms")})});
}

struct PageShellOptions {
  std::string title;
  std::string canary;  // non-empty: emit the research-corpus meta element
  std::string stylesheet_href = "assets/style.css";
  std::string script_href = "assets/app.js";  // empty: no script element
};

// Wraps card content in the full document. The shell carries exactly one
// stylesheet link and at most one script element.
inline Node page_shell(const PageShellOptions& opts, std::vector<Node> body_children) {
  std::vector<Node> head_kids;
  head_kids.push_back(dom::element("meta", {{"charset", "utf-8"}}, {}));
  head_kids.push_back(dom::element(
      "meta", {{"name", "viewport"}, {"content", "width=device-width, initial-scale=1"}}, {}));
  head_kids.push_back(dom::element("title", {}, {dom::text(opts.title)}));
  if (!opts.canary.empty())
    head_kids.push_back(
        dom::element("meta", {{"name", "research-corpus"}, {"content", opts.canary}}, {}));
  head_kids.push_back(dom::element(
      "link", {{"rel", "stylesheet"}, {"href", opts.stylesheet_href}}, {}));

  if (!opts.script_href.empty())
    body_children.push_back(dom::element("script", {{"src", opts.script_href}}, {}));

  Node html = dom::element("html", {{"lang", "en"}},
                           {dom::element("head", {}, std::move(head_kids)),
                            dom::element("body", {}, std::move(body_children))});
  Node doc = dom::document({});
  // The serializer brackets Opaque text, so the node holds "!doctype html".
  doc.children.push_back(dom::raw_text("!doctype html"));
  doc.children.back().kind = NodeKind::Opaque;
  doc.children.push_back(dom::raw_text("\n"));
  doc.children.push_back(std::move(html));
  return doc;
}

// The standard sign-in card used by the baseline layout.
inline Node login_card(const BrandProfile& p, const CredentialFormSpec& form) {
  return dom::element("main", {{"class", "card"}},
                      {logo_node(p),
                       dom::element("h1", {}, {dom::text("Sign in")}),
                       dom::element("p", {{"class", "hint"}},
                                    {dom::text("Use your " + p.display_name + " account")}),
                       credential_form_node(form), footer_links()});
}

inline std::string render_document(const Node& doc) { return dom::serialize(doc); }

inline std::string style_sheet(const DesignSpec& d) {
  std::string css;
  css += "/* layout template: " + d.layout_template_id + " */\n";
  css += "/* framework hint: " + d.framework_hint + " */\n";
  css += ":root { --primary: " + d.primary_color + "; --accent: " + d.accent_color + "; }\n";
  css +=
      "* { box-sizing: border-box; }\n"
      "body { margin: 0; font-family: system-ui, sans-serif; background: #f3f4f6;\n"
      "       color: #111827; min-height: 100vh; }\n"
      "main.card { max-width: 380px; margin: 9vh auto; background: #ffffff; padding: 28px;\n"
      "            border-radius: 10px; box-shadow: 0 8px 24px rgba(17, 24, 39, 0.08); }\n"
      ".logo { width: 52px; height: 52px; border-radius: 10px; background: var(--primary);\n"
      "        color: #ffffff; font-size: 30px; font-weight: 700; display: flex;\n"
      "        align-items: center; justify-content: center; }\n"
      "h1 { font-size: 22px; margin: 18px 0 4px; }\n"
      "p.hint { margin: 0 0 18px; color: #4b5563; font-size: 14px; }\n"
      ".field { margin-bottom: 14px; }\n"
      ".field label { display: block; font-size: 13px; font-weight: 600; margin-bottom: 5px; }\n"
      ".field input { width: 100%; padding: 10px 12px; font-size: 15px;\n"
      "               border: 1px solid #d1d5db; border-radius: 6px; }\n"
      ".field input:focus { outline: 2px solid var(--accent); border-color: var(--accent); }\n"
      ".btn-primary { width: 100%; padding: 11px; font-size: 15px; font-weight: 600;\n"
      "               background: var(--primary); color: #ffffff; border: 0;\n"
      "               border-radius: 6px; cursor: pointer; }\n"
      ".btn-primary:hover { filter: brightness(1.1); }\n"
      "nav.links { margin-top: 18px; display: flex; gap: 14px; }\n"
      "nav.links a { color: var(--accent); font-size: 13px; text-decoration: none; }\n"
      "p.fine { color: #6b7280; font-size: 12px; margin-top: 16px; }\n";
  return css;
}

// Benign focus behavior; every non-evasion page carries exactly this one
// script so script_element_count separates evasion pages from the baseline.
inline std::string focus_script() {
  return
      "(function () {\n"
      "  var first = document.querySelector('.login-form input, form input');\n"
      "  if (first) { first.focus(); }\n"
      "  var form = document.querySelector('form');\n"
      "  if (form) {\n"
      "    form.addEventListener('submit', function () {\n"
      "      var btn = form.querySelector('button[type=submit]');\n"
      "      if (btn) { btn.disabled = true; }\n"
      "    });\n"
      "  }\n"
      "})();\n";
}

inline std::string popup_toggle_script() {
  return
      "(function () {\n"
      "  var trigger = document.querySelector('.sso-button');\n"
      "  var popup = document.querySelector('.browser-popup');\n"
      "  if (trigger && popup) {\n"
      "    trigger.addEventListener('click', function () {\n"
      "      popup.style.display = 'block';\n"
      "      var first = popup.querySelector('input');\n"
      "      if (first) { first.focus(); }\n"
      "    });\n"
      "  }\n"
      "})();\n";
}

// Inert sink template. Shipped as .txt so no runtime ever executes it; the
// canary ties captured records back to this bundle.
inline std::string transfer_sink_template(const TransferSpec& t, const std::string& canary) {
  std::string body;
  body += "<?php\n";
  body += "// Inert transfer template, bundled for structural completeness only.\n";
  body += "// The preview server interprets manifest.json instead of running this.\n";
  body += "$record = $_POST;\n";
  body += "$record[\"research_canary\"] = \"" + canary + "\";\n";
  if (t.sink_kind == "email") {
    body += "@mail(\"sink@localhost\", \"captured-fields\", http_build_query($record));\n";
  } else if (t.sink_kind == "remote_post") {
    body += "// would POST " + t.encoding + " to http://127.0.0.1" + t.endpoint + "\n";
    body += "@file_get_contents(\"http://127.0.0.1\" . \"" + t.endpoint + "\");\n";
  } else {
    body += "@file_put_contents(\"capture.ndjson\", json_encode($record) . \"\\n\", FILE_APPEND);\n";
  }
  body += "header(\"Location: /index.html\");\n";
  body += "?>\n";
  return body;
}

}  // namespace render
}  // namespace lurebench
