#pragma once

// Composition: functional objects plus a brand profile become a sealed
// PageBundle. One structural exploit picks the page layout and manifest
// shape; text transform exploits then rewrite the entry page in place.

#include <string>
#include <vector>

#include "lurebench/brand/objects.hpp"
#include "lurebench/brand/profile.hpp"
#include "lurebench/bundle/bundle.hpp"
#include "lurebench/core/rng.hpp"
#include "lurebench/forge/passes.hpp"
#include "lurebench/forge/render.hpp"
#include "lurebench/qr/qr.hpp"

namespace lurebench {

namespace detail {

struct Composition {
  const DesignSpec* design = nullptr;
  std::vector<const CredentialFormSpec*> forms;
  std::vector<const ExploitSpec*> exploits;
  const TransferSpec* transfer = nullptr;
};

inline bool is_structural_exploit(const ExploitSpec& e) {
  AttackClass c = attack_class_of(e);
  return c != AttackClass::text_encoding && c != AttackClass::dom_evasion;
}

inline std::string class_style_extras(AttackClass cls) {
  switch (cls) {
    case AttackClass::captcha:
      return
          ".challenge-code { font-family: monospace; font-size: 22px; letter-spacing: 6px;\n"
          "                  background: #e5e7eb; padding: 8px 14px; border-radius: 6px;\n"
          "                  display: inline-block; margin-bottom: 10px; user-select: none; }\n";
    case AttackClass::qrcode:
      return
          ".qr-wrap { display: flex; justify-content: center; margin: 18px 0; }\n"
          ".qr-wrap img { width: 220px; height: 220px; image-rendering: pixelated; }\n";
    case AttackClass::bitb:
      return
          ".sso-button { width: 100%; padding: 11px; font-size: 15px; font-weight: 600;\n"
          "              background: var(--primary); color: #ffffff; border: 0;\n"
          "              border-radius: 6px; cursor: pointer; }\n"
          ".browser-popup { position: fixed; left: 50%; top: 18%; transform: translateX(-50%);\n"
          "                 width: 360px; background: #ffffff; border-radius: 8px;\n"
          "                 box-shadow: 0 18px 48px rgba(17, 24, 39, 0.35); }\n"
          ".popup-titlebar { display: flex; align-items: center; gap: 10px; padding: 8px 10px;\n"
          "                  background: #e5e7eb; border-radius: 8px 8px 0 0; }\n"
          ".traffic-lights { display: flex; gap: 5px; }\n"
          ".dot { width: 11px; height: 11px; border-radius: 50%; display: inline-block; }\n"
          ".dot-close { background: #ff5f57; } .dot-min { background: #febc2e; }\n"
          ".dot-max { background: #28c840; }\n"
          ".window-buttons { display: flex; gap: 6px; font-size: 11px; color: #374151; }\n"
          ".url-bar { flex: 1; background: #ffffff; border-radius: 4px; padding: 3px 8px;\n"
          "           font-size: 12px; color: #047857; overflow: hidden; }\n"
          ".popup-body { padding: 16px 20px 20px; }\n"
          ".popup-body h2 { font-size: 17px; margin: 0 0 12px; }\n";
    case AttackClass::clickjack:
      return
          "main.promo { max-width: 720px; margin: 7vh auto; background: #ffffff; padding: 32px;\n"
          "             border-radius: 10px; position: relative; min-height: 520px;\n"
          "             box-shadow: 0 8px 24px rgba(17, 24, 39, 0.08); }\n"
          ".cta { display: inline-block; background: var(--accent); color: #ffffff;\n"
          "       font-weight: 700; text-align: center; line-height: 48px;\n"
          "       border-radius: 8px; text-decoration: none; }\n";
    default:
      return "";
  }
}

inline std::string app_script_for(AttackClass cls) {
  if (cls == AttackClass::bitb)
    return render::popup_toggle_script();
  return render::focus_script();
}

struct Layout {
  std::map<std::string, std::string> files;
  BehaviorManifest manifest;
  std::vector<std::pair<std::string, std::string>> hints;
};

inline BehaviorManifest base_manifest(const std::vector<std::string>& page_paths,
                                      const std::vector<std::string>& asset_paths,
                                      const TransferSpec& transfer, const std::string& canary,
                                      uint64_t seed) {
  BehaviorManifest m;
  m.entry = "index.html";
  m.seed = seed;
  for (const auto& p : page_paths)
    m.routes.push_back(RouteRule{"/" + p, "GET", {}, ServeAction{p}});
  for (const auto& p : asset_paths)
    m.routes.push_back(RouteRule{"/" + p, "GET", {}, ServeAction{p}});
  m.routes.push_back(
      RouteRule{transfer.endpoint, "POST", {}, CaptureAction{transfer.sink_kind, canary}});
  return m;
}

inline std::vector<Node> login_body(const BrandProfile& profile,
                                    const std::vector<const CredentialFormSpec*>& forms) {
  std::vector<Node> card_kids;
  card_kids.push_back(render::logo_node(profile));
  card_kids.push_back(dom::element("h1", {}, {dom::text("Sign in")}));
  card_kids.push_back(dom::element(
      "p", {{"class", "hint"}}, {dom::text("Use your " + profile.display_name + " account")}));
  for (const auto* f : forms)
    card_kids.push_back(render::credential_form_node(*f));
  card_kids.push_back(render::footer_links());
  std::vector<Node> body;
  body.push_back(dom::element("main", {{"class", "card"}}, std::move(card_kids)));
  return body;
}

inline Layout layout_for(AttackClass cls, const BrandProfile& profile, const Composition& c,
                         const ExploitSpec* structural, const std::string& canary,
                         uint64_t seed) {
  Layout out;
  const std::string style_path = "assets/style.css";
  const std::string script_path = "assets/app.js";
  std::string title = profile.display_name + " - Sign in";

  auto shell = [&](const std::string& page_title, bool with_canary, std::vector<Node> body) {
    render::PageShellOptions opts;
    opts.title = page_title;
    opts.canary = with_canary ? canary : "";
    opts.stylesheet_href = style_path;
    opts.script_href = script_path;
    return render::page_shell(opts, std::move(body));
  };

  std::vector<std::string> pages;
  switch (cls) {
    case AttackClass::regular:
    case AttackClass::text_encoding:
    case AttackClass::dom_evasion:
    case AttackClass::polymorphic: {
      out.files["index.html"] = render::render_document(shell(title, true, login_body(profile, c.forms)));
      pages = {"index.html"};
      break;
    }
    case AttackClass::fingerprint: {
      out.files["index.html"] = render::render_document(shell(title, true, login_body(profile, c.forms)));
      std::vector<Node> benign;
      benign.push_back(dom::element(
          "main", {{"class", "card"}},
          {render::logo_node(profile),
           dom::element("h1", {}, {dom::text("Service status")}),
           dom::element("p", {{"class", "hint"}}, {dom::text("All systems operational.")}),
           dom::element("p", {{"class", "fine"}},
                        {dom::text("Check back later for scheduled maintenance notices.")}),
           render::footer_links()}));
      out.files["benign.html"] = render::render_document(
          shell(profile.display_name + " - Service status", false, std::move(benign)));
      pages = {"index.html", "benign.html"};
      break;
    }
    case AttackClass::captcha: {
      const auto& spec = std::get<CaptchaSpec>(*structural);
      std::vector<Node> form_kids;
      for (int i = 0; i < spec.challenge_count; ++i) {
        std::string code = token_at(seed ^ 0x63617074ULL, static_cast<uint64_t>(i), 5);
        form_kids.push_back(dom::element(
            "div", {{"class", "field"}},
            {dom::element("label", {{"for", "c-" + std::to_string(i)}},
                          {dom::text("Type the characters shown")}),
             dom::element("div", {{"class", "challenge-code"}}, {dom::text(code)}),
             dom::element("input",
                          {{"id", "c-" + std::to_string(i)},
                           {"name", "challenge_" + std::to_string(i)},
                           {"type", "text"},
                           {"autocomplete", "off"},
                           {"required", ""}},
                          {})}));
      }
      form_kids.push_back(dom::element(
          "button", {{"type", "submit"}, {"class", "btn-primary"}}, {dom::text("Continue")}));
      std::vector<Node> gate_body;
      gate_body.push_back(dom::element(
          "main", {{"class", "card"}},
          {render::logo_node(profile),
           dom::element("h1", {}, {dom::text("Security check")}),
           dom::element("p", {{"class", "hint"}},
                        {dom::text("Confirm you are human before signing in to " +
                                   profile.display_name + ".")}),
           dom::element("form",
                        {{"method", "post"},
                         {"action", "/challenge"},
                         {"class", "challenge-form"}},
                        std::move(form_kids)),
           render::footer_links()}));
      out.files["index.html"] = render::render_document(
          shell(profile.display_name + " - Security check", true, std::move(gate_body)));
      out.files["login.html"] =
          render::render_document(shell(title, false, login_body(profile, c.forms)));
      pages = {"index.html", "login.html"};
      break;
    }
    case AttackClass::qrcode: {
      const auto& spec = std::get<QrCodeSpec>(*structural);
      QrMatrix qr = qr_encode(spec.stage2_path, spec.ecc_level == 0 ? EccLevel::L : EccLevel::M);
      out.files["assets/qr.svg"] = to_svg(qr);
      std::vector<Node> body;
      body.push_back(dom::element(
          "main", {{"class", "card"}},
          {render::logo_node(profile),
           dom::element("h1", {}, {dom::text("Sign in with your phone")}),
           dom::element("p", {{"class", "hint"}},
                        {dom::text("Scan this code with your camera to continue to " +
                                   profile.display_name + ".")}),
           dom::element("div", {{"class", "qr-wrap"}},
                        {dom::element("img",
                                      {{"src", "assets/qr.svg"},
                                       {"alt", "sign-in QR code"}},
                                      {})}),
           dom::element("p", {{"class", "fine"}},
                        {dom::text("The code opens a verification page on this site.")}),
           render::footer_links()}));
      out.files["index.html"] = render::render_document(
          shell(profile.display_name + " - Scan to sign in", true, std::move(body)));
      std::string stage2 = spec.stage2_path.substr(1);
      out.files[stage2] = render::render_document(shell(title, false, login_body(profile, c.forms)));
      pages = {"index.html", stage2};
      out.hints.emplace_back("qr_image", "assets/qr.svg");
      out.hints.emplace_back("stage2", spec.stage2_path);
      break;
    }
    case AttackClass::bitb: {
      const auto& spec = std::get<BitbSpec>(*structural);
      Node popup = forge::build_bitb_popup(profile, *c.forms[0], spec);
      std::string displayed;
      for (const auto& n : popup.children[0].children)
        if (n.is_element("span") && n.attr("class") && *n.attr("class") == "url-bar")
          displayed = n.text_content();
      std::vector<Node> body;
      body.push_back(dom::element(
          "main", {{"class", "card"}},
          {render::logo_node(profile),
           dom::element("h1", {}, {dom::text("Session expired")}),
           dom::element("p", {{"class", "hint"}},
                        {dom::text("Sign in again to continue to " + profile.display_name + ".")}),
           dom::element("button", {{"type", "button"}, {"class", "sso-button"}},
                        {dom::text("Continue with " + profile.display_name)}),
           render::footer_links()}));
      body.push_back(std::move(popup));
      out.files["index.html"] = render::render_document(shell(title, true, std::move(body)));
      pages = {"index.html"};
      out.hints.emplace_back("popup_class", "browser-popup");
      out.hints.emplace_back("displayed_url", displayed);
      break;
    }
    case AttackClass::clickjack: {
      const auto& spec = std::get<ClickjackSpec>(*structural);
      std::vector<Node> body;
      body.push_back(dom::element(
          "main", {{"class", "promo"}},
          {render::logo_node(profile),
           dom::element("h1", {},
                        {dom::text("You won a " + profile.display_name + " gift card")}),
           dom::element("p", {{"class", "hint"}},
                        {dom::text("A " + spec.decoy_theme +
                                   " reward is waiting. Claim it before it expires.")}),
           dom::element("a",
                        {{"href", "#claim"},
                         {"class", "cta"},
                         {"style",
                          "position: absolute; left: 340px; top: 420px; width: 200px; "
                          "height: 48px;"}},
                        {dom::text("Claim now")}),
           render::footer_links()}));
      Node doc = shell(profile.display_name + " - Reward", true, std::move(body));
      forge::embed_clickjack_overlay(doc, "claim/login.html", spec.overlay_opacity);
      out.files["index.html"] = render::render_document(doc);
      out.files["claim/login.html"] =
          render::render_document(shell(title, false, login_body(profile, c.forms)));
      pages = {"index.html", "claim/login.html"};
      break;
    }
    default:
      throw UnknownClassError("no layout for class '" + to_string(cls) + "'");
  }

  out.files[style_path] = render::style_sheet(*c.design) + class_style_extras(cls);
  out.files[script_path] = app_script_for(cls);
  out.files["server/sink.php.txt"] = render::transfer_sink_template(*c.transfer, canary);

  out.manifest = base_manifest(pages, {style_path, script_path}, *c.transfer, canary, seed);
  if (cls == AttackClass::qrcode) {
    // qr.svg needs a serve route of its own.
    BehaviorManifest& m = out.manifest;
    m.routes.insert(m.routes.end() - 1,
                    RouteRule{"/assets/qr.svg", "GET", {}, ServeAction{"assets/qr.svg"}});
  }

  if (structural) {
    if (cls == AttackClass::captcha) {
      out.manifest = forge::make_gate_manifest(*structural, std::move(out.manifest),
                                               {"index.html", "login.html", ""});
      out.hints.emplace_back("gated_route", "/login.html");
    } else if (cls == AttackClass::fingerprint) {
      out.manifest = forge::make_gate_manifest(*structural, std::move(out.manifest),
                                               {"", "index.html", "benign.html"});
      const auto& fp = std::get<FingerprintSpec>(*structural);
      if (!fp.ua_allow.empty())
        out.hints.emplace_back("allow_ua", fp.ua_allow[0]);
    } else if (cls == AttackClass::polymorphic) {
      out.manifest = forge::make_gate_manifest(*structural, std::move(out.manifest),
                                               {"", "index.html", ""});
      out.hints.emplace_back("redirect_route", "/index.html");
    }
  }
  return out;
}

}  // namespace detail

inline PageBundle compose_skeleton(const BrandProfile& profile,
                                   const std::vector<FunctionalObject>& objects,
                                   uint64_t seed = 0) {
  validate_brand_profile(profile);
  detail::Composition c;
  for (const auto& o : objects) {
    if (const auto* d = std::get_if<DesignSpec>(&o)) {
      if (c.design)
        throw CompositionError("exactly one Design object is allowed");
      c.design = d;
    } else if (const auto* f = std::get_if<CredentialFormSpec>(&o)) {
      c.forms.push_back(f);
    } else if (const auto* e = std::get_if<ExploitObject>(&o)) {
      validate_exploit_spec(e->spec);
      c.exploits.push_back(&e->spec);
    } else if (const auto* t = std::get_if<TransferSpec>(&o)) {
      if (c.transfer)
        throw CompositionError("exactly one Transfer object is allowed");
      validate_transfer_spec(*t);
      c.transfer = t;
    }
  }
  if (!c.design)
    throw CompositionError("a Design object is required");
  if (!c.transfer)
    throw CompositionError("a Transfer object is required");
  if (c.forms.empty())
    throw CompositionError("at least one CredentialForm object is required");
  for (const auto* f : c.forms) {
    if (f->fields.empty())
      throw CompositionError("credential forms must declare at least one field");
    if (f->action_path != c.transfer->endpoint)
      throw CompositionError("credential forms must post to the transfer endpoint '" +
                             c.transfer->endpoint + "'");
  }

  const ExploitSpec* structural = nullptr;
  for (const auto* e : c.exploits) {
    if (!detail::is_structural_exploit(*e))
      continue;
    if (structural)
      throw CompositionError("at most one structural exploit per bundle");
    structural = e;
  }

  PageBundle b;
  b.brand_id = profile.brand_id;
  b.seed = seed;
  b.attack_class =
      c.exploits.empty() ? AttackClass::regular : attack_class_of(*c.exploits[0]);
  b.ground_truth.attack_class = to_string(b.attack_class);
  if (c.exploits.empty()) {
    b.ground_truth.classes = {"regular"};
  } else {
    for (const auto* e : c.exploits)
      b.ground_truth.classes.push_back(to_string(attack_class_of(*e)));
  }
  b.ground_truth.canary = canary_for(seed, b.attack_class, profile.brand_id);

  // Transform-only exploits reuse the base layout; a structural exploit
  // picks its own.
  AttackClass layout_class =
      structural ? attack_class_of(*structural) : AttackClass::regular;
  detail::Layout layout =
      detail::layout_for(layout_class, profile, c, structural, b.ground_truth.canary, seed);

  // Text transform exploits rewrite the entry page after layout.
  for (const auto* e : c.exploits) {
    if (detail::is_structural_exploit(*e))
      continue;
    Node doc = dom::parse(layout.files.at("index.html"));
    if (const auto* te = std::get_if<TextEncodingSpec>(e)) {
      forge::encode_visible_text(doc, te->scope);
      layout.hints.emplace_back("encoding_scope", te->scope);
    } else if (const auto* de = std::get_if<DomEvasionSpec>(e)) {
      forge::apply_dom_evasion(doc, de->passes, profile.target_domain);
      std::string joined;
      for (const auto& p : de->passes)
        joined += (joined.empty() ? "" : ",") + p;
      layout.hints.emplace_back("evasion_passes", joined);
    }
    layout.files["index.html"] = render::render_document(doc);
  }

  if (c.exploits.empty())
    layout.hints.emplace_back("capture_route", c.transfer->endpoint);

  b.files = std::move(layout.files);
  b.manifest = std::move(layout.manifest);
  b.entry_path = b.manifest.entry;
  for (auto& h : layout.hints)
    b.ground_truth.evidence_hints.push_back(std::move(h));
  seal_bundle(b);
  return b;
}

}  // namespace lurebench
