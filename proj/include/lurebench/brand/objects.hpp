#pragma once

// Functional objects a lure is composed from, and the attack-class taxonomy.
// A composed bundle carries exactly one Design, exactly one Transfer, at
// least one CredentialForm, and zero or more Exploits.

#include <string>
#include <variant>
#include <vector>

#include "lurebench/brand/profile.hpp"
#include "lurebench/core/ip.hpp"
#include "lurebench/errors.hpp"

namespace lurebench {

enum class AttackClass {
  regular,
  captcha,
  qrcode,
  bitb,
  clickjack,
  dom_evasion,
  polymorphic,
  text_encoding,
  fingerprint,
};

inline const std::vector<AttackClass>& all_attack_classes() {
  static const std::vector<AttackClass> k = {
      AttackClass::regular,     AttackClass::captcha,       AttackClass::qrcode,
      AttackClass::bitb,        AttackClass::clickjack,     AttackClass::dom_evasion,
      AttackClass::polymorphic, AttackClass::text_encoding, AttackClass::fingerprint,
  };
  return k;
}

inline std::string to_string(AttackClass c) {
  switch (c) {
    case AttackClass::regular: return "regular";
    case AttackClass::captcha: return "captcha";
    case AttackClass::qrcode: return "qrcode";
    case AttackClass::bitb: return "bitb";
    case AttackClass::clickjack: return "clickjack";
    case AttackClass::dom_evasion: return "dom_evasion";
    case AttackClass::polymorphic: return "polymorphic";
    case AttackClass::text_encoding: return "text_encoding";
    case AttackClass::fingerprint: return "fingerprint";
  }
  throw RangeError("unknown attack class value");
}

inline AttackClass attack_class_from_string(const std::string& s) {
  for (AttackClass c : all_attack_classes())
    if (to_string(c) == s)
      return c;
  throw UnknownClassError("unknown attack class '" + s + "'");
}

// Exploit parameter blocks, one per non-regular class.

struct CaptchaSpec {
  int challenge_count = 1;
};

struct QrCodeSpec {
  std::string stage2_path = "/verify/login.html";  // bundle-relative second stage
  int ecc_level = 0;                               // 0 = L, 1 = M
};

struct BitbSpec {
  std::string displayed_url;  // empty: derived from the profile at render time
  std::string chrome_style = "macos";  // macos | windows
};

struct ClickjackSpec {
  std::string decoy_theme = "giveaway";
  double overlay_opacity = 0.02;  // valid range [0, 0.05]
};

// Pass names understood by apply_dom_evasion.
inline const std::vector<std::string>& all_dom_evasion_passes() {
  static const std::vector<std::string> k = {
      "input_type_rewrite",
      "script_strip",
      "target_domain_links",
      "root_relative_resources",
  };
  return k;
}

struct DomEvasionSpec {
  std::vector<std::string> passes = all_dom_evasion_passes();
};

struct PolymorphicSpec {
  int token_length = 8;  // valid range [4, 64]
};

struct TextEncodingSpec {
  std::string scope = "all_visible";  // all_visible | sensitive_labels
};

struct FingerprintSpec {
  std::vector<std::string> ua_allow = {"iPhone"};
  std::vector<std::string> allow_cidrs = {};            // empty: any source address
  std::vector<std::string> deny_cidrs = {"192.0.2.0/24"};
  std::vector<std::string> device_allow = {"mobile"};
};

using ExploitSpec = std::variant<CaptchaSpec, QrCodeSpec, BitbSpec, ClickjackSpec, DomEvasionSpec,
                                 PolymorphicSpec, TextEncodingSpec, FingerprintSpec>;

inline AttackClass attack_class_of(const ExploitSpec& e) {
  struct V {
    AttackClass operator()(const CaptchaSpec&) const { return AttackClass::captcha; }
    AttackClass operator()(const QrCodeSpec&) const { return AttackClass::qrcode; }
    AttackClass operator()(const BitbSpec&) const { return AttackClass::bitb; }
    AttackClass operator()(const ClickjackSpec&) const { return AttackClass::clickjack; }
    AttackClass operator()(const DomEvasionSpec&) const { return AttackClass::dom_evasion; }
    AttackClass operator()(const PolymorphicSpec&) const { return AttackClass::polymorphic; }
    AttackClass operator()(const TextEncodingSpec&) const { return AttackClass::text_encoding; }
    AttackClass operator()(const FingerprintSpec&) const { return AttackClass::fingerprint; }
  };
  return std::visit(V{}, e);
}

inline void validate_exploit_spec(const ExploitSpec& e) {
  if (const auto* c = std::get_if<CaptchaSpec>(&e)) {
    if (c->challenge_count < 1)
      throw ValidationError("challenge_count", "must be at least 1");
  } else if (const auto* q = std::get_if<QrCodeSpec>(&e)) {
    if (q->stage2_path.empty() || q->stage2_path[0] != '/')
      throw ValidationError("stage2_path", "must start with '/'");
    if (q->ecc_level != 0 && q->ecc_level != 1)
      throw ValidationError("ecc_level", "must be 0 (L) or 1 (M)");
  } else if (const auto* b = std::get_if<BitbSpec>(&e)) {
    if (b->chrome_style != "macos" && b->chrome_style != "windows")
      throw ValidationError("chrome_style", "must be macos or windows");
  } else if (const auto* k = std::get_if<ClickjackSpec>(&e)) {
    if (!(k->overlay_opacity >= 0.0 && k->overlay_opacity <= 0.05))
      throw ValidationError("overlay_opacity",
                            "must lie in [0, 0.05], got " + std::to_string(k->overlay_opacity));
    if (k->decoy_theme.empty())
      throw ValidationError("decoy_theme", "must be non-empty");
  } else if (const auto* d = std::get_if<DomEvasionSpec>(&e)) {
    for (const auto& pass : d->passes) {
      bool known = false;
      for (const auto& k2 : all_dom_evasion_passes())
        known = known || k2 == pass;
      if (!known)
        throw ValidationError("passes", "unknown pass '" + pass + "'");
    }
  } else if (const auto* p = std::get_if<PolymorphicSpec>(&e)) {
    if (p->token_length < 4 || p->token_length > 64)
      throw ValidationError("token_length",
                            "must lie in [4, 64], got " + std::to_string(p->token_length));
  } else if (const auto* t = std::get_if<TextEncodingSpec>(&e)) {
    if (t->scope != "all_visible" && t->scope != "sensitive_labels")
      throw ValidationError("scope", "must be all_visible or sensitive_labels");
  } else if (const auto* f = std::get_if<FingerprintSpec>(&e)) {
    if (f->ua_allow.empty() && f->device_allow.empty() && f->allow_cidrs.empty())
      throw ValidationError("fingerprint", "at least one allow rule is required");
    for (const auto& c2 : f->allow_cidrs)
      if (!is_valid_cidr(c2))
        throw ValidationError("allow_cidrs", "invalid CIDR '" + c2 + "'");
    for (const auto& c2 : f->deny_cidrs)
      if (!is_valid_cidr(c2))
        throw ValidationError("deny_cidrs", "invalid CIDR '" + c2 + "'");
  }
}

// Page-level objects.

struct DesignSpec {
  std::string primary_color;
  std::string accent_color;
  std::string logo_placeholder;
  std::string layout_template_id = "centered-card";
  std::string framework_hint = "utility-css";
};

struct CredentialFormSpec {
  std::vector<FieldSpec> fields;
  std::string submit_label = "Sign in";
  std::string action_path = "/capture";  // bundle-relative POST target
};

struct TransferSpec {
  std::string sink_kind = "email";     // email | remote_post | db_store
  std::string endpoint = "/capture";   // must start with '/'
  std::string encoding = "form_urlencoded";  // form_urlencoded | json
};

inline void validate_transfer_spec(const TransferSpec& t) {
  if (t.sink_kind != "email" && t.sink_kind != "remote_post" && t.sink_kind != "db_store")
    throw ValidationError("sink_kind", "must be email, remote_post, or db_store");
  if (t.endpoint.empty() || t.endpoint[0] != '/')
    throw ValidationError("endpoint", "must start with '/'");
  if (t.encoding != "form_urlencoded" && t.encoding != "json")
    throw ValidationError("encoding", "must be form_urlencoded or json");
}

struct ExploitObject {
  ExploitSpec spec;
};

using FunctionalObject = std::variant<DesignSpec, CredentialFormSpec, ExploitObject, TransferSpec>;

inline DesignSpec design_for(const BrandProfile& p) {
  DesignSpec d;
  d.primary_color = p.primary_color;
  d.accent_color = p.accent_color;
  d.logo_placeholder = p.logo_placeholder;
  return d;
}

inline CredentialFormSpec credential_form_for(const BrandProfile& p) {
  CredentialFormSpec f;
  f.fields = p.fields;
  return f;
}

}  // namespace lurebench
