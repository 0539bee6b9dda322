#pragma once

// Brand profiles: the organization a lure imitates. Profiles arrive as JSON
// documents, are validated field by field, and round-trip through
// serialize_brand_profile byte-stably.

#include <string>
#include <vector>

#include <json.hpp>

#include "lurebench/errors.hpp"

namespace lurebench {

struct FieldSpec {
  std::string name;        // form-control name token
  std::string label;       // visible label text
  std::string input_kind;  // text | password | email | tel
  bool sensitive = false;
};

struct BrandProfile {
  std::string brand_id;
  std::string display_name;
  std::string primary_color;  // #RRGGBB
  std::string accent_color;   // #RRGGBB
  std::string logo_placeholder = "inline:monogram";
  std::string target_domain;  // legitimate domain being imitated
  std::vector<FieldSpec> fields;

  const FieldSpec* first_sensitive() const {
    for (const auto& f : fields)
      if (f.sensitive)
        return &f;
    return nullptr;
  }
};

namespace detail {

inline bool is_hex_color(const std::string& s) {
  if (s.size() != 7 || s[0] != '#')
    return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')))
      return false;
  }
  return true;
}

inline bool is_id_token(const std::string& s, std::size_t max_len) {
  if (s.empty() || s.size() > max_len)
    return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-'))
      return false;
  return true;
}

inline std::string require_string(const nlohmann::ordered_json& j, const std::string& key,
                                  const std::string& prefix = "") {
  std::string at = prefix.empty() ? key : prefix + "." + key;
  if (!j.contains(key))
    throw ValidationError(at, "missing required key");
  if (!j.at(key).is_string())
    throw ValidationError(at, "must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace detail

inline void validate_brand_profile(const BrandProfile& p) {
  if (!detail::is_id_token(p.brand_id, 32))
    throw ValidationError("brand_id", "must match [a-z0-9_-]{1,32}, got '" + p.brand_id + "'");
  if (p.display_name.empty())
    throw ValidationError("display_name", "must be non-empty");
  if (!detail::is_hex_color(p.primary_color))
    throw ValidationError("primary_color", "must be #RRGGBB, got '" + p.primary_color + "'");
  if (!detail::is_hex_color(p.accent_color))
    throw ValidationError("accent_color", "must be #RRGGBB, got '" + p.accent_color + "'");
  if (p.target_domain.find('.') == std::string::npos)
    throw ValidationError("target_domain", "must contain a dot, got '" + p.target_domain + "'");
  if (p.target_domain.find("://") != std::string::npos)
    throw ValidationError("target_domain", "must not carry a scheme");
  if (p.target_domain.find('/') != std::string::npos ||
      p.target_domain.find(' ') != std::string::npos)
    throw ValidationError("target_domain", "must be a bare domain name");
  if (p.logo_placeholder.empty())
    throw ValidationError("logo_placeholder", "must be non-empty");
  if (p.fields.empty())
    throw ValidationError("fields", "must contain at least one entry");
  bool any_sensitive = false;
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < p.fields.size(); ++i) {
    const auto& f = p.fields[i];
    std::string at = "fields[" + std::to_string(i) + "]";
    if (!detail::is_id_token(f.name, 64))
      throw ValidationError(at + ".name", "must be a lowercase token");
    for (const auto& prev : seen)
      if (prev == f.name)
        throw ValidationError(at + ".name", "duplicate field name '" + f.name + "'");
    seen.push_back(f.name);
    if (f.label.empty())
      throw ValidationError(at + ".label", "must be non-empty");
    if (f.input_kind != "text" && f.input_kind != "password" && f.input_kind != "email" &&
        f.input_kind != "tel")
      throw ValidationError(at + ".input_kind", "must be one of text|password|email|tel");
    any_sensitive = any_sensitive || f.sensitive;
  }
  if (!any_sensitive)
    throw ValidationError("fields", "at least one field must be marked sensitive");
}

inline BrandProfile load_brand_profile(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("profile document is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError("profile document must be a JSON object");

  BrandProfile p;
  p.brand_id = detail::require_string(j, "brand_id");
  p.display_name = detail::require_string(j, "display_name");
  p.primary_color = detail::require_string(j, "primary_color");
  p.accent_color = detail::require_string(j, "accent_color");
  p.target_domain = detail::require_string(j, "target_domain");
  if (j.contains("logo_placeholder")) {
    if (!j.at("logo_placeholder").is_string())
      throw ValidationError("logo_placeholder", "must be a string");
    p.logo_placeholder = j.at("logo_placeholder").get<std::string>();
  }
  if (!j.contains("fields") || !j.at("fields").is_array())
    throw ValidationError("fields", "missing or not an array");
  for (std::size_t i = 0; i < j.at("fields").size(); ++i) {
    const auto& jf = j.at("fields").at(i);
    std::string at = "fields[" + std::to_string(i) + "]";
    if (!jf.is_object())
      throw ValidationError(at, "must be an object");
    FieldSpec f;
    f.name = detail::require_string(jf, "name", at);
    f.label = detail::require_string(jf, "label", at);
    f.input_kind = detail::require_string(jf, "input_kind", at);
    if (jf.contains("sensitive")) {
      if (!jf.at("sensitive").is_boolean())
        throw ValidationError(at + ".sensitive", "must be a boolean");
      f.sensitive = jf.at("sensitive").get<bool>();
    }
    p.fields.push_back(std::move(f));
  }
  validate_brand_profile(p);
  return p;
}

inline std::string serialize_brand_profile(const BrandProfile& p) {
  nlohmann::ordered_json j;
  j["brand_id"] = p.brand_id;
  j["display_name"] = p.display_name;
  j["primary_color"] = p.primary_color;
  j["accent_color"] = p.accent_color;
  j["logo_placeholder"] = p.logo_placeholder;
  j["target_domain"] = p.target_domain;
  j["fields"] = nlohmann::ordered_json::array();
  for (const auto& f : p.fields) {
    nlohmann::ordered_json jf;
    jf["name"] = f.name;
    jf["label"] = f.label;
    jf["input_kind"] = f.input_kind;
    jf["sensitive"] = f.sensitive;
    j["fields"].push_back(std::move(jf));
  }
  return j.dump(2) + "\n";
}

inline bool operator==(const FieldSpec& a, const FieldSpec& b) {
  return a.name == b.name && a.label == b.label && a.input_kind == b.input_kind &&
         a.sensitive == b.sensitive;
}

inline bool operator==(const BrandProfile& a, const BrandProfile& b) {
  return a.brand_id == b.brand_id && a.display_name == b.display_name &&
         a.primary_color == b.primary_color && a.accent_color == b.accent_color &&
         a.logo_placeholder == b.logo_placeholder && a.target_domain == b.target_domain &&
         a.fields == b.fields;
}

}  // namespace lurebench
