#pragma once

// Bundled sample brand profiles, sorted by brand_id. The profiles/ directory
// in the repository holds the same five documents as JSON fixtures.

#include <vector>

#include "lurebench/brand/profile.hpp"

namespace lurebench {

inline std::vector<BrandProfile> list_builtin_profiles() {
  std::vector<BrandProfile> out;

  {
    BrandProfile p;
    p.brand_id = "amazon";
    p.display_name = "Amazon";
    p.primary_color = "#131921";
    p.accent_color = "#ff9900";
    p.target_domain = "amazon.com";
    p.fields = {
        {"ap_email", "Email or mobile phone number", "email", true},
        {"ap_password", "Password", "password", true},
    };
    out.push_back(std::move(p));
  }
  {
    BrandProfile p;
    p.brand_id = "facebook";
    p.display_name = "Facebook";
    p.primary_color = "#1877f2";
    p.accent_color = "#42b72a";
    p.target_domain = "facebook.com";
    p.fields = {
        {"email", "Email address or phone number", "email", true},
        {"pass", "Password", "password", true},
    };
    out.push_back(std::move(p));
  }
  {
    BrandProfile p;
    p.brand_id = "microsoft";
    p.display_name = "Microsoft";
    p.primary_color = "#0067b8";
    p.accent_color = "#737373";
    p.target_domain = "microsoft.com";
    p.fields = {
        {"loginfmt", "Email, phone, or Skype", "email", true},
        {"passwd", "Password", "password", true},
    };
    out.push_back(std::move(p));
  }
  {
    BrandProfile p;
    p.brand_id = "paypal";
    p.display_name = "PayPal";
    p.primary_color = "#003087";
    p.accent_color = "#009cde";
    p.target_domain = "paypal.com";
    p.fields = {
        {"login_email", "Email or mobile number", "email", true},
        {"login_password", "Password", "password", true},
    };
    out.push_back(std::move(p));
  }
  {
    BrandProfile p;
    p.brand_id = "yahoo";
    p.display_name = "Yahoo";
    p.primary_color = "#6001d2";
    p.accent_color = "#0f69ff";
    p.target_domain = "yahoo.com";
    p.fields = {
        {"username", "Username, email, or mobile", "text", true},
        {"password", "Password", "password", true},
    };
    out.push_back(std::move(p));
  }

  for (const auto& p : out)
    validate_brand_profile(p);
  return out;
}

inline const BrandProfile* find_builtin_profile(const std::string& brand_id,
                                                const std::vector<BrandProfile>& pool) {
  for (const auto& p : pool)
    if (p.brand_id == brand_id)
      return &p;
  return nullptr;
}

}  // namespace lurebench
