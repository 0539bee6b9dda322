#pragma once

// Declarative server behavior for a bundle: an ordered list of route rules.
// The first rule whose pattern, method, and gates all match wins. Rules are
// data, not code; the harness and the preview server both interpret them.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lurebench/core/ip.hpp"
#include "lurebench/core/url.hpp"
#include "lurebench/errors.hpp"

namespace lurebench {

struct Gate {
  std::string kind;   // ua_contains | ip_in_cidr | device_is | has_token
  std::string value;  // substring, CIDR, device class, or session key
  bool negate = false;
};

struct ServeAction {
  std::string file;  // bundle-relative path, no leading slash
};

struct RedirectAction {
  std::string location;  // contains exactly one {token} slot
  int token_length = 8;  // valid range [4, 64]
};

struct CaptureAction {
  std::string sink;    // email | remote_post | db_store
  std::string canary;  // marker copied into every captured record
};

struct IssueTokenAction {
  std::string session_key;
};

using RouteAction = std::variant<ServeAction, RedirectAction, CaptureAction, IssueTokenAction>;

struct RouteRule {
  std::string pattern;  // with '?': matched against the full target; else path only
  std::string method;   // GET | POST
  std::vector<Gate> gates;
  RouteAction action;
};

struct BehaviorManifest {
  std::string entry;  // bundle-relative entry page, no leading slash
  uint64_t seed = 0;
  std::vector<std::string> session_keys;
  std::vector<RouteRule> routes;
};

// Glob match where '*' spans any run of characters. Iterative wildcard
// backtracking; no recursion, no regex.
inline bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*')
    ++p;
  return p == pattern.size();
}

inline bool pattern_matches_target(const std::string& pattern, const std::string& target) {
  if (pattern.find('?') != std::string::npos)
    return glob_match(pattern, target);
  std::string path(url_path(target));
  if (path.empty())
    path = target;
  return glob_match(pattern, path);
}

inline int count_token_slots(const std::string& s) {
  int n = 0;
  std::size_t at = 0;
  while ((at = s.find("{token}", at)) != std::string::npos) {
    ++n;
    at += 7;
  }
  return n;
}

inline void validate_manifest(const BehaviorManifest& m) {
  if (m.entry.empty() || m.entry[0] == '/')
    throw ManifestError("entry must be a bundle-relative path without a leading slash");
  for (std::size_t i = 0; i < m.routes.size(); ++i) {
    const auto& r = m.routes[i];
    std::string at = "routes[" + std::to_string(i) + "]";
    if (r.method != "GET" && r.method != "POST")
      throw ManifestError(at + ": method must be GET or POST");
    if (r.pattern.empty() || r.pattern[0] != '/')
      throw ManifestError(at + ": pattern must start with '/'");
    for (const auto& g : r.gates) {
      if (g.kind != "ua_contains" && g.kind != "ip_in_cidr" && g.kind != "device_is" &&
          g.kind != "has_token")
        throw ManifestError(at + ": unknown gate kind '" + g.kind + "'");
      if (g.value.empty())
        throw ManifestError(at + ": gate value must be non-empty");
      if (g.kind == "ip_in_cidr" && !is_valid_cidr(g.value))
        throw ManifestError(at + ": invalid CIDR '" + g.value + "'");
    }
    if (const auto* red = std::get_if<RedirectAction>(&r.action)) {
      if (count_token_slots(red->location) != 1)
        throw ManifestError(at + ": redirect location must contain exactly one {token} slot");
      if (red->token_length < 4 || red->token_length > 64)
        throw ManifestError(at + ": token_length must lie in [4, 64]");
    } else if (const auto* cap = std::get_if<CaptureAction>(&r.action)) {
      if (r.method != "POST")
        throw ManifestError(at + ": capture routes must use POST");
      if (cap->sink != "email" && cap->sink != "remote_post" && cap->sink != "db_store")
        throw ManifestError(at + ": unknown sink '" + cap->sink + "'");
    } else if (const auto* st = std::get_if<ServeAction>(&r.action)) {
      if (st->file.empty() || st->file[0] == '/')
        throw ManifestError(at + ": serve file must be a bundle-relative path");
    } else if (const auto* tok = std::get_if<IssueTokenAction>(&r.action)) {
      if (tok->session_key.empty())
        throw ManifestError(at + ": issue_token requires a session key");
    }
  }
}

// Serve targets and the entry page must exist among the bundle's files.
inline void validate_manifest_against_files(const BehaviorManifest& m,
                                            const std::map<std::string, std::string>& files) {
  validate_manifest(m);
  if (!files.count(m.entry))
    throw ManifestError("entry page '" + m.entry + "' is not a bundle file");
  for (std::size_t i = 0; i < m.routes.size(); ++i)
    if (const auto* st = std::get_if<ServeAction>(&m.routes[i].action))
      if (!files.count(st->file))
        throw ManifestError("routes[" + std::to_string(i) + "]: serve target '" + st->file +
                            "' is not a bundle file");
}

namespace detail {

inline nlohmann::ordered_json action_to_json(const RouteAction& a) {
  nlohmann::ordered_json j;
  if (const auto* s = std::get_if<ServeAction>(&a)) {
    j["type"] = "serve";
    j["file"] = s->file;
  } else if (const auto* r = std::get_if<RedirectAction>(&a)) {
    j["type"] = "redirect";
    j["location"] = r->location;
    j["token_length"] = r->token_length;
  } else if (const auto* c = std::get_if<CaptureAction>(&a)) {
    j["type"] = "capture";
    j["sink"] = c->sink;
    j["canary"] = c->canary;
  } else if (const auto* t = std::get_if<IssueTokenAction>(&a)) {
    j["type"] = "issue_token";
    j["session_key"] = t->session_key;
  }
  return j;
}

inline RouteAction action_from_json(const nlohmann::ordered_json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ManifestError(at + ": action must be an object with a type");
  std::string type = j.at("type").get<std::string>();
  auto str = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j.at(key).is_string())
      throw ManifestError(at + ": action missing string key '" + std::string(key) + "'");
    return j.at(key).get<std::string>();
  };
  if (type == "serve")
    return ServeAction{str("file")};
  if (type == "redirect") {
    RedirectAction r{str("location")};
    if (j.contains("token_length")) {
      if (!j.at("token_length").is_number_integer())
        throw ManifestError(at + ": token_length must be an integer");
      r.token_length = j.at("token_length").get<int>();
    }
    return r;
  }
  if (type == "capture")
    return CaptureAction{str("sink"), str("canary")};
  if (type == "issue_token")
    return IssueTokenAction{str("session_key")};
  throw ManifestError(at + ": unknown action type '" + type + "'");
}

}  // namespace detail

inline std::string serialize_manifest(const BehaviorManifest& m) {
  nlohmann::ordered_json j;
  j["entry"] = m.entry;
  j["seed"] = m.seed;
  j["session_keys"] = m.session_keys;
  j["routes"] = nlohmann::ordered_json::array();
  for (const auto& r : m.routes) {
    nlohmann::ordered_json jr;
    jr["pattern"] = r.pattern;
    jr["method"] = r.method;
    jr["gates"] = nlohmann::ordered_json::array();
    for (const auto& g : r.gates) {
      nlohmann::ordered_json jg;
      jg["kind"] = g.kind;
      jg["value"] = g.value;
      jg["negate"] = g.negate;
      jr["gates"].push_back(std::move(jg));
    }
    jr["action"] = detail::action_to_json(r.action);
    j["routes"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

inline BehaviorManifest parse_manifest(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ManifestError("manifest must be a JSON object");
  BehaviorManifest m;
  if (!j.contains("entry") || !j.at("entry").is_string())
    throw ManifestError("manifest missing entry path");
  m.entry = j.at("entry").get<std::string>();
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      throw ManifestError("seed must be an unsigned integer");
    m.seed = j.at("seed").get<uint64_t>();
  }
  if (j.contains("session_keys")) {
    if (!j.at("session_keys").is_array())
      throw ManifestError("session_keys must be an array");
    for (const auto& k : j.at("session_keys")) {
      if (!k.is_string())
        throw ManifestError("session_keys entries must be strings");
      m.session_keys.push_back(k.get<std::string>());
    }
  }
  if (!j.contains("routes") || !j.at("routes").is_array())
    throw ManifestError("routes must be an array");
  for (std::size_t i = 0; i < j.at("routes").size(); ++i) {
    const auto& jr = j.at("routes").at(i);
    std::string at = "routes[" + std::to_string(i) + "]";
    if (!jr.is_object())
      throw ManifestError(at + ": must be an object");
    RouteRule r;
    if (!jr.contains("pattern") || !jr.at("pattern").is_string())
      throw ManifestError(at + ": missing pattern");
    r.pattern = jr.at("pattern").get<std::string>();
    if (!jr.contains("method") || !jr.at("method").is_string())
      throw ManifestError(at + ": missing method");
    r.method = jr.at("method").get<std::string>();
    if (jr.contains("gates")) {
      if (!jr.at("gates").is_array())
        throw ManifestError(at + ": gates must be an array");
      for (const auto& jg : jr.at("gates")) {
        if (!jg.is_object() || !jg.contains("kind") || !jg.contains("value"))
          throw ManifestError(at + ": gate needs kind and value");
        Gate g;
        g.kind = jg.at("kind").get<std::string>();
        g.value = jg.at("value").get<std::string>();
        if (jg.contains("negate")) {
          if (!jg.at("negate").is_boolean())
            throw ManifestError(at + ": negate must be a boolean");
          g.negate = jg.at("negate").get<bool>();
        }
        r.gates.push_back(std::move(g));
      }
    }
    if (!jr.contains("action"))
      throw ManifestError(at + ": missing action");
    r.action = detail::action_from_json(jr.at("action"), at);
    m.routes.push_back(std::move(r));
  }
  validate_manifest(m);
  return m;
}

}  // namespace lurebench
