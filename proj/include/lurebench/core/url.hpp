#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

namespace lurebench {

// Host component of an absolute URL; "" for relative references. We only
// ever need scheme://host[:port]/ splitting, not full RFC 3986 parsing.
inline std::string url_host(std::string_view url) {
  std::string_view rest;
  auto scheme_end = url.find("://");
  if (scheme_end != std::string_view::npos)
    rest = url.substr(scheme_end + 3);
  else if (url.size() >= 2 && url[0] == '/' && url[1] == '/')
    rest = url.substr(2);  // protocol-relative reference still names a host
  else
    return "";
  auto end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, end);
  auto at = authority.rfind('@');
  if (at != std::string_view::npos)
    authority = authority.substr(at + 1);
  auto colon = authority.find(':');
  if (colon != std::string_view::npos)
    authority = authority.substr(0, colon);
  return std::string(authority);
}

inline std::string url_path(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end != std::string_view::npos) {
    std::string_view rest = url.substr(scheme_end + 3);
    auto slash = rest.find('/');
    if (slash == std::string_view::npos)
      return "/";
    url = rest.substr(slash);
  } else if (url.size() >= 2 && url[0] == '/' && url[1] == '/') {
    auto slash = url.find('/', 2);
    if (slash == std::string_view::npos)
      return "/";
    url = url.substr(slash);
  }
  auto end = url.find_first_of("?#");
  return std::string(url.substr(0, end));
}

inline std::string url_query(std::string_view url) {
  auto q = url.find('?');
  if (q == std::string_view::npos)
    return "";
  auto frag = url.find('#', q);
  return std::string(url.substr(q + 1, frag == std::string_view::npos ? std::string_view::npos
                                                                      : frag - q - 1));
}

inline std::string percent_decode(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    char c = in[i];
    if (c == '+') {
      out.push_back(' ');
    } else if (c == '%' && i + 2 < in.size() && std::isxdigit(static_cast<unsigned char>(in[i + 1])) &&
               std::isxdigit(static_cast<unsigned char>(in[i + 2]))) {
      auto hexval = [](char h) {
        if (h >= '0' && h <= '9') return h - '0';
        if (h >= 'a' && h <= 'f') return h - 'a' + 10;
        return h - 'A' + 10;
      };
      out.push_back(static_cast<char>(hexval(in[i + 1]) * 16 + hexval(in[i + 2])));
      i += 2;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string percent_encode(std::string_view in) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : in) {
    auto u = static_cast<unsigned char>(c);
    bool unreserved = (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') ||
                      (u >= '0' && u <= '9') || u == '-' || u == '_' || u == '.' || u == '~';
    if (unreserved) {
      out.push_back(c);
    } else {
      out.push_back('%');
      out.push_back(hex[u >> 4]);
      out.push_back(hex[u & 0xF]);
    }
  }
  return out;
}

// application/x-www-form-urlencoded body -> field map (last value wins).
inline std::map<std::string, std::string> parse_form_urlencoded(std::string_view body) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto amp = body.find('&', pos);
    std::string_view pair = body.substr(pos, amp == std::string_view::npos ? std::string_view::npos
                                                                           : amp - pos);
    if (!pair.empty()) {
      auto eq = pair.find('=');
      std::string key = percent_decode(pair.substr(0, eq));
      std::string value = eq == std::string_view::npos ? "" : percent_decode(pair.substr(eq + 1));
      if (!key.empty())
        fields[key] = value;
    }
    if (amp == std::string_view::npos)
      break;
    pos = amp + 1;
  }
  return fields;
}

inline std::map<std::string, std::string> parse_query_params(std::string_view url) {
  return parse_form_urlencoded(url_query(url));
}

}  // namespace lurebench
