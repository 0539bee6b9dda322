#pragma once

// Numeric character reference (NCR) machinery. The text-encoding exploit
// rewrites visible text as decimal NCRs; the scanner walks raw text and
// counts how much of it only exists in encoded form. Named entities
// (&amp; &lt; ...) are ordinary markup escaping and never count as encoded.

#include <cstdint>
#include <string>
#include <string_view>

namespace lurebench {

namespace detail {

// Appends UTF-8 for one code point.
inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Reads one code point from UTF-8; advances i. Bytes that are not valid
// UTF-8 are taken as single latin-1 code units so a pass never throws.
inline std::uint32_t next_codepoint(std::string_view text, std::size_t& i) {
  auto byte = static_cast<unsigned char>(text[i]);
  auto cont = [&](std::size_t off) {
    return i + off < text.size() &&
           (static_cast<unsigned char>(text[i + off]) & 0xC0) == 0x80;
  };
  if (byte < 0x80) {
    ++i;
    return byte;
  }
  if ((byte & 0xE0) == 0xC0 && cont(1)) {
    std::uint32_t cp = (std::uint32_t{byte} & 0x1F) << 6 |
                       (static_cast<unsigned char>(text[i + 1]) & 0x3F);
    i += 2;
    return cp;
  }
  if ((byte & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    std::uint32_t cp = (std::uint32_t{byte} & 0x0F) << 12 |
                       (std::uint32_t{static_cast<unsigned char>(text[i + 1])} & 0x3F) << 6 |
                       (static_cast<unsigned char>(text[i + 2]) & 0x3F);
    i += 3;
    return cp;
  }
  if ((byte & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    std::uint32_t cp = (std::uint32_t{byte} & 0x07) << 18 |
                       (std::uint32_t{static_cast<unsigned char>(text[i + 1])} & 0x3F) << 12 |
                       (std::uint32_t{static_cast<unsigned char>(text[i + 2])} & 0x3F) << 6 |
                       (static_cast<unsigned char>(text[i + 3]) & 0x3F);
    i += 4;
    return cp;
  }
  ++i;
  return byte;
}

// Parses one entity reference starting at the '&' in text[i]. On success
// writes the decoded code point (or 0 with `named` holding the expansion)
// and returns the reference length; returns 0 if this '&' is literal.
struct EntityMatch {
  std::size_t length = 0;
  std::string expansion;
  bool numeric = false;
};

inline EntityMatch match_entity(std::string_view text, std::size_t i) {
  EntityMatch m;
  if (i + 1 >= text.size() || text[i] != '&')
    return m;
  if (text[i + 1] == '#') {
    std::size_t j = i + 2;
    bool hex = j < text.size() && (text[j] == 'x' || text[j] == 'X');
    if (hex)
      ++j;
    std::uint32_t cp = 0;
    std::size_t digits = 0;
    while (j < text.size()) {
      char c = text[j];
      int v;
      if (c >= '0' && c <= '9')
        v = c - '0';
      else if (hex && c >= 'a' && c <= 'f')
        v = c - 'a' + 10;
      else if (hex && c >= 'A' && c <= 'F')
        v = c - 'A' + 10;
      else
        break;
      cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      if (cp > 0x10FFFF)
        return m;
      ++digits;
      ++j;
    }
    if (digits == 0 || j >= text.size() || text[j] != ';')
      return m;
    m.length = j + 1 - i;
    append_utf8(m.expansion, cp);
    m.numeric = true;
    return m;
  }
  struct Named {
    std::string_view name;
    char ch;
  };
  static constexpr Named kNamed[] = {{"amp", '&'}, {"lt", '<'}, {"gt", '>'},
                                     {"quot", '"'}, {"apos", '\''}, {"nbsp", ' '}};
  for (const auto& n : kNamed) {
    if (text.substr(i + 1, n.name.size()) == n.name &&
        i + 1 + n.name.size() < text.size() && text[i + 1 + n.name.size()] == ';') {
      m.length = n.name.size() + 2;
      m.expansion.push_back(n.ch);
      return m;
    }
  }
  return m;
}

}  // namespace detail

// Every code point becomes a decimal NCR, so no literal substring of the
// input survives in the output.
inline std::string encode_ncr(std::string_view text) {
  std::string out;
  out.reserve(text.size() * 5);
  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = detail::next_codepoint(text, i);
    out += "&#" + std::to_string(cp) + ";";
  }
  return out;
}

// What a browser renders: numeric and core named references expanded.
inline std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      auto m = detail::match_entity(text, i);
      if (m.length > 0) {
        out += m.expansion;
        i += m.length;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

// Decoded-character accounting over raw text. A character is "encoded" when
// it reaches the reader only through a numeric reference.
struct EntityStats {
  std::size_t encoded_chars = 0;
  std::size_t plain_chars = 0;

  EntityStats& operator+=(const EntityStats& other) {
    encoded_chars += other.encoded_chars;
    plain_chars += other.plain_chars;
    return *this;
  }

  double encoded_ratio() const {
    std::size_t total = encoded_chars + plain_chars;
    return total == 0 ? 0.0 : static_cast<double>(encoded_chars) / static_cast<double>(total);
  }
};

inline EntityStats count_entity_chars(std::string_view raw) {
  EntityStats stats;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '&') {
      auto m = detail::match_entity(raw, i);
      if (m.length > 0) {
        if (m.numeric)
          ++stats.encoded_chars;
        else
          ++stats.plain_chars;
        i += m.length;
        continue;
      }
    }
    detail::next_codepoint(raw, i);
    ++stats.plain_chars;
  }
  return stats;
}

}  // namespace lurebench
