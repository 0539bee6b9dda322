#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lurebench/errors.hpp"

namespace lurebench {

// Dotted-quad IPv4 -> host-order integer. Strict: four decimal octets.
inline std::optional<std::uint32_t> parse_ipv4(std::string_view text) {
  std::uint32_t value = 0;
  int octets = 0;
  std::size_t i = 0;
  while (i <= text.size() && octets < 4) {
    std::uint32_t octet = 0;
    std::size_t digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      octet = octet * 10 + static_cast<std::uint32_t>(text[i] - '0');
      if (octet > 255)
        return std::nullopt;
      ++digits;
      ++i;
    }
    if (digits == 0 || digits > 3)
      return std::nullopt;
    value = (value << 8) | octet;
    ++octets;
    if (octets < 4) {
      if (i >= text.size() || text[i] != '.')
        return std::nullopt;
      ++i;
    }
  }
  if (octets != 4 || i != text.size())
    return std::nullopt;
  return value;
}

// IPv4 CIDR block, e.g. "192.0.2.0/24". A bare address means /32.
struct Cidr {
  std::uint32_t network = 0;
  int prefix = 32;

  bool contains(std::uint32_t addr) const {
    if (prefix == 0)
      return true;
    std::uint32_t mask = prefix >= 32 ? 0xFFFFFFFFu : ~((1u << (32 - prefix)) - 1);
    return (addr & mask) == (network & mask);
  }

  static Cidr parse(std::string_view text) {
    auto slash = text.find('/');
    std::string_view addr_part = text.substr(0, slash);
    int prefix = 32;
    if (slash != std::string_view::npos) {
      std::string_view len_part = text.substr(slash + 1);
      if (len_part.empty() || len_part.size() > 2)
        throw ValidationError("cidr", "bad prefix length in '" + std::string(text) + "'");
      prefix = 0;
      for (char c : len_part) {
        if (c < '0' || c > '9')
          throw ValidationError("cidr", "bad prefix length in '" + std::string(text) + "'");
        prefix = prefix * 10 + (c - '0');
      }
      if (prefix > 32)
        throw ValidationError("cidr", "prefix > 32 in '" + std::string(text) + "'");
    }
    auto addr = parse_ipv4(addr_part);
    if (!addr)
      throw ValidationError("cidr", "bad address in '" + std::string(text) + "'");
    return Cidr{*addr, prefix};
  }
};

inline bool is_valid_cidr(std::string_view text) {
  try {
    Cidr::parse(text);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

inline bool is_loopback_address(std::string_view host) {
  if (host == "localhost")
    return true;
  auto addr = parse_ipv4(host);
  return addr && (*addr >> 24) == 127;
}

}  // namespace lurebench
