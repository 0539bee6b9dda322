#pragma once

// Vocabulary shared by the generator and the scanner: terms whose presence
// in a name, label, or placeholder marks an input as credential-bearing.

#include <string>
#include <string_view>
#include <vector>

namespace lurebench {

inline const std::vector<std::string>& sensitive_lexicon() {
  static const std::vector<std::string> k = {
      "password", "passwd", "pin", "user", "userid", "user-id", "email", "ssn", "card",
  };
  return k;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z')
      c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool contains_sensitive_term(std::string_view text) {
  std::string low = ascii_lower(text);
  for (const auto& term : sensitive_lexicon())
    if (low.find(term) != std::string::npos)
      return true;
  return false;
}

}  // namespace lurebench
