#pragma once

// Simulated clients. An agent profile is what the serving gates can see:
// user agent string, source address, device class, script support.

#include <map>
#include <string>
#include <vector>

#include "lurebench/errors.hpp"

namespace lurebench {

struct AgentProfile {
  std::string name;
  std::string user_agent;
  std::string ip;
  std::string device_class = "desktop";  // desktop | mobile | crawler
  bool scripts_enabled = true;
};

inline void validate_agent_profile(const AgentProfile& a) {
  if (a.name.empty())
    throw ValidationError("name", "agent name must be non-empty");
  if (a.user_agent.empty())
    throw ValidationError("user_agent", "agent user agent must be non-empty");
  if (a.device_class != "desktop" && a.device_class != "mobile" && a.device_class != "crawler")
    throw ValidationError("device_class", "must be desktop, mobile, or crawler");
}

struct Session {
  std::string id;
  std::map<std::string, std::string> values;
};

// The standard probe set: a scanner-shaped crawler, a desktop browser, and
// the mobile victim the fingerprint gates select for.
inline std::vector<AgentProfile> default_probe_agents() {
  return {
      AgentProfile{"crawler", "ResearchBot/1.0 (corpus integrity probe)", "192.0.2.10",
                   "crawler", false},
      AgentProfile{"desktop",
                   "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like "
                   "Gecko) Chrome/124.0 Safari/537.36",
                   "203.0.113.5", "desktop", true},
      AgentProfile{"victim-mobile",
                   "Mozilla/5.0 (iPhone; CPU iPhone OS 17_4 like Mac OS X) AppleWebKit/605.1.15 "
                   "(KHTML, like Gecko) Version/17.4 Mobile/15E148 Safari/604.1",
                   "198.51.100.7", "mobile", true},
  };
}

}  // namespace lurebench
