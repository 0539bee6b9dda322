#pragma once

// Manifest interpreter and differential probes. The harness answers one
// request at a time from a bundle's route rules; probes drive it with
// controlled agents and compare what each was served.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lurebench/bundle/bundle.hpp"
#include "lurebench/core/rng.hpp"
#include "lurebench/core/sha256.hpp"
#include "lurebench/harness/agent.hpp"
#include "lurebench/scanner/features.hpp"

namespace lurebench {

struct HttpRequest {
  std::string method = "GET";
  std::string target;  // path plus optional query
  AgentProfile agent;
  std::map<std::string, std::string> form;  // POST body fields
};

struct HttpResponse {
  int status = 404;
  std::string body;
  std::string location;     // 302 target
  std::string served_file;  // bundle path behind a 200 serve
  std::string content_type = "text/html; charset=utf-8";
};

struct CapturedSubmission {
  std::string bundle_id;
  std::string route;
  std::string agent;
  uint64_t sequence = 0;
  std::string canary;
  std::map<std::string, std::string> fields;
};

inline std::string capture_to_ndjson(const CapturedSubmission& c) {
  nlohmann::ordered_json j;
  j["bundle"] = c.bundle_id;
  j["route"] = c.route;
  j["agent"] = c.agent;
  j["sequence"] = c.sequence;
  j["canary"] = c.canary;
  j["fields"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.fields)
    j["fields"][k] = v;
  return j.dump() + "\n";
}

// Shared mutable state across requests: the redirect token counter and the
// capture log. Capture appends are serialized for concurrent probes.
class HarnessRuntime {
 public:
  uint64_t next_token_index() {
    std::lock_guard<std::mutex> lock(mu_);
    return token_counter_++;
  }

  uint64_t record_capture(CapturedSubmission c) {
    std::lock_guard<std::mutex> lock(mu_);
    c.sequence = sequence_++;
    ndjson_ += capture_to_ndjson(c);
    captures_.push_back(std::move(c));
    return captures_.back().sequence;
  }

  std::vector<CapturedSubmission> captures() const {
    std::lock_guard<std::mutex> lock(mu_);
    return captures_;
  }

  std::string capture_log_ndjson() const {
    std::lock_guard<std::mutex> lock(mu_);
    return ndjson_;
  }

 private:
  mutable std::mutex mu_;
  uint64_t token_counter_ = 0;
  uint64_t sequence_ = 0;
  std::vector<CapturedSubmission> captures_;
  std::string ndjson_;
};

// Session tokens bind to the issuing session: the digest covers the session
// id, so a copied token fails anywhere else.
inline std::string expected_session_token(uint64_t seed, const std::string& session_id,
                                          const std::string& key) {
  return sha256_hex16("token\n" + std::to_string(seed) + "\n" + session_id + "\n" + key);
}

inline std::string content_type_for(const std::string& path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".html"))
    return "text/html; charset=utf-8";
  if (ends_with(".css"))
    return "text/css; charset=utf-8";
  if (ends_with(".js"))
    return "application/javascript; charset=utf-8";
  if (ends_with(".svg"))
    return "image/svg+xml";
  if (ends_with(".pbm"))
    return "image/x-portable-bitmap";
  if (ends_with(".json"))
    return "application/json";
  return "text/plain; charset=utf-8";
}

namespace detail {

inline bool gate_passes(const Gate& g, const HttpRequest& req, const Session& session,
                        uint64_t seed) {
  bool pass = false;
  if (g.kind == "ua_contains") {
    pass = req.agent.user_agent.find(g.value) != std::string::npos;
  } else if (g.kind == "device_is") {
    pass = req.agent.device_class == g.value;
  } else if (g.kind == "ip_in_cidr") {
    auto ip = parse_ipv4(req.agent.ip);
    pass = ip && Cidr::parse(g.value).contains(*ip);
  } else if (g.kind == "has_token") {
    auto it = session.values.find(g.value);
    pass = it != session.values.end() &&
           it->second == expected_session_token(seed, session.id, g.value);
  }
  return g.negate ? !pass : pass;
}

}  // namespace detail

struct InterpretResult {
  HttpResponse response;
  Session session;          // possibly extended by issue_token
  int matched_route = -1;   // index into manifest.routes
};

// First matching rule wins; no rule yields 404. Pure except for the token
// counter and capture log on the runtime.
inline InterpretResult interpret(const PageBundle& bundle, const HttpRequest& request,
                                 const Session& session, HarnessRuntime& runtime) {
  const BehaviorManifest& m = bundle.manifest;
  InterpretResult out;
  out.session = session;
  for (std::size_t i = 0; i < m.routes.size(); ++i) {
    const RouteRule& rule = m.routes[i];
    if (rule.method != request.method)
      continue;
    if (!pattern_matches_target(rule.pattern, request.target))
      continue;
    bool gates_ok = true;
    for (const Gate& g : rule.gates)
      gates_ok = gates_ok && detail::gate_passes(g, request, session, m.seed);
    if (!gates_ok)
      continue;

    out.matched_route = static_cast<int>(i);
    if (const auto* serve = std::get_if<ServeAction>(&rule.action)) {
      out.response.status = 200;
      out.response.body = bundle.files.at(serve->file);
      out.response.served_file = serve->file;
      out.response.content_type = content_type_for(serve->file);
    } else if (const auto* redirect = std::get_if<RedirectAction>(&rule.action)) {
      std::string token = token_at(m.seed, runtime.next_token_index(),
                                   static_cast<std::size_t>(redirect->token_length));
      std::string location = redirect->location;
      location.replace(location.find("{token}"), 7, token);
      out.response.status = 302;
      out.response.location = location;
      out.response.body = "";
    } else if (const auto* capture = std::get_if<CaptureAction>(&rule.action)) {
      CapturedSubmission c;
      c.bundle_id = bundle.bundle_id;
      c.route = rule.pattern;
      c.agent = request.agent.name;
      c.canary = capture->canary;
      c.fields = request.form;
      runtime.record_capture(std::move(c));
      out.response.status = 200;
      out.response.body = "<!doctype html>\n<p>Submitted. You may close this page.</p>\n";
    } else if (const auto* issue = std::get_if<IssueTokenAction>(&rule.action)) {
      out.session.values[issue->session_key] =
          expected_session_token(m.seed, session.id, issue->session_key);
      out.response.status = 200;
      out.response.body = "token issued";
      out.response.content_type = "text/plain; charset=utf-8";
    }
    return out;
  }
  out.response.status = 404;
  out.response.body = "not found";
  out.response.content_type = "text/plain; charset=utf-8";
  return out;
}

inline constexpr int kMaxRedirects = 3;

struct FetchResult {
  HttpResponse response;      // final non-redirect response
  std::string final_target;   // target after following at most one redirect
  int redirects_followed = 0;
};

// GETs a target and follows redirects. More than kMaxRedirects chained
// redirects is a loop.
inline FetchResult fetch_following(const PageBundle& bundle, const std::string& target,
                                   const AgentProfile& agent, Session& session,
                                   HarnessRuntime& runtime) {
  FetchResult out;
  std::string current = target;
  out.final_target = target;
  for (;;) {
    HttpRequest req;
    req.method = "GET";
    req.target = current;
    req.agent = agent;
    InterpretResult r = interpret(bundle, req, session, runtime);
    session = r.session;
    if (r.response.status == 302) {
      ++out.redirects_followed;
      if (out.redirects_followed > kMaxRedirects)
        throw RedirectLoopError("more than " + std::to_string(kMaxRedirects) +
                                " chained redirects from '" + target + "'");
      if (out.redirects_followed == 1)
        out.final_target = r.response.location;
      current = r.response.location;
      continue;
    }
    out.response = r.response;
    return out;
  }
}

struct AgentObservation {
  std::string agent;
  std::string content_hash;  // sha256 of the fully-followed body
  std::string served_file;
  std::string final_target;
  int password_inputs = 0;
  int masked_inputs = 0;
  bool has_sensitive_inputs = false;
};

struct DifferentialProbe {
  std::vector<AgentObservation> observations;
};

// Fetches the entry page once per agent and records what each one saw.
inline DifferentialProbe probe_differential(const PageBundle& bundle,
                                            const std::vector<AgentProfile>& agents,
                                            HarnessRuntime& runtime) {
  if (agents.size() < 2)
    throw ValidationError("agents", "differential probing needs at least two agent profiles");
  DifferentialProbe probe;
  for (const auto& agent : agents) {
    validate_agent_profile(agent);
    Session session{"probe-" + agent.name, {}};
    FetchResult fetched = fetch_following(bundle, "/" + bundle.entry_path, agent, session, runtime);
    AgentObservation obs;
    obs.agent = agent.name;
    obs.final_target = fetched.final_target;
    obs.served_file = fetched.response.served_file;
    obs.content_hash = sha256_hex(fetched.response.body);
    Node doc = dom::parse(fetched.response.body);
    obs.password_inputs = count_password_inputs(doc);
    obs.masked_inputs = count_masked_text_inputs(doc);
    obs.has_sensitive_inputs = subtree_has_sensitive_input(doc);
    probe.observations.push_back(std::move(obs));
  }
  return probe;
}

struct PolymorphicObservation {
  std::string final_url;
  std::string content_hash;
};

struct PolymorphicProbe {
  std::vector<PolymorphicObservation> observations;
};

// Requests the entry n times with one agent. Each observation records the
// URL reached after at most one redirect and the final content hash.
inline PolymorphicProbe probe_polymorphic(const PageBundle& bundle, const AgentProfile& agent,
                                          int n, HarnessRuntime& runtime) {
  if (n < 1)
    throw ValidationError("n", "polymorphic probing needs at least one request");
  validate_agent_profile(agent);
  PolymorphicProbe probe;
  for (int i = 0; i < n; ++i) {
    Session session{"probe-poly-" + std::to_string(i), {}};
    FetchResult fetched = fetch_following(bundle, "/" + bundle.entry_path, agent, session, runtime);
    probe.observations.push_back(
        PolymorphicObservation{fetched.final_target, sha256_hex(fetched.response.body)});
  }
  return probe;
}

struct CaptchaProbe {
  bool found_gate = false;  // bundle has a token-gated GET route plus an issuer
  std::string gated_route;
  bool pre_token_sensitive = false;
  bool post_token_sensitive = false;
  bool pre_post_differ = false;
};

// Exercises a token gate without class knowledge: fetch the gated route
// cold, mint a token through the issue route, fetch again.
inline CaptchaProbe probe_token_gate(const PageBundle& bundle, const AgentProfile& agent,
                                     HarnessRuntime& runtime) {
  CaptchaProbe probe;
  const RouteRule* gated = nullptr;
  const RouteRule* issuer = nullptr;
  for (const auto& rule : bundle.manifest.routes) {
    if (!gated && rule.method == "GET" && std::get_if<ServeAction>(&rule.action) &&
        rule.pattern.find('*') == std::string::npos) {
      for (const auto& g : rule.gates)
        if (g.kind == "has_token" && !g.negate)
          gated = &rule;
    }
    if (!issuer && std::get_if<IssueTokenAction>(&rule.action) &&
        rule.pattern.find('*') == std::string::npos)
      issuer = &rule;
  }
  if (!gated || !issuer)
    return probe;

  probe.found_gate = true;
  probe.gated_route = gated->pattern;
  Session session{"probe-gate", {}};

  HttpRequest pre;
  pre.method = "GET";
  pre.target = gated->pattern;
  pre.agent = agent;
  InterpretResult pre_result = interpret(bundle, pre, session, runtime);
  std::string pre_body = pre_result.response.body;
  if (pre_result.response.status == 200)
    probe.pre_token_sensitive = subtree_has_sensitive_input(dom::parse(pre_body));

  HttpRequest solve;
  solve.method = issuer->method;
  solve.target = issuer->pattern;
  solve.agent = agent;
  solve.form = {{"challenge_0", "probe"}};
  InterpretResult solved = interpret(bundle, solve, session, runtime);
  session = solved.session;

  HttpRequest post = pre;
  InterpretResult post_result = interpret(bundle, post, session, runtime);
  if (post_result.response.status == 200)
    probe.post_token_sensitive = subtree_has_sensitive_input(dom::parse(post_result.response.body));
  probe.pre_post_differ = post_result.response.body != pre_body;
  return probe;
}

// Everything the gate detectors consume, collected in one sweep.
struct GateProbeData {
  std::optional<DifferentialProbe> differential;
  std::optional<PolymorphicProbe> polymorphic;
  std::optional<CaptchaProbe> captcha;
};

inline GateProbeData run_gate_probes(const PageBundle& bundle,
                                     const std::vector<AgentProfile>& agents, int polymorphic_n,
                                     HarnessRuntime& runtime) {
  GateProbeData data;
  data.differential = probe_differential(bundle, agents, runtime);
  data.polymorphic = probe_polymorphic(bundle, agents.front(), polymorphic_n, runtime);
  data.captcha = probe_token_gate(bundle, agents.front(), runtime);
  return data;
}

// Simulates solving the challenge: POSTs the issue_token route and returns
// the session holding the minted token. Only meaningful for captcha bundles.
inline Session solve_captcha_stub(const PageBundle& bundle, const Session& session,
                                  HarnessRuntime& runtime,
                                  const AgentProfile& agent = default_probe_agents()[1]) {
  if (bundle.attack_class != AttackClass::captcha)
    throw ClassError("bundle class is '" + to_string(bundle.attack_class) +
                     "', captcha solving applies only to captcha bundles");
  for (const auto& rule : bundle.manifest.routes) {
    if (!std::get_if<IssueTokenAction>(&rule.action))
      continue;
    HttpRequest req;
    req.method = rule.method;
    req.target = rule.pattern;
    req.agent = agent;
    req.form = {{"challenge_0", "solved"}};
    InterpretResult r = interpret(bundle, req, session, runtime);
    if (r.response.status != 200)
      throw ClassError("challenge route did not accept the solution");
    return r.session;
  }
  throw ClassError("captcha bundle has no issue_token route");
}

}  // namespace lurebench
