#pragma once

// Loopback-only preview server. Maps HTTP requests onto the bundle
// interpreter so the behavioral surface can be exercised from a browser.

#include <atomic>
#include <map>
#include <mutex>
#include <string>

#include "lurebench/core/ip.hpp"
#include "lurebench/core/sha256.hpp"
#include "lurebench/harness/harness.hpp"

#include "httplib.h"

namespace lurebench {

inline std::string infer_device_class(const std::string& user_agent) {
  std::string low = ascii_lower(user_agent);
  for (const char* marker : {"bot", "crawler", "spider", "curl"})
    if (low.find(marker) != std::string::npos)
      return "crawler";
  for (const char* marker : {"iphone", "android", "mobile"})
    if (low.find(marker) != std::string::npos)
      return "mobile";
  return "desktop";
}

class PreviewServer {
 public:
  PreviewServer(PageBundle bundle, HarnessRuntime& runtime)
      : bundle_(std::move(bundle)), runtime_(runtime) {
    server_.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res);
    });
    server_.Post(".*", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res);
    });
  }

  // Refuses to expose the corpus beyond the local machine.
  bool listen(const std::string& bind_address, int port) {
    if (!is_loopback_address(bind_address))
      throw ValidationError("bind", "preview server binds loopback addresses only");
    bind_ = bind_address;
    port_ = port;
    return server_.listen(bind_address, port);
  }

  bool bind_only(const std::string& bind_address, int port) {
    if (!is_loopback_address(bind_address))
      throw ValidationError("bind", "preview server binds loopback addresses only");
    bind_ = bind_address;
    port_ = port;
    return server_.bind_to_port(bind_address, port);
  }

  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  bool is_running() const { return server_.is_running(); }

 private:
  void handle(const httplib::Request& req, httplib::Response& res) {
    if (!is_loopback_address(req.remote_addr)) {
      res.status = 403;
      res.set_content("loopback clients only\n", "text/plain");
      return;
    }

    AgentProfile agent;
    agent.name = "preview";
    agent.user_agent = req.get_header_value("User-Agent");
    agent.ip = req.remote_addr;
    agent.device_class = infer_device_class(agent.user_agent);

    HttpRequest hreq;
    hreq.method = req.method;
    hreq.target = req.target;
    hreq.agent = agent;
    if (req.method == "POST")
      hreq.form = parse_form_urlencoded(req.body);

    std::string sid = cookie_value(req.get_header_value("Cookie"), "lb_session");
    Session session;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (sid.empty() || !sessions_.count(sid)) {
        sid = sha256_hex16("preview-session\n" + std::to_string(session_counter_++));
        sessions_[sid] = Session{sid, {}};
        res.set_header("Set-Cookie", "lb_session=" + sid + "; Path=/; HttpOnly");
      }
      session = sessions_[sid];
    }

    InterpretResult r = interpret(bundle_, hreq, session, runtime_);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      sessions_[sid] = r.session;
    }

    res.status = r.response.status;
    if (r.response.status == 302) {
      res.set_header("Location", r.response.location);
      res.set_content("", "text/plain");
      return;
    }
    res.set_content(r.response.body, r.response.content_type.c_str());
  }

  static std::string cookie_value(const std::string& header, const std::string& name) {
    std::size_t pos = 0;
    while (pos < header.size()) {
      std::size_t end = header.find(';', pos);
      std::string part =
          header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      std::size_t a = part.find_first_not_of(' ');
      if (a != std::string::npos) {
        part = part.substr(a);
        std::size_t eq = part.find('=');
        if (eq != std::string::npos && part.substr(0, eq) == name)
          return part.substr(eq + 1);
      }
      if (end == std::string::npos)
        break;
      pos = end + 1;
    }
    return "";
  }

  PageBundle bundle_;
  HarnessRuntime& runtime_;
  httplib::Server server_;
  std::string bind_;
  int port_ = 0;
  std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::uint64_t session_counter_ = 0;
};

}  // namespace lurebench
