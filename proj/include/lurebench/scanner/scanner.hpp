#pragma once

// Static detectors and the scan driver. Detectors are pure functions over
// parsed pages, the manifest, and pre-collected probe data; none of them
// reads the ground-truth sidecar or the research-corpus meta element.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lurebench/bundle/bundle.hpp"
#include "lurebench/harness/harness.hpp"
#include "lurebench/qr/qr.hpp"
#include "lurebench/scanner/features.hpp"
#include "lurebench/version.hpp"

namespace lurebench {

struct Evidence {
  std::string locator;  // DOM path, route pattern, or probe identifier
  std::string note;
};

struct Finding {
  std::string technique;
  double confidence = 0.0;
  std::vector<Evidence> evidence;
};

struct ScanReport {
  std::string bundle;
  std::string scanner_version;
  std::string scanned_at;
  std::vector<Finding> findings;
  std::vector<std::string> notes;
};

// Fixed tie-break order: infrastructure-bound evasions outrank page-local
// ones; the exfil baseline ranks last.
inline const std::vector<std::string>& technique_order() {
  static const std::vector<std::string> k = {
      "fingerprint", "captcha",   "polymorphic",   "qrcode",          "bitb",
      "clickjack",   "dom_evasion", "text_encoding", "credential_exfil",
  };
  return k;
}

inline std::size_t technique_rank(const std::string& technique) {
  const auto& order = technique_order();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == technique)
      return i;
  return order.size();
}

inline std::string classification_of(const ScanReport& report) {
  if (report.findings.empty())
    return "regular";
  const Finding* top = &report.findings.front();
  for (const auto& f : report.findings) {
    if (f.confidence > top->confidence ||
        (f.confidence == top->confidence &&
         technique_rank(f.technique) < technique_rank(top->technique)))
      top = &f;
  }
  return top->technique == "credential_exfil" ? "regular" : top->technique;
}

namespace detail {

inline bool looks_like_url(const std::string& text) {
  std::string t = text;
  // Trim surrounding whitespace.
  std::size_t a = t.find_first_not_of(" \t\r\n");
  std::size_t b = t.find_last_not_of(" \t\r\n");
  if (a == std::string::npos)
    return false;
  t = t.substr(a, b - a + 1);
  if (t.rfind("https://", 0) != 0 && t.rfind("http://", 0) != 0)
    return false;
  return t.find(' ') == std::string::npos && !std::string(url_host(t)).empty();
}

inline bool class_matches_chrome(const Node& n) {
  auto cls = n.attr("class");
  if (!cls)
    return false;
  std::string low = ascii_lower(*cls);
  for (const char* marker : {"window", "browser", "chrome", "popup", "modal", "dialog"})
    if (low.find(marker) != std::string::npos)
      return true;
  return false;
}

// Walks text nodes with their element ancestor chain, root first.
inline void walk_text_with_ancestors(
    const Node& n, std::vector<const Node*>& ancestors,
    const std::function<void(const Node&, const std::vector<const Node*>&)>& fn) {
  if (n.kind == NodeKind::Text) {
    fn(n, ancestors);
    return;
  }
  if (n.kind == NodeKind::Element)
    ancestors.push_back(&n);
  for (const Node& c : n.children)
    walk_text_with_ancestors(c, ancestors, fn);
  if (n.kind == NodeKind::Element)
    ancestors.pop_back();
}

inline bool is_interactive(const Node& n) {
  if (n.kind != NodeKind::Element)
    return false;
  if (n.tag == "button" || n.tag == "a")
    return true;
  if (n.tag == "input") {
    auto type = n.attr("type").value_or("text");
    return type == "submit" || type == "button";
  }
  return false;
}

}  // namespace detail

// Ratio-based or label-hiding entity obfuscation.
inline std::optional<Finding> detect_text_encoding(const Node& doc, const std::string& raw) {
  EntityStats stats = visible_entity_stats(doc);
  double ratio = stats.encoded_ratio();

  bool label_hidden = false;
  std::string hidden_term;
  std::string visible;
  for (const Node* t : visible_text_nodes(doc))
    visible += decode_entities(t->text);
  std::string visible_low = ascii_lower(visible);
  std::string raw_low = ascii_lower(raw);
  for (const auto& term : sensitive_lexicon()) {
    if (visible_low.find(term) != std::string::npos && raw_low.find(term) == std::string::npos) {
      label_hidden = true;
      hidden_term = term;
      break;
    }
  }
  if (ratio < kEncodedRatioMin && !label_hidden)
    return std::nullopt;

  Finding f;
  f.technique = "text_encoding";
  f.confidence = std::min(1.0, ratio);
  std::size_t cited = 0;
  for_each_element_with_locator(doc, [&](const Node& n, const std::string& path) {
    if (cited >= 8)
      return;
    for (const Node& c : n.children) {
      if (c.kind == NodeKind::Text && count_entity_chars(c.text).encoded_chars > 0 &&
          has_visible_chars(c.text)) {
        f.evidence.push_back({path, "entity-encoded text"});
        ++cited;
        break;
      }
    }
  });
  if (label_hidden)
    f.evidence.push_back(
        {"/html", "label term '" + hidden_term + "' appears only in encoded form"});
  f.evidence.push_back(
      {"/html", std::to_string(stats.encoded_chars) + " of " +
                    std::to_string(stats.encoded_chars + stats.plain_chars) +
                    " visible characters entity-encoded"});
  return f;
}

// Near-invisible iframe covering an interactive element.
inline std::optional<Finding> detect_clickjack(const Node& doc) {
  std::optional<Finding> best;
  for (const Node* iframe : elements_by_tag(doc, "iframe")) {
    if (opacity_of(*iframe) > kOverlayOpacityMax)
      continue;
    auto frame_rect = rect_of(*iframe);
    if (!frame_rect)
      continue;
    walk(doc, [&](const Node& n) {
      if (!detail::is_interactive(n))
        return;
      auto cta_rect = rect_of(n);
      if (!cta_rect || cta_rect->area() <= 0)
        return;
      double overlap = Rect::overlap_area(*cta_rect, *frame_rect) / cta_rect->area();
      if (overlap < kOverlapDetectMin)
        return;
      if (!best || overlap > best->confidence) {
        Finding f;
        f.technique = "clickjack";
        f.confidence = std::min(1.0, overlap);
        char note[96];
        std::snprintf(note, sizeof(note), "overlap %.2f at opacity %.3g", overlap,
                      opacity_of(*iframe));
        f.evidence.push_back({locator_of(doc, *iframe), note});
        f.evidence.push_back({locator_of(doc, n), "covered interactive element"});
        best = std::move(f);
      }
    });
  }
  return best;
}

// Painted URL bar inside window-chrome markup, showing a foreign host, with
// credential inputs in the same subtree.
inline std::optional<Finding> detect_bitb(const Node& doc, const std::string& bundle_host) {
  std::optional<Finding> found;
  std::vector<const Node*> ancestors;
  detail::walk_text_with_ancestors(
      doc, ancestors, [&](const Node& text, const std::vector<const Node*>& chain) {
        if (found)
          return;
        std::string decoded = decode_entities(text.text);
        if (!detail::looks_like_url(decoded))
          return;
        // Navigation exclusion: URL text inside an anchor is a link, not a
        // painted address bar.
        for (const Node* a : chain)
          if (a->is_element("a"))
            return;
        std::string host(url_host(decoded));
        if (host.empty() || host == bundle_host)
          return;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
          const Node* container = *it;
          if (!detail::class_matches_chrome(*container))
            continue;
          if (!subtree_has_sensitive_input(*container))
            continue;
          Finding f;
          f.technique = "bitb";
          f.confidence = kBitbConfidence;
          f.evidence.push_back({locator_of(doc, *container),
                                "window-chrome container displaying '" + decoded + "'"});
          f.evidence.push_back(
              {locator_of(doc, *container), "credential inputs inside the chrome subtree"});
          found = std::move(f);
          return;
        }
      });
  return found;
}

// Embedded QR image whose payload routes to a credential page.
inline std::optional<Finding> detect_qr_stage(const PageBundle& bundle) {
  for (const auto& [path, bytes] : bundle.files) {
    auto ends_with = [&](std::string_view suffix) {
      return path.size() >= suffix.size() &&
             path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (!ends_with(".svg") && !ends_with(".pbm"))
      continue;
    DecodeResult decoded;
    try {
      BitGrid grid = ends_with(".svg") ? parse_svg_grid(bytes) : parse_pbm(bytes);
      decoded = qr_decode_grid(grid);
    } catch (const Error&) {
      continue;  // not a QR image
    }
    std::string payload = decoded.payload_text();
    std::string target = payload;
    if (!target.empty() && target[0] == '/')
      target = target.substr(1);
    auto it = bundle.files.find(target);
    if (it == bundle.files.end())
      continue;
    Node stage = dom::parse(it->second);
    if (!subtree_has_sensitive_input(stage))
      continue;
    Finding f;
    f.technique = "qrcode";
    f.confidence = kQrStageConfidence;
    f.evidence.push_back({"/" + path, "QR payload '" + payload + "'"});
    f.evidence.push_back({"/" + target, "payload resolves to a page with credential inputs"});
    return f;
  }
  return std::nullopt;
}

// Probe-backed gates. Throws when asked about a kind whose probe data was
// never collected.
inline std::optional<Finding> detect_gate(const std::string& kind, const GateProbeData& data) {
  if (kind == "captcha") {
    if (!data.captcha)
      throw MissingProbeError("captcha detection needs token-gate probe data");
    const CaptchaProbe& p = *data.captcha;
    if (!(p.found_gate && !p.pre_token_sensitive && p.post_token_sensitive && p.pre_post_differ))
      return std::nullopt;
    Finding f;
    f.technique = "captcha";
    f.confidence = kGateConfidence;
    f.evidence.push_back({p.gated_route, "credential content served only after token issuance"});
    return f;
  }
  if (kind == "fingerprint") {
    if (!data.differential)
      throw MissingProbeError("fingerprint detection needs differential probe data");
    const auto& obs = data.differential->observations;
    std::map<std::string, bool> variants;  // content hash -> has sensitive inputs
    for (const auto& o : obs)
      variants[o.content_hash] = o.has_sensitive_inputs;
    int sensitive_variants = 0;
    for (const auto& [hash, sensitive] : variants)
      sensitive_variants += sensitive ? 1 : 0;
    if (variants.size() < 2 || sensitive_variants != 1)
      return std::nullopt;
    Finding f;
    f.technique = "fingerprint";
    f.confidence = kGateConfidence;
    for (const auto& o : obs)
      f.evidence.push_back({"probe:" + o.agent,
                            (o.has_sensitive_inputs ? "credential variant (" : "benign variant (") +
                                o.content_hash.substr(0, 12) + ")"});
    return f;
  }
  if (kind == "polymorphic") {
    if (!data.polymorphic)
      throw MissingProbeError("polymorphic detection needs repeated-fetch probe data");
    const auto& obs = data.polymorphic->observations;
    std::set<std::string> urls;
    std::set<std::string> hashes;
    for (const auto& o : obs) {
      urls.insert(o.final_url);
      hashes.insert(o.content_hash);
    }
    if (static_cast<int>(urls.size()) < kPolymorphicDistinctMin || hashes.size() != 1)
      return std::nullopt;
    Finding f;
    f.technique = "polymorphic";
    f.confidence = kGateConfidence;
    f.evidence.push_back({"probe:polymorphic",
                          std::to_string(urls.size()) + " distinct URLs with identical content"});
    std::size_t cited = 0;
    for (const auto& u : urls) {
      if (cited++ >= 3)
        break;
      f.evidence.push_back({"probe:polymorphic", "served at " + u});
    }
    return f;
  }
  throw ParamError("unknown gate kind '" + kind + "'");
}

// Structural evasion, absolute thresholds (foreign-page path).
inline std::optional<Finding> detect_dom_evasion(const FeatureVector& candidate) {
  int signals = dom_evasion_signal_count(candidate);
  if (signals < kDomEvasionSignalsMin)
    return std::nullopt;
  Finding f;
  f.technique = "dom_evasion";
  f.confidence = signals / 4.0;
  if (candidate.password_input_count == 0 && candidate.text_input_with_mask_count >= 1)
    f.evidence.push_back({"/html", "password inputs replaced by masked text inputs"});
  if (candidate.script_element_count == 0 && candidate.form_count >= 1)
    f.evidence.push_back({"/html", "form present with zero script elements"});
  if (candidate.anchors_to_target_domain_ratio >= kAnchorRatioMin)
    f.evidence.push_back({"/html", "anchors concentrated on one external domain"});
  if (candidate.root_relative_resource_ratio == 1.0)
    f.evidence.push_back({"/html", "all resources referenced root-relative"});
  return f;
}

// Corpus path: only signals absent from the untransformed baseline count.
inline std::optional<Finding> detect_dom_evasion(const FeatureVector& baseline,
                                                 const FeatureVector& candidate) {
  FeatureVector masked = candidate;
  if (dom_evasion_signal_count(baseline) > 0) {
    // Suppress signals the baseline already shows by neutralizing the
    // candidate's corresponding fields.
    if (baseline.password_input_count == 0 && baseline.text_input_with_mask_count >= 1)
      masked.text_input_with_mask_count = 0;
    if (baseline.script_element_count == 0 && baseline.form_count >= 1)
      masked.script_element_count = 1;
    if (baseline.anchors_to_target_domain_ratio >= kAnchorRatioMin)
      masked.anchors_to_target_domain_ratio = 0.0;
    if (baseline.root_relative_resource_ratio == 1.0)
      masked.root_relative_resource_ratio = 0.0;
  }
  return detect_dom_evasion(masked);
}

// Sensitive form posting into a capture route or toward a foreign host.
inline std::optional<Finding> detect_credential_exfil(const Node& doc,
                                                      const BehaviorManifest& manifest,
                                                      const std::string& target_domain = "") {
  Finding f;
  f.technique = "credential_exfil";
  f.confidence = kCredentialExfilConfidence;
  for (const Node* form : elements_by_tag(doc, "form")) {
    if (!subtree_has_sensitive_input(*form))
      continue;
    std::string action = form->attr("action").value_or("");
    if (action.empty())
      continue;
    std::string host(url_host(action));
    bool to_capture = false;
    for (const auto& rule : manifest.routes)
      if (std::get_if<CaptureAction>(&rule.action) &&
          pattern_matches_target(rule.pattern, std::string(url_path(action))))
        to_capture = to_capture || host.empty();
    bool to_foreign = !host.empty() && (target_domain.empty() || host != target_domain);
    if (!to_capture && !to_foreign)
      continue;
    f.evidence.push_back({locator_of(doc, *form),
                          to_capture ? "credential form posts to capture route '" + action + "'"
                                     : "credential form posts to foreign host '" + host + "'"});
  }
  if (f.evidence.empty())
    return std::nullopt;
  return f;
}

inline std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0')
      now = static_cast<std::time_t>(v);
  }
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

struct ScanOptions {
  bool probes_enabled = true;
  std::string scanned_at;  // empty: SOURCE_DATE_EPOCH or current time
  std::vector<AgentProfile> agents = default_probe_agents();
  int polymorphic_probes = 10;
};

inline ScanReport scan(const PageBundle& bundle, const ScanOptions& options = {}) {
  auto entry_it = bundle.files.find(bundle.entry_path);
  if (entry_it == bundle.files.end())
    throw BundleLoadError("bundle has no entry page '" + bundle.entry_path + "'");
  const std::string& entry_raw = entry_it->second;
  Node entry = dom::parse(entry_raw);

  ScanReport report;
  report.bundle = bundle.bundle_id;
  report.scanner_version = kScannerVersion;
  report.scanned_at = options.scanned_at.empty() ? timestamp_utc() : options.scanned_at;

  auto add = [&](std::optional<Finding> f) {
    if (f)
      report.findings.push_back(std::move(*f));
  };

  add(detect_text_encoding(entry, entry_raw));
  add(detect_clickjack(entry));
  add(detect_bitb(entry, "localhost"));
  add(detect_qr_stage(bundle));
  add(detect_dom_evasion(extract_features(entry)));

  // Exfil runs over every page so staged bundles show their sink too.
  std::optional<Finding> exfil;
  for (const auto& [path, bytes] : bundle.files) {
    if (path.size() < 5 || path.compare(path.size() - 5, 5, ".html") != 0)
      continue;
    Node doc = dom::parse(bytes);
    auto f = detect_credential_exfil(doc, bundle.manifest);
    if (!f)
      continue;
    if (!exfil) {
      exfil = std::move(f);
      for (auto& e : exfil->evidence)
        e.note += " [" + path + "]";
    } else {
      for (auto& e : f->evidence) {
        e.note += " [" + path + "]";
        exfil->evidence.push_back(std::move(e));
      }
    }
  }
  add(std::move(exfil));

  if (options.probes_enabled) {
    HarnessRuntime runtime;
    GateProbeData probes =
        run_gate_probes(bundle, options.agents, options.polymorphic_probes, runtime);
    add(detect_gate("captcha", probes));
    add(detect_gate("fingerprint", probes));
    add(detect_gate("polymorphic", probes));
  } else {
    report.notes.push_back("probe-dependent techniques unevaluated");
  }

  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [](const Finding& a, const Finding& b) {
                     if (a.confidence != b.confidence)
                       return a.confidence > b.confidence;
                     return technique_rank(a.technique) < technique_rank(b.technique);
                   });
  return report;
}

inline std::string serialize_scan_report(const ScanReport& report) {
  nlohmann::ordered_json j;
  j["bundle"] = report.bundle;
  j["scanner_version"] = report.scanner_version;
  j["scanned_at"] = report.scanned_at;
  j["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : report.findings) {
    nlohmann::ordered_json jf;
    jf["technique"] = f.technique;
    jf["confidence"] = f.confidence;
    jf["evidence"] = nlohmann::ordered_json::array();
    for (const auto& e : f.evidence) {
      nlohmann::ordered_json je;
      je["locator"] = e.locator;
      je["note"] = e.note;
      jf["evidence"].push_back(std::move(je));
    }
    j["findings"].push_back(std::move(jf));
  }
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

}  // namespace lurebench
