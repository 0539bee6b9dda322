#pragma once

// Static DOM features and the thresholds the detectors run on. Every
// tunable lives here as a named constant; detectors contain no inline
// magic numbers.

#include <map>
#include <string>
#include <vector>

#include "lurebench/core/entities.hpp"
#include "lurebench/core/lexicon.hpp"
#include "lurebench/core/url.hpp"
#include "lurebench/dom/dom.hpp"

namespace lurebench {

// Detection thresholds.
inline constexpr double kEncodedRatioMin = 0.5;        // inclusive boundary
inline constexpr double kOverlayOpacityMax = 0.05;     // at or below: invisible overlay
inline constexpr double kOverlapDetectMin = 0.5;       // CTA coverage to flag clickjack
inline constexpr double kOverlapGenerateMin = 0.9;     // coverage the generator guarantees
inline constexpr int kDomEvasionSignalsMin = 2;        // of the four structural signals
inline constexpr double kAnchorRatioMin = 0.8;         // anchors on one external host
inline constexpr int kPolymorphicDistinctMin = 3;      // distinct served URLs to flag
inline constexpr double kCredentialExfilConfidence = 0.5;
inline constexpr double kGateConfidence = 0.95;        // probe-backed gate findings
inline constexpr double kQrStageConfidence = 0.95;
inline constexpr double kBitbConfidence = 0.9;

struct FeatureVector {
  int password_input_count = 0;
  int text_input_with_mask_count = 0;
  int script_element_count = 0;
  double anchors_to_target_domain_ratio = 0.0;
  double root_relative_resource_ratio = 0.0;
  int form_count = 0;
  double entity_encoded_text_ratio = 0.0;
};

inline bool is_masked_text_input(const Node& n) {
  if (!n.is_element("input"))
    return false;
  auto type = n.attr("type");
  if (type && *type != "text")
    return false;
  auto style = n.attr("style");
  return style && style->find("text-security") != std::string::npos;
}

inline int count_password_inputs(const Node& doc) {
  int count = 0;
  walk(doc, [&](const Node& n) {
    if (n.is_element("input")) {
      auto type = n.attr("type");
      if (type && *type == "password")
        ++count;
    }
  });
  return count;
}

inline int count_masked_text_inputs(const Node& doc) {
  int count = 0;
  walk(doc, [&](const Node& n) {
    if (is_masked_text_input(n))
      ++count;
  });
  return count;
}

// An input that plausibly collects a credential: password type, masked
// text, or a name/placeholder/label containing a lexicon term.
inline bool is_sensitive_input(const Node& n) {
  if (!n.is_element("input"))
    return false;
  auto type = n.attr("type");
  if (type && *type == "password")
    return true;
  if (is_masked_text_input(n))
    return true;
  for (const char* key : {"name", "placeholder", "aria-label", "id"}) {
    auto v = n.attr(key);
    if (v && contains_sensitive_term(*v))
      return true;
  }
  return false;
}

inline bool subtree_has_sensitive_input(const Node& root) {
  bool found = false;
  walk(root, [&](const Node& n) { found = found || is_sensitive_input(n); });
  return found;
}

inline EntityStats visible_entity_stats(const Node& doc) {
  EntityStats stats;
  for (const Node* t : visible_text_nodes(doc))
    stats += count_entity_chars(t->text);
  // visible_attr_slots only has a mutating overload; reading through it is
  // safe.
  for (const auto& slot : visible_attr_slots(const_cast<Node&>(doc))) {
    const std::string* raw = slot.node->attr_raw(slot.attr);
    if (raw)
      stats += count_entity_chars(*raw);
  }
  return stats;
}

inline FeatureVector extract_features(const Node& doc) {
  FeatureVector f;
  f.password_input_count = count_password_inputs(doc);
  f.text_input_with_mask_count = count_masked_text_inputs(doc);

  std::size_t anchors_total = 0;
  std::map<std::string, std::size_t> anchor_hosts;
  walk(doc, [&](const Node& n) {
    if (n.kind != NodeKind::Element)
      return;
    if (n.tag == "script")
      ++f.script_element_count;
    if (n.tag == "form")
      ++f.form_count;
    if (n.tag == "a") {
      auto href = n.attr("href");
      if (href) {
        ++anchors_total;
        std::string host(url_host(*href));
        if (!host.empty())
          ++anchor_hosts[host];
      }
    }
  });
  // Ratio of anchors pointing at the dominant external host. Pages that
  // link everything to one imitated domain score near 1.
  std::size_t dominant = 0;
  for (const auto& [host, count] : anchor_hosts)
    dominant = std::max(dominant, count);
  f.anchors_to_target_domain_ratio =
      anchors_total == 0 ? 0.0 : static_cast<double>(dominant) / static_cast<double>(anchors_total);

  std::size_t refs_total = 0, refs_root_relative = 0;
  for (const auto& slot : resource_refs(doc)) {
    const std::string& v = slot.value;
    if (v.empty())
      continue;
    ++refs_total;
    if (v[0] == '/' && std::string(url_host(v)).empty())
      ++refs_root_relative;
  }
  f.root_relative_resource_ratio =
      refs_total == 0 ? 0.0
                      : static_cast<double>(refs_root_relative) / static_cast<double>(refs_total);

  f.entity_encoded_text_ratio = visible_entity_stats(doc).encoded_ratio();
  return f;
}

// The four structural evasion signals, evaluated on one page's features.
inline int dom_evasion_signal_count(const FeatureVector& f) {
  int signals = 0;
  if (f.password_input_count == 0 && f.text_input_with_mask_count >= 1)
    ++signals;
  if (f.script_element_count == 0 && f.form_count >= 1)
    ++signals;
  if (f.anchors_to_target_domain_ratio >= kAnchorRatioMin)
    ++signals;
  if (f.root_relative_resource_ratio == 1.0)
    ++signals;
  return signals;
}

}  // namespace lurebench
