#pragma once

// Entry point for bundle generation: class name in, sealed PageBundle out.
// Options carry the exploit parameters; omitted options use the class
// defaults, and a mismatched option block is rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lurebench/brand/compose.hpp"

namespace lurebench {

inline ExploitSpec default_exploit_for(AttackClass cls) {
  switch (cls) {
    case AttackClass::captcha: return CaptchaSpec{};
    case AttackClass::qrcode: return QrCodeSpec{};
    case AttackClass::bitb: return BitbSpec{};
    case AttackClass::clickjack: return ClickjackSpec{};
    case AttackClass::dom_evasion: return DomEvasionSpec{};
    case AttackClass::polymorphic: return PolymorphicSpec{};
    case AttackClass::text_encoding: return TextEncodingSpec{};
    case AttackClass::fingerprint: return FingerprintSpec{};
    default:
      throw UnknownClassError("class '" + to_string(cls) + "' has no exploit parameters");
  }
}

inline PageBundle generate(AttackClass cls, const BrandProfile& profile,
                           const std::optional<ExploitSpec>& options = std::nullopt,
                           uint64_t seed = 0) {
  std::vector<FunctionalObject> objects;
  objects.push_back(design_for(profile));
  objects.push_back(credential_form_for(profile));
  objects.push_back(TransferSpec{});
  if (cls == AttackClass::regular) {
    if (options)
      throw OptionMismatchError("regular bundles take no exploit options");
  } else {
    ExploitSpec spec = options ? *options : default_exploit_for(cls);
    if (attack_class_of(spec) != cls)
      throw OptionMismatchError("options describe class '" +
                                to_string(attack_class_of(spec)) + "' but class '" +
                                to_string(cls) + "' was requested");
    objects.push_back(ExploitObject{std::move(spec)});
  }
  return compose_skeleton(profile, objects, seed);
}

inline PageBundle generate(const std::string& cls, const BrandProfile& profile,
                           const std::optional<ExploitSpec>& options = std::nullopt,
                           uint64_t seed = 0) {
  return generate(attack_class_from_string(cls), profile, options, seed);
}

struct CorpusEntry {
  std::string bundle_id;
  std::string attack_class;
  std::string brand_id;
  uint64_t seed = 0;
};

inline std::string serialize_corpus_index(const std::vector<CorpusEntry>& entries) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json je;
    je["bundle_id"] = e.bundle_id;
    je["attack_class"] = e.attack_class;
    je["brand_id"] = e.brand_id;
    je["seed"] = e.seed;
    j.push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

inline std::vector<CorpusEntry> parse_corpus_index(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("corpus index is not valid JSON: ") + e.what());
  }
  if (!j.is_array())
    throw ParseError("corpus index must be a JSON array");
  std::vector<CorpusEntry> out;
  for (const auto& je : j) {
    CorpusEntry e;
    e.bundle_id = je.value("bundle_id", std::string());
    e.attack_class = je.value("attack_class", std::string());
    e.brand_id = je.value("brand_id", std::string());
    e.seed = je.value("seed", uint64_t{0});
    out.push_back(std::move(e));
  }
  return out;
}

// Generates class x profile x seed, writes each bundle under out_dir, and
// returns index entries in generation order.
inline std::vector<CorpusEntry> generate_corpus(const std::vector<AttackClass>& classes,
                                                const std::vector<BrandProfile>& profiles,
                                                const std::vector<uint64_t>& seeds,
                                                const std::filesystem::path& out_dir) {
  std::vector<CorpusEntry> index;
  for (AttackClass cls : classes) {
    for (const auto& profile : profiles) {
      for (uint64_t seed : seeds) {
        PageBundle b = generate(cls, profile, std::nullopt, seed);
        write_bundle(b, out_dir);
        index.push_back(CorpusEntry{b.bundle_id, to_string(cls), profile.brand_id, seed});
      }
    }
  }
  return index;
}

}  // namespace lurebench
