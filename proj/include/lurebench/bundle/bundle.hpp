#pragma once

// A generated lure bundle: static files plus a behavior manifest plus a
// ground-truth sidecar. The bundle id is a content hash over every file the
// bundle will put on disk, so regeneration with identical inputs yields an
// identical directory tree under an identical name.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lurebench/brand/objects.hpp"
#include "lurebench/bundle/manifest.hpp"
#include "lurebench/core/sha256.hpp"
#include "lurebench/errors.hpp"

namespace lurebench {

struct GroundTruth {
  std::string attack_class;          // taxonomy label, "regular" when no exploit
  std::vector<std::string> classes;  // one label per exploit, or ["regular"]
  std::string canary;                // hex marker expected in captured records
  std::vector<std::pair<std::string, std::string>> evidence_hints;
};

inline std::string serialize_ground_truth(const GroundTruth& g) {
  nlohmann::ordered_json j;
  j["attack_class"] = g.attack_class;
  j["classes"] = g.classes;
  j["canary"] = g.canary;
  j["evidence_hints"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : g.evidence_hints)
    j["evidence_hints"][k] = v;
  return j.dump(2) + "\n";
}

inline GroundTruth parse_ground_truth(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw BundleLoadError(std::string("ground truth is not valid JSON: ") + e.what());
  }
  GroundTruth g;
  if (j.contains("attack_class") && j.at("attack_class").is_string())
    g.attack_class = j.at("attack_class").get<std::string>();
  if (j.contains("classes") && j.at("classes").is_array())
    for (const auto& c : j.at("classes"))
      if (c.is_string())
        g.classes.push_back(c.get<std::string>());
  if (j.contains("canary") && j.at("canary").is_string())
    g.canary = j.at("canary").get<std::string>();
  if (j.contains("evidence_hints") && j.at("evidence_hints").is_object())
    for (const auto& [k, v] : j.at("evidence_hints").items())
      if (v.is_string())
        g.evidence_hints.emplace_back(k, v.get<std::string>());
  return g;
}

struct PageBundle {
  std::string bundle_id;  // sha256_hex16 over the canonical file stream
  AttackClass attack_class = AttackClass::regular;
  std::string brand_id;
  uint64_t seed = 0;
  std::string entry_path;  // bundle-relative, mirrors manifest.entry
  std::map<std::string, std::string> files;  // path -> bytes, sorted by path
  BehaviorManifest manifest;
  GroundTruth ground_truth;
  bool has_ground_truth = true;
};

inline std::string canary_for(uint64_t seed, AttackClass cls, const std::string& brand_id) {
  std::string material = "canary\n" + std::to_string(seed) + "\n" + to_string(cls) + "\n" + brand_id;
  return sha256_hex16(material);
}

// Hash over (path, size, bytes) for every file the bundle writes, in path
// order, sidecars included. Lengths are delimited so concatenation cannot
// alias across entries.
inline std::string compute_bundle_id(const std::map<std::string, std::string>& all_files) {
  Sha256 h;
  for (const auto& [path, bytes] : all_files) {
    h.update(path);
    h.update("\n");
    h.update(std::to_string(bytes.size()));
    h.update("\n");
    h.update(bytes);
    h.update("\n");
  }
  auto digest = h.finish();
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0x0F]);
  }
  return out;
}

// Materialized view: every file write_bundle would emit, sidecars included.
inline std::map<std::string, std::string> bundle_disk_files(const PageBundle& b) {
  std::map<std::string, std::string> all = b.files;
  all["manifest.json"] = serialize_manifest(b.manifest);
  if (b.has_ground_truth)
    all["ground_truth.json"] = serialize_ground_truth(b.ground_truth);
  return all;
}

// Recomputes bundle_id from current content. Call after the last mutation.
inline void seal_bundle(PageBundle& b) {
  if (b.files.count("manifest.json") || b.files.count("ground_truth.json"))
    throw ValidationError("files", "manifest.json and ground_truth.json are reserved paths");
  for (const auto& [path, bytes] : b.files) {
    (void)bytes;
    if (path.empty() || path[0] == '/' || path.find("..") != std::string::npos)
      throw ValidationError("files", "invalid bundle-relative path '" + path + "'");
  }
  b.manifest.entry = b.entry_path;
  validate_manifest_against_files(b.manifest, b.files);
  b.bundle_id = compute_bundle_id(bundle_disk_files(b));
}

inline void write_bundle(const PageBundle& b, const std::filesystem::path& out_dir) {
  if (b.bundle_id.empty())
    throw ValidationError("bundle_id", "bundle is not sealed");
  std::filesystem::path root = out_dir / b.bundle_id;
  for (const auto& [path, bytes] : bundle_disk_files(b)) {
    std::filesystem::path full = root / path;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot open '" + full.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw Error("short write to '" + full.string() + "'");
  }
}

inline PageBundle load_bundle(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw BundleLoadError("'" + dir.string() + "' is not a directory");
  PageBundle b;
  std::map<std::string, std::string> all;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file())
      continue;
    std::string rel = std::filesystem::relative(e.path(), dir).generic_string();
    std::ifstream in(e.path(), std::ios::binary);
    if (!in)
      throw BundleLoadError("cannot read '" + e.path().string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    all[rel] = std::move(bytes);
  }
  auto mit = all.find("manifest.json");
  if (mit == all.end())
    throw BundleLoadError("bundle has no manifest.json");
  b.manifest = parse_manifest(mit->second);
  b.entry_path = b.manifest.entry;
  b.seed = b.manifest.seed;
  auto git = all.find("ground_truth.json");
  if (git != all.end()) {
    b.ground_truth = parse_ground_truth(git->second);
    b.has_ground_truth = true;
    if (!b.ground_truth.attack_class.empty())
      b.attack_class = attack_class_from_string(b.ground_truth.attack_class);
  } else {
    b.has_ground_truth = false;
  }
  b.bundle_id = compute_bundle_id(all);
  all.erase("manifest.json");
  all.erase("ground_truth.json");
  b.files = std::move(all);
  validate_manifest_against_files(b.manifest, b.files);
  return b;
}

}  // namespace lurebench
