// Acceptance gate: one line per criterion, PASS or FAIL with a measurement.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lurebench/lurebench.hpp"
#include "lurebench/preview/server.hpp"

#include "../oracles.hpp"

namespace fs = std::filesystem;
using namespace lurebench;

namespace {

const std::vector<std::uint64_t> kSeeds = {1, 7, 42};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Order-independent digest of a directory tree: relative path, size, bytes.
std::string tree_hash(const fs::path& root) {
  std::vector<std::string> rel;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file())
      rel.push_back(fs::relative(e.path(), root).generic_string());
  std::sort(rel.begin(), rel.end());
  Sha256 h;
  for (const auto& r : rel) {
    std::string body = read_file(root / r);
    h.update(r);
    h.update("\n" + std::to_string(body.size()) + "\n");
    h.update(body);
  }
  auto digest = h.finish();
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (auto byte : digest) {
    out += hex[byte >> 4];
    out += hex[byte & 0x0F];
  }
  return out;
}

bool host_is_local(std::string_view host) {
  return host.empty() || host == "localhost" ||
         (host.size() >= 4 && is_valid_cidr(std::string(host) + "/32") &&
          is_loopback_address(std::string(host)));
}

struct Corpus {
  fs::path dir;
  std::vector<CorpusEntry> entries;
  double generate_seconds = 0;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<BrandProfile> profiles;
  if (argc > 1) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(argv[1]))
      if (e.path().extension() == ".json")
        paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths)
      profiles.push_back(load_brand_profile(read_file(p)));
  } else {
    profiles = list_builtin_profiles();
  }

  int failures = 0;
  auto run = [&](const char* id, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    std::printf("%-3s %s %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok)
      ++failures;
  };

  Corpus corpus;
  corpus.dir = fs::temp_directory_path() / "lurebench_acceptance";
  fs::remove_all(corpus.dir);

  // C1: full grid generates, round-trips through disk, and scans clean.
  run("C1", [&](std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    corpus.entries =
        generate_corpus(all_attack_classes(), profiles, kSeeds, corpus.dir.string());
    auto t1 = std::chrono::steady_clock::now();
    corpus.generate_seconds = std::chrono::duration<double>(t1 - t0).count();

    int correct = 0;
    for (const auto& e : corpus.entries) {
      PageBundle b = load_bundle((corpus.dir / e.bundle_id).string());
      if (classification_of(scan(b)) == e.attack_class)
        ++correct;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d bundles, accuracy %d/%d, %.1f s total (limit 120 s)",
                  static_cast<int>(corpus.entries.size()), correct,
                  static_cast<int>(corpus.entries.size()), seconds);
    detail = buf;
    return corpus.entries.size() == 135 && correct == 135 && seconds < 120.0;
  });

  // C2: plain bundles trip the exfil detector and nothing else.
  run("C2", [&](std::string& detail) {
    int checked = 0;
    for (const auto& p : profiles)
      for (auto seed : kSeeds) {
        ScanReport r = scan(generate(AttackClass::regular, p, std::nullopt, seed));
        if (r.findings.size() != 1 || r.findings[0].technique != "credential_exfil") {
          detail = "unexpected findings for " + p.brand_id + " seed " + std::to_string(seed);
          return false;
        }
        ++checked;
      }
    detail = std::to_string(checked) + " regular bundles, each exactly one exfil finding";
    return true;
  });

  // C3: labels vanish from encoded source; decoding restores the visible
  // text of the untransformed page byte for byte.
  run("C3", [&](std::string& detail) {
    auto visible_decoded = [](const PageBundle& b) {
      Node doc = dom::parse(b.files.at(b.entry_path));
      std::string out;
      for (const Node* t : visible_text_nodes(doc))
        out += decode_entities(t->text);
      for (const auto& slot : visible_attr_slots(doc))
        out += decode_entities(slot.node->attr(slot.attr).value_or(""));
      return out;
    };
    int checked = 0;
    for (const auto& p : profiles)
      for (auto seed : kSeeds) {
        PageBundle enc = generate(AttackClass::text_encoding, p, std::nullopt, seed);
        PageBundle plain = generate(AttackClass::regular, p, std::nullopt, seed);
        const std::string& raw = enc.files.at(enc.entry_path);
        for (const auto& field : p.fields)
          if (field.sensitive && raw.find(field.label) != std::string::npos) {
            detail = "literal label '" + field.label + "' in " + p.brand_id;
            return false;
          }
        std::string restored = visible_decoded(enc);
        if (restored.empty() || restored != visible_decoded(plain)) {
          detail = "decoded text mismatch for " + p.brand_id + " seed " + std::to_string(seed);
          return false;
        }
        ++checked;
      }
    detail = std::to_string(checked) + " encoded bundles restore their visible text exactly";
    return true;
  });

  // C4: URL rotation is collision-free per visit and replayable per seed.
  run("C4", [&](std::string& detail) {
    for (const auto& p : profiles) {
      PageBundle b = generate(AttackClass::polymorphic, p, std::nullopt, 42);
      HarnessRuntime rt1, rt2;
      auto agent = default_probe_agents()[1];
      PolymorphicProbe run1 = probe_polymorphic(b, agent, 10, rt1);
      PolymorphicProbe run2 = probe_polymorphic(b, agent, 10, rt2);
      std::set<std::string> urls, hashes;
      for (const auto& o : run1.observations) {
        urls.insert(o.final_url);
        hashes.insert(o.content_hash);
      }
      if (urls.size() != 10 || hashes.size() != 1) {
        detail = p.brand_id + ": " + std::to_string(urls.size()) + " urls, " +
                 std::to_string(hashes.size()) + " hashes";
        return false;
      }
      for (std::size_t i = 0; i < 10; ++i)
        if (run1.observations[i].final_url != run2.observations[i].final_url) {
          detail = p.brand_id + ": token sequence diverged across runs";
          return false;
        }
    }
    detail = "10 distinct urls, one content hash, identical sequence across runs (5 brands)";
    return true;
  });

  // C5: cloaked bundles show crawlers nothing and victims a credential form.
  run("C5", [&](std::string& detail) {
    for (const auto& p : profiles) {
      PageBundle b = generate(AttackClass::fingerprint, p, std::nullopt, 42);
      HarnessRuntime rt;
      DifferentialProbe probe = probe_differential(b, default_probe_agents(), rt);
      const AgentObservation* crawler = nullptr;
      const AgentObservation* victim = nullptr;
      for (const auto& o : probe.observations) {
        if (o.agent == "crawler")
          crawler = &o;
        if (o.agent == "victim-mobile")
          victim = &o;
      }
      if (!crawler || !victim || crawler->password_inputs != 0 ||
          victim->password_inputs < 1 || crawler->content_hash == victim->content_hash) {
        detail = "differential failed for " + p.brand_id;
        return false;
      }
    }
    detail = "crawler 0 password inputs, victim >=1, hashes differ (5 brands)";
    return true;
  });

  // C6: the challenge gate holds until solved, and tokens are not portable.
  run("C6", [&](std::string& detail) {
    for (const auto& p : profiles) {
      PageBundle b = generate(AttackClass::captcha, p, std::nullopt, 42);
      HarnessRuntime rt;
      auto agent = default_probe_agents()[1];
      Session fresh{"accept-a", {}};
      auto cold = interpret(b, {"GET", "/login.html", agent, {}}, fresh, rt);
      if (cold.response.served_file == "login.html") {
        detail = p.brand_id + ": credential route served without token";
        return false;
      }
      Session solved = solve_captcha_stub(b, fresh, rt);
      auto warm = interpret(b, {"GET", "/login.html", agent, {}}, solved, rt);
      if (warm.response.served_file != "login.html") {
        detail = p.brand_id + ": gate stayed shut after solve";
        return false;
      }
      Session thief{"accept-b", {{"captcha_token", solved.values.at("captcha_token")}}};
      auto replay = interpret(b, {"GET", "/login.html", agent, {}}, thief, rt);
      if (replay.response.served_file == "login.html") {
        detail = p.brand_id + ": replayed token opened the gate";
        return false;
      }
    }
    detail = "gate shut cold, open after solve, shut on replay (5 brands)";
    return true;
  });

  // C7: staged QR bundles decode with our own decoder, plus codec property
  // suite: random round-trips and bounded corruption recovery.
  run("C7", [&](std::string& detail) {
    for (const auto& p : profiles) {
      PageBundle b = generate(AttackClass::qrcode, p, std::nullopt, 42);
      DecodeResult d = qr_decode_grid(parse_svg_grid(b.files.at("assets/qr.svg")));
      std::string stage = d.payload_text();
      if (stage.empty() || stage[0] != '/') {
        detail = p.brand_id + ": payload is not a path";
        return false;
      }
      Node page = dom::parse(b.files.at(stage.substr(1)));
      bool sensitive = false;
      for (const Node* input : elements_by_tag(page, "input"))
        sensitive = sensitive || is_sensitive_input(*input);
      if (!sensitive) {
        detail = p.brand_id + ": stage-2 page has no sensitive input";
        return false;
      }
    }

    SplitMix64 rng(20260819);
    for (int trial = 0; trial < 1000; ++trial) {
      int version = 1 + static_cast<int>(rng.below(10));
      EccLevel ecc = rng.below(2) == 0 ? EccLevel::L : EccLevel::M;
      std::size_t cap = static_cast<std::size_t>(qr::byte_payload_capacity(version, ecc));
      std::vector<std::uint8_t> payload(1 + rng.below(cap));
      for (auto& byte : payload)
        byte = static_cast<std::uint8_t>(rng.below(256));
      QrMatrix m = qr_encode(payload, ecc, version);
      DecodeResult d = qr_decode(m);
      if (d.payload != payload || d.version != version) {
        detail = "round-trip " + std::to_string(trial) + " failed (v" +
                 std::to_string(version) + ")";
        return false;
      }
    }

    auto order_corrupt = [&](QrMatrix& m, int index) {
      auto order = qr::data_module_positions(m.version);
      int bit = static_cast<int>(rng.below(8));
      auto [x, y] = order[static_cast<std::size_t>(index * 8 + bit)];
      m.set(x, y, !m.dark(x, y));
    };
    for (int version : {1, 4, 7, 10}) {
      for (EccLevel ecc : {EccLevel::L, EccLevel::M}) {
        int blocks = qr::num_blocks(version, ecc);
        int t = qr::ecc_per_block(version, ecc) / 2;
        std::string payload = "corruption probe v" + std::to_string(version);
        QrMatrix m = qr_encode(payload, ecc, version);
        for (int j = 0; j < blocks; ++j)
          for (int col = 0; col < t; ++col)
            order_corrupt(m, col * blocks + j);
        DecodeResult d = qr_decode(m);
        if (d.payload_text() != payload || d.corrected_errors != t * blocks) {
          detail = "corruption recovery failed at v" + std::to_string(version) + "-" +
                   qr::ecc_name(ecc);
          return false;
        }
      }
    }
    detail = "5 staged bundles decode, 1000 round-trips, floor(nsym/2) recovery at 8 configs";
    return true;
  });

  // C8: overlay geometry confirmed by the sampling oracle, not the layout
  // code's own arithmetic.
  run("C8", [&](std::string& detail) {
    double worst = 1.0;
    for (const auto& p : profiles)
      for (auto seed : kSeeds) {
        PageBundle b = generate(AttackClass::clickjack, p, std::nullopt, seed);
        Node doc = dom::parse(b.files.at(b.entry_path));
        const Node* iframe = first_by_tag(doc, "iframe");
        const Node* cta = nullptr;
        walk(doc, [&](const Node& n) {
          if (!cta && n.is_element("a") &&
              n.attr("class").value_or("").find("cta") != std::string::npos)
            cta = &n;
        });
        if (!iframe || !cta) {
          detail = p.brand_id + ": missing overlay or decoy control";
          return false;
        }
        auto fr = rect_of(*iframe);
        auto cr = rect_of(*cta);
        double op = opacity_of(*iframe);
        if (!fr || !cr || op > 0.05) {
          detail = p.brand_id + ": geometry unreadable or opacity " + std::to_string(op);
          return false;
        }
        double overlap =
            oracle::rect_overlap_sampled(cr->x, cr->y, cr->w, cr->h, fr->x, fr->y, fr->w, fr->h) /
            cr->area();
        worst = std::min(worst, overlap);
        if (overlap < 0.9) {
          detail = p.brand_id + ": oracle overlap " + std::to_string(overlap);
          return false;
        }
      }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "15 bundles, worst oracle overlap %.3f at opacity <= 0.05",
                  worst);
    detail = buf;
    return true;
  });

  // C9: painted URL bar shows the brand origin while everything serves from
  // localhost, and the fake window really asks for credentials.
  run("C9", [&](std::string& detail) {
    for (const auto& p : profiles) {
      PageBundle b = generate(AttackClass::bitb, p, std::nullopt, 42);
      Node doc = dom::parse(b.files.at(b.entry_path));
      const Node* bar = nullptr;
      walk(doc, [&](const Node& n) {
        if (!bar && n.kind == NodeKind::Element &&
            n.attr("class").value_or("").find("url-bar") != std::string::npos)
          bar = &n;
      });
      if (!bar || bar->children.empty()) {
        detail = p.brand_id + ": no painted url bar";
        return false;
      }
      std::string shown = decode_entities(bar->children[0].text);
      if (std::string(url_host(shown)) != p.target_domain) {
        detail = p.brand_id + ": url bar shows '" + shown + "'";
        return false;
      }
      const Node* popup = nullptr;
      walk(doc, [&](const Node& n) {
        if (!popup && n.kind == NodeKind::Element &&
            n.attr("class").value_or("").find("browser-popup") != std::string::npos)
          popup = &n;
      });
      if (!popup || !subtree_has_sensitive_input(*popup)) {
        detail = p.brand_id + ": popup lacks the credential form";
        return false;
      }
      // Serving host: the bundle answers over the loopback harness.
      HarnessRuntime rt;
      Session s{"accept-c9", {}};
      auto r = fetch_following(b, "/" + b.entry_path, default_probe_agents()[1], s, rt);
      if (r.response.status != 200) {
        detail = p.brand_id + ": entry not served locally";
        return false;
      }
    }
    detail = "url bar = target domain, local serving, credential form inside popup (5 brands)";
    return true;
  });

  // C10: transformed pages light all four structural signals; plain pages
  // light at most one.
  run("C10", [&](std::string& detail) {
    for (const auto& p : profiles)
      for (auto seed : kSeeds) {
        PageBundle evasive = generate(AttackClass::dom_evasion, p, std::nullopt, seed);
        FeatureVector fe = extract_features(dom::parse(evasive.files.at(evasive.entry_path)));
        if (dom_evasion_signal_count(fe) != 4) {
          detail = p.brand_id + ": evasive bundle shows " +
                   std::to_string(dom_evasion_signal_count(fe)) + "/4 signals";
          return false;
        }
        PageBundle plain = generate(AttackClass::regular, p, std::nullopt, seed);
        FeatureVector fb = extract_features(dom::parse(plain.files.at(plain.entry_path)));
        if (dom_evasion_signal_count(fb) > 1) {
          detail = p.brand_id + ": baseline shows " +
                   std::to_string(dom_evasion_signal_count(fb)) + " signals";
          return false;
        }
      }
    detail = "15 evasive bundles at 4/4 signals, 15 baselines at <=1";
    return true;
  });

  // C11: nothing in the corpus points at the network, every capture carries
  // its canary, and the preview server cannot leave loopback.
  run("C11", [&](std::string& detail) {
    int pages = 0, captures = 0;
    for (const auto& e : corpus.entries) {
      PageBundle b = load_bundle((corpus.dir / e.bundle_id).string());
      for (const auto& [path, bytes] : b.files) {
        if (path.size() < 5 || path.compare(path.size() - 5, 5, ".html") != 0)
          continue;
        Node doc = dom::parse(bytes);
        for (const auto& slot : resource_refs(doc))
          if (!host_is_local(url_host(slot.value))) {
            detail = e.bundle_id + "/" + path + " fetches " + slot.value;
            return false;
          }
        for (const auto& action : form_actions(doc))
          if (!host_is_local(url_host(action.value))) {
            detail = e.bundle_id + "/" + path + " posts to " + action.value;
            return false;
          }
        ++pages;
      }
      // Submit the credential form and confirm the canary on the record.
      HarnessRuntime rt;
      Session s{"accept-c11", {}};
      HttpRequest post{"POST", "/capture", default_probe_agents()[2], {{"probe_field", "x"}}};
      auto r = interpret(b, post, s, rt);
      if (r.response.status != 200 || rt.captures().size() != 1 ||
          rt.captures()[0].canary != b.ground_truth.canary) {
        detail = e.bundle_id + ": capture lacks the correct canary";
        return false;
      }
      ++captures;
    }

    PageBundle any = load_bundle((corpus.dir / corpus.entries[0].bundle_id).string());
    HarnessRuntime rt;
    PreviewServer server(any, rt);
    bool refused = false;
    try {
      server.listen("0.0.0.0", 18089);
    } catch (const ValidationError&) {
      refused = true;
    }
    if (!refused) {
      detail = "server accepted a non-loopback bind";
      return false;
    }
    if (!server.bind_only("127.0.0.1", 18089)) {
      detail = "server failed to bind 127.0.0.1:18089";
      return false;
    }
    server.stop();
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "%d pages reference no external host, %d captures canaried, bind gated", pages,
                  captures);
    detail = buf;
    return true;
  });

  // C12: the corpus is a pure function of its configuration.
  run("C12", [&](std::string& detail) {
    fs::path again = fs::temp_directory_path() / "lurebench_acceptance_again";
    fs::remove_all(again);
    auto entries = generate_corpus(all_attack_classes(), profiles, kSeeds, again.string());
    if (entries.size() != corpus.entries.size()) {
      detail = "regeneration produced a different corpus size";
      return false;
    }
    std::string h1 = tree_hash(corpus.dir);
    std::string h2 = tree_hash(again);
    fs::remove_all(again);
    detail = "tree hash " + h1.substr(0, 16) + (h1 == h2 ? " reproduced exactly" : " diverged");
    return h1 == h2;
  });

  fs::remove_all(corpus.dir);
  std::printf("%s: %d/12 criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", 12 - failures);
  return failures;
}
