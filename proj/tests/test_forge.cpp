#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lurebench/brand/builtin.hpp"
#include "lurebench/brand/compose.hpp"
#include "lurebench/forge/forge.hpp"
#include "lurebench/forge/passes.hpp"
#include "lurebench/scanner/features.hpp"
#include "oracles.hpp"

using namespace lurebench;

namespace {

BrandProfile pick(const std::string& id) {
  auto pool = list_builtin_profiles();
  const BrandProfile* p = find_builtin_profile(id, pool);
  REQUIRE(p != nullptr);
  return *p;
}

Node parse_entry(const PageBundle& b) {
  return dom::parse(b.files.at(b.entry_path));
}

}  // namespace

TEST_CASE("every class produces a sealed bundle with shared invariants") {
  auto profile = pick("facebook");
  for (AttackClass cls : all_attack_classes()) {
    PageBundle b = generate(cls, profile, std::nullopt, 42);
    INFO("class " << to_string(cls));
    CHECK(b.attack_class == cls);
    CHECK(b.brand_id == "facebook");
    CHECK(b.entry_path == "index.html");
    CHECK(b.files.count("index.html") == 1);
    CHECK(b.files.count("assets/style.css") == 1);
    CHECK(b.files.count("server/sink.php.txt") == 1);
    CHECK(b.manifest.entry == "index.html");
    CHECK(b.has_ground_truth);
    CHECK(b.ground_truth.attack_class == to_string(cls));
    CHECK(b.ground_truth.canary == canary_for(42, cls, "facebook"));
    CHECK(b.bundle_id.size() == 16);
    // The canary never leaks into form inputs; it lives in the entry head
    // and the capture plumbing only.
    Node entry = parse_entry(b);
    for (const Node* input : elements_by_tag(entry, "input"))
      CHECK(input->attr("value").value_or("") != b.ground_truth.canary);
    CHECK(b.files.at("index.html").find(b.ground_truth.canary) != std::string::npos);
    CHECK(b.files.at("server/sink.php.txt").find(b.ground_truth.canary) != std::string::npos);
  }
}

TEST_CASE("same seed regenerates byte-identical files, new seed reshuffles") {
  auto profile = pick("yahoo");
  for (AttackClass cls : all_attack_classes()) {
    PageBundle a = generate(cls, profile, std::nullopt, 7);
    PageBundle b = generate(cls, profile, std::nullopt, 7);
    INFO("class " << to_string(cls));
    CHECK(a.bundle_id == b.bundle_id);
    CHECK(a.files == b.files);
    PageBundle c = generate(cls, profile, std::nullopt, 8);
    CHECK(a.bundle_id != c.bundle_id);
  }
}

TEST_CASE("generation rejects mismatched or duplicate options") {
  auto profile = pick("amazon");
  CHECK_THROWS_AS(generate(AttackClass::regular, profile, ExploitSpec{CaptchaSpec{}}, 1),
                  OptionMismatchError);
  CHECK_THROWS_AS(generate(AttackClass::captcha, profile, ExploitSpec{QrCodeSpec{}}, 1),
                  OptionMismatchError);
  CHECK_NOTHROW(generate(AttackClass::captcha, profile, ExploitSpec{CaptchaSpec{}}, 1));
}

TEST_CASE("composition enforces functional object cardinality") {
  auto profile = pick("amazon");
  DesignSpec design = design_for(profile);
  CredentialFormSpec form = credential_form_for(profile);
  TransferSpec transfer;

  CHECK_THROWS_AS(compose_skeleton(profile, {design, transfer}, 1), CompositionError);
  CHECK_THROWS_AS(compose_skeleton(profile, {design, form}, 1), CompositionError);
  CHECK_THROWS_AS(compose_skeleton(profile, {form, transfer}, 1), CompositionError);
  CHECK_THROWS_AS(compose_skeleton(profile, {design, design, form, transfer}, 1),
                  CompositionError);
  CHECK_THROWS_AS(compose_skeleton(profile, {design, form, transfer, transfer}, 1),
                  CompositionError);
  CHECK_THROWS_AS(
      compose_skeleton(profile,
                       {design, form, transfer, ExploitObject{ExploitSpec{CaptchaSpec{}}},
                        ExploitObject{ExploitSpec{QrCodeSpec{}}}},
                       1),
      CompositionError);
  CHECK_NOTHROW(compose_skeleton(profile, {design, form, transfer}, 1));

  // A structural exploit plus a transform exploit compose fine.
  PageBundle b = compose_skeleton(profile,
                                  {design, form, transfer,
                                   ExploitObject{ExploitSpec{CaptchaSpec{}}},
                                   ExploitObject{ExploitSpec{TextEncodingSpec{}}}},
                                  1);
  CHECK(b.ground_truth.classes == std::vector<std::string>{"captcha", "text_encoding"});
  CHECK(b.attack_class == AttackClass::captcha);

  TransferSpec bad_endpoint;
  bad_endpoint.endpoint = "/elsewhere";
  CHECK_THROWS_AS(compose_skeleton(profile, {design, form, bad_endpoint}, 1), CompositionError);
}

TEST_CASE("entity encoding hides source text but not rendered text") {
  auto profile = pick("microsoft");
  PageBundle b = generate(AttackClass::text_encoding, profile, std::nullopt, 3);
  const std::string& raw = b.files.at("index.html");

  // No sensitive label string survives literally in the bytes. Control
  // tokens like type="password" are not labels and may remain.
  for (const auto& field : profile.fields)
    if (field.sensitive)
      CHECK(raw.find(field.label) == std::string::npos);

  // Decoding restores the labels.
  Node doc = dom::parse(raw);
  std::string visible;
  for (const Node* t : visible_text_nodes(doc))
    visible += decode_entities(t->text);
  CHECK(visible.find("Password") != std::string::npos);

  // A plain bundle of the same brand shows the label in source form.
  PageBundle plain = generate(AttackClass::regular, profile, std::nullopt, 3);
  CHECK(plain.files.at("index.html").find("Password") != std::string::npos);
}

TEST_CASE("encode pass is idempotent on already-encoded content") {
  Node doc = dom::parse("<html><body><p>Password &amp; PIN</p></body></html>");
  forge::encode_visible_text(doc, "all_visible");
  std::string once = dom::serialize(doc);
  forge::encode_visible_text(doc, "all_visible");
  CHECK(dom::serialize(doc) == once);
  CHECK_THROWS_AS(forge::encode_visible_text(doc, "everything"), ParamError);
}

TEST_CASE("dom evasion passes transform a page into the evasive shape") {
  PageBundle plain = generate(AttackClass::regular, pick("paypal"), std::nullopt, 5);
  Node doc = parse_entry(plain);
  FeatureVector before = extract_features(doc);
  CHECK(before.password_input_count >= 1);
  CHECK(before.script_element_count >= 1);
  CHECK(dom_evasion_signal_count(before) == 0);

  forge::apply_dom_evasion(doc, all_dom_evasion_passes(), "paypal.com");
  FeatureVector after = extract_features(doc);
  CHECK(after.password_input_count == 0);
  CHECK(after.text_input_with_mask_count >= 1);
  CHECK(after.script_element_count == 0);
  CHECK(after.anchors_to_target_domain_ratio == 1.0);
  CHECK(after.root_relative_resource_ratio == 1.0);
  CHECK(dom_evasion_signal_count(after) == 4);

  Node empty = dom::parse("<html><body><p>hi</p></body></html>");
  CHECK_THROWS_AS(forge::apply_dom_evasion(empty, all_dom_evasion_passes(), "x.com"),
                  NoFormError);
  Node with_form = parse_entry(plain);
  CHECK_THROWS_AS(forge::apply_dom_evasion(with_form, {"minify"}, "x.com"), ParamError);
}

TEST_CASE("bitb popup paints the target origin over a localhost bundle") {
  auto profile = pick("microsoft");
  BitbSpec spec;
  Node popup = forge::build_bitb_popup(profile, credential_form_for(profile), spec);
  std::string html = dom::serialize(popup);
  CHECK(html.find("https://microsoft.com/signin") != std::string::npos);
  CHECK(html.find("url-bar") != std::string::npos);
  REQUIRE(first_by_tag(popup, "form") != nullptr);

  BitbSpec foreign;
  foreign.displayed_url = "https://evil.example/login";
  CHECK_THROWS_AS(forge::build_bitb_popup(profile, credential_form_for(profile), foreign),
                  ValidationError);
}

TEST_CASE("clickjack overlay geometry agrees with the sampling oracle") {
  PageBundle b = generate(AttackClass::clickjack, pick("amazon"), std::nullopt, 11);
  Node doc = parse_entry(b);
  const Node* iframe = first_by_tag(doc, "iframe");
  REQUIRE(iframe != nullptr);
  CHECK(opacity_of(*iframe) <= 0.05);
  auto frame = rect_of(*iframe);
  REQUIRE(frame.has_value());

  const Node* cta = nullptr;
  walk(doc, [&](const Node& n) {
    if (!cta && n.is_element("a") && n.attr("class").value_or("").find("cta") != std::string::npos)
      cta = &n;
  });
  REQUIRE(cta != nullptr);
  auto target = rect_of(*cta);
  REQUIRE(target.has_value());

  double sampled = oracle::rect_overlap_sampled(target->x, target->y, target->w, target->h,
                                                frame->x, frame->y, frame->w, frame->h) /
                   target->area();
  double analytic = Rect::overlap_area(*target, *frame) / target->area();
  CHECK(sampled >= 0.9);
  CHECK(std::abs(sampled - analytic) < 0.02);

  Node no_cta = dom::parse("<html><body><p>text</p></body></html>");
  CHECK_THROWS_AS(forge::embed_clickjack_overlay(no_cta, "x.html", 0.02), NoCtaError);
  Node with = parse_entry(b);
  CHECK_THROWS_AS(forge::embed_clickjack_overlay(with, "x.html", 0.5), ParamError);
}

TEST_CASE("qrcode bundles embed a decodable two-stage pointer") {
  PageBundle b = generate(AttackClass::qrcode, pick("yahoo"), std::nullopt, 13);
  REQUIRE(b.files.count("assets/qr.svg") == 1);
  BitGrid grid = parse_svg_grid(b.files.at("assets/qr.svg"));
  DecodeResult decoded = qr_decode_grid(grid);
  CHECK(decoded.payload_text() == "/verify/login.html");
  CHECK(b.files.count("verify/login.html") == 1);
  // Landing page itself carries no form; the credential ask hides behind
  // the QR hop.
  Node landing = parse_entry(b);
  CHECK(first_by_tag(landing, "form") == nullptr);
  Node stage2 = dom::parse(b.files.at("verify/login.html"));
  CHECK(first_by_tag(stage2, "form") != nullptr);
}

TEST_CASE("gate manifests route by agent, token, or rotation") {
  auto profile = pick("facebook");

  PageBundle captcha = generate(AttackClass::captcha, profile, std::nullopt, 17);
  bool saw_token_gate = false, saw_issue = false;
  for (const auto& r : captcha.manifest.routes) {
    for (const auto& g : r.gates)
      saw_token_gate = saw_token_gate || g.kind == "has_token";
    saw_issue = saw_issue || std::holds_alternative<IssueTokenAction>(r.action);
  }
  CHECK(saw_token_gate);
  CHECK(saw_issue);

  PageBundle fp = generate(AttackClass::fingerprint, profile, std::nullopt, 17);
  bool saw_ua = false, saw_device = false, saw_deny = false;
  for (const auto& r : fp.manifest.routes)
    for (const auto& g : r.gates) {
      saw_ua = saw_ua || g.kind == "ua_contains";
      saw_device = saw_device || g.kind == "device_is";
      saw_deny = saw_deny || (g.kind == "ip_in_cidr" && g.negate);
    }
  CHECK(saw_ua);
  CHECK(saw_device);
  CHECK(saw_deny);

  PageBundle poly = generate(AttackClass::polymorphic, profile, std::nullopt, 17);
  bool saw_redirect = false;
  for (const auto& r : poly.manifest.routes)
    if (const auto* a = std::get_if<RedirectAction>(&r.action)) {
      saw_redirect = true;
      CHECK(a->location.find("{token}") != std::string::npos);
    }
  CHECK(saw_redirect);
}

TEST_CASE("corpus index serializes and parses") {
  std::vector<CorpusEntry> entries = {{"aaaabbbbccccdddd", "regular", "amazon", 1},
                                      {"eeeeffff00001111", "captcha", "yahoo", 42}};
  std::string text = serialize_corpus_index(entries);
  auto back = parse_corpus_index(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].bundle_id == "aaaabbbbccccdddd");
  CHECK(back[1].attack_class == "captcha");
  CHECK(back[1].seed == 42);
}
