#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lurebench/core/entities.hpp"
#include "lurebench/core/ip.hpp"
#include "lurebench/core/rng.hpp"
#include "lurebench/core/sha256.hpp"
#include "lurebench/core/url.hpp"

using namespace lurebench;

TEST_CASE("sha256 matches published vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("The quick brown fox jumps over the lazy dog") ==
        "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
  // Two-block message (56 bytes forces padding into a second block).
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  CHECK(sha256_hex16("abc") == "ba7816bf8f01cfea");
}

TEST_CASE("sha256 streaming equals one-shot") {
  Sha256 streamed;
  streamed.update("The quick brown fox ");
  streamed.update("jumps over the lazy dog");
  Sha256 oneshot;
  oneshot.update("The quick brown fox jumps over the lazy dog");
  CHECK(streamed.finish() == oneshot.finish());
}

TEST_CASE("splitmix64 matches the reference sequence") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
  SplitMix64 seeded(0x123456789ABCDEFULL);
  auto first = seeded.next();
  SplitMix64 again(0x123456789ABCDEFULL);
  CHECK(again.next() == first);
}

TEST_CASE("token_at is stateless and well-formed") {
  auto t0 = token_at(42, 0, 12);
  CHECK(t0.size() == 12);
  for (char c : t0)
    CHECK(((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')));
  CHECK(token_at(42, 0, 12) == t0);          // same (seed, k) -> same token
  CHECK(token_at(42, 1, 12) != t0);          // stream position matters
  CHECK(token_at(43, 0, 12) != t0);          // seed matters
  // Issuing order does not matter: k-th token is a pure function.
  auto t5 = token_at(7, 5, 8);
  (void)token_at(7, 0, 8);
  (void)token_at(7, 1, 8);
  CHECK(token_at(7, 5, 8) == t5);
  std::set<std::string> seen;
  for (int k = 0; k < 200; ++k)
    seen.insert(token_at(99, static_cast<std::uint64_t>(k), 10));
  CHECK(seen.size() == 200);
}

TEST_CASE("url component extraction") {
  CHECK(url_host("https://paypal.com/signin") == "paypal.com");
  CHECK(url_host("http://user:pw@evil.test:8080/x?q=1") == "evil.test");
  CHECK(url_host("//cdn.example.net/lib.js") == "cdn.example.net");
  CHECK(url_host("/relative/path.html") == "");
  CHECK(url_host("assets/logo.svg") == "");
  CHECK(url_path("https://paypal.com/signin?next=/home") == "/signin");
  CHECK(url_path("https://paypal.com") == "/");
  CHECK(url_path("//host.test/a/b.html") == "/a/b.html");
  CHECK(url_path("/index.html?t=abc") == "/index.html");
  CHECK(url_path("page.html#frag") == "page.html");
  CHECK(url_query("/index.html?t=abc&u=2#x") == "t=abc&u=2");
  CHECK(url_query("/index.html") == "");
}

TEST_CASE("percent encoding round trip") {
  CHECK(percent_decode("a%20b%2Fc") == "a b/c");
  CHECK(percent_decode("a+b") == "a b");
  CHECK(percent_decode("100%") == "100%");  // truncated escape stays literal
  std::string raw = "user id/with specials&=?#";
  CHECK(percent_decode(percent_encode(raw)) == raw);
}

TEST_CASE("form body parsing") {
  auto fields = parse_form_urlencoded("user=alice%40example.com&password=hunter2&pin=");
  REQUIRE(fields.size() == 3);
  CHECK(fields.at("user") == "alice@example.com");
  CHECK(fields.at("password") == "hunter2");
  CHECK(fields.at("pin") == "");
  auto params = parse_query_params("/index.html?t=k3j2&session=9");
  CHECK(params.at("t") == "k3j2");
  CHECK(params.at("session") == "9");
  CHECK(parse_form_urlencoded("").empty());
}

TEST_CASE("ipv4 parsing is strict") {
  CHECK(parse_ipv4("192.0.2.1").value() == 0xC0000201u);
  CHECK(parse_ipv4("0.0.0.0").value() == 0u);
  CHECK(parse_ipv4("255.255.255.255").value() == 0xFFFFFFFFu);
  CHECK_FALSE(parse_ipv4("256.0.0.1").has_value());
  CHECK_FALSE(parse_ipv4("1.2.3").has_value());
  CHECK_FALSE(parse_ipv4("1.2.3.4.5").has_value());
  CHECK_FALSE(parse_ipv4("1.2.3.x").has_value());
  CHECK_FALSE(parse_ipv4("").has_value());
  CHECK_FALSE(parse_ipv4("1.2.3.0004").has_value());
}

TEST_CASE("cidr membership") {
  auto block = Cidr::parse("192.0.2.0/24");
  CHECK(block.contains(parse_ipv4("192.0.2.77").value()));
  CHECK_FALSE(block.contains(parse_ipv4("192.0.3.1").value()));
  CHECK(Cidr::parse("0.0.0.0/0").contains(parse_ipv4("8.8.8.8").value()));
  auto host_only = Cidr::parse("198.51.100.7");
  CHECK(host_only.contains(parse_ipv4("198.51.100.7").value()));
  CHECK_FALSE(host_only.contains(parse_ipv4("198.51.100.8").value()));
  CHECK(is_valid_cidr("10.0.0.0/8"));
  CHECK_FALSE(is_valid_cidr("10.0.0.0/33"));
  CHECK_FALSE(is_valid_cidr("10.0.0/8"));
  CHECK_THROWS_AS(Cidr::parse("bogus/24"), ValidationError);
}

TEST_CASE("loopback detection") {
  CHECK(is_loopback_address("127.0.0.1"));
  CHECK(is_loopback_address("127.255.0.3"));
  CHECK(is_loopback_address("localhost"));
  CHECK_FALSE(is_loopback_address("192.0.2.1"));
  CHECK_FALSE(is_loopback_address("example.test"));
}

TEST_CASE("numeric character reference encoding hides every literal") {
  std::string original = "Sign in to continue";
  std::string encoded = encode_ncr(original);
  CHECK(encoded.find("Sign") == std::string::npos);
  CHECK(decode_entities(encoded) == original);
  // Non-ASCII survives the round trip as well.
  std::string accented = "caf\xC3\xA9";
  CHECK(decode_entities(encode_ncr(accented)) == accented);
  CHECK(encode_ncr("A") == "&#65;");
}

TEST_CASE("entity decoding handles named and numeric forms") {
  CHECK(decode_entities("a &amp; b") == "a & b");
  CHECK(decode_entities("&lt;div&gt;") == "<div>");
  CHECK(decode_entities("&#x41;&#66;") == "AB");
  CHECK(decode_entities("100% &notarealentity;") == "100% &notarealentity;");
  CHECK(decode_entities("dangling &") == "dangling &");
  CHECK(decode_entities("&#110000000;") == "&#110000000;");  // above U+10FFFF stays literal
}

TEST_CASE("encoded-character accounting") {
  // Numeric references count as encoded; named references and literals do not.
  auto stats = count_entity_chars("&#83;ign in");
  CHECK(stats.encoded_chars == 1);
  CHECK(stats.plain_chars == 6);
  auto named = count_entity_chars("a &amp; b");
  CHECK(named.encoded_chars == 0);
  CHECK(named.plain_chars == 5);

  auto all = count_entity_chars(encode_ncr("Verify account"));
  CHECK(all.plain_chars == 0);
  CHECK(all.encoded_chars == 14);
  CHECK(all.encoded_ratio() == 1.0);

  EntityStats sum;
  sum += count_entity_chars("&#65;");
  sum += count_entity_chars("B");
  CHECK(sum.encoded_ratio() == 0.5);  // boundary value used by the detector
  CHECK(count_entity_chars("").encoded_ratio() == 0.0);
}
