#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "lurebench/core/rng.hpp"
#include "lurebench/qr/qr.hpp"
#include "oracles.hpp"

using namespace lurebench;
using namespace lurebench::qr;

namespace {

std::vector<std::uint8_t> random_bytes(SplitMix64& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out)
    b = static_cast<std::uint8_t>(rng.below(256));
  return out;
}

// Flips one random bit inside codeword `index` of the placed bit stream,
// guaranteeing that byte is corrupted.
void corrupt_codeword(QrMatrix& m, int index, SplitMix64& rng) {
  auto order = data_module_positions(m.version);
  int bit = static_cast<int>(rng.below(8));
  auto [x, y] = order[static_cast<std::size_t>(index * 8 + bit)];
  m.set(x, y, !m.dark(x, y));
}

}  // namespace

TEST_CASE("gf256 multiplication matches the shift-and-reduce oracle") {
  const auto& gf = Gf256::instance();
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b)
      REQUIRE(gf.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
              oracle::gf_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

TEST_CASE("gf256 log and exp invert each other") {
  const auto& gf = Gf256::instance();
  for (int v = 1; v < 256; ++v)
    CHECK(gf.exp(gf.log(static_cast<std::uint8_t>(v))) == v);
  for (int p = 0; p < 255; ++p)
    CHECK(gf.log(gf.exp(p)) == p);
  CHECK(gf.exp(255) == gf.exp(0));
  CHECK(gf.exp(-1) == gf.exp(254));
  for (int v = 1; v < 256; ++v)
    CHECK(gf.mul(static_cast<std::uint8_t>(v), gf.inverse(static_cast<std::uint8_t>(v))) == 1);
}

TEST_CASE("rs parity matches independent long division") {
  SplitMix64 rng(2024);
  for (int nsym : {7, 10, 15, 16, 18, 20, 22, 24, 26, 30}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto data = random_bytes(rng, 1 + rng.below(80));
      auto got = rs_generate_ecc(data, nsym);
      auto want = oracle::rs_parity_longdiv(data, nsym);
      REQUIRE(got == want);
      // data ∥ parity reduces to zero under the generator.
      auto codeword = data;
      codeword.insert(codeword.end(), got.begin(), got.end());
      REQUIRE(oracle::divides_cleanly(codeword, nsym));
    }
  }
}

TEST_CASE("rs parity edge cases") {
  CHECK(rs_generate_ecc({0x12, 0x34}, 0).empty());
  auto zero = rs_generate_ecc({0x00}, 2);
  CHECK(zero == std::vector<std::uint8_t>{0x00, 0x00});
  CHECK_THROWS_AS(rs_generate_ecc({0x01}, 255), RangeError);
  CHECK_THROWS_AS(rs_generate_ecc({}, 10), RangeError);
}

TEST_CASE("capacity table anchors") {
  // Published byte-mode capacities for the supported corner versions.
  CHECK(byte_payload_capacity(1, EccLevel::L) == 17);
  CHECK(byte_payload_capacity(1, EccLevel::M) == 14);
  CHECK(byte_payload_capacity(10, EccLevel::L) == 271);
  CHECK(byte_payload_capacity(10, EccLevel::M) == 213);
  CHECK(total_codewords(1) == 26);
  CHECK(total_codewords(10) == 346);
  CHECK(side_for_version(1) == 21);
  CHECK(side_for_version(10) == 57);
  CHECK_THROWS_AS(side_for_version(11), RangeError);
  CHECK(alignment_positions(1).empty());
  CHECK(alignment_positions(2) == std::vector<int>{6, 18});
  CHECK(alignment_positions(7) == std::vector<int>{6, 22, 38});
  CHECK(alignment_positions(10) == std::vector<int>{6, 28, 50});
}

TEST_CASE("encode picks the smallest fitting version") {
  CHECK(qr_encode(std::string(17, 'a'), EccLevel::L).version == 1);
  CHECK(qr_encode(std::string(18, 'a'), EccLevel::L).version == 2);
  CHECK(qr_encode(std::string(271, 'a'), EccLevel::L).version == 10);
  CHECK(qr_encode(std::string(14, 'a'), EccLevel::M).version == 1);
  CHECK(qr_encode(std::string(15, 'a'), EccLevel::M).version == 2);
  CHECK_THROWS_AS(qr_encode(std::string(272, 'a'), EccLevel::L), CapacityError);
  CHECK_THROWS_AS(qr_encode(std::string(5000, 'a'), EccLevel::L), CapacityError);
}

TEST_CASE("encode structural invariants") {
  auto m = qr_encode(std::string("/verify/login.html"), EccLevel::L);
  CHECK(m.side == 17 + 4 * m.version);
  CHECK(m.payload_len == 18);
  CHECK(m.mask >= 0);
  CHECK(m.mask <= 7);
  CHECK(has_finder_patterns(m));
  // Deterministic: same payload, byte-identical grid.
  auto again = qr_encode(std::string("/verify/login.html"), EccLevel::L);
  CHECK(m.modules == again.modules);
  CHECK(m.mask == again.mask);
}

TEST_CASE("round trip for representative payloads") {
  for (const char* payload : {"A", "/verify/login.html", "https://example.test/a?b=c&d=e",
                              "0123456789", ""}) {
    for (EccLevel ecc : {EccLevel::L, EccLevel::M}) {
      auto m = qr_encode(std::string(payload), ecc);
      auto decoded = qr_decode(m);
      CHECK(decoded.payload_text() == payload);
      CHECK(decoded.version == m.version);
      CHECK(decoded.ecc == m.ecc);
      CHECK(decoded.mask == m.mask);
      CHECK(decoded.corrected_errors == 0);
    }
  }
  CHECK(qr_encode(std::string(""), EccLevel::L).version == 1);
}

TEST_CASE("round trip across every version and both ecc levels") {
  SplitMix64 rng(7);
  for (int v = 1; v <= 10; ++v) {
    for (EccLevel ecc : {EccLevel::L, EccLevel::M}) {
      // A payload that lands exactly in version v.
      int len = byte_payload_capacity(v, ecc);
      if (v > 1)
        REQUIRE(len > byte_payload_capacity(v - 1, ecc));
      auto payload = random_bytes(rng, static_cast<std::size_t>(len));
      auto m = qr_encode(payload, ecc);
      REQUIRE(m.version == v);
      auto decoded = qr_decode(m);
      REQUIRE(decoded.payload == payload);
    }
  }
}

TEST_CASE("property: 1000 random payloads round trip") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    EccLevel ecc = rng.below(2) ? EccLevel::M : EccLevel::L;
    auto len = rng.below(static_cast<std::uint64_t>(byte_payload_capacity(10, ecc)) + 1);
    auto payload = random_bytes(rng, len);
    auto m = qr_encode(payload, ecc);
    auto decoded = qr_decode(m);
    REQUIRE(decoded.payload == payload);
  }
}

TEST_CASE("corrects floor(nsym/2) corrupted codewords per block") {
  SplitMix64 rng(99);
  struct Case {
    int version;
    EccLevel ecc;
  } cases[] = {{1, EccLevel::L}, {3, EccLevel::M}, {5, EccLevel::L},
               {6, EccLevel::L}, {9, EccLevel::M}, {10, EccLevel::M}};
  for (auto c : cases) {
    int payload_len = byte_payload_capacity(c.version, c.ecc);
    auto payload = random_bytes(rng, static_cast<std::size_t>(payload_len));
    auto m = qr_encode(payload, c.ecc);
    REQUIRE(m.version == c.version);

    int blocks_n = num_blocks(c.version, c.ecc);
    int t = ecc_per_block(c.version, c.ecc) / 2;
    // Interleaved byte c·blocks_n + j belongs to block j while c stays inside
    // the common data columns, so this corrupts exactly t bytes per block.
    for (int j = 0; j < blocks_n; ++j)
      for (int col = 0; col < t; ++col)
        corrupt_codeword(m, col * blocks_n + j, rng);

    auto decoded = qr_decode(m);
    CHECK(decoded.payload == payload);
    CHECK(decoded.corrected_errors == t * blocks_n);
  }
}

TEST_CASE("beyond-capacity corruption raises instead of lying") {
  SplitMix64 rng(123);
  auto m = qr_encode(std::string("stable payload"), EccLevel::L);  // v1-L, nsym=7, t=3
  // Corrupt 6 distinct codewords: twice the correction capacity. The decoder
  // must not return the original payload; with this fixed seed it throws.
  for (int k = 0; k < 6; ++k)
    corrupt_codeword(m, k, rng);
  CHECK_THROWS_AS(qr_decode(m), DecodeError);
}

TEST_CASE("format field tolerates up to three damaged bits") {
  auto m = qr_encode(std::string("format test"), EccLevel::M);
  // Flip three of the first-copy format modules around the top-left finder.
  int s = m.side;
  (void)s;
  m.set(8, 0, !m.dark(8, 0));
  m.set(8, 2, !m.dark(8, 2));
  m.set(7, 8, !m.dark(7, 8));
  auto decoded = qr_decode(m);
  CHECK(decoded.payload_text() == "format test");
  CHECK(decoded.ecc == EccLevel::M);
}

TEST_CASE("degenerate grids are rejected") {
  BitGrid zeros{21, std::vector<std::uint8_t>(21 * 21, 0)};
  CHECK_THROWS_AS(qr_decode_grid(zeros), DecodeError);
  BitGrid ones{21, std::vector<std::uint8_t>(21 * 21, 1)};
  CHECK_THROWS_AS(qr_decode_grid(ones), DecodeError);
}

TEST_CASE("pbm render and reparse") {
  auto m = qr_encode(std::string("hello"), EccLevel::L);
  std::string pbm = to_pbm(m);
  CHECK(pbm.substr(0, 3) == "P1\n");
  CHECK(pbm.find("29 29") != std::string::npos);  // 21 + 2*4 quiet zone

  auto grid = parse_pbm(pbm);
  CHECK(grid.side == 29);
  // Quiet zone is light.
  for (int i = 0; i < grid.side; ++i) {
    CHECK_FALSE(grid.dark(i, 0));
    CHECK_FALSE(grid.dark(0, i));
    CHECK_FALSE(grid.dark(i, grid.side - 1));
    CHECK_FALSE(grid.dark(grid.side - 1, i));
  }
  auto decoded = qr_decode_grid(grid);
  CHECK(decoded.payload_text() == "hello");
}

TEST_CASE("pbm parser rejects garbage") {
  CHECK_THROWS_AS(parse_pbm("P4\n4 4\n"), DecodeError);
  CHECK_THROWS_AS(parse_pbm("P1\n4 5\n0000"), DecodeError);
  CHECK_THROWS_AS(parse_pbm("P1\n2 2\n01"), DecodeError);
  auto ok = parse_pbm("P1\n# comment\n2 2\n0 1\n1 0\n");
  CHECK(ok.side == 2);
  CHECK(ok.dark(1, 0));
  CHECK_FALSE(ok.dark(0, 0));
}

TEST_CASE("svg render and reparse") {
  auto m = qr_encode(std::string("svg payload"), EccLevel::M);
  std::string svg = to_svg(m);

  std::size_t dark = 0;
  for (auto v : m.modules)
    dark += v;
  std::size_t rects = 0;
  for (std::size_t pos = 0; (pos = svg.find("<rect", pos)) != std::string::npos; ++pos)
    ++rects;
  CHECK(rects == dark);  // one rect per dark module, no background rect

  auto grid = parse_svg_grid(svg);
  CHECK(grid.side == m.side + 2 * kQuietZone);
  auto decoded = qr_decode_grid(grid);
  CHECK(decoded.payload_text() == "svg payload");
}

TEST_CASE("finder probe rejects a shifted pattern") {
  auto m = qr_encode(std::string("probe"), EccLevel::L);
  BitGrid g{m.side, m.modules};
  CHECK(has_finder_patterns(g));
  g.modules[3] ^= 1;  // damage the top-left finder ring
  CHECK_FALSE(has_finder_patterns(g));
}
