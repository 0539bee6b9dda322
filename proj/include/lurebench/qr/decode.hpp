#pragma once

// Symbol decoder: verifies structure, reads the format field tolerantly
// (minimum Hamming distance over all 32 candidates, both copies), unmasks,
// deinterleaves, and corrects up to ⌊ecc_per_block/2⌋ byte errors per block
// via syndromes, Berlekamp-Massey, Chien search, and Forney's formula.

#include <cstdint>
#include <string>
#include <vector>

#include "lurebench/errors.hpp"
#include "lurebench/qr/gf256.hpp"
#include "lurebench/qr/matrix.hpp"

namespace lurebench::qr {

struct DecodeResult {
  std::vector<std::uint8_t> payload;
  int version = 0;
  EccLevel ecc = EccLevel::L;
  int mask = 0;
  int corrected_errors = 0;  // total byte errors repaired across blocks

  std::string payload_text() const { return std::string(payload.begin(), payload.end()); }
};

namespace detail {

// Corrects `received` (data ∥ parity) in place. Returns the number of byte
// errors repaired; throws DecodeError when the error count exceeds capacity.
inline int rs_correct(std::vector<std::uint8_t>& received, int nsym) {
  const auto& gf = Gf256::instance();
  const int n = static_cast<int>(received.size());

  std::vector<std::uint8_t> syndromes(static_cast<std::size_t>(nsym), 0);
  bool clean = true;
  for (int j = 0; j < nsym; ++j) {
    std::uint8_t x = gf.exp(j);
    std::uint8_t acc = 0;
    for (std::uint8_t b : received)
      acc = static_cast<std::uint8_t>(gf.mul(acc, x) ^ b);
    syndromes[static_cast<std::size_t>(j)] = acc;
    clean = clean && acc == 0;
  }
  if (clean)
    return 0;

  // Berlekamp-Massey: error locator Λ(x), lowest power first.
  std::vector<std::uint8_t> lambda{1};
  std::vector<std::uint8_t> prev{1};
  int L = 0;
  int m = 1;
  std::uint8_t b = 1;
  for (int step = 0; step < nsym; ++step) {
    std::uint8_t delta = syndromes[static_cast<std::size_t>(step)];
    for (int i = 1; i < static_cast<int>(lambda.size()) && i <= step; ++i)
      delta = static_cast<std::uint8_t>(
          delta ^ gf.mul(lambda[static_cast<std::size_t>(i)], syndromes[static_cast<std::size_t>(step - i)]));
    if (delta == 0) {
      ++m;
    } else if (2 * L <= step) {
      auto backup = lambda;
      std::uint8_t coef = gf.div(delta, b);
      lambda.resize(std::max(lambda.size(), prev.size() + static_cast<std::size_t>(m)), 0);
      for (std::size_t i = 0; i < prev.size(); ++i)
        lambda[i + static_cast<std::size_t>(m)] =
            static_cast<std::uint8_t>(lambda[i + static_cast<std::size_t>(m)] ^ gf.mul(coef, prev[i]));
      L = step + 1 - L;
      prev = backup;
      b = delta;
      m = 1;
    } else {
      std::uint8_t coef = gf.div(delta, b);
      lambda.resize(std::max(lambda.size(), prev.size() + static_cast<std::size_t>(m)), 0);
      for (std::size_t i = 0; i < prev.size(); ++i)
        lambda[i + static_cast<std::size_t>(m)] =
            static_cast<std::uint8_t>(lambda[i + static_cast<std::size_t>(m)] ^ gf.mul(coef, prev[i]));
      ++m;
    }
  }
  while (!lambda.empty() && lambda.back() == 0)
    lambda.pop_back();
  int num_errors = static_cast<int>(lambda.size()) - 1;
  if (num_errors <= 0 || 2 * num_errors > nsym)
    throw DecodeError("qr: block has more errors than the code can correct");

  // Chien search: position k holds an error iff Λ(α^{-(n-1-k)}) = 0.
  auto eval_low_first = [&](const std::vector<std::uint8_t>& p, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t i = p.size(); i-- > 0;)
      acc = static_cast<std::uint8_t>(gf.mul(acc, x) ^ p[i]);
    return acc;
  };
  std::vector<int> error_positions;
  for (int k = 0; k < n; ++k) {
    std::uint8_t x_inv = gf.exp(-(n - 1 - k));
    if (eval_low_first(lambda, x_inv) == 0)
      error_positions.push_back(k);
  }
  if (static_cast<int>(error_positions.size()) != num_errors)
    throw DecodeError("qr: error locator roots do not match error count");

  // Forney: Ω(x) = S(x)·Λ(x) mod x^nsym; e_k = X_k · Ω(X_k^{-1}) / Λ'(X_k^{-1}).
  std::vector<std::uint8_t> omega(static_cast<std::size_t>(nsym), 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(nsym); ++i)
    for (std::size_t j = 0; j < lambda.size() && j <= i; ++j)
      omega[i] = static_cast<std::uint8_t>(omega[i] ^ gf.mul(syndromes[i - j], lambda[j]));
  // Formal derivative in characteristic 2: only odd-degree terms survive.
  std::vector<std::uint8_t> lambda_deriv(lambda.size() > 1 ? lambda.size() - 1 : 0, 0);
  for (std::size_t i = 1; i < lambda.size(); i += 2)
    lambda_deriv[i - 1] = lambda[i];

  for (int k : error_positions) {
    std::uint8_t x = gf.exp(n - 1 - k);        // X_k
    std::uint8_t x_inv = gf.inverse(x);        // X_k^{-1}
    std::uint8_t denom = eval_low_first(lambda_deriv, x_inv);
    if (denom == 0)
      throw DecodeError("qr: Forney denominator vanished");
    std::uint8_t magnitude = gf.mul(x, gf.div(eval_low_first(omega, x_inv), denom));
    received[static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>(received[static_cast<std::size_t>(k)] ^ magnitude);
  }

  // Recheck: corrected word must have zero syndromes.
  for (int j = 0; j < nsym; ++j) {
    std::uint8_t x = gf.exp(j);
    std::uint8_t acc = 0;
    for (std::uint8_t v : received)
      acc = static_cast<std::uint8_t>(gf.mul(acc, x) ^ v);
    if (acc != 0)
      throw DecodeError("qr: correction failed verification");
  }
  return num_errors;
}

inline int hamming15(int a, int b) {
  int x = (a ^ b) & 0x7FFF;
  int count = 0;
  while (x) {
    x &= x - 1;
    ++count;
  }
  return count;
}

struct FormatField {
  EccLevel ecc;
  int mask;
};

// Reads both format copies and picks the (ecc, mask) candidate with minimum
// Hamming distance; declines only if every candidate is more than 3 bits away
// from both copies (the BCH(15,5) correction radius).
inline FormatField read_format(const BitGrid& g) {
  int s = g.side;
  auto bit = [&](int x, int y) { return g.dark(x, y) ? 1 : 0; };
  int copy1 = 0;
  for (int i = 0; i <= 5; ++i)
    copy1 |= bit(8, i) << i;
  copy1 |= bit(8, 7) << 6;
  copy1 |= bit(8, 8) << 7;
  copy1 |= bit(7, 8) << 8;
  for (int i = 9; i < 15; ++i)
    copy1 |= bit(14 - i, 8) << i;
  int copy2 = 0;
  for (int i = 0; i < 8; ++i)
    copy2 |= bit(s - 1 - i, 8) << i;
  for (int i = 8; i < 15; ++i)
    copy2 |= bit(8, s - 15 + i) << i;

  int best_dist = 16;
  FormatField best{EccLevel::L, 0};
  for (int ecc_idx = 0; ecc_idx < 2; ++ecc_idx)
    for (int mask = 0; mask < 8; ++mask) {
      EccLevel ecc = ecc_idx == 0 ? EccLevel::L : EccLevel::M;
      int expected = format_bits(ecc, mask);
      int dist = std::min(hamming15(copy1, expected), hamming15(copy2, expected));
      if (dist < best_dist) {
        best_dist = dist;
        best = {ecc, mask};
      }
    }
  if (best_dist > 3)
    throw DecodeError("qr: format field unreadable (closest candidate " +
                      std::to_string(best_dist) + " bits away)");
  return best;
}

// Inverse of interleave_with_ecc: reconstructs each block's data ∥ parity.
// During interleave every block occupies short_len + 1 columns; short blocks
// have an untransmitted pad slot at column short_len - ecc_len.
inline std::vector<std::vector<std::uint8_t>> deinterleave_codewords(
    const std::vector<std::uint8_t>& all, int version, EccLevel ecc) {
  int blocks_n = num_blocks(version, ecc);
  int ecc_len = ecc_per_block(version, ecc);
  int raw = total_codewords(version);
  if (static_cast<int>(all.size()) != raw)
    throw DecodeError("qr: wrong codeword count for version");
  int short_blocks = blocks_n - raw % blocks_n;
  int short_len = raw / blocks_n;
  int col_count = short_len + 1;
  int pad_col = short_len - ecc_len;

  std::vector<std::vector<std::uint8_t>> blocks(
      static_cast<std::size_t>(blocks_n),
      std::vector<std::uint8_t>(static_cast<std::size_t>(col_count), 0));

  std::size_t pos = 0;
  for (int col = 0; col < col_count; ++col)
    for (int j = 0; j < blocks_n; ++j) {
      if (col == pad_col && j < short_blocks)
        continue;  // pad slot, never transmitted
      blocks[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)] = all[pos++];
    }
  if (pos != all.size())
    throw DecodeError("qr: deinterleave consumed wrong byte count");

  // Drop the pad slot so each short block is exactly data ∥ parity.
  for (int j = 0; j < short_blocks; ++j)
    blocks[static_cast<std::size_t>(j)].erase(blocks[static_cast<std::size_t>(j)].begin() + pad_col);
  return blocks;
}

}  // namespace detail

// Strips any uniform light border by cropping to the dark bounding box, which
// must come back square with a valid version side length.
inline BitGrid strip_quiet_zone(const BitGrid& g) {
  int min_x = g.side, min_y = g.side, max_x = -1, max_y = -1;
  for (int y = 0; y < g.side; ++y)
    for (int x = 0; x < g.side; ++x)
      if (g.dark(x, y)) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
      }
  if (max_x < 0)
    throw DecodeError("qr: image has no dark modules");
  int w = max_x - min_x + 1;
  int h = max_y - min_y + 1;
  if (w != h)
    throw DecodeError("qr: dark bounding box is not square");
  BitGrid out;
  out.side = w;
  out.modules.resize(static_cast<std::size_t>(w) * w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.modules[static_cast<std::size_t>(y) * w + x] = g.dark(min_x + x, min_y + y) ? 1 : 0;
  return out;
}

inline DecodeResult qr_decode_grid(const BitGrid& input) {
  // Always crop to the dark bounding box: finder corners pin the true symbol
  // extent, and a quiet-zoned v1 image (29 modules) would otherwise be
  // mistaken for a bare v3 symbol.
  BitGrid g = strip_quiet_zone(input);
  int version = (g.side - 17) / 4;
  if (g.side % 4 != 1 || version < kMinVersion || version > kMaxVersion)
    throw DecodeError("qr: side " + std::to_string(g.side) + " is not a supported symbol size");
  if (!has_finder_patterns(g))
    throw DecodeError("qr: finder patterns missing or damaged");

  auto format = detail::read_format(g);

  // Unmask and read data modules in placement order.
  auto fn = function_module_map(version);
  auto order = data_module_positions(version);
  std::vector<std::uint8_t> bits;
  bits.reserve(order.size());
  for (auto [x, y] : order) {
    bool bit = g.dark(x, y);
    if (mask_bit(format.mask, x, y))
      bit = !bit;
    bits.push_back(bit ? 1 : 0);
  }
  std::vector<std::uint8_t> codewords(bits.size() / 8, 0);
  for (std::size_t i = 0; i < codewords.size() * 8; ++i)
    codewords[i / 8] = static_cast<std::uint8_t>(codewords[i / 8] | (bits[i] << (7 - i % 8)));

  auto blocks = detail::deinterleave_codewords(codewords, version, format.ecc);
  int ecc_len = ecc_per_block(version, format.ecc);
  int corrected = 0;
  std::vector<std::uint8_t> data;
  for (auto& block : blocks) {
    corrected += detail::rs_correct(block, ecc_len);
    data.insert(data.end(), block.begin(), block.end() - ecc_len);
  }

  // Parse the byte-mode bit stream.
  std::size_t bit_pos = 0;
  auto take = [&](int count) {
    std::uint32_t v = 0;
    for (int i = 0; i < count; ++i, ++bit_pos) {
      if (bit_pos >= data.size() * 8)
        throw DecodeError("qr: bit stream truncated");
      v = (v << 1) | ((data[bit_pos / 8] >> (7 - bit_pos % 8)) & 1);
    }
    return v;
  };
  std::uint32_t mode = take(4);
  if (mode != 0x4)
    throw DecodeError("qr: only byte mode is supported, saw mode " + std::to_string(mode));
  std::uint32_t count = take(byte_count_bits(version));
  DecodeResult result;
  result.version = version;
  result.ecc = format.ecc;
  result.mask = format.mask;
  result.corrected_errors = corrected;
  result.payload.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i)
    result.payload.push_back(static_cast<std::uint8_t>(take(8)));
  return result;
}

inline DecodeResult qr_decode(const QrMatrix& m) {
  return qr_decode_grid(BitGrid{m.side, m.modules});
}

}  // namespace lurebench::qr
