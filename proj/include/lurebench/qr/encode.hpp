#pragma once

// Byte-mode symbol encoder. Picks the smallest version that fits, appends
// Reed-Solomon parity per block, interleaves, and selects the mask by the four
// standard penalty rules (N1=3, N2=3, N3=40, N4=10; ties go to the lowest
// mask index).

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "lurebench/errors.hpp"
#include "lurebench/qr/gf256.hpp"
#include "lurebench/qr/matrix.hpp"

namespace lurebench::qr {

namespace detail {

struct BitBuffer {
  std::vector<std::uint8_t> bits;  // one bit per entry

  void append(std::uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i)
      bits.push_back(static_cast<std::uint8_t>((value >> i) & 1));
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
      out[i / 8] = static_cast<std::uint8_t>(out[i / 8] | (bits[i] << (7 - i % 8)));
    return out;
  }
};

inline constexpr int kPenaltyN1 = 3;
inline constexpr int kPenaltyN2 = 3;
inline constexpr int kPenaltyN3 = 40;
inline constexpr int kPenaltyN4 = 10;

class MatrixBuilder {
 public:
  MatrixBuilder(int version, EccLevel ecc)
      : version_(version),
        ecc_(ecc),
        size_(side_for_version(version)),
        grid_(static_cast<std::size_t>(size_) * size_, 0),
        is_function_(function_module_map(version)) {}

  void draw_function_patterns() {
    // Timing first: finders and alignment overwrite where they cross it.
    for (int i = 0; i < size_; ++i) {
      set(i, 6, i % 2 == 0);
      set(6, i, i % 2 == 0);
    }
    draw_finder(0, 0);
    draw_finder(size_ - 7, 0);
    draw_finder(0, size_ - 7);
    auto centers = alignment_positions(version_);
    int n = static_cast<int>(centers.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if ((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0))
          continue;
        draw_alignment(centers[static_cast<std::size_t>(i)], centers[static_cast<std::size_t>(j)]);
      }
    if (version_ >= 7) {
      int bits = version_bits(version_);
      for (int i = 0; i < 18; ++i) {
        bool bit = ((bits >> i) & 1) != 0;
        int a = size_ - 11 + i % 3;
        int b = i / 3;
        set(a, b, bit);
        set(b, a, bit);
      }
    }
  }

  void draw_codewords(const std::vector<std::uint8_t>& codewords) {
    auto order = data_module_positions(version_);
    std::size_t total_bits = codewords.size() * 8;
    for (std::size_t i = 0; i < order.size(); ++i) {
      bool bit = false;
      if (i < total_bits)
        bit = ((codewords[i >> 3] >> (7 - (i & 7))) & 1) != 0;
      set(order[i].first, order[i].second, bit);
    }
  }

  // XOR of the mask pattern over non-function modules; self-inverse.
  void apply_mask(int mask) {
    for (int y = 0; y < size_; ++y)
      for (int x = 0; x < size_; ++x)
        if (!is_function_[idx(x, y)] && mask_bit(mask, x, y))
          grid_[idx(x, y)] ^= 1;
  }

  void draw_format(int mask) {
    int bits = format_bits(ecc_, mask);
    auto bit = [&](int i) { return ((bits >> i) & 1) != 0; };
    for (int i = 0; i <= 5; ++i)
      set(8, i, bit(i));
    set(8, 7, bit(6));
    set(8, 8, bit(7));
    set(7, 8, bit(8));
    for (int i = 9; i < 15; ++i)
      set(14 - i, 8, bit(i));
    for (int i = 0; i < 8; ++i)
      set(size_ - 1 - i, 8, bit(i));
    for (int i = 8; i < 15; ++i)
      set(8, size_ - 15 + i, bit(i));
    set(8, size_ - 8, true);  // dark module
  }

  long long penalty_score() const {
    long long result = 0;
    // Rule 1 and rule 3 over rows, then columns.
    for (int y = 0; y < size_; ++y) {
      bool run_color = false;
      int run_len = 0;
      std::array<int, 7> history{};
      for (int x = 0; x < size_; ++x) {
        if (dark(x, y) == run_color) {
          ++run_len;
          if (run_len == 5)
            result += kPenaltyN1;
          else if (run_len > 5)
            ++result;
        } else {
          finder_penalty_add_history(run_len, history);
          if (!run_color)
            result += finder_penalty_count(history) * kPenaltyN3;
          run_color = dark(x, y);
          run_len = 1;
        }
      }
      result += finder_penalty_terminate(run_color, run_len, history) * kPenaltyN3;
    }
    for (int x = 0; x < size_; ++x) {
      bool run_color = false;
      int run_len = 0;
      std::array<int, 7> history{};
      for (int y = 0; y < size_; ++y) {
        if (dark(x, y) == run_color) {
          ++run_len;
          if (run_len == 5)
            result += kPenaltyN1;
          else if (run_len > 5)
            ++result;
        } else {
          finder_penalty_add_history(run_len, history);
          if (!run_color)
            result += finder_penalty_count(history) * kPenaltyN3;
          run_color = dark(x, y);
          run_len = 1;
        }
      }
      result += finder_penalty_terminate(run_color, run_len, history) * kPenaltyN3;
    }
    // Rule 2: 2x2 blocks of one color.
    for (int y = 0; y < size_ - 1; ++y)
      for (int x = 0; x < size_ - 1; ++x) {
        bool c = dark(x, y);
        if (c == dark(x + 1, y) && c == dark(x, y + 1) && c == dark(x + 1, y + 1))
          result += kPenaltyN2;
      }
    // Rule 4: dark/light balance in 5% steps from 50%.
    long long dark_count = 0;
    for (std::uint8_t m : grid_)
      dark_count += m;
    long long total = static_cast<long long>(size_) * size_;
    long long k = (std::llabs(dark_count * 20 - total * 10) + total - 1) / total - 1;
    result += k * kPenaltyN4;
    return result;
  }

  QrMatrix take(int mask) && {
    QrMatrix m;
    m.version = version_;
    m.ecc = ecc_;
    m.side = size_;
    m.mask = mask;
    m.modules = std::move(grid_);
    return m;
  }

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * size_ + x; }
  bool dark(int x, int y) const { return grid_[idx(x, y)] != 0; }
  void set(int x, int y, bool value) { grid_[idx(x, y)] = value ? 1 : 0; }

  void draw_finder(int ox, int oy) {
    for (int dy = 0; dy < 7; ++dy)
      for (int dx = 0; dx < 7; ++dx) {
        bool ring = dx == 0 || dx == 6 || dy == 0 || dy == 6;
        bool core = dx >= 2 && dx <= 4 && dy >= 2 && dy <= 4;
        set(ox + dx, oy + dy, ring || core);
      }
    // Separators stay light; grid starts light so nothing to do.
  }

  void draw_alignment(int cx, int cy) {
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx)
        set(cx + dx, cy + dy, std::max(std::abs(dx), std::abs(dy)) != 1);
  }

  // Run-history helpers for rule 3: a 1:1:3:1:1 dark pattern flanked by four
  // light modules on either side.
  int finder_penalty_count(const std::array<int, 7>& h) const {
    int n = h[1];
    bool core = n > 0 && h[2] == n && h[3] == n * 3 && h[4] == n && h[5] == n;
    return (core && h[0] >= n * 4 && h[6] >= n ? 1 : 0) +
           (core && h[6] >= n * 4 && h[0] >= n ? 1 : 0);
  }

  int finder_penalty_terminate(bool current_color, int current_len, std::array<int, 7>& h) const {
    if (current_color) {
      finder_penalty_add_history(current_len, h);
      current_len = 0;
    }
    current_len += size_;  // light border beyond the symbol
    finder_penalty_add_history(current_len, h);
    return finder_penalty_count(h);
  }

  void finder_penalty_add_history(int current_len, std::array<int, 7>& h) const {
    if (h[0] == 0)
      current_len += size_;  // light border before the first run
    std::copy_backward(h.cbegin(), h.cend() - 1, h.end());
    h[0] = current_len;
  }

  int version_;
  EccLevel ecc_;
  int size_;
  std::vector<std::uint8_t> grid_;
  std::vector<std::uint8_t> is_function_;
};

}  // namespace detail

inline int choose_version(std::size_t payload_len, EccLevel ecc, int min_version = kMinVersion) {
  check_version(min_version);
  for (int v = min_version; v <= kMaxVersion; ++v)
    if (static_cast<int>(payload_len) <= byte_payload_capacity(v, ecc))
      return v;
  throw CapacityError("qr: payload of " + std::to_string(payload_len) +
                      " bytes exceeds capacity " +
                      std::to_string(byte_payload_capacity(kMaxVersion, ecc)) +
                      " of version 10-" + ecc_name(ecc));
}

// Data codewords for the whole symbol: mode header, payload, terminator, then
// alternating 0xEC/0x11 pad bytes.
inline std::vector<std::uint8_t> build_data_codewords(const std::vector<std::uint8_t>& payload,
                                                      int version, EccLevel ecc) {
  int capacity_bits = data_codewords(version, ecc) * 8;
  detail::BitBuffer bb;
  bb.append(0x4, 4);  // byte mode
  bb.append(static_cast<std::uint32_t>(payload.size()), byte_count_bits(version));
  for (std::uint8_t b : payload)
    bb.append(b, 8);
  if (static_cast<int>(bb.bits.size()) > capacity_bits)
    throw CapacityError("qr: payload does not fit in version " + std::to_string(version));
  int terminator = std::min<int>(4, capacity_bits - static_cast<int>(bb.bits.size()));
  bb.append(0, terminator);
  bb.append(0, (8 - static_cast<int>(bb.bits.size()) % 8) % 8);
  for (std::uint8_t pad = 0xEC; static_cast<int>(bb.bits.size()) < capacity_bits; pad ^= 0xEC ^ 0x11)
    bb.append(pad, 8);
  return bb.to_bytes();
}

// Per-block parity then column-wise interleave, exactly inverse to
// deinterleave_codewords in the decoder.
inline std::vector<std::uint8_t> interleave_with_ecc(const std::vector<std::uint8_t>& data,
                                                     int version, EccLevel ecc) {
  int blocks_n = num_blocks(version, ecc);
  int ecc_len = ecc_per_block(version, ecc);
  int raw = total_codewords(version);
  int short_blocks = blocks_n - raw % blocks_n;
  int short_len = raw / blocks_n;  // total block length including parity

  if (static_cast<int>(data.size()) != data_codewords(version, ecc))
    throw RangeError("qr: wrong data codeword count");

  std::vector<std::vector<std::uint8_t>> blocks;
  blocks.reserve(static_cast<std::size_t>(blocks_n));
  std::size_t k = 0;
  for (int i = 0; i < blocks_n; ++i) {
    std::size_t dat_len = static_cast<std::size_t>(short_len - ecc_len + (i < short_blocks ? 0 : 1));
    std::vector<std::uint8_t> block(data.begin() + static_cast<std::ptrdiff_t>(k),
                                    data.begin() + static_cast<std::ptrdiff_t>(k + dat_len));
    k += dat_len;
    auto parity = rs_generate_ecc(block, ecc_len);
    if (i < short_blocks)
      block.push_back(0);  // placeholder column skipped during interleave
    block.insert(block.end(), parity.begin(), parity.end());
    blocks.push_back(std::move(block));
  }

  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(raw));
  for (std::size_t col = 0; col < blocks[0].size(); ++col)
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (col != static_cast<std::size_t>(short_len - ecc_len) || j >= static_cast<std::size_t>(short_blocks))
        out.push_back(blocks[j][col]);
  return out;
}

inline QrMatrix qr_encode(const std::vector<std::uint8_t>& payload, EccLevel ecc,
                          int min_version = kMinVersion) {
  int version = choose_version(payload.size(), ecc, min_version);
  auto data = build_data_codewords(payload, version, ecc);
  auto codewords = interleave_with_ecc(data, version, ecc);

  detail::MatrixBuilder builder(version, ecc);
  builder.draw_function_patterns();
  builder.draw_codewords(codewords);

  int best_mask = 0;
  long long best_penalty = LLONG_MAX;
  for (int m = 0; m < 8; ++m) {
    builder.apply_mask(m);
    builder.draw_format(m);
    long long penalty = builder.penalty_score();
    if (penalty < best_penalty) {
      best_penalty = penalty;
      best_mask = m;
    }
    builder.apply_mask(m);  // undo
  }
  builder.apply_mask(best_mask);
  builder.draw_format(best_mask);
  QrMatrix m = std::move(builder).take(best_mask);
  m.payload_len = static_cast<int>(payload.size());
  return m;
}

inline QrMatrix qr_encode(const std::string& payload, EccLevel ecc,
                          int min_version = kMinVersion) {
  return qr_encode(std::vector<std::uint8_t>(payload.begin(), payload.end()), ecc, min_version);
}

}  // namespace lurebench::qr
