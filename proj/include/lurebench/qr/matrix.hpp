#pragma once

// Symbol geometry shared by the encoder and decoder: version/ECC tables for
// versions 1-10, the function-module map, zigzag data placement order, and the
// BCH-protected format field.

#include <cstdint>
#include <string>
#include <vector>

#include "lurebench/errors.hpp"

namespace lurebench::qr {

inline constexpr int kMinVersion = 1;
inline constexpr int kMaxVersion = 10;
inline constexpr int kQuietZone = 4;  // modules on each side in rendered output

enum class EccLevel { L, M };

inline std::string ecc_name(EccLevel e) { return e == EccLevel::L ? "L" : "M"; }

inline void check_version(int version) {
  if (version < kMinVersion || version > kMaxVersion)
    throw RangeError("qr: version must be in [1, 10], got " + std::to_string(version));
}

inline int side_for_version(int version) {
  check_version(version);
  return 17 + 4 * version;
}

// Indexed by version - 1.
inline constexpr int kEccPerBlock[2][10] = {
    /* L */ {7, 10, 15, 20, 26, 18, 20, 24, 30, 18},
    /* M */ {10, 16, 26, 18, 24, 16, 18, 22, 22, 26},
};
inline constexpr int kNumBlocks[2][10] = {
    /* L */ {1, 1, 1, 1, 1, 2, 2, 2, 2, 4},
    /* M */ {1, 1, 1, 2, 2, 4, 4, 4, 5, 5},
};

inline int ecc_per_block(int version, EccLevel ecc) {
  check_version(version);
  return kEccPerBlock[ecc == EccLevel::M ? 1 : 0][version - 1];
}

inline int num_blocks(int version, EccLevel ecc) {
  check_version(version);
  return kNumBlocks[ecc == EccLevel::M ? 1 : 0][version - 1];
}

// Modules available for codewords once finders, timing, alignment, format and
// (v7+) version info are carved out.
inline int raw_data_modules(int version) {
  check_version(version);
  int size = 17 + 4 * version;
  int result = size * size;
  result -= 8 * 8 * 3;  // finders with separators
  result -= 15 * 2 + 1;  // format info and dark module
  result -= (size - 16) * 2;  // timing patterns
  if (version >= 2) {
    int num_align = version / 7 + 2;
    result -= (num_align - 1) * (num_align - 1) * 25;
    result -= (num_align - 2) * 2 * 20;  // alignment crossing timing
    if (version >= 7)
      result -= 6 * 3 * 2;  // version info
  }
  return result;
}

inline int total_codewords(int version) { return raw_data_modules(version) / 8; }

inline int data_codewords(int version, EccLevel ecc) {
  return total_codewords(version) - ecc_per_block(version, ecc) * num_blocks(version, ecc);
}

// Mode header for byte mode: 4 mode bits plus the length field.
inline int byte_count_bits(int version) {
  check_version(version);
  return version <= 9 ? 8 : 16;
}

inline int byte_payload_capacity(int version, EccLevel ecc) {
  int bits = data_codewords(version, ecc) * 8;
  return (bits - 4 - byte_count_bits(version)) / 8;
}

// Centers of alignment patterns; empty for version 1.
inline std::vector<int> alignment_positions(int version) {
  check_version(version);
  if (version == 1)
    return {};
  int num_align = version / 7 + 2;
  int size = 17 + 4 * version;
  int step = (version * 4 + num_align * 2 + 1) / (num_align * 2 - 2) * 2;
  std::vector<int> result;
  for (int i = 0, pos = size - 7; i < num_align - 1; ++i, pos -= step)
    result.insert(result.begin(), pos);
  result.insert(result.begin(), 6);
  return result;
}

// 15-bit format field: 5 data bits, BCH remainder (generator 0x537), then the
// fixed xor mask 0x5412 so the field is never all zeros.
inline int format_bits(EccLevel ecc, int mask) {
  if (mask < 0 || mask > 7)
    throw RangeError("qr: mask must be in [0, 7]");
  int data = ((ecc == EccLevel::L ? 1 : 0) << 3) | mask;
  int rem = data;
  for (int i = 0; i < 10; ++i)
    rem = (rem << 1) ^ ((rem >> 9) * 0x537);
  return ((data << 10) | rem) ^ 0x5412;
}

// 18-bit version field for v7+: 6 data bits plus BCH remainder (0x1F25).
inline int version_bits(int version) {
  check_version(version);
  if (version < 7)
    throw RangeError("qr: version field only exists for version >= 7");
  int rem = version;
  for (int i = 0; i < 12; ++i)
    rem = (rem << 1) ^ ((rem >> 11) * 0x1F25);
  return (version << 12) | rem;
}

inline bool mask_bit(int mask, int x, int y) {
  switch (mask) {
    case 0: return (x + y) % 2 == 0;
    case 1: return y % 2 == 0;
    case 2: return x % 3 == 0;
    case 3: return (x + y) % 3 == 0;
    case 4: return (x / 3 + y / 2) % 2 == 0;
    case 5: return x * y % 2 + x * y % 3 == 0;
    case 6: return (x * y % 2 + x * y % 3) % 2 == 0;
    case 7: return ((x + y) % 2 + x * y % 3) % 2 == 0;
    default: throw RangeError("qr: mask must be in [0, 7]");
  }
}

// True where the module is reserved for function patterns (finders,
// separators, timing, alignment, format, version, dark module).
inline std::vector<std::uint8_t> function_module_map(int version) {
  int size = side_for_version(version);
  std::vector<std::uint8_t> fn(static_cast<std::size_t>(size) * size, 0);
  auto mark = [&](int x, int y) {
    if (x >= 0 && x < size && y >= 0 && y < size)
      fn[static_cast<std::size_t>(y) * size + x] = 1;
  };
  // Finder patterns with separators: 8x8 regions at three corners.
  for (int dy = 0; dy < 8; ++dy)
    for (int dx = 0; dx < 8; ++dx) {
      mark(dx, dy);
      mark(size - 1 - dx, dy);
      mark(dx, size - 1 - dy);
    }
  // Timing patterns.
  for (int i = 0; i < size; ++i) {
    mark(i, 6);
    mark(6, i);
  }
  // Alignment patterns (skip the three that would overlap finders).
  auto centers = alignment_positions(version);
  int n = static_cast<int>(centers.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if ((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0))
        continue;
      for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
          mark(centers[static_cast<std::size_t>(i)] + dx, centers[static_cast<std::size_t>(j)] + dy);
    }
  // Format info areas plus the dark module.
  for (int i = 0; i <= 8; ++i) {
    mark(i, 8);
    mark(8, i);
  }
  for (int i = 0; i < 8; ++i) {
    mark(size - 1 - i, 8);
    mark(8, size - 1 - i);
  }
  mark(8, size - 8);  // dark module (already covered, kept for clarity)
  // Version info areas for v7+.
  if (version >= 7)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) {
        mark(i, size - 11 + j);
        mark(size - 11 + j, i);
      }
  return fn;
}

// Data module coordinates in codeword placement order: column pairs from the
// right edge, alternating upward and downward, skipping function modules and
// the vertical timing column.
inline std::vector<std::pair<int, int>> data_module_positions(int version) {
  int size = side_for_version(version);
  auto fn = function_module_map(version);
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(raw_data_modules(version)));
  for (int right = size - 1; right >= 1; right -= 2) {
    if (right == 6)
      right = 5;
    for (int vert = 0; vert < size; ++vert)
      for (int j = 0; j < 2; ++j) {
        int x = right - j;
        bool upward = ((right + 1) & 2) == 0;
        int y = upward ? size - 1 - vert : vert;
        if (!fn[static_cast<std::size_t>(y) * size + x])
          order.emplace_back(x, y);
      }
  }
  return order;
}

struct QrMatrix {
  int version = 1;
  EccLevel ecc = EccLevel::L;
  int side = 21;
  int mask = 0;
  int payload_len = 0;  // byte count of the encoded payload
  std::vector<std::uint8_t> modules;  // row-major, side*side, 1 = dark

  bool dark(int x, int y) const {
    if (x < 0 || y < 0 || x >= side || y >= side)
      throw RangeError("qr: module coordinate out of range");
    return modules[static_cast<std::size_t>(y) * side + x] != 0;
  }

  void set(int x, int y, bool value) {
    modules[static_cast<std::size_t>(y) * side + x] = value ? 1 : 0;
  }
};

// A bare module grid with no metadata, as recovered from a rendered image.
struct BitGrid {
  int side = 0;
  std::vector<std::uint8_t> modules;  // row-major, 1 = dark

  bool dark(int x, int y) const {
    if (x < 0 || y < 0 || x >= side || y >= side)
      throw RangeError("qr: grid coordinate out of range");
    return modules[static_cast<std::size_t>(y) * side + x] != 0;
  }
};

// Mask-independent structural probe: the three finder patterns with their
// separator rings. Holds for any valid symbol regardless of payload.
inline bool has_finder_patterns(const BitGrid& g) {
  if (g.side < 21)
    return false;
  auto finder_at = [&](int ox, int oy) {
    for (int dy = 0; dy < 7; ++dy)
      for (int dx = 0; dx < 7; ++dx) {
        bool ring = dx == 0 || dx == 6 || dy == 0 || dy == 6;
        bool core = dx >= 2 && dx <= 4 && dy >= 2 && dy <= 4;
        bool want = ring || core;
        if (g.dark(ox + dx, oy + dy) != want)
          return false;
      }
    return true;
  };
  int s = g.side;
  auto separators_clear = [&] {
    for (int i = 0; i < 8; ++i) {
      // Top-left: row 7 and column 7.
      if (g.dark(i, 7) || g.dark(7, i))
        return false;
      // Top-right: row 7 and column s-8.
      if (g.dark(s - 1 - i, 7) || g.dark(s - 8, i))
        return false;
      // Bottom-left: row s-8 and column 7.
      if (g.dark(i, s - 8) || g.dark(7, s - 1 - i))
        return false;
    }
    return true;
  };
  return finder_at(0, 0) && finder_at(s - 7, 0) && finder_at(0, s - 7) && separators_clear();
}

inline bool has_finder_patterns(const QrMatrix& m) {
  return has_finder_patterns(BitGrid{m.side, m.modules});
}

}  // namespace lurebench::qr
