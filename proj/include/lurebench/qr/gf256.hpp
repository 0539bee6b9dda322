#pragma once

// GF(256) arithmetic over the QR polynomial 0x11D, plus Reed-Solomon parity
// generation. Tables are built once at static init; α = 0x02 generates the
// multiplicative group.

#include <array>
#include <cstdint>
#include <vector>

#include "lurebench/errors.hpp"

namespace lurebench::qr {

class Gf256 {
 public:
  static const Gf256& instance() {
    static const Gf256 gf;
    return gf;
  }

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    if (a == 0 || b == 0)
      return 0;
    return exp_[(log_[a] + log_[b]) % 255];
  }

  std::uint8_t div(std::uint8_t a, std::uint8_t b) const {
    if (b == 0)
      throw RangeError("gf256: division by zero");
    if (a == 0)
      return 0;
    return exp_[(log_[a] + 255 - log_[b]) % 255];
  }

  std::uint8_t inverse(std::uint8_t a) const { return div(1, a); }

  // α^power, any integer power.
  std::uint8_t exp(int power) const {
    int reduced = power % 255;
    if (reduced < 0)
      reduced += 255;
    return exp_[reduced];
  }

  int log(std::uint8_t a) const {
    if (a == 0)
      throw RangeError("gf256: log of zero");
    return log_[a];
  }

 private:
  Gf256() {
    int x = 1;
    for (int i = 0; i < 255; ++i) {
      exp_[i] = static_cast<std::uint8_t>(x);
      log_[x] = i;
      x <<= 1;
      if (x & 0x100)
        x ^= 0x11D;
    }
  }

  std::array<std::uint8_t, 255> exp_{};
  std::array<int, 256> log_{};
};

// Polynomials are coefficient vectors, highest power first.
namespace poly {

inline std::vector<std::uint8_t> mul(const std::vector<std::uint8_t>& a,
                                     const std::vector<std::uint8_t>& b) {
  const auto& gf = Gf256::instance();
  std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint8_t>(out[i + j] ^ gf.mul(a[i], b[j]));
  return out;
}

inline std::uint8_t eval(const std::vector<std::uint8_t>& p, std::uint8_t x) {
  const auto& gf = Gf256::instance();
  std::uint8_t acc = 0;
  for (std::uint8_t c : p)
    acc = static_cast<std::uint8_t>(gf.mul(acc, x) ^ c);
  return acc;
}

}  // namespace poly

// Π (x - α^i) for i in [0, degree). The QR block code generator.
inline std::vector<std::uint8_t> rs_generator_poly(int degree) {
  const auto& gf = Gf256::instance();
  std::vector<std::uint8_t> g{1};
  for (int i = 0; i < degree; ++i)
    g = poly::mul(g, {1, gf.exp(i)});
  return g;
}

// Reed-Solomon parity bytes: remainder of data·x^nsym mod the generator, so
// data ∥ parity is a codeword with zero remainder.
inline std::vector<std::uint8_t> rs_generate_ecc(const std::vector<std::uint8_t>& data, int nsym) {
  if (nsym < 0 || nsym > 254)
    throw RangeError("rs_generate_ecc: nsym must be in [0, 254]");
  if (nsym == 0)
    return {};
  if (data.empty())
    throw RangeError("rs_generate_ecc: data must be non-empty when nsym > 0");
  const auto& gf = Gf256::instance();
  const auto gen = rs_generator_poly(nsym);  // degree nsym, monic
  std::vector<std::uint8_t> rem(static_cast<std::size_t>(nsym), 0);
  for (std::uint8_t b : data) {
    std::uint8_t factor = static_cast<std::uint8_t>(b ^ rem.front());
    rem.erase(rem.begin());
    rem.push_back(0);
    for (int j = 0; j < nsym; ++j)
      rem[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(rem[static_cast<std::size_t>(j)] ^ gf.mul(gen[static_cast<std::size_t>(j) + 1], factor));
  }
  return rem;
}

}  // namespace lurebench::qr
