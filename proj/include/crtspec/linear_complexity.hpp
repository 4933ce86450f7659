#pragma once

// Berlekamp-Massey over GF(2).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/poly2.hpp"
#include "crtspec/sequence.hpp"

namespace crtspec {

struct BmResult {
  std::size_t linear_complexity = 0;
  /// Characteristic polynomial g(x) = x^L C(1/x), monic of degree L. It
  /// drives the same recurrence as an Lfsr with this connection polynomial:
  /// s_{t+L} = sum_{i<L} g_i s_{t+i}.
  Poly2 minimal_poly{1};
  /// Berlekamp-Massey connection polynomial C(x), constant term 1.
  Poly2 connection{1};
};

/// Runs the shortest recurrence from its first L bits for n outputs. The
/// recurrence may have g_0 = 0, so this does not go through Lfsr.
inline Bits regenerate(const BmResult& r, std::span<const std::uint8_t> seed_bits, std::size_t n) {
  const std::size_t L = r.linear_complexity;
  if (seed_bits.size() != L) throw Error("regenerate: seed length differs from linear complexity");
  Bits out(n, 0);
  for (std::size_t t = 0; t < n && t < L; ++t) out[t] = seed_bits[t];
  for (std::size_t t = L; t < n; ++t) {
    std::uint8_t v = 0;
    for (std::size_t i = 0; i < L; ++i)
      if (r.minimal_poly.coeff(static_cast<unsigned>(i))) v ^= out[t - L + i];
    out[t] = v;
  }
  return out;
}

/// Shortest LFSR generating `bits`. Reliable for the whole sequence once
/// the input holds at least twice its linear complexity.
inline BmResult berlekamp_massey(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw Error("berlekamp_massey: empty input");
  const std::size_t n = bits.size();
  std::vector<std::uint8_t> C(n + 1, 0), B(n + 1, 0), T;
  C[0] = B[0] = 1;
  std::size_t L = 0, m = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t d = bits[i];
    for (std::size_t j = 1; j <= L; ++j) d ^= C[j] & bits[i - j];
    if (d == 0) {
      ++m;
      continue;
    }
    if (2 * L <= i) {
      T = C;
      for (std::size_t j = m; j <= n; ++j) C[j] ^= B[j - m];
      L = i + 1 - L;
      B = std::move(T);
      m = 1;
    } else {
      for (std::size_t j = m; j <= n; ++j) C[j] ^= B[j - m];
      ++m;
    }
  }
  BmResult r;
  r.linear_complexity = L;
  C.resize(L + 1);
  r.connection = Poly2::from_coefficients(C);
  r.minimal_poly = r.connection.reciprocal(static_cast<int>(L));
  if (regenerate(r, bits.first(L), n) != Bits(bits.begin(), bits.end()))
    throw std::logic_error("berlekamp_massey: result does not regenerate its input");
  return r;
}

inline BmResult berlekamp_massey(const BitSequence& s, std::size_t periods = 2) {
  return berlekamp_massey(s.repeated(s.period() * periods));
}

}  // namespace crtspec
