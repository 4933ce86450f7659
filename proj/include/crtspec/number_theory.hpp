#pragma once

// Integer helpers: modular arithmetic, 64-bit factorization, orders of 2,
// cyclotomic cosets.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "crtspec/error.hpp"

namespace crtspec {

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo m; a and m must be coprime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (r != 1) throw Error("inv_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization with multiplicity, ascending. Trial division up to
/// 2^16, Pollard rho on whatever cofactor remains.
inline std::vector<std::uint64_t> factorize(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < (1u << 16) && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct prime factors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  auto f = factorize(n);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

/// Least n >= 1 with 2^n = 1 (mod N). ord(1) is defined as 1.
inline unsigned multiplicative_order_of_2(std::uint64_t N) {
  if (N == 0 || N % 2 == 0) throw Error("multiplicative_order_of_2: N must be odd and positive");
  if (N == 1) return 1;
  // The order divides phi(N); reduce phi(N) prime by prime.
  std::uint64_t phi = N;
  for (auto p : prime_factors(N)) phi = phi / p * (p - 1);
  std::uint64_t order = phi;
  for (auto p : prime_factors(phi)) {
    while (order % p == 0 && pow_mod(2, order / p, N) == 1) order /= p;
  }
  return static_cast<unsigned>(order);
}

/// One 2-cyclotomic coset mod N: the orbit of k under doubling, in orbit
/// order (k, 2k, 4k, ...).
inline std::vector<std::uint64_t> cyclotomic_orbit(std::uint64_t k, std::uint64_t N) {
  if (N == 0 || N % 2 == 0) throw Error("cyclotomic cosets need an odd modulus");
  std::vector<std::uint64_t> orbit;
  std::uint64_t x = k % N;
  do {
    orbit.push_back(x);
    x = (2 * x) % N;
  } while (x != k % N);
  return orbit;
}

/// Partition of {0..N-1} into 2-cyclotomic cosets. Each coset is sorted
/// ascending; cosets are ordered by their leader (the minimum).
inline std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t N) {
  if (N == 0 || N % 2 == 0) throw Error("cyclotomic_cosets: N must be odd and positive");
  std::vector<bool> seen(N, false);
  std::vector<std::vector<std::uint64_t>> cosets;
  for (std::uint64_t k = 0; k < N; ++k) {
    if (seen[k]) continue;
    auto orbit = cyclotomic_orbit(k, N);
    for (auto x : orbit) seen[x] = true;
    std::sort(orbit.begin(), orbit.end());
    cosets.push_back(std::move(orbit));
  }
  return cosets;
}

/// Number of bits needed to write N in binary.
inline unsigned bit_length(std::uint64_t N) {
  unsigned n = 0;
  while (N) {
    ++n;
    N >>= 1;
  }
  return n;
}

}  // namespace crtspec
