#pragma once

// Slow reference implementations for the tests. They are written from the
// definitions and share no code with the library.

#include <cstdint>
#include <vector>

namespace ref {

using Coeffs = std::vector<std::uint8_t>;  // index = degree

// Shift-and-add multiplication in GF(2)[x]/(mod), reducing after every shift.
inline std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, std::uint64_t mod, unsigned m) {
  std::uint64_t r = 0;
  const std::uint64_t top = std::uint64_t{1} << m;
  for (unsigned i = 0; i < m; ++i) {
    if ((b >> i) & 1) r ^= a;
    a <<= 1;
    if (a & top) a ^= mod;
  }
  return r;
}

inline std::uint64_t gf_pow(std::uint64_t a, std::uint64_t e, std::uint64_t mod, unsigned m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = gf_mul(r, a, mod, m);
  return r;
}

// Multiplicative order by repeated multiplication; small fields only.
inline std::uint64_t gf_order(std::uint64_t a, std::uint64_t mod, unsigned m) {
  std::uint64_t x = a, n = 1;
  while (x != 1) {
    x = gf_mul(x, a, mod, m);
    ++n;
  }
  return n;
}

// s_{t+m} = sum_{i<m} c_i s_{t+i}; the seed's m binary digits, most
// significant first, are s_0 .. s_{m-1}.
inline std::vector<std::uint8_t> lfsr_bits(std::uint64_t conn, unsigned m, std::uint64_t seed, std::size_t n) {
  std::vector<std::uint8_t> s(n + m);
  for (unsigned j = 0; j < m; ++j) s[j] = (seed >> (m - 1 - j)) & 1;
  for (std::size_t t = 0; t + m < s.size(); ++t) {
    std::uint8_t v = 0;
    for (unsigned i = 0; i < m; ++i) v ^= ((conn >> i) & 1) & s[t + i];
    s[t + m] = v;
  }
  s.resize(n);
  return s;
}

inline int degree(const Coeffs& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i]) return i;
  return -1;
}

inline Coeffs mod(Coeffs a, const Coeffs& b) {
  const int db = degree(b);
  for (int i = degree(a); i >= db; --i)
    if (a[i])
      for (int j = 0; j <= db; ++j) a[i - db + j] ^= b[j];
  return a;
}

inline Coeffs gcd(Coeffs a, Coeffs b) {
  while (degree(b) >= 0) {
    Coeffs r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Linear complexity of the periodic sequence with one period `s`:
// N - deg gcd(x^N + 1, s_0 + s_1 x + ... + s_{N-1} x^{N-1}).
inline std::size_t linear_complexity(const std::vector<std::uint8_t>& s) {
  const std::size_t N = s.size();
  Coeffs xn(N + 1, 0);
  xn[0] = xn[N] = 1;
  Coeffs sp(s.begin(), s.end());
  if (degree(sp) < 0) return 0;
  return N - static_cast<std::size_t>(degree(gcd(xn, sp)));
}

// S_k = sum_t s_t root^(t k) as a raw field word.
inline std::uint64_t dft_value(const std::vector<std::uint8_t>& s, std::uint64_t root, std::uint64_t k,
                               std::uint64_t mod, unsigned m) {
  const std::uint64_t N = s.size();
  std::uint64_t acc = 0;
  for (std::uint64_t t = 0; t < N; ++t)
    if (s[t]) acc ^= gf_pow(root, (t * k) % N, mod, m);
  return acc;
}

// The k in [0, N) with k = r_i mod n_i for all i, by search.
inline std::uint64_t crt(const std::vector<std::uint64_t>& r, const std::vector<std::uint64_t>& n) {
  std::uint64_t N = 1;
  for (auto x : n) N *= x;
  for (std::uint64_t k = 0; k < N; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < n.size() && ok; ++i) ok = k % n[i] == r[i] % n[i];
    if (ok) return k;
  }
  return N;
}

}  // namespace ref
