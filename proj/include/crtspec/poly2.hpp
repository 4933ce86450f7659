#pragma once

// Polynomials over GF(2), stored as a little-endian bitvector: bit i is the
// coefficient of x^i.

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crtspec/error.hpp"

namespace crtspec {

class Poly2 {
 public:
  /// Degree of the zero polynomial.
  static constexpr int kZeroDegree = -1;

  Poly2() = default;
  /// Polynomial whose coefficient bits are `bits` (bit 0 = constant term).
  explicit Poly2(std::uint64_t bits) {
    if (bits) words_.push_back(bits);
  }

  static Poly2 monomial(unsigned degree) {
    Poly2 p;
    p.set(degree, true);
    return p;
  }

  /// Polynomial from coefficient bits, c[i] = coefficient of x^i.
  template <typename Range>
  static Poly2 from_coefficients(const Range& coeffs) {
    Poly2 p;
    unsigned i = 0;
    for (auto c : coeffs) {
      if (c) p.set(i, true);
      ++i;
    }
    return p;
  }

  bool is_zero() const noexcept { return words_.empty(); }

  int degree() const noexcept {
    if (words_.empty()) return kZeroDegree;
    return static_cast<int>(64 * (words_.size() - 1)) + 63 - std::countl_zero(words_.back());
  }

  bool coeff(unsigned i) const noexcept {
    unsigned w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
  }

  void set(unsigned i, bool value) {
    unsigned w = i / 64;
    if (w >= words_.size()) {
      if (!value) return;
      words_.resize(w + 1, 0);
    }
    if (value)
      words_[w] |= std::uint64_t{1} << (i % 64);
    else
      words_[w] &= ~(std::uint64_t{1} << (i % 64));
    trim();
  }

  /// Low 64 coefficient bits. Throws if the degree exceeds 63.
  std::uint64_t to_u64() const {
    if (words_.size() > 1) throw Error("polynomial of degree " + std::to_string(degree()) + " does not fit 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
  }

  /// Value at x = 1 (parity of the coefficients).
  bool eval_at_one() const noexcept { return weight() % 2 == 1; }

  Poly2& operator+=(const Poly2& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    trim();
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    if (a.is_zero() || b.is_zero()) return r;
    r.words_.assign(a.words_.size() + b.words_.size(), 0);
    int db = b.degree();
    for (int i = 0; i <= db; ++i) {
      if (!b.coeff(static_cast<unsigned>(i))) continue;
      r.xor_shifted(a, static_cast<unsigned>(i));
    }
    r.trim();
    return r;
  }
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }

  /// Quotient and remainder. Throws on division by zero.
  friend std::pair<Poly2, Poly2> divmod(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    Poly2 q, r = a;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
      unsigned shift = static_cast<unsigned>(r.degree() - db);
      q.set(shift, true);
      r.xor_shifted(b, shift);
      r.trim();
    }
    return {q, r};
  }
  friend Poly2 operator%(const Poly2& a, const Poly2& b) { return divmod(a, b).second; }
  friend Poly2 operator/(const Poly2& a, const Poly2& b) { return divmod(a, b).first; }

  friend Poly2 gcd(Poly2 a, Poly2 b) {
    while (!b.is_zero()) {
      Poly2 r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  /// x^d p(1/x) with d = degree(p); constant-term zeros drop the degree.
  Poly2 reciprocal() const { return reciprocal(degree()); }

  /// x^d p(1/x) for an explicit d >= degree(p).
  Poly2 reciprocal(int d) const {
    Poly2 r;
    for (int i = 0; i <= degree(); ++i) {
      if (coeff(static_cast<unsigned>(i))) r.set(static_cast<unsigned>(d - i), true);
    }
    return r;
  }

  /// Monomial form, most significant term first, e.g. "x^6 + x^4 + x + 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (!coeff(static_cast<unsigned>(i))) continue;
      if (!s.empty()) s += " + ";
      if (i == 0)
        s += "1";
      else if (i == 1)
        s += "x";
      else
        s += "x^" + std::to_string(i);
    }
    return s;
  }

  /// Lowercase hex of the coefficient bits with a 0x prefix.
  std::string to_hex() const {
    if (is_zero()) return "0x0";
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    int nibbles = degree() / 4 + 1;
    for (int n = nibbles - 1; n >= 0; --n) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) v |= static_cast<unsigned>(coeff(static_cast<unsigned>(4 * n) + b)) << b;
      s += digits[v];
    }
    return "0x" + s;
  }

  /// Accepts hex ("0x25") or monomial form ("x^5 + x^2 + 1").
  static Poly2 parse(std::string_view text) {
    auto trim_ws = [](std::string_view v) {
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
      return v;
    };
    text = trim_ws(text);
    if (text.empty()) throw Error("empty polynomial");
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      Poly2 p;
      unsigned bit = 0;
      for (auto it = text.rbegin(); it != text.rend() - 2; ++it, bit += 4) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
        unsigned v;
        if (c >= '0' && c <= '9')
          v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
          v = static_cast<unsigned>(c - 'a' + 10);
        else
          throw Error("bad hex digit '" + std::string(1, *it) + "' in polynomial " + std::string(text));
        for (unsigned b = 0; b < 4; ++b)
          if ((v >> b) & 1u) p.set(bit + b, true);
      }
      return p;
    }
    Poly2 p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t plus = text.find('+', pos);
      auto term = trim_ws(text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos));
      if (term.empty()) throw Error("empty term in polynomial " + std::string(text));
      unsigned exponent;
      if (term == "1") {
        exponent = 0;
      } else if (term == "x") {
        exponent = 1;
      } else if (term.size() > 2 && term.substr(0, 2) == "x^") {
        exponent = 0;
        for (char c : term.substr(2)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad term '" + std::string(term) + "'");
          exponent = exponent * 10 + static_cast<unsigned>(c - '0');
        }
      } else {
        throw Error("bad term '" + std::string(term) + "'");
      }
      p.set(exponent, !p.coeff(exponent));
      if (plus == std::string_view::npos) break;
      pos = plus + 1;
    }
    return p;
  }

  friend bool operator==(const Poly2&, const Poly2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Poly2& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  void xor_shifted(const Poly2& a, unsigned shift) {
    unsigned ws = shift / 64, bs = shift % 64;
    std::size_t need = a.words_.size() + ws + 1;
    if (words_.size() < need) words_.resize(need, 0);
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      words_[i + ws] ^= a.words_[i] << bs;
      if (bs) words_[i + ws + 1] ^= a.words_[i] >> (64 - bs);
    }
  }

  std::vector<std::uint64_t> words_;
};

}  // namespace crtspec
