#pragma once

// Binary extension fields GF(2^m), 1 <= m <= 32, in polynomial basis.
//
// An element is a bitvector of m coordinates packed in a 64-bit word; the
// product of two elements fits in 63 bits before reduction. FieldSpec is an
// immutable handle (shared, thread-safe to read); FieldElement is plain data
// plus a handle to its field.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/op_counter.hpp"
#include "crtspec/poly2.hpp"

namespace crtspec {

inline constexpr unsigned kMaxFieldDegree = 32;

/// Built-in moduli: for each degree the primitive polynomial with the
/// numerically smallest coefficient word. Index = degree; entry 0 unused.
inline constexpr std::array<std::uint64_t, kMaxFieldDegree + 1> kPrimitivePolynomials = {
    0x0,        0x3,        0x7,        0xb,        0x13,        0x25,       0x43,       0x83,      0x11d,
    0x211,      0x409,      0x805,      0x1053,     0x201b,      0x402b,     0x8003,     0x1002d,   0x20009,
    0x40027,    0x80027,    0x100009,   0x200005,   0x400003,    0x800021,   0x100001b,  0x2000009, 0x4000047,
    0x8000027,  0x10000009, 0x20000005, 0x40000053, 0x80000009, 0x1000000af};

inline Poly2 builtin_primitive_polynomial(unsigned m) {
  if (m < 1 || m > kMaxFieldDegree) throw Error("no built-in modulus for degree " + std::to_string(m));
  return Poly2(kPrimitivePolynomials[m]);
}

/// Thrown by build_field when the modulus factors.
class ReducibleModulus : public Error {
 public:
  ReducibleModulus(const Poly2& modulus, const Poly2& factor)
      : Error("modulus " + modulus.to_string() + " is reducible: divisible by " + factor.to_string()),
        factor_(factor) {}
  const Poly2& factor() const noexcept { return factor_; }

 private:
  Poly2 factor_;
};

namespace detail {

// Carry-less product of two words of at most 32 significant bits.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::uint64_t reduce(std::uint64_t v, std::uint64_t modulus, unsigned m) {
  for (int i = 63 - std::countl_zero(v | 1); i >= static_cast<int>(m); --i) {
    if ((v >> i) & 1u) v ^= modulus << (i - static_cast<int>(m));
  }
  return v;
}

struct FieldData {
  unsigned m = 0;
  std::uint64_t modulus = 0;
  Poly2 modulus_poly;
  std::uint64_t generator = 1;
  std::uint64_t group_order = 1;
  std::vector<std::uint64_t> group_order_factors;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(clmul(a, b), modulus, m); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

// Rabin's test on a modulus word of degree m.
inline bool is_irreducible_word(std::uint64_t f, unsigned m) {
  if (m == 1) return true;
  if ((f & 1u) == 0) return false;
  auto sq = [&](std::uint64_t a) { return reduce(clmul(a, a), f, m); };
  auto x_pow_2k = [&](unsigned k) {
    std::uint64_t r = 2;
    for (unsigned i = 0; i < k; ++i) r = sq(r);
    return r;
  };
  if (x_pow_2k(m) != 2) return false;
  for (auto q : prime_factors(m)) {
    Poly2 h(x_pow_2k(m / static_cast<unsigned>(q)) ^ 2u);
    if (gcd(Poly2(f), h).degree() > 0) return false;
  }
  return true;
}

// Smallest nontrivial factor by exhaustive trial division, degree <= m/2.
inline Poly2 smallest_factor(const Poly2& f) {
  int m = f.degree();
  for (int d = 1; d <= m / 2; ++d) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << d); ++low) {
      Poly2 cand((std::uint64_t{1} << d) | low);
      if ((f % cand).is_zero()) return cand;
    }
  }
  return f;
}

}  // namespace detail

class FieldElement;

/// An immutable binary extension field with a designated generator of the
/// full multiplicative group.
class FieldSpec {
 public:
  /// Builds GF(2^m). The modulus defaults to the built-in primitive
  /// polynomial for m; any supplied modulus is checked for irreducibility.
  static FieldSpec build(unsigned m, std::optional<Poly2> modulus = std::nullopt) {
    if (m < 1 || m > kMaxFieldDegree)
      throw Error("build_field: extension degree " + std::to_string(m) + " outside [1, 32]");
    Poly2 mod = modulus ? *modulus : builtin_primitive_polynomial(m);
    if (mod.degree() != static_cast<int>(m))
      throw Error("build_field: modulus " + mod.to_string() + " does not have degree " + std::to_string(m));
    auto d = std::make_shared<detail::FieldData>();
    d->m = m;
    d->modulus = mod.to_u64();
    d->modulus_poly = mod;
    if (!detail::is_irreducible_word(d->modulus, m)) throw ReducibleModulus(mod, detail::smallest_factor(mod));
    d->group_order = (std::uint64_t{1} << m) - 1;
    d->group_order_factors = prime_factors(d->group_order);
    auto full_order = [&](std::uint64_t a) {
      for (auto p : d->group_order_factors)
        if (d->pow(a, d->group_order / p) == 1) return false;
      return true;
    };
    if (m == 1) {
      d->generator = 1;
    } else {
      // x is the generator when the modulus is primitive.
      std::uint64_t g = 2;
      while (!full_order(g)) ++g;
      d->generator = g;
    }
    return FieldSpec(std::move(d));
  }

  unsigned m() const noexcept { return d_->m; }
  const Poly2& modulus() const noexcept { return d_->modulus_poly; }
  std::uint64_t modulus_word() const noexcept { return d_->modulus; }
  std::uint64_t group_order() const noexcept { return d_->group_order; }
  const std::vector<std::uint64_t>& group_order_factors() const noexcept { return d_->group_order_factors; }
  std::uint64_t size() const noexcept { return d_->group_order + 1; }

  inline FieldElement generator() const;
  inline FieldElement zero() const;
  inline FieldElement one() const;
  /// Element from polynomial-basis coordinates; bits must be below 2^m.
  inline FieldElement element(std::uint64_t bits) const;

  // Word-level arithmetic for inner loops. Inputs must already be reduced.
  std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b) const { return d_->mul(a, b); }
  std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b, OpCounter* counter) const {
    if (counter) {
      ++counter->mul_count;
      ++counter->reduction_count;
    }
    return d_->mul(a, b);
  }
  std::uint64_t pow_bits(std::uint64_t a, std::uint64_t e, OpCounter* counter = nullptr) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul_bits(r, a, counter);
      e >>= 1;
      if (e) a = mul_bits(a, a, counter);
    }
    return r;
  }

  /// Same m, modulus and generator.
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.d_ == b.d_ ||
           (a.d_->m == b.d_->m && a.d_->modulus == b.d_->modulus && a.d_->generator == b.d_->generator);
  }

  /// Text form `GF2m m=<int> mod=0x<hex>`.
  std::string to_string() const { return "GF2m m=" + std::to_string(m()) + " mod=" + modulus().to_hex(); }

 private:
  friend class FieldElement;
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

inline FieldSpec build_field(unsigned m, std::optional<Poly2> modulus = std::nullopt) {
  return FieldSpec::build(m, std::move(modulus));
}

class FieldElement {
 public:
  FieldElement(const FieldSpec& field, std::uint64_t bits) : field_(field), bits_(bits) {
    if (field.m() < 64 && (bits >> field.m()) != 0)
      throw Error("element bits 0x" + Poly2(bits).to_hex().substr(2) + " exceed field degree " +
                  std::to_string(field.m()));
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  bool is_one() const noexcept { return bits_ == 1; }
  Poly2 as_poly() const { return Poly2(bits_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.require_same(b);
    return FieldElement(a.field_, a.bits_ ^ b.bits_, Unchecked{});
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.require_same(b);
    return FieldElement(a.field_, a.field_.mul_bits(a.bits_, b.bits_), Unchecked{});
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.bits_ == b.bits_ && a.field_ == b.field_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.as_poly(); }

 private:
  friend class FieldSpec;
  struct Unchecked {};
  FieldElement(const FieldSpec& field, std::uint64_t bits, Unchecked) : field_(field), bits_(bits) {}

  void require_same(const FieldElement& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch();
  }

  FieldSpec field_;
  std::uint64_t bits_;
};

inline FieldElement FieldSpec::generator() const { return FieldElement(*this, d_->generator, FieldElement::Unchecked{}); }
inline FieldElement FieldSpec::zero() const { return FieldElement(*this, 0, FieldElement::Unchecked{}); }
inline FieldElement FieldSpec::one() const { return FieldElement(*this, 1, FieldElement::Unchecked{}); }
inline FieldElement FieldSpec::element(std::uint64_t bits) const { return FieldElement(*this, bits); }

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }

/// Square-and-multiply. A negative exponent means a power of the inverse.
inline FieldElement pow(const FieldElement& a, std::int64_t e) {
  const auto& f = a.field();
  if (e < 0) {
    if (a.is_zero()) throw Error("pow: zero raised to a negative power");
    auto u = static_cast<std::uint64_t>(-(e + 1)) + 1;
    std::uint64_t r = f.pow_bits(a.bits(), f.group_order() - u % f.group_order());
    return f.element(r);
  }
  return f.element(f.pow_bits(a.bits(), static_cast<std::uint64_t>(e)));
}

inline FieldElement inv(const FieldElement& a) {
  if (a.is_zero()) throw Error("inv: zero has no inverse");
  const auto& f = a.field();
  // a^(2^m - 2)
  return f.element(f.pow_bits(a.bits(), f.group_order() - 1));
}

/// Multiplicative order of a nonzero element, found by dividing prime
/// factors out of the group order while the power stays 1.
inline std::uint64_t element_order(const FieldElement& a) {
  if (a.is_zero()) throw Error("element_order: zero has no multiplicative order");
  const auto& f = a.field();
  std::uint64_t order = f.group_order();
  for (auto p : f.group_order_factors()) {
    while (order % p == 0 && f.pow_bits(a.bits(), order / p) == 1) order /= p;
  }
  return order;
}

/// generator^((2^m - 1) / N), an element of order exactly N.
inline FieldElement element_of_order(const FieldSpec& field, std::uint64_t N) {
  if (N == 0 || field.group_order() % N != 0)
    throw Error("element_of_order: " + std::to_string(N) + " does not divide " + std::to_string(field.group_order()));
  return pow(field.generator(), static_cast<std::int64_t>(field.group_order() / N));
}

/// Horner evaluation of a GF(2) polynomial at a field element.
inline FieldElement evaluate(const Poly2& p, const FieldElement& x) {
  const auto& f = x.field();
  std::uint64_t acc = 0;
  for (int i = p.degree(); i >= 0; --i) {
    acc = f.mul_bits(acc, x.bits()) ^ static_cast<std::uint64_t>(p.coeff(static_cast<unsigned>(i)));
  }
  return f.element(acc);
}

/// Product of (x - c) over the Frobenius orbit c = a, a^2, a^4, ...
inline Poly2 minimal_polynomial_of(const FieldElement& a) {
  if (a.is_zero()) throw Error("minimal_polynomial_of: zero is excluded");
  const auto& f = a.field();
  std::vector<std::uint64_t> conj;
  std::uint64_t c = a.bits();
  do {
    conj.push_back(c);
    c = f.mul_bits(c, c);
  } while (c != a.bits());
  std::vector<std::uint64_t> coeffs{1};  // lowest degree first
  for (auto r : conj) {
    std::vector<std::uint64_t> next(coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] ^= coeffs[i];
      next[i] ^= f.mul_bits(coeffs[i], r);
    }
    coeffs = std::move(next);
  }
  Poly2 out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 1) throw Error("minimal_polynomial_of: coefficient outside GF(2)");
    if (coeffs[i]) out.set(static_cast<unsigned>(i), true);
  }
  return out;
}

/// Discrete logarithms to a fixed base. Groups of order up to 2^16 get a
/// full table; larger ones use baby-step/giant-step.
class DiscreteLog {
 public:
  explicit DiscreteLog(const FieldElement& base) : field_(base.field()), base_(base.bits()) {
    if (base.is_zero()) throw Error("discrete_log: zero base");
    order_ = element_order(base);
    steps_ = order_ <= (1u << 16) ? order_ : static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order_))));
    baby_.reserve(steps_);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < steps_; ++j) {
      baby_.emplace(x, j);
      x = field_.mul_bits(x, base_);
    }
    // base^(-steps)
    giant_ = field_.pow_bits(field_.pow_bits(base_, order_ - 1), steps_);
  }

  std::uint64_t order() const noexcept { return order_; }
  const FieldSpec& field() const noexcept { return field_; }

  /// Least d >= 0 with base^d = value, or nothing when value is outside the
  /// subgroup generated by the base.
  std::optional<std::uint64_t> try_log(std::uint64_t value) const {
    if (value == 0) return std::nullopt;
    std::uint64_t gamma = value;
    for (std::uint64_t i = 0; i * steps_ < order_; ++i) {
      if (auto it = baby_.find(gamma); it != baby_.end()) return (i * steps_ + it->second) % order_;
      gamma = field_.mul_bits(gamma, giant_);
    }
    return std::nullopt;
  }

  std::uint64_t log(const FieldElement& value) const {
    if (!(value.field() == field_)) throw FieldMismatch();
    if (value.is_zero()) throw Error("discrete_log: zero has no logarithm");
    auto d = try_log(value.bits());
    if (!d) throw Error("discrete_log: value lies outside the subgroup generated by the base");
    return *d;
  }

 private:
  FieldSpec field_;
  std::uint64_t base_;
  std::uint64_t order_ = 1;
  std::uint64_t steps_ = 1;
  std::uint64_t giant_ = 1;
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
};

inline std::uint64_t discrete_log(const FieldElement& a, const FieldElement& base) {
  if (!(a.field() == base.field())) throw FieldMismatch();
  return DiscreteLog(base).log(a);
}

/// Irreducible of degree m with x generating the full group mod p.
inline bool is_primitive_polynomial(const Poly2& p) {
  const int m = p.degree();
  if (m < 1 || m > static_cast<int>(kMaxFieldDegree)) return false;
  const auto w = p.to_u64();
  if ((w & 1u) == 0) return false;
  if (!detail::is_irreducible_word(w, static_cast<unsigned>(m))) return false;
  if (m == 1) return true;
  FieldSpec f = build_field(static_cast<unsigned>(m), p);
  return element_order(f.element(2)) == f.group_order();
}

/// All primitive polynomials of degree m in increasing numeric order.
inline std::vector<Poly2> primitive_polynomials(unsigned m) {
  if (m < 1 || m > 20) throw Error("primitive_polynomials: degree " + std::to_string(m) + " outside [1, 20]");
  std::vector<Poly2> out;
  for (std::uint64_t w = (std::uint64_t{1} << m) | 1; w < (std::uint64_t{1} << (m + 1)); w += 2)
    if (is_primitive_polynomial(Poly2(w))) out.emplace_back(w);
  return out;
}

}  // namespace crtspec
