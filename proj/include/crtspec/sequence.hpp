#pragma once

// Periodic binary sequences, Fibonacci LFSRs, ANF combiners, and the
// time-domain products and convolutions they induce.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/poly2.hpp"

namespace crtspec {

using Bits = std::vector<std::uint8_t>;

/// Least p dividing len(bits) such that bits is p-periodic, i.e. the
/// period of the cyclic sequence whose one or more periods are given.
inline std::size_t sequence_period(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw Error("sequence_period: empty input");
  const std::size_t n = bits.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    if (std::equal(bits.begin() + static_cast<std::ptrdiff_t>(p), bits.end(), bits.begin())) return p;
  }
  return n;
}

/// Exactly one period of a periodic binary sequence.
class BitSequence {
 public:
  explicit BitSequence(Bits bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw Error("BitSequence: period must be at least 1");
    for (auto b : bits_)
      if (b > 1) throw Error("BitSequence: entries must be 0 or 1");
  }

  /// Parses an ASCII string of '0'/'1'.
  static BitSequence parse(std::string_view text) {
    Bits bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw Error(std::string("BitSequence: unexpected character '") + c + "'");
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitSequence(std::move(bits));
  }

  /// Reduces one or more concatenated periods to the least period.
  static BitSequence minimal(Bits bits) {
    auto p = sequence_period(bits);
    bits.resize(p);
    return BitSequence(std::move(bits));
  }

  std::size_t period() const noexcept { return bits_.size(); }
  const Bits& bits() const noexcept { return bits_; }
  std::uint8_t operator[](std::size_t t) const noexcept { return bits_[t % bits_.size()]; }

  /// The same sequence written over N positions; the period must divide N.
  Bits repeated(std::size_t N) const {
    if (N % period() != 0)
      throw Error("period " + std::to_string(period()) + " does not divide " + std::to_string(N));
    Bits out(N);
    for (std::size_t t = 0; t < N; ++t) out[t] = (*this)[t];
    return out;
  }

  /// Number of ones in one period.
  std::size_t weight() const noexcept { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s += static_cast<char>('0' + b);
    return s;
  }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  Bits bits_;
};

/// Fibonacci LFSR. The connection polynomial c(x) = x^m + c_{m-1}x^{m-1} +
/// ... + c_0 gives the recurrence s_{t+m} = sum_{i<m} c_i s_{t+i}. The
/// register holds the next m output bits, state[0] first.
class Lfsr {
 public:
  /// `seed` written in binary with m digits, most significant first, is the
  /// first m output bits: seed 0x1 on a degree-3 register emits 0,0,1,...
  Lfsr(Poly2 connection, std::uint64_t seed) : connection_(std::move(connection)) {
    validate();
    const auto m = static_cast<unsigned>(connection_.degree());
    if (m < 64 && (seed >> m) != 0)
      throw Error("Lfsr: seed " + Poly2(seed).to_hex() + " is wider than the register (" + std::to_string(m) + ")");
    state_.resize(m);
    for (unsigned i = 0; i < m; ++i) state_[i] = static_cast<std::uint8_t>(m - 1 - i < 64 ? (seed >> (m - 1 - i)) & 1u : 0);
  }

  /// Register loaded with explicit output-order bits.
  static Lfsr from_state(Poly2 connection, Bits state) {
    Lfsr l(std::move(connection));
    if (state.size() != static_cast<std::size_t>(l.connection_.degree()))
      throw Error("Lfsr: state length differs from register degree");
    l.state_ = std::move(state);
    return l;
  }

  const Poly2& connection() const noexcept { return connection_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(connection_.degree()); }
  const Bits& state() const noexcept { return state_; }
  bool is_zero_state() const noexcept { return std::all_of(state_.begin(), state_.end(), [](auto b) { return b == 0; }); }

  std::uint8_t step() {
    std::uint8_t out = state_[0];
    std::uint8_t fb = 0;
    for (unsigned i = 0; i < state_.size(); ++i)
      if (connection_.coeff(i)) fb ^= state_[i];
    std::rotate(state_.begin(), state_.begin() + 1, state_.end());
    state_.back() = fb;
    return out;
  }

 private:
  explicit Lfsr(Poly2 connection) : connection_(std::move(connection)) { validate(); }

  void validate() const {
    if (connection_.degree() < 1) throw Error("Lfsr: connection polynomial must have degree >= 1");
    if (!connection_.coeff(0)) throw Error("Lfsr: connection polynomial needs a nonzero constant term");
  }

  Poly2 connection_;
  Bits state_;
};

/// First n output bits. The register itself is left untouched.
inline Bits lfsr_stream(Lfsr l, std::size_t n) {
  if (n < 1) throw Error("lfsr_stream: n must be at least 1");
  Bits out(n);
  for (auto& b : out) b = l.step();
  return out;
}

/// One full period of the register output, found by running until the
/// state recurs. Registers up to degree 24 only.
inline BitSequence lfsr_sequence(const Lfsr& l) {
  if (l.degree() > 24) throw Error("lfsr_sequence: degree above 24, use lfsr_stream with an explicit length");
  Lfsr r = l;
  Bits out;
  do {
    out.push_back(r.step());
  } while (r.state() != l.state());
  return BitSequence::minimal(std::move(out));
}

/// u_t = a_t AND b_t over lcm(Na, Nb) positions, then minimized.
inline BitSequence pointwise_product(const BitSequence& a, const BitSequence& b) {
  const std::size_t N = std::lcm(a.period(), b.period());
  Bits out(N);
  for (std::size_t t = 0; t < N; ++t) out[t] = a[t] & b[t];
  return BitSequence::minimal(std::move(out));
}

/// XOR of two sequences over the lcm of their periods, then minimized.
inline BitSequence pointwise_sum(const BitSequence& a, const BitSequence& b) {
  const std::size_t N = std::lcm(a.period(), b.period());
  Bits out(N);
  for (std::size_t t = 0; t < N; ++t) out[t] = a[t] ^ b[t];
  return BitSequence::minimal(std::move(out));
}

/// Boolean function in algebraic normal form over variables 0..arity-1.
/// Each monomial is a nonempty set of variable indices; a monomial listed
/// twice cancels.
class AnfCombiner {
 public:
  using Monomial = std::vector<std::size_t>;  // sorted, distinct

  AnfCombiner(std::size_t arity, const std::vector<Monomial>& monomials) : arity_(arity) {
    for (auto m : monomials) {
      if (m.empty()) throw Error("AnfCombiner: empty monomial");
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      for (auto v : m)
        if (v >= arity_) throw Error("AnfCombiner: monomial references undeclared variable " + std::to_string(v + 1));
      if (auto it = monomials_.find(m); it != monomials_.end())
        monomials_.erase(it);
      else
        monomials_.insert(std::move(m));
    }
  }

  /// Parses "1*2+2*3+1*3" (1-based variable numbers). Arity defaults to the
  /// largest variable mentioned.
  static AnfCombiner parse(std::string_view text, std::size_t arity = 0) {
    std::vector<Monomial> monos;
    std::size_t max_var = 0;
    Monomial cur;
    std::size_t num = 0;
    bool have_digit = false;
    auto flush_var = [&](std::size_t pos) {
      if (!have_digit || num == 0) throw Error("AnfCombiner: expected a variable number at offset " + std::to_string(pos));
      cur.push_back(num - 1);
      max_var = std::max(max_var, num);
      num = 0;
      have_digit = false;
    };
    for (std::size_t i = 0; i <= text.size(); ++i) {
      char c = i < text.size() ? text[i] : '+';
      if (c == ' ') continue;
      if (c >= '0' && c <= '9') {
        num = num * 10 + static_cast<std::size_t>(c - '0');
        have_digit = true;
      } else if (c == 'x' && !have_digit) {
        continue;  // allow x1*x2
      } else if (c == '*') {
        flush_var(i);
      } else if (c == '+') {
        flush_var(i);
        monos.push_back(std::move(cur));
        cur.clear();
      } else {
        throw Error(std::string("AnfCombiner: unexpected character '") + c + "' at offset " + std::to_string(i));
      }
    }
    return AnfCombiner(arity ? arity : max_var, monos);
  }

  std::size_t arity() const noexcept { return arity_; }
  const std::set<Monomial>& monomials() const noexcept { return monomials_; }

  std::uint8_t evaluate(std::span<const std::uint8_t> x) const {
    if (x.size() != arity_) throw Error("AnfCombiner: arity mismatch");
    std::uint8_t r = 0;
    for (const auto& m : monomials_) {
      std::uint8_t p = 1;
      for (auto v : m) p &= x[v];
      r ^= p;
    }
    return r;
  }

  std::string to_string() const {
    if (monomials_.empty()) return "0";
    std::string s;
    for (const auto& m : monomials_) {
      if (!s.empty()) s += "+";
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*" : "") + std::to_string(m[i] + 1);
    }
    return s;
  }

 private:
  std::size_t arity_;
  std::set<Monomial> monomials_;
};

/// s_t = f(x_1(t), ..., x_r(t)) over the lcm of the input periods, minimized.
inline BitSequence combiner_stream(const AnfCombiner& f, std::span<const BitSequence> inputs) {
  if (inputs.size() != f.arity())
    throw Error("combiner_stream: " + std::to_string(inputs.size()) + " inputs for arity " + std::to_string(f.arity()));
  std::size_t N = 1;
  for (const auto& s : inputs) N = std::lcm(N, s.period());
  Bits out(N), x(inputs.size());
  for (std::size_t t = 0; t < N; ++t) {
    for (std::size_t i = 0; i < inputs.size(); ++i) x[i] = inputs[i][t];
    out[t] = f.evaluate(x);
  }
  return BitSequence::minimal(std::move(out));
}

/// out_j = sum_k A_{(j-k) mod N} B_k. The 1/N normalization is 1 for odd N
/// in characteristic 2; even N is rejected.
inline std::vector<FieldElement> cyclic_convolve(std::span<const FieldElement> A, std::span<const FieldElement> B) {
  if (A.size() != B.size()) throw Error("cyclic_convolve: length mismatch");
  if (A.empty()) throw Error("cyclic_convolve: empty input");
  const std::size_t N = A.size();
  if (N % 2 == 0) throw Error("cyclic_convolve: even length has no DFT over GF(2^n)");
  const FieldSpec& f = A[0].field();
  for (std::size_t i = 0; i < N; ++i)
    if (!(A[i].field() == f) || !(B[i].field() == f)) throw FieldMismatch();
  std::vector<FieldElement> out;
  out.reserve(N);
  for (std::size_t j = 0; j < N; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < N; ++k) acc ^= f.mul_bits(A[(j + N - k) % N].bits(), B[k].bits());
    out.push_back(f.element(acc));
  }
  return out;
}

}  // namespace crtspec
