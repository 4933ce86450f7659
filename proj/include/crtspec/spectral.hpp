#pragma once

// DFT of periodic binary sequences over GF(2^n), kept in log form.
//
// Forward kernel: S_k = sum_t s_t root^(t k). Inverse: s_t = sum_k S_k
// root^(-t k); the 1/N factor is 1 because N is odd. Nonzero values are
// stored as exponents of the order-N root.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/op_counter.hpp"
#include "crtspec/sequence.hpp"

namespace crtspec {

/// ZERO, or root^exponent.
class LogValue {
 public:
  constexpr LogValue() = default;
  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue power(std::uint64_t exponent) { return LogValue(exponent); }

  constexpr bool is_zero() const noexcept { return !exponent_.has_value(); }
  std::uint64_t exponent() const {
    if (!exponent_) throw Error("LogValue: ZERO has no exponent");
    return *exponent_;
  }

  /// "Z" or the decimal exponent.
  std::string to_string() const { return exponent_ ? std::to_string(*exponent_) : "Z"; }

  friend constexpr bool operator==(const LogValue&, const LogValue&) = default;

 private:
  constexpr explicit LogValue(std::uint64_t e) : exponent_(e) {}
  std::optional<std::uint64_t> exponent_;
};

/// Thrown when a spectrum breaks S_{2k} = S_k^2.
class ConjugacyViolation : public Error {
 public:
  ConjugacyViolation(std::uint64_t k, std::uint64_t k2)
      : Error("conjugacy violated between index " + std::to_string(k) + " and " + std::to_string(k2)), k_(k), k2_(k2) {}
  std::uint64_t index() const noexcept { return k_; }
  std::uint64_t doubled_index() const noexcept { return k2_; }

 private:
  std::uint64_t k_, k2_;
};

/// First index pair (k, 2k mod N) where the conjugate relation fails.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> find_conjugacy_violation(
    std::span<const LogValue> values) {
  const std::uint64_t N = values.size();
  for (std::uint64_t k = 0; k < N; ++k) {
    const auto& a = values[k];
    const auto& b = values[(2 * k) % N];
    if (a.is_zero() != b.is_zero()) return std::pair{k, (2 * k) % N};
    if (!a.is_zero() && b.exponent() != (2 * a.exponent()) % N) return std::pair{k, (2 * k) % N};
  }
  return std::nullopt;
}

/// Length-N log-form spectrum relative to a root of order N.
class Spectrum {
 public:
  Spectrum(FieldElement root, std::vector<LogValue> values) : root_(std::move(root)), values_(std::move(values)) {
    if (root_.is_zero()) throw Error("Spectrum: zero root");
    const std::uint64_t N = values_.size();
    if (element_order(root_) != N)
      throw Error("Spectrum: root order " + std::to_string(element_order(root_)) + " differs from length " +
                  std::to_string(N));
    for (const auto& v : values_)
      if (!v.is_zero() && v.exponent() >= N) throw Error("Spectrum: exponent outside [0, N)");
  }

  std::uint64_t period() const noexcept { return values_.size(); }
  const FieldSpec& field() const noexcept { return root_.field(); }
  const FieldElement& root() const noexcept { return root_; }
  const std::vector<LogValue>& values() const noexcept { return values_; }
  const LogValue& operator[](std::uint64_t k) const { return values_.at(k); }

  /// Value at k as a field element.
  FieldElement element(std::uint64_t k) const {
    const auto& v = values_.at(k);
    if (v.is_zero()) return field().zero();
    return field().element(field().pow_bits(root_.bits(), v.exponent()));
  }

  std::vector<std::uint64_t> support() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 0; k < values_.size(); ++k)
      if (!values_[k].is_zero()) out.push_back(k);
    return out;
  }
  std::size_t nonzero_count() const noexcept {
    std::size_t n = 0;
    for (const auto& v : values_) n += !v.is_zero();
    return n;
  }

  bool satisfies_conjugacy() const { return !find_conjugacy_violation(values_).has_value(); }

  friend bool operator==(const Spectrum& a, const Spectrum& b) {
    return a.root_ == b.root_ && a.values_ == b.values_;
  }

 private:
  FieldElement root_;
  std::vector<LogValue> values_;
};

/// GF(2^n) with n = ord_N(2), the smallest binary field holding an order-N
/// element.
inline FieldSpec default_field_for(std::uint64_t N) { return build_field(multiplicative_order_of_2(N)); }

inline FieldElement default_root_for(std::uint64_t N) { return element_of_order(default_field_for(N), N); }

namespace detail {

inline std::uint64_t checked_period(const BitSequence& s, const FieldElement& root) {
  if (root.is_zero()) throw Error("dft: zero root");
  const std::uint64_t N = element_order(root);
  if (N % s.period() != 0)
    throw Error("dft: root order " + std::to_string(N) + " is not a multiple of the sequence period " +
                std::to_string(s.period()));
  return N;
}

// s(x) at x by Horner over one period of length N.
inline std::uint64_t horner(const BitSequence& s, std::uint64_t N, const FieldSpec& f, std::uint64_t x,
                            OpCounter* counter) {
  std::uint64_t acc = s[N - 1];
  for (std::uint64_t t = N - 1; t-- > 0;) {
    acc = f.mul_bits(acc, x, counter);
    if (s[t]) {
      acc ^= 1;
      if (counter) ++counter->xor_count;
    }
  }
  return acc;
}

}  // namespace detail

/// S_k as a field element, by Horner evaluation of s(x) at root^k. Field
/// operations are tallied into `counter` when given.
inline FieldElement dft_point_value(const BitSequence& s, const FieldElement& root, std::uint64_t k,
                                    OpCounter* counter = nullptr) {
  const std::uint64_t N = detail::checked_period(s, root);
  if (k >= N) throw Error("dft_point: index " + std::to_string(k) + " outside [0, " + std::to_string(N) + ")");
  const auto& f = root.field();
  return f.element(detail::horner(s, N, f, f.pow_bits(root.bits(), k, counter), counter));
}

inline LogValue to_log(const DiscreteLog& logs, std::uint64_t value, std::uint64_t index) {
  if (value == 0) return LogValue::zero();
  auto d = logs.try_log(value);
  if (!d)
    throw Error("spectral value at index " + std::to_string(index) +
                " is not a power of the root; use dft_values for raw field values");
  return LogValue::power(*d);
}

inline LogValue dft_point(const BitSequence& s, const FieldElement& root, std::uint64_t k,
                          OpCounter* counter = nullptr) {
  auto v = dft_point_value(s, root, k, counter);
  return to_log(DiscreteLog(root), v.bits(), k);
}

/// All N spectral values as field elements. Only coset leaders are
/// evaluated; the rest follow from S_{2k} = S_k^2.
inline std::vector<FieldElement> dft_values(const BitSequence& s, const FieldElement& root) {
  const std::uint64_t N = detail::checked_period(s, root);
  const auto& f = root.field();
  std::vector<std::uint64_t> raw(N, 0);
  std::vector<bool> done(N, false);
  for (std::uint64_t k = 0; k < N; ++k) {
    if (done[k]) continue;
    std::uint64_t v = detail::horner(s, N, f, f.pow_bits(root.bits(), k), nullptr);
    std::uint64_t j = k;
    do {
      raw[j] = v;
      done[j] = true;
      v = f.mul_bits(v, v);
      j = (2 * j) % N;
    } while (j != k);
  }
  std::vector<FieldElement> out;
  out.reserve(N);
  for (auto v : raw) out.push_back(f.element(v));
  return out;
}

/// Log-form DFT relative to `root`, whose order N must be a multiple of the
/// sequence period (the sequence is read over N positions).
inline Spectrum dft(const BitSequence& s, const FieldElement& root) {
  auto raw = dft_values(s, root);
  DiscreteLog logs(root);
  std::vector<LogValue> values;
  values.reserve(raw.size());
  for (std::uint64_t k = 0; k < raw.size(); ++k) values.push_back(to_log(logs, raw[k].bits(), k));
  return Spectrum(root, std::move(values));
}

/// DFT in the default field for the sequence period.
inline Spectrum dft(const BitSequence& s) { return dft(s, default_root_for(s.period())); }

/// s_t = sum_k S_k root^(-t k). Rejects spectra whose inverse leaves GF(2).
inline BitSequence idft(const Spectrum& S) {
  const std::uint64_t N = S.period();
  if (N % 2 == 0) throw Error("idft: even period");
  const auto& f = S.field();
  std::vector<std::uint64_t> coeff(N);
  for (std::uint64_t k = 0; k < N; ++k) coeff[k] = S.element(k).bits();
  const std::uint64_t inv_root = f.pow_bits(S.root().bits(), N - 1);
  Bits out(N);
  std::uint64_t x = 1;  // root^(-t)
  for (std::uint64_t t = 0; t < N; ++t) {
    std::uint64_t acc = coeff[N - 1];
    for (std::uint64_t k = N - 1; k-- > 0;) acc = f.mul_bits(acc, x) ^ coeff[k];
    if (acc > 1) throw Error("idft: value at t=" + std::to_string(t) + " lies outside GF(2); malformed spectrum");
    out[t] = static_cast<std::uint8_t>(acc);
    x = f.mul_bits(x, inv_root);
  }
  return BitSequence(std::move(out));
}

/// True iff the number of nonzero points equals L.
inline bool blahut_check(const Spectrum& S, std::size_t L) { return S.nonzero_count() == L; }

/// Coset leader -> value for every nonzero 2-cyclotomic coset.
using CosetMap = std::map<std::uint64_t, LogValue>;

inline CosetMap coset_reduce(const Spectrum& S) {
  if (auto v = find_conjugacy_violation(S.values())) throw ConjugacyViolation(v->first, v->second);
  const std::uint64_t N = S.period();
  CosetMap out;
  std::vector<bool> seen(N, false);
  for (std::uint64_t k = 0; k < N; ++k) {
    if (seen[k]) continue;
    for (auto j : cyclotomic_orbit(k, N)) seen[j] = true;
    if (!S[k].is_zero()) out.emplace(k, S[k]);
  }
  return out;
}

/// Rebuilds the full spectrum from coset leaders by repeated squaring.
inline Spectrum coset_expand(const CosetMap& leaders, const FieldElement& root) {
  const std::uint64_t N = element_order(root);
  std::vector<LogValue> values(N);
  for (const auto& [k, v] : leaders) {
    if (k >= N) throw Error("coset_expand: leader outside [0, N)");
    if (v.is_zero()) continue;
    std::uint64_t j = k, e = v.exponent() % N;
    do {
      values[j] = LogValue::power(e);
      j = (2 * j) % N;
      e = (2 * e) % N;
    } while (j != k);
  }
  return Spectrum(root, std::move(values));
}

/// Log values of the same sequence relative to root^c (c coprime to N):
/// new[k] = old[c k] with exponent d c^-1.
inline std::vector<LogValue> reroot_values(std::span<const LogValue> values, std::uint64_t c) {
  const std::uint64_t N = values.size();
  const std::uint64_t c_inv = inv_mod(c % N, N);
  std::vector<LogValue> out(N);
  for (std::uint64_t k = 0; k < N; ++k) {
    const auto& v = values[mul_mod(c % N, k, N)];
    if (!v.is_zero()) out[k] = LogValue::power(mul_mod(v.exponent(), c_inv, N));
  }
  return out;
}

}  // namespace crtspec
