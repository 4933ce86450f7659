#pragma once

// Spectra of product and combiner sequences assembled from the spectra of
// their coprime-period factors.
//
// For u_t = a_t b_t with coprime periods n_1, n_2 and N = n_1 n_2, pick an
// order-N root rho and give each factor the root r_i = rho^(u_i), where u_i
// is the CRT idempotent (u_i = 1 mod n_i, 0 mod n_j). Then rho = r_1 r_2 and
//
//   U_k = A_{k mod n_1} B_{k mod n_2},
//
// so with A = r_1^(d_1), B = r_2^(d_2) the exponent of U_k is the unique
// d mod N with d = d_1 (mod n_1), d = d_2 (mod n_2). Both the index map and
// the exponent map are CRT. The same holds for any number of factors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/op_counter.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"

namespace crtspec {

/// Pairwise-coprime moduli n_1..n_r with N = prod n_i.
class CrtBasis {
 public:
  explicit CrtBasis(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw Error("CrtBasis: empty basis");
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      if (moduli_[i] == 0) throw Error("CrtBasis: zero modulus");
      for (std::size_t j = 0; j < i; ++j) {
        if (std::gcd(moduli_[i], moduli_[j]) != 1)
          throw Error("CrtBasis: moduli " + std::to_string(moduli_[j]) + " and " + std::to_string(moduli_[i]) +
                      " are not coprime");
      }
      if (N_ > UINT64_MAX / moduli_[i]) throw Error("CrtBasis: product overflows");
      N_ *= moduli_[i];
    }
  }

  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
  std::size_t size() const noexcept { return moduli_.size(); }
  std::uint64_t N() const noexcept { return N_; }

  /// u_i with u_i = 1 (mod n_i) and u_i = 0 (mod n_j), j != i.
  std::uint64_t idempotent(std::size_t i) const {
    const std::uint64_t rest = N_ / moduli_.at(i);
    return mul_mod(rest, inv_mod(rest % moduli_[i], moduli_[i]), N_);
  }

  /// k mod n_i for every i.
  std::vector<std::uint64_t> residues(std::uint64_t k) const {
    std::vector<std::uint64_t> r;
    r.reserve(moduli_.size());
    for (auto n : moduli_) r.push_back(k % n);
    return r;
  }

 private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t N_ = 1;
};

/// Garner reconstruction: the unique x in [0, N) with x = residues[i] mod n_i.
inline std::uint64_t crt_combine(std::span<const std::uint64_t> residues, const CrtBasis& basis,
                                 OpCounter* counter = nullptr) {
  if (residues.size() != basis.size()) throw Error("crt_combine: residue count differs from basis size");
  std::uint64_t x = 0, M = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::uint64_t n = basis.moduli()[i];
    if (residues[i] >= n)
      throw Error("crt_combine: residue " + std::to_string(residues[i]) + " outside [0, " + std::to_string(n) + ")");
    // x + M t = r_i (mod n)  =>  t = (r_i - x) M^-1 (mod n)
    const std::uint64_t diff = (residues[i] + n - x % n) % n;
    const std::uint64_t t = mul_mod(diff, inv_mod(M % n, n), n);
    x += M * t;
    M *= n;
    if (counter) counter->integer_ops += 4;
  }
  return x;
}

/// A factor spectrum detached from its field: log values relative to the
/// factor's own order-n root, plus that root's minimal polynomial so the
/// root can be located again inside a larger field.
struct LogSpectrumFactor {
  std::uint64_t modulus = 1;
  std::vector<LogValue> values{LogValue::power(0)};
  Poly2 root_minimal_poly{3};

  LogSpectrumFactor() = default;
  LogSpectrumFactor(std::vector<LogValue> v, Poly2 root_minpoly)
      : modulus(v.size()), values(std::move(v)), root_minimal_poly(std::move(root_minpoly)) {
    if (values.empty()) throw Error("LogSpectrumFactor: empty spectrum");
    for (const auto& x : values)
      if (!x.is_zero() && x.exponent() >= modulus) throw Error("LogSpectrumFactor: exponent outside [0, n)");
  }

  static LogSpectrumFactor from(const Spectrum& S) {
    return LogSpectrumFactor(S.values(), minimal_polynomial_of(S.root()));
  }

  std::size_t nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto& v) { return !v.is_zero(); }));
  }
};

namespace detail {

inline void check_factors(std::span<const LogSpectrumFactor> factors, const CrtBasis& basis) {
  if (factors.size() != basis.size())
    throw Error("crt: " + std::to_string(factors.size()) + " factors for a basis of size " +
                std::to_string(basis.size()));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].modulus != basis.moduli()[i])
      throw Error("crt: factor " + std::to_string(i) + " has period " + std::to_string(factors[i].modulus) +
                  " but the basis expects " + std::to_string(basis.moduli()[i]));
  }
}

}  // namespace detail

/// U_k for the bitwise product of the factors' sequences, as a power of the
/// aligned order-N root. ZERO as soon as one factor is ZERO at k mod n_i.
inline LogValue product_spectrum_point(std::span<const LogSpectrumFactor> factors, const CrtBasis& basis,
                                       std::uint64_t k, OpCounter* counter = nullptr) {
  detail::check_factors(factors, basis);
  if (k >= basis.N())
    throw Error("product_spectrum_point: index " + std::to_string(k) + " outside [0, " + std::to_string(basis.N()) +
                ")");
  std::vector<std::uint64_t> exps;
  exps.reserve(factors.size());
  for (const auto& f : factors) {
    const auto& v = f.values[k % f.modulus];
    if (counter) ++counter->integer_ops;
    if (v.is_zero()) return LogValue::zero();
    exps.push_back(v.exponent());
  }
  return LogValue::power(crt_combine(exps, basis, counter));
}

/// All N product values, field-free.
inline std::vector<LogValue> product_log_values(std::span<const LogSpectrumFactor> factors, const CrtBasis& basis) {
  detail::check_factors(factors, basis);
  std::vector<LogValue> out(basis.N());
  for (std::uint64_t k = 0; k < basis.N(); ++k) out[k] = product_spectrum_point(factors, basis, k);
  return out;
}

/// Every CRT image of a tuple of nonzero factor indices, ascending.
inline std::vector<std::uint64_t> support_indices(std::span<const LogSpectrumFactor> factors, const CrtBasis& basis) {
  detail::check_factors(factors, basis);
  std::vector<std::vector<std::uint64_t>> nz(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::uint64_t k = 0; k < factors[i].modulus; ++k)
      if (!factors[i].values[k].is_zero()) nz[i].push_back(k);
    if (nz[i].empty()) return {};
  }
  std::vector<std::uint64_t> out, tuple(factors.size());
  std::vector<std::size_t> pos(factors.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < factors.size(); ++i) tuple[i] = nz[i][pos[i]];
    out.push_back(crt_combine(tuple, basis));
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == nz[i].size()) pos[i++] = 0;
    if (i == pos.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// An element of `field` of order n whose minimal polynomial is `minpoly`.
inline FieldElement find_root_with_minpoly(const FieldSpec& field, std::uint64_t n, const Poly2& minpoly) {
  const FieldElement e = element_of_order(field, n);
  for (std::uint64_t j = 1; j <= n; ++j) {
    if (std::gcd(j, n) != 1) continue;
    FieldElement cand = pow(e, static_cast<std::int64_t>(j));
    if (evaluate(minpoly, cand).is_zero()) return cand;
  }
  throw Error("no element of order " + std::to_string(n) + " in GF(2^" + std::to_string(field.m()) +
              ") has minimal polynomial " + minpoly.to_string());
}

/// rho = prod r_i with r_i the image of factor i's root in `field`; then
/// rho^(u_i) = r_i for each CRT idempotent u_i.
inline FieldElement aligned_root(const FieldSpec& field, std::span<const LogSpectrumFactor> factors,
                                 const CrtBasis& basis) {
  detail::check_factors(factors, basis);
  FieldElement rho = field.one();
  for (const auto& f : factors) rho = rho * find_root_with_minpoly(field, f.modulus, f.root_minimal_poly);
  return rho;
}

/// Full length-N spectrum of the product sequence. The field defaults to
/// the smallest one holding an order-N element.
inline Spectrum product_spectrum(std::span<const LogSpectrumFactor> factors, const CrtBasis& basis,
                                 std::optional<FieldSpec> field = std::nullopt) {
  const FieldSpec F = field ? *field : default_field_for(basis.N());
  return Spectrum(aligned_root(F, factors, basis), product_log_values(factors, basis));
}

/// Log values of a period-N_T spectrum read at period N (N_T | N): index
/// m moves to (N/N_T) m and exponent d to (N/N_T) d, relative to an order-N
/// root rho with rho^(N/N_T) equal to the old root.
inline std::vector<LogValue> embed_log_values(std::span<const LogValue> values, std::uint64_t N) {
  const std::uint64_t NT = values.size();
  if (NT == 0 || N % NT != 0) throw Error("embed_spectrum: " + std::to_string(NT) + " does not divide " + std::to_string(N));
  if (N % 2 == 0) throw Error("embed_spectrum: even period");
  const std::uint64_t M = N / NT;
  std::vector<LogValue> out(N);
  for (std::uint64_t m = 0; m < NT; ++m)
    if (!values[m].is_zero()) out[M * m] = LogValue::power(M * values[m].exponent() % N);
  return out;
}

/// Embeds with an explicit order-N root rho; rho^(N/N_T) must be a conjugate
/// of S's root (same minimal polynomial).
inline Spectrum embed_spectrum(const Spectrum& S, const FieldElement& rho) {
  const std::uint64_t N = element_order(rho);
  auto values = embed_log_values(S.values(), N);
  const auto M = static_cast<std::int64_t>(N / S.period());
  if (!evaluate(minimal_polynomial_of(S.root()), pow(rho, M)).is_zero())
    throw Error("embed_spectrum: rho^(N/N_T) is not conjugate to the spectrum's root");
  return Spectrum(rho, std::move(values));
}

/// Embeds into the default field for N, choosing rho so that rho^(N/N_T) is
/// conjugate to S's root.
inline Spectrum embed_spectrum(const Spectrum& S, std::uint64_t N) {
  if (N == S.period()) return S;
  if (S.period() == 0 || N % S.period() != 0)
    throw Error("embed_spectrum: " + std::to_string(S.period()) + " does not divide " + std::to_string(N));
  const FieldSpec F = default_field_for(N);
  const Poly2 mp = minimal_polynomial_of(S.root());
  const FieldElement g = element_of_order(F, N);
  const auto M = static_cast<std::int64_t>(N / S.period());
  for (std::uint64_t j = 1; j < N; ++j) {
    if (std::gcd(j, N) != 1) continue;
    FieldElement rho = pow(g, static_cast<std::int64_t>(j));
    if (evaluate(mp, pow(rho, M)).is_zero()) return Spectrum(rho, embed_log_values(S.values(), N));
  }
  throw Error("embed_spectrum: no compatible order-" + std::to_string(N) + " root");
}

/// Spectrum of f(x_1, ..., x_r) where variable i has factor spectrum
/// factors[i]. Each monomial's spectrum is a CRT product over its own
/// sub-basis, embedded at period N, and the terms are summed in GF(2^n).
inline Spectrum combiner_spectrum(const AnfCombiner& f, std::span<const LogSpectrumFactor> factors,
                                  const CrtBasis& basis, std::optional<FieldSpec> field = std::nullopt) {
  detail::check_factors(factors, basis);
  if (f.arity() != factors.size())
    throw Error("combiner_spectrum: combiner arity " + std::to_string(f.arity()) + " but " +
                std::to_string(factors.size()) + " factors");
  const std::uint64_t N = basis.N();
  const FieldSpec F = field ? *field : default_field_for(N);
  const FieldElement rho = aligned_root(F, factors, basis);

  std::vector<LogValue> values(N);
  std::vector<std::uint64_t> raw(N, 0);
  std::vector<bool> collided(N, false);
  bool any_collision = false;
  for (const auto& mono : f.monomials()) {
    std::vector<std::uint64_t> sub_moduli;
    for (auto v : mono) sub_moduli.push_back(basis.moduli()[v]);
    CrtBasis sub(sub_moduli);
    const std::uint64_t M = N / sub.N();
    // Within the term, factor i's root is r_i^M = (rho^M)^(u_i^sub).
    std::vector<LogSpectrumFactor> sub_factors;
    for (auto v : mono) {
      LogSpectrumFactor sf = factors[v];
      sf.values = reroot_values(factors[v].values, M % factors[v].modulus);
      sub_factors.push_back(std::move(sf));
    }
    auto term = embed_log_values(product_log_values(sub_factors, sub), N);
    for (std::uint64_t k = 0; k < N; ++k) {
      if (term[k].is_zero()) continue;
      const std::uint64_t e = F.pow_bits(rho.bits(), term[k].exponent());
      if (raw[k] != 0 || collided[k]) {
        collided[k] = true;
        any_collision = true;
      }
      raw[k] ^= e;
      values[k] = term[k];
    }
  }
  if (any_collision) {
    DiscreteLog logs(rho);
    for (std::uint64_t k = 0; k < N; ++k)
      if (collided[k]) values[k] = to_log(logs, raw[k], k);
  }
  return Spectrum(rho, std::move(values));
}

}  // namespace crtspec
