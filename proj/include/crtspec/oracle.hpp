#pragma once

// Brute-force references. Nothing here reuses the spectral or CRT code
// paths: the DFT is a plain double loop with one field multiply per term,
// and logarithms come from enumerating the root's powers.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "crtspec/crt.hpp"
#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/linear_complexity.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"

namespace crtspec {

/// O(N^2) DFT, S_k = sum_t s_t root^(t k). The root order must be a
/// multiple of the sequence period.
inline Spectrum brute_dft(const BitSequence& s, const FieldElement& root) {
  const FieldSpec& f = root.field();
  // Enumerate the cyclic group <root>; this fixes N and the log table.
  std::map<std::uint64_t, std::uint64_t> log_of;
  std::vector<std::uint64_t> powers;
  std::uint64_t x = 1;
  do {
    log_of[x] = powers.size();
    powers.push_back(x);
    x = f.mul_bits(x, root.bits());
  } while (x != 1);
  const std::uint64_t N = powers.size();
  if (N % s.period() != 0) throw Error("brute_dft: root order does not match the sequence period");

  std::vector<LogValue> values(N);
  for (std::uint64_t k = 0; k < N; ++k) {
    std::uint64_t w = 1;
    for (std::uint64_t i = 0; i < k; ++i) w = f.mul_bits(w, root.bits());  // root^k
    std::uint64_t term = 1, acc = 0;                                        // term = root^(t k)
    for (std::uint64_t t = 0; t < N; ++t) {
      acc ^= f.mul_bits(s[t], term);
      term = f.mul_bits(term, w);
    }
    if (acc == 0) continue;
    auto it = log_of.find(acc);
    if (it == log_of.end()) throw Error("brute_dft: value at index " + std::to_string(k) + " is not a power of the root");
    values[k] = LogValue::power(it->second);
  }
  return Spectrum(root, std::move(values));
}

struct Mismatch {
  std::uint64_t index = 0;
  LogValue expected;
  LogValue actual;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

/// Index-wise differences between two spectra over the same field, root
/// and period. Differing setups are incomparable and rejected.
inline std::vector<Mismatch> compare_spectra(const Spectrum& expected, const Spectrum& actual) {
  if (expected.period() != actual.period())
    throw Error("compare_spectra: periods " + std::to_string(expected.period()) + " and " +
                std::to_string(actual.period()) + " differ");
  if (!(expected.field() == actual.field())) throw Error("compare_spectra: spectra live in different fields");
  if (!(expected.root() == actual.root())) throw Error("compare_spectra: spectra use different roots");
  std::vector<Mismatch> out;
  for (std::uint64_t k = 0; k < expected.period(); ++k)
    if (!(expected[k] == actual[k])) out.push_back({k, expected[k], actual[k]});
  return out;
}

struct LfsrSpec {
  Poly2 connection;
  std::uint64_t seed = 1;
};

struct Theorem1Options {
  std::uint64_t max_period = 100000;
  /// When set, the CRT spectrum is also compared against this one.
  std::optional<Spectrum> expected;
};

struct Theorem1Report {
  std::vector<std::uint64_t> periods;
  std::uint64_t N = 1;
  std::size_t crt_support = 0;
  std::size_t oracle_support = 0;
  std::size_t linear_complexity = 0;
  bool blahut_ok = false;
  bool conjugacy_ok = false;
  bool support_product_ok = false;
  std::vector<Mismatch> mismatches;          // CRT path vs brute force
  std::vector<Mismatch> expected_mismatches;  // CRT path vs supplied fixture
  std::optional<Spectrum> crt_spectrum;

  bool passed() const {
    return mismatches.empty() && expected_mismatches.empty() && blahut_ok && conjugacy_ok && support_product_ok;
  }
};

/// Factor spectrum of one register, rooted at x in GF(2)[x]/(connection)
/// when the connection is irreducible, else in the default field.
inline Spectrum lfsr_factor_spectrum(const LfsrSpec& l, const BitSequence& stream) {
  const auto deg = static_cast<unsigned>(l.connection.degree());
  std::optional<FieldSpec> field;
  try {
    field = build_field(deg, l.connection);
  } catch (const ReducibleModulus&) {
  }
  if (!field || field->group_order() % stream.period() != 0) field = default_field_for(stream.period());
  return dft(stream, element_of_order(*field, stream.period()));
}

/// Runs both paths for the product of the given registers: CRT product of
/// the factor spectra, and brute-force DFT of the product stream with the
/// same root. Also audits Blahut's count and conjugacy.
inline Theorem1Report verify_theorem1(const std::vector<LfsrSpec>& lfsrs, const Theorem1Options& opts = {}) {
  if (lfsrs.empty()) throw Error("verify_theorem1: no registers");
  Theorem1Report rep;
  std::vector<BitSequence> streams;
  std::vector<LogSpectrumFactor> factors;
  for (const auto& l : lfsrs) {
    streams.push_back(lfsr_sequence(Lfsr(l.connection, l.seed)));
    rep.periods.push_back(streams.back().period());
  }
  CrtBasis basis(rep.periods);  // rejects non-coprime periods
  rep.N = basis.N();
  if (rep.N > opts.max_period)
    throw Error("verify_theorem1: period " + std::to_string(rep.N) + " exceeds bound " + std::to_string(opts.max_period));
  for (std::size_t i = 0; i < lfsrs.size(); ++i)
    factors.push_back(LogSpectrumFactor::from(lfsr_factor_spectrum(lfsrs[i], streams[i])));

  Spectrum crt = product_spectrum(factors, basis);
  BitSequence product = streams[0];
  for (std::size_t i = 1; i < streams.size(); ++i) product = pointwise_product(product, streams[i]);
  Spectrum oracle = brute_dft(product, crt.root());

  rep.mismatches = compare_spectra(oracle, crt);
  rep.crt_support = crt.nonzero_count();
  rep.oracle_support = oracle.nonzero_count();
  rep.linear_complexity = berlekamp_massey(product.repeated(2 * rep.N)).linear_complexity;
  rep.blahut_ok = blahut_check(oracle, rep.linear_complexity);
  rep.conjugacy_ok = crt.satisfies_conjugacy();
  std::size_t expected_support = 1;
  for (const auto& f : factors) expected_support *= f.nonzero_count();
  rep.support_product_ok = support_indices(factors, basis).size() == expected_support &&
                           rep.crt_support == expected_support;
  if (opts.expected) rep.expected_mismatches = compare_spectra(*opts.expected, crt);
  rep.crt_spectrum = std::move(crt);
  return rep;
}

}  // namespace crtspec
