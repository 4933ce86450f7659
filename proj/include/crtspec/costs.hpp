#pragma once

// Analytic XOR-operation estimates for computing one spectral point, the
// direct way and through CRT, plus measured field-operation counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "crtspec/crt.hpp"
#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/op_counter.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"

namespace crtspec {

struct CostModel {
  /// n log2(n) log2(log2(n)), the cost of multiplying two degree-n
  /// polynomials. Undefined below n = 3.
  static double eta(double n) {
    if (n < 3) throw Error("eta: defined for n >= 3 only");
    return n * std::log2(n) * std::log2(std::log2(n));
  }
  /// eta with its argument floored at 3, for degree-2 factor fields.
  static double eta_floored(double n) { return eta(std::max(n, 3.0)); }
  /// Bits needed to represent N.
  static unsigned len(std::uint64_t N) { return bit_length(N); }
};

/// (N/2) eta(n): Horner evaluation of s(x) at one point of GF(2^n).
inline double estimate_direct(std::uint64_t N, unsigned n) {
  if (N < 2) throw Error("estimate_direct: N must be at least 2");
  if (n < 3) throw Error("estimate_direct: n must be at least 3 (log log n undefined)");
  return static_cast<double>(N) / 2.0 * CostModel::eta(n);
}

struct CrtEstimate {
  std::vector<double> factor_costs;  // (n_i/2) eta(p_i) each
  double crt_step = 0;               // len(N)^2
  double total = 0;
  std::uint64_t bits_required = 0;  // sum n_i
  std::uint64_t N = 0;
  bool floored = false;  // some degree was raised to 3
};

/// sum_i (n_i/2) eta(p_i) + len(N)^2.
inline CrtEstimate estimate_crt(std::span<const std::uint64_t> moduli, std::span<const unsigned> degrees,
                                std::uint64_t N) {
  if (moduli.empty()) throw Error("estimate_crt: empty basis");
  if (moduli.size() != degrees.size()) throw Error("estimate_crt: one degree per modulus");
  CrtEstimate e;
  e.N = N;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    e.floored = e.floored || degrees[i] < 3;
    e.factor_costs.push_back(static_cast<double>(moduli[i]) / 2.0 * CostModel::eta_floored(degrees[i]));
    e.bits_required += moduli[i];
  }
  const double len = CostModel::len(N);
  e.crt_step = len * len;
  e.total = e.crt_step;
  for (double c : e.factor_costs) e.total += c;
  return e;
}

/// Runs `run` with a fresh counter (or none when disabled) and returns the
/// tally.
inline OpCounter measure(const std::function<void(OpCounter*)>& run, bool enabled = true) {
  OpCounter counter;
  run(enabled ? &counter : nullptr);
  return counter;
}

struct PointPaths {
  std::uint64_t k = 0;
  LogValue direct_value;
  LogValue crt_value;
  OpCounter direct;
  OpCounter crt;
};

/// One spectral point of the product of `streams`, computed both ways with
/// counting on. Direct: Horner over N bits of the product in the default
/// field for N, at the CRT-aligned root. CRT: one Horner per factor over its
/// own period and field, then exponent reconstruction.
inline PointPaths measure_point_paths(std::span<const BitSequence> streams, std::span<const FieldElement> factor_roots,
                                      std::uint64_t k) {
  if (streams.size() != factor_roots.size() || streams.empty()) throw Error("measure_point_paths: one root per stream");
  std::vector<std::uint64_t> periods;
  std::vector<LogSpectrumFactor> minpoly_only;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    periods.push_back(streams[i].period());
    minpoly_only.emplace_back(std::vector<LogValue>(streams[i].period()), minimal_polynomial_of(factor_roots[i]));
  }
  CrtBasis basis(periods);
  const FieldElement rho = aligned_root(default_field_for(basis.N()), minpoly_only, basis);
  BitSequence product = streams[0];
  for (std::size_t i = 1; i < streams.size(); ++i) product = pointwise_product(product, streams[i]);

  PointPaths out;
  out.k = k;
  FieldElement direct_elem = rho.field().zero();
  out.direct = measure([&](OpCounter* c) { direct_elem = dft_point_value(product, rho, k, c); });
  out.direct_value = direct_elem.is_zero() ? LogValue::zero() : LogValue::power(DiscreteLog(rho).log(direct_elem));

  out.crt = measure([&](OpCounter* c) {
    std::vector<std::uint64_t> exps;
    for (std::size_t i = 0; i < streams.size(); ++i) {
      auto v = dft_point_value(streams[i], factor_roots[i], k % periods[i], c);
      if (v.is_zero()) {
        out.crt_value = LogValue::zero();
        return;
      }
      exps.push_back(DiscreteLog(factor_roots[i]).log(v));
    }
    out.crt_value = LogValue::power(crt_combine(exps, basis, c));
  });
  return out;
}

}  // namespace crtspec
