#pragma once

// Markdown reproductions of the worked examples: the two-register product
// (periods 3 and 7) and the three-register majority combiner (periods 3, 7
// and 31). Output is byte-stable; values are written g^d, zeros as 0.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "crtspec/crt.hpp"
#include "crtspec/linear_complexity.hpp"
#include "crtspec/oracle.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"
#include "crtspec/text_format.hpp"

namespace crtspec {

/// The three registers used by both examples, all seeded with 0x1.
inline LfsrSpec example_register(char name) {
  switch (name) {
    case 'a': return {Poly2(0x7), 0x1};   // x^2 + x + 1
    case 'b': return {Poly2(0xb), 0x1};   // x^3 + x + 1
    case 'c': return {Poly2(0x25), 0x1};  // x^5 + x^2 + 1
    default: throw Error(std::string("no example register '") + name + "'");
  }
}

struct ExampleFactor {
  LfsrSpec spec;
  BitSequence stream;
  Spectrum spectrum;
  LogSpectrumFactor factor;
};

inline ExampleFactor example_factor(char name) {
  LfsrSpec spec = example_register(name);
  BitSequence stream = lfsr_sequence(Lfsr(spec.connection, spec.seed));
  Spectrum S = lfsr_factor_spectrum(spec, stream);
  auto f = LogSpectrumFactor::from(S);
  return {spec, stream, S, f};
}

inline std::string format_log_value(const LogValue& v) { return v.is_zero() ? "0" : "g^" + v.to_string(); }

/// Markdown table; with no rows only the header and rule are written.
inline std::string markdown_table(const std::vector<std::string>& header,
                                  const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto row = [&](const std::vector<std::string>& cells) {
    os << "|";
    for (const auto& c : cells) os << " " << c << " |";
    os << "\n";
  };
  row(header);
  os << "|";
  for (std::size_t i = 0; i < header.size(); ++i) os << "---|";
  os << "\n";
  for (const auto& r : rows) row(r);
  return os.str();
}

/// One row per nonzero point of `product`, with the CRT decomposition of the
/// index and the factor values it was assembled from.
inline std::string decomposition_table(const std::vector<const ExampleFactor*>& factors, const Spectrum& product,
                                       const std::string& product_name) {
  std::vector<std::string> header{"k"};
  for (const auto* f : factors) header.push_back("k mod " + std::to_string(f->stream.period()));
  for (const auto* f : factors) header.push_back(f->spec.connection == Poly2(0x7)    ? "A"
                                                 : f->spec.connection == Poly2(0xb) ? "B"
                                                                                    : "C");
  header.push_back(product_name);
  std::vector<std::vector<std::string>> rows;
  for (auto k : product.support()) {
    std::vector<std::string> r{std::to_string(k)};
    for (const auto* f : factors) r.push_back(std::to_string(k % f->stream.period()));
    for (const auto* f : factors) r.push_back(format_log_value(f->spectrum[k % f->stream.period()]));
    r.push_back(format_log_value(product[k]));
    rows.push_back(std::move(r));
  }
  return markdown_table(header, rows);
}

namespace detail {

inline std::string register_line(char name, const ExampleFactor& f) {
  std::ostringstream os;
  os << "- " << name << ": connection " << f.spec.connection.to_string() << ", seed " << Poly2(f.spec.seed).to_hex()
     << ", period " << f.stream.period() << ": `" << f.stream.to_string() << "`\n";
  return os.str();
}

inline std::string root_line(const std::string& name, const Spectrum& S) {
  return "- " + name + ": " + text::spectrum_header(S) + "\n";
}

inline std::string bm_line(const std::string& name, const BitSequence& s) {
  auto bm = berlekamp_massey(s);
  return "- Berlekamp-Massey on two periods of " + name + ": L = " + std::to_string(bm.linear_complexity) +
         ", g(x) = " + bm.minimal_poly.to_string() + "\n";
}

inline std::string agreement_line(const std::string& name, const BitSequence& s, const Spectrum& crt) {
  auto mism = compare_spectra(brute_dft(s, crt.root()), crt);
  return "- CRT spectrum of " + name + " vs brute-force DFT: " +
         (mism.empty() ? std::string("identical") : std::to_string(mism.size()) + " mismatches") + "\n";
}

}  // namespace detail

inline std::string report_example1() {
  auto a = example_factor('a');
  auto b = example_factor('b');
  BitSequence u = pointwise_product(a.stream, b.stream);
  std::vector<LogSpectrumFactor> fs{a.factor, b.factor};
  CrtBasis basis({a.stream.period(), b.stream.period()});
  Spectrum U = product_spectrum(fs, basis);

  std::ostringstream os;
  os << "# Example 1: u = a.b\n\n";
  os << detail::register_line('a', a) << detail::register_line('b', b);
  os << "- u = a.b, period " << u.period() << ": `" << u.to_string() << "`\n";
  os << detail::bm_line("u", u) << "\n";
  os << "Roots (spectrum headers):\n\n";
  os << detail::root_line("A", a.spectrum) << detail::root_line("B", b.spectrum) << detail::root_line("U", U) << "\n";

  const std::uint64_t N = U.period();
  std::vector<std::string> header{"Index"};
  std::vector<std::string> ra{"A"}, rb{"B"}, ru{"U"};
  for (std::uint64_t k = 0; k < N; ++k) {
    header.push_back(std::to_string(k));
    ra.push_back(format_log_value(a.spectrum[k % a.stream.period()]));
    rb.push_back(format_log_value(b.spectrum[k % b.stream.period()]));
    ru.push_back(format_log_value(U[k]));
  }
  os << "## Spectral components of u = a.b\n\n" << markdown_table(header, {ra, rb, ru}) << "\n";
  os << "## CRT decomposition of the nonzero points of U\n\n" << decomposition_table({&a, &b}, U, "U") << "\n";
  os << detail::agreement_line("u", u, U);
  os << "- nonzero points: " << U.nonzero_count() << "\n";
  return os.str();
}

inline std::string report_example2() {
  auto a = example_factor('a');
  auto b = example_factor('b');
  auto c = example_factor('c');
  BitSequence ab = pointwise_product(a.stream, b.stream);
  BitSequence bc = pointwise_product(b.stream, c.stream);
  BitSequence ac = pointwise_product(a.stream, c.stream);
  BitSequence abc = pointwise_product(ab, c.stream);
  std::vector<BitSequence> inputs{a.stream, b.stream, c.stream};
  AnfCombiner f = AnfCombiner::parse("1*2+2*3+1*3");
  BitSequence s = combiner_stream(f, inputs);

  std::vector<LogSpectrumFactor> fbc{b.factor, c.factor}, fac{a.factor, c.factor}, fabc{a.factor, b.factor, c.factor};
  Spectrum BC = product_spectrum(fbc, CrtBasis({7, 31}));
  Spectrum AC = product_spectrum(fac, CrtBasis({3, 31}));
  CrtBasis full({3, 7, 31});
  Spectrum ABC = product_spectrum(fabc, full);
  Spectrum S = combiner_spectrum(f, fabc, full);

  std::ostringstream os;
  os << "# Example 2: s = ab + bc + ac\n\n";
  os << detail::register_line('a', a) << detail::register_line('b', b) << detail::register_line('c', c) << "\n";
  os << "## Spectrum of c\n\n";
  os << detail::root_line("C", c.spectrum) << "\n";
  {
    std::vector<std::vector<std::string>> rows;
    for (auto k : c.spectrum.support()) rows.push_back({std::to_string(k), format_log_value(c.spectrum[k])});
    os << markdown_table({"k", "C"}, rows) << "\n";
  }

  os << "## Spectral components of b.c\n\n";
  os << detail::bm_line("b.c", bc) << detail::root_line("BC", BC) << detail::agreement_line("b.c", bc, BC) << "\n";
  os << decomposition_table({&b, &c}, BC, "BC") << "\n";

  os << "## Spectral components of a.c\n\n";
  os << detail::bm_line("a.c", ac) << detail::root_line("AC", AC) << detail::agreement_line("a.c", ac, AC) << "\n";
  os << decomposition_table({&a, &c}, AC, "AC") << "\n";

  os << "## Triple product a.b.c (three-way CRT)\n\n";
  os << detail::bm_line("a.b.c", abc) << detail::root_line("S", ABC) << detail::agreement_line("a.b.c", abc, ABC);
  auto leaders = coset_reduce(ABC);
  os << "- coset leaders:";
  for (const auto& [k, v] : leaders) os << " " << k << " -> " << format_log_value(v);
  os << "\n\n" << decomposition_table({&a, &b, &c}, ABC, "S") << "\n";

  os << "## Combiner s = ab + bc + ac\n\n";
  os << "- s, period " << s.period() << "\n";
  os << detail::bm_line("s", s) << detail::root_line("F", S) << detail::agreement_line("s", s, S);
  std::size_t shared = 0;
  for (auto k : S.support())
    if (!ABC[k].is_zero()) ++shared;
  os << "- support of F: " << S.nonzero_count() << " points; shared with the triple-product support: " << shared
     << "\n\n";
  {
    std::vector<std::vector<std::string>> rows;
    for (auto k : S.support()) {
      std::string term = k % 31 == 0 ? "ab" : k % 3 == 0 ? "bc" : k % 7 == 0 ? "ac" : "?";
      rows.push_back({std::to_string(k), term, format_log_value(S[k])});
    }
    os << markdown_table({"k", "term", "F"}, rows);
  }
  return os.str();
}

/// Report for example 1 or 2.
inline std::string report_tables(int example) {
  if (example == 1) return report_example1();
  if (example == 2) return report_example2();
  throw Error("report: no example " + std::to_string(example));
}

}  // namespace crtspec
