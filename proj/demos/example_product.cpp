// Spectrum of the product of two LFSR streams, computed from the factor
// spectra and checked against a direct transform of the product.

#include <iostream>
#include <vector>

#include "crtspec/crtspec.hpp"

int main() {
  using namespace crtspec;

  Lfsr a(Poly2::parse("x^2 + x + 1"), 0x1);
  Lfsr b(Poly2::parse("x^3 + x + 1"), 0x1);
  BitSequence sa = lfsr_sequence(a);
  BitSequence sb = lfsr_sequence(b);
  BitSequence u = pointwise_product(sa, sb);
  std::cout << "a = " << sa.to_string() << "\nb = " << sb.to_string() << "\nu = " << u.to_string() << "\n";

  auto bm = berlekamp_massey(u);
  std::cout << "L = " << bm.linear_complexity << ", g(x) = " << bm.minimal_poly.to_string() << "\n";

  std::vector<LogSpectrumFactor> factors{LogSpectrumFactor::from(dft(sa)), LogSpectrumFactor::from(dft(sb))};
  CrtBasis basis({sa.period(), sb.period()});
  Spectrum U = product_spectrum(factors, basis);
  std::cout << text::format_spectrum(U, true);

  auto mismatches = compare_spectra(dft(u, U.root()), U);
  std::cout << (mismatches.empty() ? "direct transform agrees" : "direct transform disagrees") << "\n";
  return mismatches.empty() ? 0 : 1;
}
