#include <gtest/gtest.h>

#include <map>
#include <random>

#include "crtspec/crt.hpp"
#include "crtspec/oracle.hpp"
#include "reference.hpp"

using namespace crtspec;

namespace {

using PointMap = std::map<std::uint64_t, std::uint64_t>;

BitSequence reg(std::uint64_t conn, std::uint64_t seed = 1) { return lfsr_sequence(Lfsr(Poly2(conn), seed)); }

LogSpectrumFactor factor(std::uint64_t conn, unsigned m) {
  return LogSpectrumFactor::from(dft(reg(conn), build_field(m, Poly2(conn)).element(2)));
}

PointMap points(const Spectrum& S) {
  PointMap out;
  for (auto k : S.support()) out[k] = S[k].exponent();
  return out;
}

const PointMap kTableU{{5, 9}, {10, 18}, {13, 15}, {17, 18}, {19, 9}, {20, 15}};
const PointMap kTableBC{{27, 15},   {54, 30},   {61, 58},   {89, 170},  {108, 60},
                        {122, 116}, {139, 29},  {153, 85},  {178, 123}, {185, 151},
                        {201, 184}, {209, 92},  {213, 46},  {215, 23},  {216, 120}};
const PointMap kTableAC{{23, 30}, {29, 54}, {46, 60}, {58, 15}, {61, 27},
                        {77, 60}, {85, 30}, {89, 15}, {91, 54}, {92, 27}};

}  // namespace

TEST(CrtBasis, IdempotentsAndErrors) {
  CrtBasis b({3, 7, 31});
  EXPECT_EQ(b.N(), 651u);
  for (std::size_t i = 0; i < 3; ++i) {
    auto u = b.idempotent(i);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(u % b.moduli()[j], i == j ? 1u : 0u);
  }
  EXPECT_THROW(CrtBasis({3, 9}), Error);
  EXPECT_THROW(CrtBasis({}), Error);
  EXPECT_THROW(CrtBasis({0, 7}), Error);
}

TEST(CrtCombine, MatchesSearch) {
  std::mt19937_64 rng(5);
  for (const auto& moduli : std::vector<std::vector<std::uint64_t>>{{3, 7}, {7, 31}, {3, 7, 31}, {5, 9, 11, 13}}) {
    CrtBasis b(moduli);
    for (int i = 0; i < 50; ++i) {
      std::vector<std::uint64_t> r;
      for (auto n : moduli) r.push_back(rng() % n);
      auto k = crt_combine(r, b);
      ASSERT_EQ(k, ref::crt(r, moduli));
      ASSERT_EQ(b.residues(k), r);
    }
  }
  CrtBasis b({3, 7});
  std::vector<std::uint64_t> r{3, 0};
  EXPECT_THROW(crt_combine(r, b), Error);
  EXPECT_THROW(crt_combine(std::vector<std::uint64_t>{1}, b), Error);
}

TEST(ProductSpectrum, TableU) {
  std::vector<LogSpectrumFactor> f{factor(0x7, 2), factor(0xb, 3)};
  CrtBasis basis({3, 7});
  auto U = product_spectrum(f, basis);
  EXPECT_EQ(U.field(), build_field(6, Poly2(0x43)));
  EXPECT_EQ(points(U), kTableU);
  auto u = pointwise_product(reg(0x7), reg(0xb));
  EXPECT_TRUE(compare_spectra(brute_dft(u, U.root()), U).empty());
  EXPECT_EQ(product_spectrum_point(f, basis, 13), LogValue::power(15));
  EXPECT_EQ(product_spectrum_point(f, basis, 14), LogValue::zero());
  EXPECT_THROW(product_spectrum_point(f, basis, 21), Error);
}

TEST(ProductSpectrum, TablesBCAndAC) {
  auto A = factor(0x7, 2), B = factor(0xb, 3), C = factor(0x25, 5);
  std::vector<LogSpectrumFactor> bc{B, C}, ac{A, C};
  auto BC = product_spectrum(bc, CrtBasis({7, 31}));
  auto AC = product_spectrum(ac, CrtBasis({3, 31}));
  EXPECT_EQ(BC.field(), build_field(15, Poly2(0x8003)));
  EXPECT_EQ(AC.field(), build_field(10, Poly2(0x409)));
  EXPECT_EQ(points(BC), kTableBC);
  EXPECT_EQ(points(AC), kTableAC);
}

TEST(ProductSpectrum, FactorChecks) {
  auto A = factor(0x7, 2), B = factor(0xb, 3);
  std::vector<LogSpectrumFactor> f{A, B};
  EXPECT_THROW(product_spectrum(f, CrtBasis({7, 3})), Error);
  EXPECT_THROW(product_spectrum(f, CrtBasis({3, 7, 31})), Error);
  EXPECT_THROW(LogSpectrumFactor({LogValue::power(3)}, Poly2(3)), Error);
  // A field without an order-21 element.
  EXPECT_THROW(product_spectrum(f, CrtBasis({3, 7}), build_field(5)), Error);
}

TEST(ProductSpectrum, SupportIsProductOfSupports) {
  auto A = factor(0x7, 2), B = factor(0xb, 3), C = factor(0x25, 5);
  std::vector<LogSpectrumFactor> abc{A, B, C};
  CrtBasis basis({3, 7, 31});
  auto support = support_indices(abc, basis);
  EXPECT_EQ(support.size(), 2u * 3u * 5u);
  EXPECT_EQ(support, product_spectrum(abc, basis).support());
}

TEST(Embed, UIntoPeriod651) {
  std::vector<LogSpectrumFactor> f{factor(0x7, 2), factor(0xb, 3)};
  auto U = product_spectrum(f, CrtBasis({3, 7}));
  auto E = embed_spectrum(U, 651);
  EXPECT_EQ(points(E), (PointMap{{155, 279}, {310, 558}, {403, 465}, {527, 558}, {589, 279}, {620, 465}}));
  // Embedding is the spectrum of the same sequence read over 651 positions.
  auto u = pointwise_product(reg(0x7), reg(0xb));
  EXPECT_EQ(dft(u, E.root()), E);
  EXPECT_THROW(embed_spectrum(U, 650), Error);
  EXPECT_THROW(embed_log_values(U.values(), 42), Error);
}

TEST(Combiner, SpectrumMatchesBruteForce) {
  auto a = reg(0x7), b = reg(0xb), c = reg(0x25);
  std::vector<LogSpectrumFactor> fs{factor(0x7, 2), factor(0xb, 3), factor(0x25, 5)};
  CrtBasis basis({3, 7, 31});
  auto f = AnfCombiner::parse("1*2+2*3+1*3");
  auto F = combiner_spectrum(f, fs, basis);
  std::vector<BitSequence> in{a, b, c};
  auto s = combiner_stream(f, in);
  EXPECT_TRUE(compare_spectra(brute_dft(s, F.root()), F).empty());
  EXPECT_EQ(F.nonzero_count(), 31u);
  // Supports of the three embedded pairwise products are disjoint.
  for (auto k : F.support()) EXPECT_EQ((k % 3 == 0) + (k % 7 == 0) + (k % 31 == 0), 1) << k;
  EXPECT_EQ(F.root(), product_spectrum(fs, basis).root());
  EXPECT_THROW(combiner_spectrum(AnfCombiner::parse("1*2"), fs, basis), Error);
}

// Overlapping terms are summed in the field: f = x1 + x1*x2 has
// spectrum terms sharing indices divisible by 7.
TEST(Combiner, OverlappingTermsSummed) {
  auto a = reg(0x7), b = reg(0xb);
  std::vector<LogSpectrumFactor> fs{factor(0x7, 2), factor(0xb, 3)};
  CrtBasis basis({3, 7});
  for (const char* anf : {"1+1*2", "2+1*2", "1+2", "1+2+1*2"}) {
    auto f = AnfCombiner::parse(anf, 2);
    auto F = combiner_spectrum(f, fs, basis);
    std::vector<BitSequence> in{a, b};
    EXPECT_TRUE(compare_spectra(brute_dft(combiner_stream(f, in), F.root()), F).empty()) << anf;
  }
}

// CRT product against the brute-force oracle for random primitive triples.
TEST(CrtProperty, RandomTriples) {
  std::mt19937_64 rng(42);
  const std::vector<unsigned> degs{2, 3, 5};
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<LfsrSpec> specs;
    for (auto m : degs) {
      auto ps = primitive_polynomials(m);
      specs.push_back({ps[rng() % ps.size()], 1 + rng() % ((1u << m) - 1)});
    }
    auto rep = verify_theorem1(specs);
    ASSERT_TRUE(rep.passed());
    ASSERT_EQ(rep.crt_support, 30u);
  }
}
