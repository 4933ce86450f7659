#include <gtest/gtest.h>

#include "crtspec/oracle.hpp"
#include "reference.hpp"

using namespace crtspec;

TEST(BruteDft, AgreesWithFastPath) {
  for (const char* bits : {"011", "0010111", "1", "0000100101100111110001101110101", "110100111010110"}) {
    auto s = BitSequence::parse(bits);
    auto root = default_root_for(s.period());
    EXPECT_EQ(brute_dft(s, root), dft(s, root)) << bits;
  }
  auto one = brute_dft(BitSequence::parse("1"), build_field(1).one());
  EXPECT_EQ(one.period(), 1u);
  EXPECT_EQ(one[0], LogValue::power(0));
  EXPECT_THROW(brute_dft(BitSequence::parse("0010111"), default_root_for(3)), Error);
}

TEST(BruteDft, ValuesMatchReference) {
  auto s = BitSequence::parse("001011000001010010011");
  auto f = build_field(6);
  auto root = pow(f.generator(), 3);
  auto S = brute_dft(s, root);
  for (std::uint64_t k = 0; k < 21; ++k)
    EXPECT_EQ(S.element(k).bits(), ref::dft_value(s.bits(), root.bits(), k, 0x43, 6)) << k;
}

TEST(CompareSpectra, IdentityAndIncomparable) {
  auto s = BitSequence::parse("0010111");
  auto S = dft(s);
  EXPECT_TRUE(compare_spectra(S, S).empty());
  auto T = dft(BitSequence::parse("0101110"));
  auto ms = compare_spectra(S, T);
  EXPECT_FALSE(ms.empty());
  for (const auto& m : ms) EXPECT_NE(m.expected, m.actual);
  EXPECT_THROW(compare_spectra(S, dft(BitSequence::parse("011"))), Error);
  EXPECT_THROW(compare_spectra(S, dft(s, build_field(3, Poly2(0xd)).generator())), Error);
  EXPECT_THROW(compare_spectra(S, dft(s, pow(S.root(), 3))), Error);
}

TEST(CompareSpectra, TripleProductVersusCombiner) {
  auto a = lfsr_sequence(Lfsr(Poly2(0x7), 1)), b = lfsr_sequence(Lfsr(Poly2(0xb), 1)),
       c = lfsr_sequence(Lfsr(Poly2(0x25), 1));
  std::vector<BitSequence> in{a, b, c};
  auto abc = pointwise_product(pointwise_product(a, b), c);
  auto s = combiner_stream(AnfCombiner::parse("1*2+2*3+1*3"), in);
  auto root = default_root_for(651);
  auto ms = compare_spectra(brute_dft(abc, root), brute_dft(s, root));
  EXPECT_EQ(ms.size(), 61u);  // 30 + 31 points, disjoint supports
}

TEST(Theorem1, WorkedExamples) {
  auto r1 = verify_theorem1({{Poly2(0x7), 0x1}, {Poly2(0xb), 0x1}});
  EXPECT_TRUE(r1.passed());
  EXPECT_EQ(r1.N, 21u);
  EXPECT_EQ(r1.crt_support, 6u);
  EXPECT_EQ(r1.oracle_support, 6u);
  EXPECT_EQ(r1.linear_complexity, 6u);

  auto r2 = verify_theorem1({{Poly2(0xb), 0x1}, {Poly2(0x25), 0x1}});
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.crt_support, 15u);

  auto single = verify_theorem1({{Poly2(0x25), 0x3}});
  EXPECT_TRUE(single.passed());
  EXPECT_EQ(single.crt_support, 5u);
}

TEST(Theorem1, NonPrimitiveFactorRejected) {
  // x^4 + x^3 + x^2 + x + 1 has period 5; its spectral values in GF(16)
  // are not all powers of an order-5 root, so no log form exists.
  EXPECT_THROW(verify_theorem1({{Poly2(0x7), 1}, {Poly2(0x1f), 1}}), Error);
}

TEST(Theorem1, NonCoprimeAndBound) {
  // x^4 + x + 1 has period 15, sharing 3 with x^2 + x + 1.
  EXPECT_THROW(verify_theorem1({{Poly2(0x7), 1}, {Poly2(0x13), 1}}), Error);
  Theorem1Options small;
  small.max_period = 100;
  EXPECT_THROW(verify_theorem1({{Poly2(0xb), 1}, {Poly2(0x25), 1}}, small), Error);
  EXPECT_THROW(verify_theorem1({}), Error);
}

TEST(Theorem1, ExpectedFixtureMismatch) {
  auto good = verify_theorem1({{Poly2(0x7), 1}, {Poly2(0xb), 1}});
  std::vector<LogValue> tampered = good.crt_spectrum->values();
  tampered[13] = LogValue::power(16);
  Theorem1Options opts;
  opts.expected = Spectrum(good.crt_spectrum->root(), tampered);
  auto rep = verify_theorem1({{Poly2(0x7), 1}, {Poly2(0xb), 1}}, opts);
  EXPECT_FALSE(rep.passed());
  EXPECT_TRUE(rep.mismatches.empty());
  ASSERT_EQ(rep.expected_mismatches.size(), 1u);
  EXPECT_EQ(rep.expected_mismatches[0].index, 13u);
}

// Exhaustive over primitive pairs of degrees 2 and 3, all seeds.
TEST(Theorem1Property, ExhaustiveDegrees2And3) {
  for (const auto& p : primitive_polynomials(2))
    for (const auto& q : primitive_polynomials(3))
      for (std::uint64_t s1 = 1; s1 < 4; ++s1)
        for (std::uint64_t s2 = 1; s2 < 8; ++s2) {
          auto rep = verify_theorem1({{p, s1}, {q, s2}});
          ASSERT_TRUE(rep.passed()) << p << " " << q << " " << s1 << " " << s2;
          ASSERT_EQ(rep.crt_support, 6u);
        }
}
