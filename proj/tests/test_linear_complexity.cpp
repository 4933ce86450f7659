#include <gtest/gtest.h>

#include <random>

#include "crtspec/field.hpp"
#include "crtspec/linear_complexity.hpp"
#include "crtspec/sequence.hpp"
#include "reference.hpp"

using namespace crtspec;

namespace {

BitSequence reg(std::uint64_t conn, std::uint64_t seed) { return lfsr_sequence(Lfsr(Poly2(conn), seed)); }

}  // namespace

TEST(BerlekampMassey, WorkedExamples) {
  auto a = reg(0x7, 1), b = reg(0xb, 1), c = reg(0x25, 1);
  auto u = berlekamp_massey(pointwise_product(a, b));
  EXPECT_EQ(u.linear_complexity, 6u);
  EXPECT_EQ(u.minimal_poly, Poly2::parse("x^6 + x^4 + x^2 + x + 1"));

  auto bc = berlekamp_massey(pointwise_product(b, c));
  EXPECT_EQ(bc.linear_complexity, 15u);
  EXPECT_EQ(bc.minimal_poly, Poly2::parse("x^15 + x^12 + x^10 + x^7 + x^6 + x^2 + 1"));

  auto ac = berlekamp_massey(pointwise_product(a, c));
  EXPECT_EQ(ac.linear_complexity, 10u);
  EXPECT_EQ(ac.minimal_poly, Poly2::parse("x^10 + x^5 + x^4 + x^2 + 1"));
  EXPECT_TRUE(ac.minimal_poly.eval_at_one());  // odd weight: x + 1 does not divide it

  std::vector<BitSequence> in{a, b, c};
  auto s = berlekamp_massey(combiner_stream(AnfCombiner::parse("1*2+2*3+1*3"), in));
  EXPECT_EQ(s.linear_complexity, 31u);
  EXPECT_EQ(s.minimal_poly.degree(), 31);
}

TEST(BerlekampMassey, SingleRegisterRecoversConnection) {
  for (std::uint64_t c : {0x7u, 0xbu, 0xdu, 0x25u, 0x43u, 0x11du}) {
    auto r = berlekamp_massey(reg(c, 1));
    EXPECT_EQ(r.minimal_poly, Poly2(c));
    EXPECT_EQ(r.connection, Poly2(c).reciprocal());
  }
}

TEST(BerlekampMassey, EdgeCases) {
  auto zero = berlekamp_massey(BitSequence::parse("0000"));
  EXPECT_EQ(zero.linear_complexity, 0u);
  EXPECT_EQ(zero.minimal_poly, Poly2(1));
  auto ones = berlekamp_massey(BitSequence::parse("1"));
  EXPECT_EQ(ones.linear_complexity, 1u);
  EXPECT_EQ(ones.minimal_poly, Poly2(0x3));
  // A single 1 at the end of n bits needs a length-n register.
  Bits impulse(9, 0);
  impulse.back() = 1;
  EXPECT_EQ(berlekamp_massey(impulse).linear_complexity, 9u);
  EXPECT_THROW(berlekamp_massey(Bits{}), Error);
}

TEST(BerlekampMassey, RegeneratesInput) {
  auto u = pointwise_product(reg(0x7, 1), reg(0xb, 1));
  auto bits = u.repeated(42);
  auto r = berlekamp_massey(bits);
  EXPECT_EQ(regenerate(r, std::span(bits).first(r.linear_complexity), 42), bits);
  EXPECT_THROW(regenerate(r, std::span(bits).first(2), 10), Error);
}

// Two periods of BM agree with the closed form N - deg gcd(x^N + 1, s(x)).
TEST(BerlekampMasseyProperty, MatchesGcdFormula) {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t N = 1 + rng() % 80;
    Bits s(N);
    for (auto& b : s) b = rng() & 1;
    BitSequence seq(s);
    auto r = berlekamp_massey(seq);
    ASSERT_EQ(r.linear_complexity, ref::linear_complexity(s)) << seq.to_string();
    ASSERT_LE(r.linear_complexity, N);
  }
}

TEST(BerlekampMasseyProperty, ProductsOfPrimitiveRegisters) {
  // L(a.b) = m_a m_b for primitive registers of coprime degree.
  std::mt19937_64 rng(11);
  const std::vector<std::pair<unsigned, unsigned>> pairs{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
  for (auto [ma, mb] : pairs) {
    auto pa = primitive_polynomials(ma), pb = primitive_polynomials(mb);
    for (int trial = 0; trial < 5; ++trial) {
      auto a = lfsr_sequence(Lfsr(pa[rng() % pa.size()], 1 + rng() % ((1u << ma) - 1)));
      auto b = lfsr_sequence(Lfsr(pb[rng() % pb.size()], 1 + rng() % ((1u << mb) - 1)));
      auto u = pointwise_product(a, b);
      EXPECT_EQ(berlekamp_massey(u).linear_complexity, ma * mb);
      EXPECT_EQ(ref::linear_complexity(u.bits()), ma * mb);
    }
  }
}
