#include <gtest/gtest.h>

#include <random>

#include "crtspec/field.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/poly2.hpp"
#include "reference.hpp"

using namespace crtspec;

TEST(Poly2, ParseAndFormat) {
  EXPECT_EQ(Poly2::parse("x^6 + x^4 + x^2 + x + 1"), Poly2(0x57));
  EXPECT_EQ(Poly2::parse("0x25").to_string(), "x^5 + x^2 + 1");
  EXPECT_EQ(Poly2(0x8003).to_hex(), "0x8003");
  EXPECT_EQ(Poly2().to_string(), "0");
  EXPECT_EQ(Poly2().degree(), Poly2::kZeroDegree);
  EXPECT_THROW(Poly2::parse("x^2 + y"), Error);
  EXPECT_THROW(Poly2::parse("0xg1"), Error);
  EXPECT_THROW(Poly2::parse(""), Error);
}

TEST(Poly2, ArithmeticAcrossWords) {
  Poly2 a = Poly2::monomial(70) + Poly2(1);
  Poly2 b = Poly2::monomial(3) + Poly2(2);
  Poly2 p = a * b;
  EXPECT_EQ(p.degree(), 73);
  auto [q, r] = divmod(p, b);
  EXPECT_EQ(q, a);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(p, b), b);
  EXPECT_EQ(Poly2(0x57).reciprocal(), Poly2(0x75));
  EXPECT_EQ(Poly2(0x6).reciprocal(3), Poly2(0x6));
  EXPECT_TRUE(Poly2(0x7).eval_at_one());
  EXPECT_FALSE(Poly2(0x3).eval_at_one());
}

TEST(NumberTheory, FactorAndOrders) {
  EXPECT_EQ(factorize(0xffffffffULL), (std::vector<std::uint64_t>{3, 5, 17, 257, 65537}));
  EXPECT_EQ(factorize(63), (std::vector<std::uint64_t>{3, 3, 7}));
  EXPECT_EQ(multiplicative_order_of_2(21), 6u);
  EXPECT_EQ(multiplicative_order_of_2(93), 10u);
  EXPECT_EQ(multiplicative_order_of_2(217), 15u);
  EXPECT_EQ(multiplicative_order_of_2(651), 30u);
  EXPECT_EQ(multiplicative_order_of_2(1), 1u);
  EXPECT_THROW(multiplicative_order_of_2(20), Error);
  EXPECT_EQ(inv_mod(5, 21), 17u);
  EXPECT_THROW(inv_mod(7, 21), Error);
  EXPECT_EQ(bit_length(217), 8u);
}

TEST(NumberTheory, CyclotomicCosetsPartition) {
  for (std::uint64_t N : {1, 3, 7, 21, 93, 217, 651}) {
    std::vector<int> hits(N, 0);
    for (const auto& c : cyclotomic_cosets(N)) {
      for (auto k : c) ++hits[k];
      EXPECT_EQ(c.size() > 1 ? multiplicative_order_of_2(N) % c.size() : 0u, 0u) << N;
    }
    for (auto h : hits) EXPECT_EQ(h, 1);
  }
  auto c21 = cyclotomic_cosets(21);
  EXPECT_EQ(c21[3], (std::vector<std::uint64_t>{5, 10, 13, 17, 19, 20}));
}

TEST(Field, BuildAndGenerator) {
  auto f = build_field(3, Poly2::parse("x^3 + x + 1"));
  EXPECT_EQ(f.generator().bits(), 0x2u);
  EXPECT_EQ(f.group_order(), 7u);
  EXPECT_EQ(f.to_string(), "GF2m m=3 mod=0xb");
  EXPECT_EQ(build_field(1).generator().bits(), 1u);
  // Irreducible but not primitive: x^4 + x^3 + x^2 + x + 1, where x has order 5.
  auto g = build_field(4, Poly2(0x1f));
  EXPECT_EQ(element_order(g.generator()), 15u);
  EXPECT_NE(g.generator().bits(), 0x2u);
}

TEST(Field, BuildErrors) {
  try {
    build_field(2, Poly2::parse("x^2 + 1"));
    FAIL() << "expected ReducibleModulus";
  } catch (const ReducibleModulus& e) {
    EXPECT_EQ(e.factor(), Poly2(0x3));
  }
  try {
    build_field(6, Poly2(0x79));  // (x^2 + x + 1)(x^4 + x + 1)
    FAIL();
  } catch (const ReducibleModulus& e) {
    EXPECT_EQ(e.factor(), Poly2(0x7));
  }
  EXPECT_THROW(build_field(0), Error);
  EXPECT_THROW(build_field(33), Error);
  EXPECT_THROW(build_field(4, Poly2(0xb)), Error);
  EXPECT_THROW(build_field(3).element(8), Error);
}

TEST(Field, BuiltinTableIsPrimitive) {
  for (unsigned m = 1; m <= kMaxFieldDegree; ++m) {
    auto f = build_field(m);
    EXPECT_EQ(element_order(f.element(m == 1 ? 1 : 2)), f.group_order()) << m;
    EXPECT_EQ(f.generator().bits(), m == 1 ? 1u : 2u);
  }
  EXPECT_EQ(primitive_polynomials(5).size(), 6u);
  EXPECT_EQ(primitive_polynomials(8).size(), 16u);
  EXPECT_EQ(primitive_polynomials(3), (std::vector<Poly2>{Poly2(0xb), Poly2(0xd)}));
}

TEST(Field, Gf8Facts) {
  auto f = build_field(3, Poly2(0xb));
  auto b = f.generator();
  EXPECT_EQ(pow(b, 4).bits(), 0x6u);  // x^2 + x
  EXPECT_EQ(pow(b, 6).bits(), 0x5u);  // x^2 + 1
  EXPECT_EQ(inv(b), pow(b, 6));
  EXPECT_EQ(pow(b, -1), inv(b));
  EXPECT_EQ(pow(b, -8), inv(b));
  EXPECT_EQ(pow(f.zero(), 0), f.one());
  EXPECT_THROW(inv(f.zero()), Error);
  EXPECT_THROW(pow(f.zero(), -1), Error);
  EXPECT_EQ(discrete_log(f.element(0x3), b), 3u);
  EXPECT_THROW(element_order(f.zero()), Error);
}

TEST(Field, MinimalPolynomials) {
  auto f = build_field(6, Poly2(0x43));
  auto g = f.generator();
  EXPECT_EQ(minimal_polynomial_of(pow(g, 9)), Poly2(0xd));
  EXPECT_EQ(minimal_polynomial_of(g), Poly2(0x43));
  EXPECT_EQ(minimal_polynomial_of(f.one()), Poly2(0x3));
  for (std::int64_t e = 0; e < 63; ++e) {
    auto a = pow(g, e);
    EXPECT_TRUE(evaluate(minimal_polynomial_of(a), a).is_zero());
    EXPECT_EQ(element_order(a), ref::gf_order(a.bits(), 0x43, 6));
  }
}

TEST(Field, MixedFieldsRejected) {
  auto f = build_field(4);
  auto g = build_field(4, Poly2(0x19));
  EXPECT_THROW(f.one() + g.one(), FieldMismatch);
  EXPECT_THROW(f.generator() * g.generator(), FieldMismatch);
}

// Field axioms and agreement with the shift-and-add reference over random
// triples in several fields.
TEST(FieldProperty, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(20240915);
  for (unsigned m : {2u, 5u, 8u, 13u, 15u, 21u, 30u, 32u}) {
    auto f = build_field(m);
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    for (int i = 0; i < 2000; ++i) {
      auto a = f.element(rng() & mask), b = f.element(rng() & mask), c = f.element(rng() & mask);
      ASSERT_EQ((a * b).bits(), ref::gf_mul(a.bits(), b.bits(), f.modulus_word(), m));
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + a, f.zero());
      if (!a.is_zero()) {
        ASSERT_EQ(a * inv(a), f.one());
      }
    }
  }
}

TEST(FieldProperty, DiscreteLogRoundTrip) {
  std::mt19937_64 rng(7);
  for (unsigned m : {6u, 16u, 20u, 30u}) {
    auto f = build_field(m);
    DiscreteLog logs(f.generator());
    for (int i = 0; i < 200; ++i) {
      std::uint64_t e = rng() % f.group_order();
      EXPECT_EQ(logs.log(pow(f.generator(), static_cast<std::int64_t>(e))), e);
    }
  }
  // Subgroup base: values outside <base> have no logarithm.
  auto f = build_field(6);
  DiscreteLog sub(pow(f.generator(), 3));
  EXPECT_EQ(sub.order(), 21u);
  EXPECT_FALSE(sub.try_log(f.generator().bits()).has_value());
  EXPECT_THROW(sub.log(f.generator()), Error);
}
