#include <gtest/gtest.h>

#include "linkhom/frobenius.hpp"
#include "linkhom/poly.hpp"

using namespace linkhom;

TEST(Field, PrimeArithmetic) {
  using F3 = Fp<3>;
  EXPECT_EQ(F3(2) + F3(2), F3(1));
  EXPECT_EQ(F3(-1), F3(2));
  EXPECT_EQ(F3(2) * F3(2), F3(1));
  EXPECT_EQ(F3(2).inverse(), F3(2));
  EXPECT_EQ(F3(1) / F3(2), F3(2));
  EXPECT_TRUE(F3(3).is_zero());
  using F2 = Fp<2>;
  EXPECT_EQ(F2(1) + F2(1), F2(0));
  EXPECT_EQ(-F2(1), F2(1));
  for (int a = 1; a < 13; ++a) EXPECT_EQ(Fp<13>(a) * Fp<13>(a).inverse(), Fp<13>(1));
}

TEST(Field, RationalIsExact) {
  Rational third = Rational(1) / Rational(3);
  EXPECT_EQ(third * Rational(3), Rational(1));
  EXPECT_EQ((third + third + third).str(), "1");
  EXPECT_EQ((Rational(-2) / Rational(4)).str(), "-1/2");
  // Large values do not overflow.
  Rational big(1);
  for (int i = 0; i < 40; ++i) big = big * Rational(1000003);
  for (int i = 0; i < 40; ++i) big = big / Rational(1000003);
  EXPECT_EQ(big, Rational(1));
}

TEST(Field, ParseAndDispatch) {
  EXPECT_TRUE(parse_field("0").is_rational());
  EXPECT_TRUE(parse_field("Q").is_rational());
  EXPECT_EQ(parse_field("F3").characteristic, 3);
  EXPECT_EQ(parse_field("2").name(), "F2");
  EXPECT_THROW(parse_field("4"), Error);
  EXPECT_THROW(parse_field("F17"), Error);
  EXPECT_THROW(parse_field("x"), Error);
  for (int p : supported_primes())
    EXPECT_EQ(with_field(FieldSpec{p}, []<class F>() { return F::characteristic; }), p);
}

TEST(Poly, ArithmeticAndDivision) {
  using P = PolyU<Rational>;
  P a = P::u_power(2) - P(Rational(1));  // U^2 - 1
  P b = P::u_power(1) - P(Rational(1));  // U - 1
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, P::u_power(1) + P(Rational(1)));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(b.str(), "-1 + U");
  EXPECT_EQ(a.valuation(), 0);
  EXPECT_EQ(P::monomial(Rational(3), 4).valuation(), 4);
  EXPECT_EQ(P::monomial(Rational(3), 4).shift_down(3), P::monomial(Rational(3), 1));
  EXPECT_EQ(a.evaluate(Rational(1)), Rational(0));
  EXPECT_TRUE(P(Rational(5)).is_unit());
}

template <class F>
class FrobeniusTyped : public ::testing::Test {};
using Scalars = ::testing::Types<Fp<2>, Fp<3>, Rational>;
TYPED_TEST_SUITE(FrobeniusTyped, Scalars);

TYPED_TEST(FrobeniusTyped, AxiomsHold) {
  for (Theory t : {Theory::kh, Theory::tlee, Theory::bn}) {
    std::vector<std::string> failures;
    EXPECT_TRUE(FrobeniusSpec<TypeParam>(t).check_axioms(&failures)) << theory_name(t);
    EXPECT_TRUE(failures.empty());
  }
}

TYPED_TEST(FrobeniusTyped, SpecializationIsAnAlgebraMap) {
  using F = TypeParam;
  FrobeniusSpec<F> bn(Theory::bn), kh(Theory::kh), tl(Theory::tlee);
  for (auto [target, spec] : {std::pair{Specialization::u_to_0, &kh}, std::pair{Specialization::u_to_1, &tl}})
    for (int a = 0; a < 2; ++a) {
      auto ea = FrobeniusSpec<F>::basis(a);
      EXPECT_EQ(specialize(bn.comultiply(ea), target), spec->comultiply(ea));
      for (int b = 0; b < 2; ++b) {
        auto eb = FrobeniusSpec<F>::basis(b);
        EXPECT_EQ(specialize(bn.multiply(ea, eb), target), spec->multiply(ea, eb));
      }
    }
}

TEST(Frobenius, MultiplicationTables) {
  using F = Rational;
  auto one = FrobeniusSpec<F>::basis(0), x = FrobeniusSpec<F>::basis(1);
  auto u = PolyU<F>::u_power(1);
  EXPECT_EQ(FrobeniusSpec<F>(Theory::bn).multiply(x, x), u * x);
  EXPECT_TRUE(FrobeniusSpec<F>(Theory::kh).multiply(x, x).is_zero());
  EXPECT_EQ(FrobeniusSpec<F>(Theory::tlee).multiply(x, x), x);
  for (Theory t : {Theory::kh, Theory::tlee, Theory::bn}) EXPECT_EQ(FrobeniusSpec<F>(t).multiply(one, x), x);
}

TEST(Frobenius, Comultiplication) {
  using F = Rational;
  using P = PolyU<F>;
  // index bits: left factor high, bit set = X
  Tensor2<F> bn1;
  bn1.c = {P::monomial(F(-1), 1), P(F(1)), P(F(1)), P()};
  EXPECT_EQ(FrobeniusSpec<F>(Theory::bn).comultiply(FrobeniusSpec<F>::basis(0)), bn1);
  Tensor2<F> xx;
  xx.c = {P(), P(), P(), P(F(1))};
  EXPECT_EQ(FrobeniusSpec<F>(Theory::bn).comultiply(FrobeniusSpec<F>::basis(1)), xx);
  Tensor2<F> tl1;
  tl1.c = {P(F(-1)), P(F(1)), P(F(1)), P()};
  EXPECT_EQ(FrobeniusSpec<F>(Theory::tlee).comultiply(FrobeniusSpec<F>::basis(0)), tl1);
  EXPECT_EQ(FrobeniusSpec<F>::degree(1), -2);
  EXPECT_EQ(FrobeniusSpec<F>::degree(0), 0);
  EXPECT_EQ(FrobeniusSpec<F>::filtration_level(1), -2);
}

TEST(Frobenius, ConjugateLabels) {
  using F = Fp<3>;
  auto cl = conjugate_labels(FrobeniusSpec<F>(Theory::bn));
  for (auto& [name, ok] : cl.facts) EXPECT_TRUE(ok) << name;
  auto x = FrobeniusSpec<F>::basis(1);
  auto xm1 = AlgebraElement<F>{PolyU<F>(F(-1)), PolyU<F>(F(1))};
  EXPECT_EQ(specialize(cl.x_bullet, Specialization::u_to_1), xm1);
  EXPECT_EQ(specialize(cl.x_bullet, Specialization::u_to_0), x);
  EXPECT_EQ(specialize(cl.x_circ, Specialization::u_to_0), x);
  EXPECT_EQ(specialize(cl.x_circ, Specialization::u_to_1), x);
  EXPECT_THROW(conjugate_labels(FrobeniusSpec<F>(Theory::kh)), Error);
}

TEST(Frobenius, RingMismatchIsRejected) {
  using F = Fp<2>;
  AlgebraElement<F> poly{PolyU<F>::u_power(1), PolyU<F>()};
  try {
    FrobeniusSpec<F>(Theory::kh).multiply(poly, FrobeniusSpec<F>::basis(0));
    FAIL() << "expected ring_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ring_mismatch);
  }
}
