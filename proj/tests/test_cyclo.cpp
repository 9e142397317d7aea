#include <gtest/gtest.h>

#include <random>

#include "dhecke/cyclo.hpp"
#include "dhecke/error.hpp"
#include "oracle.hpp"

using dhecke::CycNum;
using dhecke::Rational;

namespace {

CycNum random_element(std::mt19937& rng, int m) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> c;
  for (int k = 0; k < dhecke::euler_phi(m); ++k) c.emplace_back(num(rng), den(rng));
  return CycNum::from_coeffs(m, c);
}

}  // namespace

TEST(CyclotomicPolynomial, SmallConductors) {
  EXPECT_EQ(dhecke::cyclotomic_polynomial(1), (std::vector<long long>{-1, 1}));
  EXPECT_EQ(dhecke::cyclotomic_polynomial(4), (std::vector<long long>{1, 0, 1}));
}

TEST(CyclotomicPolynomial, TwelveMatchesDivisionOracle) {
  const std::vector<long long> expected{1, 0, -1, 0, 1};
  EXPECT_EQ(oracle::cyclotomic_by_division(12), expected);
  EXPECT_EQ(dhecke::cyclotomic_polynomial(12), expected);
}

TEST(CyclotomicPolynomial, AgreesWithDivisionOracleUpTo60) {
  for (int m = 1; m <= 60; ++m) {
    const auto phi = dhecke::cyclotomic_polynomial(m);
    EXPECT_EQ(phi, oracle::cyclotomic_by_division(m)) << "m=" << m;
    EXPECT_EQ(static_cast<int>(phi.size()) - 1, dhecke::euler_phi(m));
    EXPECT_EQ(phi.back(), 1);
  }
}

TEST(CyclotomicPolynomial, RejectsZero) {
  EXPECT_THROW(dhecke::cyclotomic_polynomial(0), dhecke::InputError);
}

TEST(CycArith, ZetaFourSquared) {
  EXPECT_EQ(CycNum::zeta(4) * CycNum::zeta(4), CycNum(-1));
}

TEST(CycArith, OnePlusZetaThreeProduct) {
  const CycNum z = CycNum::zeta(3);
  EXPECT_EQ((CycNum(1) + z) * (CycNum(1) + z * z), CycNum(1));
}

TEST(CycArith, InverseOfOnePlusI) {
  const CycNum i = CycNum::zeta(4);
  const CycNum inv = CycNum(1) / (CycNum(1) + i);
  EXPECT_EQ(inv, (CycNum(1) - i) * CycNum(Rational(1, 2)));
  EXPECT_EQ(inv * (CycNum(1) + i), CycNum(1));
}

TEST(CycArith, DivisionByZeroThrows) {
  EXPECT_THROW(CycNum(1) / CycNum(0), std::domain_error);
}

TEST(CycArith, ZetaPowerIsOne) {
  for (int m : {1, 2, 3, 4, 5, 6, 8, 12, 15}) {
    EXPECT_TRUE(CycNum::zeta(m, m).is_one()) << m;
    CycNum acc(1);
    for (int k = 0; k < m; ++k) acc *= CycNum::zeta(m);
    EXPECT_TRUE(acc.is_one()) << m;
  }
}

TEST(CycArith, PhiVanishesAtZeta) {
  for (int m : {3, 5, 7, 8, 9, 12, 20}) {
    const auto phi = dhecke::cyclotomic_polynomial(m);
    CycNum value;
    for (std::size_t k = 0; k < phi.size(); ++k) value += CycNum(phi[k]) * CycNum::zeta(m, static_cast<long long>(k));
    EXPECT_TRUE(value.is_zero()) << m;
  }
}

TEST(CycArith, CanonicalFormMakesEqualValuesEqual) {
  // zeta_6 = -zeta_3^2 written two ways.
  const CycNum a = CycNum::zeta(6);
  const CycNum b = -CycNum::zeta(3, 2);
  EXPECT_EQ(a, b.coerce(6));
  EXPECT_EQ(a.coerce(6).to_coeff_strings(), b.coerce(6).to_coeff_strings());
}

TEST(CycProperties, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(1234);
  for (int m : {1, 3, 4, 5, 8, 12}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CycNum a = random_element(rng, m);
      const CycNum b = random_element(rng, m);
      const CycNum c = random_element(rng, m);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      }
      EXPECT_TRUE((a - a).is_zero());
    }
  }
}

TEST(CycProperties, CoercionIsInjectiveRingMap) {
  std::mt19937 rng(99);
  const std::vector<std::pair<int, int>> towers{{3, 12}, {4, 12}, {4, 8}, {5, 15}, {1, 7}};
  for (auto [m, big] : towers) {
    for (int trial = 0; trial < 15; ++trial) {
      const CycNum a = random_element(rng, m);
      const CycNum b = random_element(rng, m);
      EXPECT_EQ((a + b).coerce(big), a.coerce(big) + b.coerce(big));
      EXPECT_EQ((a * b).coerce(big), a.coerce(big) * b.coerce(big));
      if (!(a == b)) {
        EXPECT_NE(a.coerce(big), b.coerce(big));
      }
    }
  }
}

TEST(CycProperties, MixedConductorsUseLcm) {
  const CycNum x = CycNum::zeta(3) + CycNum::zeta(4);
  EXPECT_EQ(x.conductor(), 12);
  EXPECT_EQ(x - CycNum::zeta(4), CycNum::zeta(3).coerce(12));
}

TEST(CycProperties, ConductorCapIsEnforced) {
  const int old = dhecke::conductor_cap();
  dhecke::set_conductor_cap(10);
  EXPECT_THROW(CycNum::zeta(3) + CycNum::zeta(4), dhecke::InputError);
  dhecke::set_conductor_cap(old);
}

TEST(ParseScalar, Grammar) {
  EXPECT_EQ(dhecke::parse_scalar("3/6"), CycNum(Rational(1, 2)));
  EXPECT_EQ(dhecke::parse_scalar("z4^2"), CycNum(-1));
  EXPECT_EQ(dhecke::parse_scalar("1 - 2*z3"), CycNum(1) - CycNum(2) * CycNum::zeta(3));
  EXPECT_EQ(dhecke::parse_scalar("-(1+z4)*(1-z4)"), CycNum(-2));
  EXPECT_EQ(dhecke::parse_scalar("2", 4).conductor(), 4);
  EXPECT_THROW(dhecke::parse_scalar("1/0"), dhecke::InputError);
  EXPECT_THROW(dhecke::parse_scalar("z"), dhecke::InputError);
  EXPECT_THROW(dhecke::parse_scalar("1 +"), dhecke::InputError);
}

TEST(ParseScalar, CoefficientStringsRoundTrip) {
  std::mt19937 rng(7);
  for (int m : {1, 4, 5, 12}) {
    const CycNum a = random_element(rng, m);
    const auto strings = a.to_coeff_strings();
    EXPECT_EQ(static_cast<int>(strings.size()), dhecke::euler_phi(m));
    EXPECT_EQ(dhecke::cyc_from_strings(m, strings), a);
    EXPECT_EQ(dhecke::parse_scalar(a.to_string(), m), a);
  }
}
