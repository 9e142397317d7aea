#include <gtest/gtest.h>

#include <random>

#include "dhecke/center_probe.hpp"
#include "dhecke/error.hpp"
#include "oracle.hpp"

using dhecke::AlgebraElement;
using dhecke::CycNum;
using dhecke::Exec;
using dhecke::KappaMap;
using dhecke::Letter;
using dhecke::Monomial;
using dhecke::ParamPoint;
using dhecke::PbwEngine;
using dhecke::Poly;
using testing_support::load;

namespace {

const Monomial v1 = Monomial::var(0);
const Monomial v2 = Monomial::var(1);

ParamPoint pm_params(const CycNum& t, const CycNum& c) {
  ParamPoint p;
  p.t = {t};
  p.c[1] = c;
  return p;
}

ParamPoint t_only(const CycNum& t) {
  ParamPoint p;
  p.t = {t};
  return p;
}

// (1/|G|) sum_g trace of g on S^d(V).
std::size_t invariant_dimension_by_trace(const dhecke::Group& grp, unsigned d) {
  const auto basis = dhecke::monomials_of_degree(grp.dim, d);
  CycNum total;
  for (const auto& g : grp.elements) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      total += dhecke::coordinates(dhecke::act(g, Poly::monomial(basis[i])), grp.dim, d)[i];
    }
  }
  total *= CycNum(dhecke::Rational(1, static_cast<long>(grp.order())));
  const auto s = total.to_string();
  return static_cast<std::size_t>(std::stoul(s));
}

}  // namespace

TEST(Symmetrizer, Examples) {
  EXPECT_EQ(dhecke::symmetrizer(load("trivial_dim2").grp), AlgebraElement::one());
  AlgebraElement half;
  half.add(Monomial(), 0, CycNum(dhecke::Rational(1, 2)));
  half.add(Monomial(), 1, CycNum(dhecke::Rational(1, 2)));
  EXPECT_EQ(dhecke::symmetrizer(load("pm_id_dim2").grp), half);
}

TEST(Symmetrizer, IdempotentAndAbsorbsGroup) {
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const PbwEngine engine(l.grp, KappaMap(l.grp.dim, l.grp.order()));
    const AlgebraElement e = dhecke::symmetrizer(l.grp);
    EXPECT_EQ(engine.multiply(e, e), e);
    for (std::size_t g = 0; g < l.grp.order(); ++g) {
      EXPECT_EQ(engine.left_mul_group(g, e), e);
      EXPECT_EQ(engine.right_mul_group(e, g), e);
    }
  }
}

TEST(InvariantBasis, Examples) {
  const auto pm = load("pm_id_dim2");
  const auto quad = dhecke::invariant_basis(pm.grp, 2);
  EXPECT_EQ(quad.size(), 3u);
  EXPECT_TRUE(dhecke::invariant_basis(pm.grp, 1).empty());
  EXPECT_EQ(dhecke::invariant_basis(load("s3_reflection").grp, 2).size(), 1u);
  EXPECT_EQ(dhecke::invariant_basis(load("trivial_dim2").grp, 0).size(), 1u);
}

TEST(InvariantBasis, MatchesTraceFormulaAndIsInvariant) {
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    for (unsigned d = 0; d <= 4; ++d) {
      const auto basis = dhecke::invariant_basis(l.grp, d);
      EXPECT_EQ(basis.size(), invariant_dimension_by_trace(l.grp, d)) << "d=" << d;
      for (const Poly& p : basis) {
        EXPECT_TRUE(p.is_homogeneous());
        EXPECT_EQ(p.degree(), static_cast<int>(d));
        for (const auto& g : l.grp.elements) EXPECT_EQ(dhecke::act(g, p), p);
      }
    }
  }
}

TEST(Lift, RoundTripThroughPoly) {
  Poly p = Poly::monomial(v1 * v2, CycNum(3));
  p.add(v2 * v2, CycNum::zeta(4));
  const AlgebraElement lifted = dhecke::pbw_lift(p);
  EXPECT_TRUE(lifted.group_free());
  EXPECT_EQ(dhecke::as_poly(lifted), p);
  EXPECT_THROW(dhecke::as_poly(AlgebraElement::group_element(1)), dhecke::InternalError);
}

TEST(ConjugationAverage, CommutesWithGroup) {
  const auto l = load("s3_reflection");
  std::mt19937 rng(4);
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, testing_support::random_params(rng, l.refl)));
  const AlgebraElement x = testing_support::random_element(rng, l.grp, 3, 4);
  const AlgebraElement avg = dhecke::conjugation_average(engine, x);
  for (std::size_t g = 0; g < l.grp.order(); ++g) {
    EXPECT_EQ(engine.left_mul_group(g, avg), engine.right_mul_group(avg, g));
  }
}

TEST(SphericalCommutator, SquaresOnPlusMinusIdentity) {
  const auto l = load("pm_id_dim2");
  const CycNum t(1);
  const KappaMap k = dhecke::kappa_from_params(l.grp, l.refl, pm_params(t, CycNum(0)));
  const PbwEngine engine(l.grp, k);
  const Poly p = Poly::monomial(v1 * v1);
  const Poly q = Poly::monomial(v2 * v2);
  // Brute-force reduction of v1 v1 v2 v2 - v2 v2 v1 v1.
  const std::vector<Letter> pq{Letter::v(0), Letter::v(0), Letter::v(1), Letter::v(1)};
  const std::vector<Letter> qp{Letter::v(1), Letter::v(1), Letter::v(0), Letter::v(0)};
  const AlgebraElement brute = oracle::brute_normal_form(l.grp, k, pq) - oracle::brute_normal_form(l.grp, k, qp);
  AlgebraElement expected = AlgebraElement::term(v1 * v2, 0, CycNum(4) * t);
  expected.add(Monomial(), 0, CycNum(-2) * t * t);
  EXPECT_EQ(brute, expected);
  const AlgebraElement comm = dhecke::spherical_commutator(engine, p, q);
  EXPECT_EQ(comm, expected);
  const AlgebraElement e = dhecke::symmetrizer(l.grp);
  const AlgebraElement direct = dhecke::spherical_commutator_direct(engine, p, q);
  EXPECT_FALSE(direct.is_zero());
  EXPECT_EQ(direct, engine.multiply(comm, e));
}

TEST(SphericalCommutator, FastPathMatchesDirectOnCorpus) {
  std::mt19937 rng(19);
  for (const char* name : {"pm_id_dim2", "z4_rotation", "dihedral_d4", "s3_reflection"}) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, testing_support::random_params(rng, l.refl)));
    const AlgebraElement e = dhecke::symmetrizer(l.grp);
    const auto pairs = dhecke::invariant_pairs(l.grp, 3);
    for (std::size_t i = 0; i < pairs.size() && i < 6; ++i) {
      const auto& pr = pairs[i];
      EXPECT_EQ(dhecke::spherical_commutator_direct(engine, pr.p, pr.q),
                engine.multiply(dhecke::spherical_commutator(engine, pr.p, pr.q), e));
    }
  }
}

TEST(InvariantPairs, OrderedByTotalDegree) {
  const auto l = load("pm_id_dim2");
  const auto pairs = dhecke::invariant_pairs(l.grp, 4);
  // 3 quadratics and 5 quartics: 3 + 3*5 + 10 pairs.
  EXPECT_EQ(pairs.size(), 28u);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    EXPECT_LE(pairs[i - 1].deg_p + pairs[i - 1].deg_q, pairs[i].deg_p + pairs[i].deg_q);
  }
  for (const auto& pr : pairs) {
    EXPECT_GT(pr.deg_p, 0u);
    EXPECT_GT(pr.deg_q, 0u);
    EXPECT_NE(pr.p, pr.q);
  }
}

TEST(Probe, WitnessAtDegreeTwoWhenTNonzero) {
  const auto l = load("pm_id_dim2");
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, pm_params(CycNum(1), CycNum(0))));
  const auto v = dhecke::spherical_commutator_probe(engine, 4);
  EXPECT_FALSE(v.commutative);
  EXPECT_EQ(v.label(), "noncommutative");
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->witness_degree(), 2u);
  EXPECT_TRUE(v.witness_reverified);
  EXPECT_FALSE(v.commutator.is_zero());
}

TEST(Probe, CommutativeWhenTZero) {
  const auto l = load("pm_id_dim2");
  for (const CycNum& c : {CycNum(0), CycNum(1), CycNum(-3), CycNum::zeta(4)}) {
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, pm_params(CycNum(0), c)));
    const auto v = dhecke::spherical_commutator_probe(engine, 4);
    EXPECT_TRUE(v.commutative);
    EXPECT_EQ(v.label(), "commutative_up_to_D");
    EXPECT_EQ(v.pairs_checked, dhecke::invariant_pairs(l.grp, 4).size());
    EXPECT_FALSE(v.witness.has_value());
  }
}

TEST(Probe, ZeroKappaIsCommutative) {
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const PbwEngine engine(l.grp, KappaMap(l.grp.dim, l.grp.order()));
    EXPECT_TRUE(dhecke::spherical_commutator_probe(engine, 3).commutative);
  }
}

TEST(Probe, ParallelMatchesSerial) {
  const auto l = load("z4_rotation");
  std::mt19937 rng(6);
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, testing_support::random_params(rng, l.refl)));
  const auto a = dhecke::spherical_commutator_probe(engine, 4, Exec::serial);
  const auto b = dhecke::spherical_commutator_probe(engine, 4, Exec::parallel);
  EXPECT_EQ(a.commutative, b.commutative);
  EXPECT_EQ(a.pairs_checked, b.pairs_checked);
  EXPECT_EQ(a.commutator, b.commutator);
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
  if (a.witness) {
    EXPECT_EQ(a.witness->p, b.witness->p);
    EXPECT_EQ(a.witness->q, b.witness->q);
  }
}

TEST(PoissonBracket, WeylSquares) {
  const auto l = load("trivial_dim2");
  const CycNum t(7);
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, t_only(t)));
  const auto r = dhecke::poisson_bracket(engine, Poly::monomial(v1 * v1), Poly::monomial(v2 * v2));
  EXPECT_EQ(r.bracket, Poly::monomial(v1 * v2, CycNum(4) * t));
  EXPECT_TRUE(r.degree_ok);
  const dhecke::SkewForm omega = dhecke::t_form(l.refl, 2, t_only(t));
  EXPECT_EQ(dhecke::leibniz_bracket(omega, Poly::monomial(v1 * v1), Poly::monomial(v2 * v2)), r.bracket);
}

TEST(PoissonBracket, SelfBracketVanishesAndAntisymmetry) {
  std::mt19937 rng(15);
  for (const char* name : {"pm_id_dim2", "z4_rotation", "trivial_dim3"}) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, testing_support::random_params(rng, l.refl)));
    for (const auto& pr : dhecke::invariant_pairs(l.grp, 3)) {
      EXPECT_TRUE(dhecke::poisson_bracket(engine, pr.p, pr.p).bracket.is_zero());
      EXPECT_EQ(dhecke::poisson_bracket(engine, pr.p, pr.q).bracket,
                CycNum(-1) * dhecke::poisson_bracket(engine, pr.q, pr.p).bracket);
    }
  }
}

TEST(PoissonBracket, LeibnizRuleAndJacobiOnInvariants) {
  const auto l = load("pm_id_dim2");
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, pm_params(CycNum(2), CycNum(5))));
  const auto quad = dhecke::invariant_basis(l.grp, 2);
  ASSERT_EQ(quad.size(), 3u);
  auto br = [&](const Poly& a, const Poly& b) { return dhecke::poisson_bracket(engine, a, b).bracket; };
  const Poly& a = quad[0];
  const Poly& b = quad[1];
  const Poly& c = quad[2];
  EXPECT_EQ(br(a, b * c), br(a, b) * c + b * br(a, c));
  EXPECT_TRUE((br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero());
}

TEST(PoissonBracket, ZeroWhenTZero) {
  std::mt19937 rng(16);
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    ParamPoint p = testing_support::random_params(rng, l.refl);
    for (auto& x : p.t) x = CycNum(0);
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, p));
    for (const auto& pr : dhecke::invariant_pairs(l.grp, 3)) {
      EXPECT_TRUE(dhecke::poisson_bracket(engine, pr.p, pr.q).bracket.is_zero());
    }
  }
}

TEST(PoissonCrosscheck, PassesAndIgnoresC) {
  const auto l = load("pm_id_dim2");
  for (const CycNum& c : {CycNum(0), CycNum(1), CycNum::zeta(4)}) {
    const ParamPoint p = pm_params(CycNum(1), c);
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, p));
    const auto r = dhecke::poisson_crosscheck(engine, l.refl, p, 4);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_EQ(r.pairs_checked, dhecke::invariant_pairs(l.grp, 4).size());
  }
}

TEST(PoissonCrosscheck, DetectsWrongForm) {
  const auto l = load("pm_id_dim2");
  const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, pm_params(CycNum(1), CycNum(0))));
  const auto r = dhecke::poisson_crosscheck(engine, l.refl, pm_params(CycNum(2), CycNum(0)), 4);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.mismatch.has_value());
}

TEST(PoissonCrosscheck, RandomParametersAcrossCorpus) {
  std::mt19937 rng(17);
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const ParamPoint p = testing_support::random_params(rng, l.refl);
    const PbwEngine engine(l.grp, dhecke::kappa_from_params(l.grp, l.refl, p));
    const auto serial = dhecke::poisson_crosscheck(engine, l.refl, p, 3, Exec::serial);
    const auto parallel = dhecke::poisson_crosscheck(engine, l.refl, p, 3, Exec::parallel);
    EXPECT_TRUE(serial.pass) << serial.detail;
    EXPECT_EQ(serial.pass, parallel.pass);
    EXPECT_EQ(serial.pairs_checked, parallel.pairs_checked);
  }
}

TEST(TForm, RejectsWrongLength) {
  const auto l = load("pm_id_dim2");
  EXPECT_THROW(dhecke::t_form(l.refl, 2, ParamPoint{}), dhecke::InputError);
}

TEST(TraceIdentity, Examples) {
  const auto l = load("pm_id_dim2");
  for (const auto& p : {pm_params(CycNum(0), CycNum(0)), pm_params(CycNum(1), CycNum(5))}) {
    const KappaMap k = dhecke::kappa_from_params(l.grp, l.refl, p);
    EXPECT_TRUE(dhecke::trace_identity_check(l.grp, k, l.refl, p).pass);
  }
  const ParamPoint p = pm_params(CycNum(1), CycNum(5));
  const KappaMap k = dhecke::kappa_from_params(l.grp, l.refl, p);
  EXPECT_EQ(CycNum(2) * k.coeff(0, 1, 0), CycNum(2));
  const auto wrong = dhecke::trace_identity_check(l.grp, k, l.refl, pm_params(CycNum(3), CycNum(5)));
  EXPECT_FALSE(wrong.pass);
  EXPECT_EQ(wrong.failures, (std::vector<std::string>{"0,1"}));
}

TEST(TraceIdentity, RandomParametersAcrossCorpus) {
  std::mt19937 rng(18);
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    for (int trial = 0; trial < 5; ++trial) {
      const ParamPoint p = testing_support::random_params(rng, l.refl);
      const KappaMap k = dhecke::kappa_from_params(l.grp, l.refl, p);
      EXPECT_TRUE(dhecke::trace_identity_check(l.grp, k, l.refl, p).pass);
    }
  }
}

TEST(DichotomyScan, PlusMinusIdentityGrid) {
  const auto l = load("pm_id_dim2");
  std::vector<ParamPoint> grid;
  for (int t : {0, 1}) {
    for (int c : {0, 1}) grid.push_back(pm_params(CycNum(t), CycNum(c)));
  }
  const auto rows = dhecke::dichotomy_scan(l.grp, l.refl, grid, 4);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1].key, rows[i].key);
  for (const auto& row : rows) {
    EXPECT_EQ(row.t_zero, row.params.t_is_zero());
    EXPECT_EQ(row.verdict.commutative, row.t_zero) << row.key;
    if (!row.t_zero) {
      ASSERT_TRUE(row.verdict.witness.has_value());
      EXPECT_EQ(row.verdict.witness->witness_degree(), 2u);
    }
    EXPECT_TRUE(row.consistent);
    EXPECT_FALSE(row.degree_insufficient);
  }
}

TEST(DichotomyScan, S3HasNoWitnesses) {
  const auto l = load("s3_reflection");
  std::vector<ParamPoint> grid;
  for (const CycNum& c : {CycNum(0), CycNum(1), CycNum(-2), CycNum::zeta(4)}) {
    ParamPoint p;
    p.c[l.refl.sprime_classes[0].rep] = c;
    grid.push_back(p);
  }
  for (const auto& row : dhecke::dichotomy_scan(l.grp, l.refl, grid, 4)) {
    EXPECT_TRUE(row.t_zero);
    EXPECT_TRUE(row.verdict.commutative) << row.key;
    EXPECT_TRUE(row.consistent);
  }
}

TEST(DichotomyScan, OriginOnly) {
  const auto l = load("pm_id_dim2");
  const std::vector<ParamPoint> grid{pm_params(CycNum(0), CycNum(0))};
  const auto rows = dhecke::dichotomy_scan(l.grp, l.refl, grid, 4);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].verdict.commutative);
}

TEST(DichotomyScan, ParallelMatchesSerial) {
  const auto l = load("z4_rotation");
  std::mt19937 rng(20);
  std::vector<ParamPoint> grid;
  for (int i = 0; i < 6; ++i) grid.push_back(testing_support::random_params(rng, l.refl));
  grid.push_back(ParamPoint{{CycNum(0)}, grid.back().c});
  const auto a = dhecke::dichotomy_scan(l.grp, l.refl, grid, 3, Exec::serial);
  const auto b = dhecke::dichotomy_scan(l.grp, l.refl, grid, 3, Exec::parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].key, b[i].key);
    EXPECT_EQ(a[i].verdict.commutative, b[i].verdict.commutative);
    EXPECT_EQ(a[i].verdict.commutator, b[i].verdict.commutator);
    EXPECT_EQ(a[i].consistent, b[i].consistent);
  }
}
