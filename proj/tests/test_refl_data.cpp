#include <gtest/gtest.h>

#include "dhecke/refl_data.hpp"
#include "oracle.hpp"

using dhecke::CycNum;
using dhecke::Mat;
using testing_support::load;

TEST(Bireflections, Examples) {
  EXPECT_EQ(dhecke::bireflections(load("pm_id_dim2").grp), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(dhecke::bireflections(load("trivial_dim2").grp).empty());
  const auto s3 = load("s3_reflection");
  const auto b = dhecke::bireflections(s3.grp);
  ASSERT_EQ(b.size(), 2u);
  for (std::size_t s : b) {
    EXPECT_TRUE(dhecke::det(s3.grp.matrix(s)).is_one());
    EXPECT_EQ(s3.grp.mul(s3.grp.mul(s, s), s), 0u);  // order 3
  }
}

TEST(Sprime, Examples) {
  const auto pm = load("pm_id_dim2");
  EXPECT_EQ(pm.refl.sprime, (std::vector<std::size_t>{1}));
  const auto z4 = load("z4_rotation");
  EXPECT_EQ(z4.refl.sprime, (std::vector<std::size_t>{1, 2, 3}));
  const auto s3 = load("s3_reflection");
  EXPECT_EQ(s3.refl.sprime, s3.refl.bireflections);
  // -id in D4 is centralized by reflections of determinant -1 on the plane.
  const auto d4 = load("dihedral_d4");
  EXPECT_EQ(d4.refl.bireflections.size(), 3u);
  EXPECT_EQ(d4.refl.sprime.size(), 2u);
}

TEST(OmegaForms, MinusIdentityIsStandardSymplectic) {
  const auto pm = load("pm_id_dim2");
  const Mat& w = pm.refl.omega.at(1).matrix;
  EXPECT_EQ(w(0, 1), CycNum(1));
  EXPECT_EQ(w(1, 0), CycNum(-1));
  EXPECT_TRUE(w(0, 0).is_zero());
  EXPECT_TRUE(w(1, 1).is_zero());
}

TEST(OmegaForms, ThreeCycleConjugation) {
  const auto s3 = load("s3_reflection");
  const auto& g = s3.grp;
  const std::size_t s = s3.refl.sprime[0];
  const dhecke::SkewForm& ws = s3.refl.omega.at(s);
  EXPECT_FALSE(dhecke::det(ws.matrix).is_zero());
  for (std::size_t h = 0; h < g.order(); ++h) {
    if (dhecke::det(g.matrix(h)).is_one()) continue;  // transpositions only
    const std::size_t t = g.conj(s, h);
    EXPECT_NE(t, s);
    const dhecke::SkewForm& wt = s3.refl.omega.at(t);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const auto vi = g.matrix(h).column(i);
        const auto vj = g.matrix(h).column(j);
        EXPECT_EQ(wt.on_basis(i, j), ws(vi, vj));
      }
    }
  }
  EXPECT_EQ(ws.pullback(g.matrix(0)), ws);
}

TEST(InvariantForms, Examples) {
  const auto triv = load("trivial_dim2");
  ASSERT_EQ(triv.refl.N(), 1u);
  EXPECT_EQ(triv.refl.invariant_forms[0].on_basis(0, 1), CycNum(1));
  EXPECT_EQ(load("pm_id_dim2").refl.N(), 1u);
  EXPECT_EQ(load("s3_reflection").refl.N(), 0u);
  EXPECT_EQ(load("trivial_dim3").refl.N(), 3u);
  EXPECT_EQ(load("b2_wreath_h_plus_h").refl.N(), 1u);
}

TEST(ReflectionProperties, CorpusInvariants) {
  for (const auto& name : testing_support::corpus_files()) {
    SCOPED_TRACE(name);
    const auto l = load(name);
    const auto& g = l.grp;
    const auto& r = l.refl;
    for (const auto& b : r.invariant_forms) {
      EXPECT_TRUE(b.is_skew());
      for (const Mat& m : g.elements) EXPECT_EQ(b.pullback(m), b);
    }
    if (!r.invariant_forms.empty()) {
      std::vector<dhecke::Vec> flat;
      for (const auto& b : r.invariant_forms) {
        const auto e = b.matrix.entries();
        flat.emplace_back(e.begin(), e.end());
      }
      EXPECT_EQ(dhecke::span_basis(flat, g.dim * g.dim).size(), r.N());
    }
    std::vector<bool> in_b(g.order()), in_sp(g.order());
    for (auto s : r.bireflections) in_b[s] = true;
    for (auto s : r.sprime) {
      in_sp[s] = true;
      EXPECT_TRUE(in_b[s]);
    }
    for (auto s : r.bireflections) {
      for (std::size_t h = 0; h < g.order(); ++h) {
        EXPECT_TRUE(in_b[g.conj(s, h)]);
        if (in_sp[s]) {
          EXPECT_TRUE(in_sp[g.conj(s, h)]);
        }
      }
    }
    for (auto s : r.sprime) {
      const auto& w = r.omega.at(s);
      const auto fm = dhecke::fixed_and_moved(g, s);
      for (const auto& v : fm.fixed) EXPECT_TRUE(dhecke::is_zero_vec(w.matrix * v));
      EXPECT_FALSE(w(fm.moved[0], fm.moved[1]).is_zero());
      for (std::size_t h = 0; h < g.order(); ++h) {
        EXPECT_EQ(r.omega.at(g.conj(s, h)), w.pullback(g.matrix(h)));
      }
    }
    for (auto s : r.s_subgroup) {
      EXPECT_TRUE(dhecke::det(g.matrix(s)).is_one());
      EXPECT_NE(dhecke::codim_fixed(g, s), 1u);
    }
  }
}
