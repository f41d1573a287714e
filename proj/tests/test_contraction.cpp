#include <cmath>

#include <gtest/gtest.h>

#include "family.hpp"
#include "szego/blaschke.hpp"
#include "szego/contraction.hpp"
#include "szego/errors.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

const Complex kNegI(0, -1);

}  // namespace

TEST(Cayley, FreeSigmaOnSoliton) {
  const CayleyTransform ct(HardyRational(), 1.0);
  const HardyRational s = ct.apply(soliton(), Cayley::Sigma);
  const HardyRational expected = soliton() + mono(kNegI, 2, Complex(0, -2));
  EXPECT_LT(norm(s - expected), 1e-15);
}

TEST(Cayley, SigmaStarAnnihilatesQ) {
  for (const auto& [name, u] : standard_family())
    for (double t : {0.0, 1.0, 7.0}) {
      const CayleyTransform ct(u, t);
      EXPECT_LT(norm(ct.apply(ct.defect_vector(), Cayley::SigmaStar)), 1e-12) << name << " t=" << t;
    }
}

TEST(Cayley, IsometryOnRandomPairs) {
  RandomRational r(91);
  for (const auto& [name, u] : standard_family()) {
    const CayleyTransform ct(u, 2.0);
    for (int trial = 0; trial < 4; ++trial) {
      const HardyRational f = r.hardy(2, 2), g = r.hardy(3);
      const Complex d = inner_product(ct.apply(f, Cayley::Sigma), ct.apply(g, Cayley::Sigma)) - inner_product(f, g);
      EXPECT_LT(std::abs(d), 1e-12) << name;
    }
  }
}

TEST(DefectVector, FreeAndSolitonHaveUnitNorm) {
  EXPECT_NEAR(norm(defect_vector_q(HardyRational(), 3.0)), 1.0, 1e-15);
  const HardyRational q0 = defect_vector_q(HardyRational(), 0.0);
  EXPECT_LT(norm(q0 - std::sqrt(4 * kPi) * reproducing_kernel(UhpPoint(kI))), 1e-15);
  EXPECT_NEAR(norm(defect_vector_q(soliton(), 1.0)), 1.0, 1e-14);
}

TEST(DefectVector, CoisometryDefectIsRankOne) {
  RandomRational r(92);
  for (const auto& [name, u] : standard_family()) {
    const CayleyTransform ct(u, 1.5);
    const HardyRational q = ct.defect_vector();
    for (int trial = 0; trial < 3; ++trial) {
      const HardyRational f = r.hardy(2);
      const HardyRational back = ct.apply(ct.apply(f, Cayley::SigmaStar), Cayley::Sigma);
      EXPECT_LT(norm(back - f + inner_product(f, q) * q), 1e-12) << name;
    }
  }
}

TEST(Representation, AgreesWithResolventRoute) {
  RandomRational r(93);
  for (const auto& [name, u] : standard_family()) {
    const CayleyTransform ct(u, 0.8);
    for (int trial = 0; trial < 3; ++trial) {
      const HardyRational f = r.hardy(2, 2);
      EXPECT_LT(norm(ct.apply(f, Cayley::Sigma) - ct.apply_representation(f)), 1e-12) << name;
    }
  }
}

TEST(Plancherel, SolitonAtTimeZeroExhaustsNorm) {
  const PlancherelResult p = plancherel_partials(soliton(), 0.0, 40);
  ASSERT_EQ(p.partials.size(), 41u);
  EXPECT_NEAR(p.partials.back(), kPi, 1e-10);
  EXPECT_NEAR(p.p_norm2, kPi, 1e-13);
  EXPECT_LT(p.gram_defect, 1e-10);
}

TEST(Plancherel, ZeroDatum) {
  const PlancherelResult p = plancherel_partials(HardyRational(), 1.0, 10);
  for (double v : p.partials) EXPECT_EQ(v, 0.0);
  EXPECT_LT(p.gram_defect, 1e-12);
}

TEST(Plancherel, OrthonormalIteratesAndMonotone) {
  for (const auto& [name, u] : standard_family()) {
    const PlancherelResult p = plancherel_partials(u, 1.0, 40);
    EXPECT_LT(p.gram_defect, 1e-8) << name;
    for (std::size_t n = 1; n < p.partials.size(); ++n) EXPECT_GE(p.partials[n], p.partials[n - 1]) << name;
    EXPECT_LE(p.partials.back(), norm_squared(u) * (1 + 1e-10)) << name;
  }
}

TEST(Plancherel, IterationCap) {
  EXPECT_THROW(plancherel_partials(soliton(), 1.0, 65), DegenerateCollision);
  EXPECT_THROW(plancherel_partials(soliton(), 1.0, 11, 10), DegenerateCollision);
}

TEST(Commutation, ClassicalAtTimeZeroAndSoliton) {
  const HardyRational u = standard_family()[3].u;
  const HardyRational f = mono({0.5, -2}, 1, 1.0);
  EXPECT_LT(commutation_defect(u, 0.0, f), 1e-12);
  EXPECT_EQ(commutation_defect(u, 1.0, HardyRational()), 0.0);
  EXPECT_LT(commutation_defect(soliton(), 1.0, soliton()), 1e-10);
}

TEST(Audit, StandardFamilyDefects) {
  for (const auto& [name, u] : standard_family()) {
    const ContractionAudit a = run_audit(u, 1.0, 40);
    EXPECT_LT(std::abs(a.q_norm - 1.0), 1e-9) << name;
    EXPECT_LT(a.isometry_defect, 1e-9) << name;
    EXPECT_LT(a.coisometry_defect, 1e-9) << name;
    EXPECT_LT(a.representation_defect, 1e-9) << name;
    EXPECT_LT(a.sigma_star_q, 1e-9) << name;
    EXPECT_TRUE(a.plancherel_monotone) << name;
    EXPECT_GE(a.plancherel_ratio, 0.99) << name;
  }
}

TEST(Audit, JsonHasEveryField) {
  const std::string j = run_audit(soliton(), 0.5, 5).to_json();
  for (const char* key : {"\"t\"", "\"q_norm\"", "\"isometry_defect\"", "\"coisometry_defect\"", "\"gram_defect\"",
                          "\"plancherel_partials\"", "\"plancherel_ratio\"", "\"commutation_defect\""})
    EXPECT_NE(j.find(key), std::string::npos) << key;
}

TEST(Blaschke, MatchesPoleSumArithmetic) {
  const HardyRational u = standard_family()[2].u;
  const BlaschkeSpace space = BlaschkeSpace::for_function(u);
  BlaschkeSeries v = space.embed(u);
  PoleSum ref = u.sum();
  for (int n = 0; n < 2; ++n) {
    v = BlaschkeSpace::shift(v);
    ref = ref - divide_by_linear(ref, kNegI) * Complex(0, 2);
  }
  const BlaschkeSeries w = BlaschkeSpace::resolvent_plus_i(v);
  const PoleSum wref = divide_by_linear(ref, kNegI);
  EXPECT_NEAR(space.norm_squared(v), norm_squared(ref), 1e-12);
  EXPECT_NEAR(std::abs(space.inner(w, v) - inner_product(wref, ref)), 0.0, 1e-12);
  for (Complex z : {Complex(0.3, 0.0), Complex(-1, 0.5)}) {
    EXPECT_NEAR(std::abs(space.evaluate(v, z) - ref(z)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(space.to_pole_sum(w)(z) - wref(z)), 0.0, 1e-12);
  }
  EXPECT_THROW(space.embed(mono({3, -3}, 1, 1.0)), std::invalid_argument);
}

TEST(Blaschke, ShiftIsIsometricAtDepth) {
  // Partial fractions in (x + i)^{-k} lose digits here; the shift form does not.
  const HardyRational u = standard_family()[2].u;
  const BlaschkeSpace space = BlaschkeSpace::for_function(u);
  BlaschkeSeries v = space.embed(u);
  for (int n = 0; n < 60; ++n) v = BlaschkeSpace::shift(v);
  EXPECT_NEAR(space.norm_squared(v), norm_squared(u), 1e-13 * norm_squared(u));
  const Complex z(0.4, 0.7);
  const Complex b = (z - kI) / (z + kI);
  EXPECT_NEAR(std::abs(space.evaluate(v, z) - std::pow(b, 60) * u(z)), 0.0, 1e-13);
}
