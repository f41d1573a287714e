#include <cmath>

#include <gtest/gtest.h>

#include "family.hpp"
#include "szego/errors.hpp"
#include "szego/rational.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

const Complex kNegI(0, -1);
const std::vector<Complex> kProbes{{0.3, 0}, {-1.7, 0}, {2.2, 0.4}, {0.1, 1.5}, {-0.6, -0.2}};

double probe_distance(const PoleSum& a, const PoleSum& b) {
  double d = 0.0;
  for (Complex z : kProbes) d = std::max(d, std::abs(a(z) - b(z)));
  return d;
}

}  // namespace

TEST(PoleSumEval, ReproducingKernelAtItsPoint) {
  const HardyRational v = reproducing_kernel(UhpPoint(kI));
  EXPECT_NEAR(std::abs(v(kI) - 1.0 / (4 * kPi)), 0.0, 1e-16);
}

TEST(PoleSumEval, ZeroAndSimpleValues) {
  EXPECT_EQ(PoleSum()(Complex(1.3, 2)), Complex(0.0));
  EXPECT_NEAR(std::abs(soliton()(0.0) - kNegI), 0.0, 1e-16);
}

TEST(PoleSumEval, PoleHitThrows) {
  EXPECT_THROW(soliton().sum()(Complex(0, -1)), PoleHit);
}

TEST(Canonical, MergesNearbyPolesAndSorts) {
  const PoleSum s = PoleSum::monomial({1, -1}, 1, 1.0) + PoleSum::monomial({1, -1 + 1e-12}, 1, 2.0) +
                    PoleSum::monomial({-2, -1}, 1, 1.0);
  ASSERT_EQ(s.terms().size(), 2u);
  EXPECT_LT(s.terms()[0].pole.real(), s.terms()[1].pole.real());
  EXPECT_NEAR(std::abs(s.terms()[1].coeffs[0] - 3.0), 0.0, 1e-15);
  EXPECT_TRUE((s - s).is_zero());
}

TEST(Multiply, ConjugatePairPartialFractions) {
  const PoleSum f = soliton();
  const PoleSum g = PoleSum::monomial({0, 1}, 1, 1.0);
  const PoleSum expected = (PoleSum::monomial({0, 1}, 1, 1.0) - PoleSum::monomial({0, -1}, 1, 1.0)) *
                           (1.0 / Complex(0, 2));
  EXPECT_LT(probe_distance(multiply(f, g), expected), 1e-15);
  EXPECT_TRUE(multiply(PoleSum(), PoleSum()).is_zero());
}

TEST(Multiply, SamePoleMerges) {
  const PoleSum sq = multiply(soliton(), soliton());
  ASSERT_EQ(sq.terms().size(), 1u);
  ASSERT_EQ(sq.terms()[0].multiplicity(), 2);
  EXPECT_NEAR(std::abs(sq.terms()[0].coeffs[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sq.terms()[0].coeffs[1] - 1.0), 0.0, 1e-15);
}

TEST(Multiply, RandomAgreesPointwise) {
  RandomRational r(11);
  for (int trial = 0; trial < 10; ++trial) {
    const PoleSum f = r.mixed(2), g = r.hardy(2, 2);
    const PoleSum fg = multiply(f, g);
    for (Complex z : kProbes) EXPECT_NEAR(std::abs(fg(z) - f(z) * g(z)), 0.0, 1e-10 * (1 + std::abs(f(z) * g(z))));
  }
}

TEST(Multiply, MultiplicityCap) {
  EXPECT_THROW(multiply(PoleSum::monomial(kNegI, 3), PoleSum::monomial(kNegI, 3), 4), DegenerateCollision);
}

TEST(Conjugate, Examples) {
  EXPECT_LT(probe_distance(conjugate(soliton()), PoleSum::monomial(kI, 1, 1.0)), 1e-16);
  EXPECT_LT(probe_distance(conjugate(PoleSum::monomial({0, -2}, 1, kI)), PoleSum::monomial({0, 2}, 1, -kI)),
            1e-16);
  RandomRational r(5);
  const PoleSum f = r.mixed(3);
  EXPECT_LT(probe_distance(conjugate(conjugate(f)), f), 1e-16);
}

TEST(ProjectUpper, SquaredModulusOfSoliton) {
  const PoleSum mod2 = (PoleSum::monomial(kI, 1, 1.0) - PoleSum::monomial(kNegI, 1, 1.0)) * (1.0 / Complex(0, 2));
  EXPECT_LT(probe_distance(project_upper(mod2), PoleSum::monomial(kNegI, 1, Complex(0, 0.5))), 1e-16);
  const HardyRational u = standard_family()[3].u;
  EXPECT_LT(probe_distance(project_upper(u), u), 1e-16);
  EXPECT_TRUE(project_upper(PoleSum::monomial({1, 2}, 2, 1.0)).is_zero());
}

TEST(ProjectUpper, ResidualOrthogonalToHardy) {
  RandomRational r(21);
  for (int trial = 0; trial < 10; ++trial) {
    const PoleSum f = r.mixed(2);
    const PoleSum g = r.hardy(2, 2);
    EXPECT_LT(std::abs(inner_product(f - project_upper(f), g)), 1e-12);
  }
}

TEST(InnerProduct, ClosedForms) {
  const HardyRational v = reproducing_kernel(UhpPoint(Complex(0.4, 2.5)));
  EXPECT_NEAR(inner_product(v, v).real(), 1.0 / (4 * kPi * 2.5), 1e-16);
  EXPECT_NEAR(std::abs(inner_product(soliton(), mono({0, -2}, 1, 1.0)) - 2 * kPi / 3), 0.0, 1e-14);
  EXPECT_EQ(inner_product(PoleSum(), PoleSum()), Complex(0.0));
  EXPECT_NEAR(std::abs(inner_product(soliton(), PoleSum::monomial({1, 1}, 1, 1.0))), 0.0, 1e-16);
}

TEST(ResolventAStar, SolitonAndDefiningIdentity) {
  const Complex z(0.7, 0.9);
  const HardyRational g = resolvent_a_star(soliton(), UhpPoint(z));
  EXPECT_LT(probe_distance(g, PoleSum::monomial(kNegI, 1, -1.0 / (z + kI))), 1e-15);
  EXPECT_TRUE(resolvent_a_star(HardyRational(), UhpPoint(z)).is_zero());
  RandomRational r(2);
  const HardyRational f = r.hardy(3, 2);
  const HardyRational h = resolvent_a_star(f, UhpPoint(z));
  for (Complex w : kProbes) EXPECT_NEAR(std::abs(h(w) * (w - z) + f(z) - f(w)), 0.0, 1e-12);
}

TEST(ResolventA, SolitonAndDefiningIdentity) {
  EXPECT_LT(probe_distance(resolvent_a(soliton(), UhpPoint(kI)), PoleSum::monomial(kNegI, 2, 1.0)), 1e-16);
  EXPECT_TRUE(resolvent_a(HardyRational(), UhpPoint(kI)).is_zero());
  const Complex z(-0.3, 0.6);
  RandomRational r(3);
  const HardyRational f = r.hardy(2, 2);
  const HardyRational h = resolvent_a(f, UhpPoint(z));
  for (Complex w : kProbes) EXPECT_NEAR(std::abs((w - std::conj(z)) * h(w) - f(w)), 0.0, 1e-12);
}

TEST(ResolventAStar, ResolventIdentity) {
  RandomRational r(8);
  const HardyRational f = r.hardy(2, 2);
  const Complex z(0.2, 0.7), w(-1.0, 1.3);
  const PoleSum lhs = resolvent_a_star(f, UhpPoint(z)) - resolvent_a_star(f, UhpPoint(w));
  const PoleSum rhs = (z - w) * resolvent_a_star(resolvent_a_star(f, UhpPoint(w)), UhpPoint(z)).sum();
  EXPECT_LT(probe_distance(lhs, rhs), 1e-12);
}

TEST(IPlus, Examples) {
  const Complex a(0.5, 1.7);
  EXPECT_NEAR(std::abs(iplus(reproducing_kernel(UhpPoint(a))) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(iplus(PoleSum::monomial(kNegI, 2, 1.0)), Complex(0.0));
  RandomRational r(4);
  for (int trial = 0; trial < 5; ++trial) {
    const HardyRational f = r.hardy(3, 2);
    const Complex z = r.upper_point();
    EXPECT_NEAR(std::abs(iplus(resolvent_a_star(f, UhpPoint(z))) - 2 * kPi * kI * f(z)), 0.0, 1e-12);
  }
}

TEST(IPlus, ApproximateIdentityConverges) {
  const HardyRational f = standard_family()[3].u;
  double prev = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    const double err = std::abs(inner_product(f, approximate_identity(eps)) - iplus(f));
    EXPECT_LT(err, prev) << eps;
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(SpecialVectors, KernelReflectAndChi) {
  RandomRational r(6);
  const HardyRational f = r.hardy(3, 2);
  const Complex a(0.4, 0.8);
  EXPECT_NEAR(std::abs(inner_product(f, reproducing_kernel(UhpPoint(a))) - f(a)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(approximate_identity(1.0)(0.0) - 1.0), 0.0, 1e-16);
  EXPECT_LT(probe_distance(reflect(reflect(f)), f), 1e-15);
  EXPECT_NEAR(norm(reflect(f)), norm(f), 1e-13);
  for (double x : {-1.0, 0.5}) EXPECT_NEAR(std::abs(reflect(f)(x) - std::conj(f(-x))), 0.0, 1e-14);
  for (double x : {-1.0, 0.5}) EXPECT_NEAR(std::abs(dilate(f, 2.5)(x) - f(2.5 * x)), 0.0, 1e-14);
}

TEST(ADomain, AStarAndA) {
  const PoleSum g = PoleSum::monomial(kNegI, 2, 1.0);
  EXPECT_LT(probe_distance(apply_a(g), PoleSum::monomial(kNegI, 1, 1.0) - PoleSum::monomial(kNegI, 2, kI)),
            1e-15);
  EXPECT_THROW(apply_a(soliton()), std::domain_error);
  // A* u0 = x/(x+i) - 1 = -i/(x+i).
  EXPECT_LT(probe_distance(apply_a_star(soliton()), PoleSum::monomial(kNegI, 1, -kI)), 1e-15);
  EXPECT_NEAR(std::abs(leading_coefficient(standard_family()[1].u) - 2.0), 0.0, 1e-15);
}

TEST(Hardy, RejectsClosedUpperHalfPlane) {
  EXPECT_THROW(HardyRational(PoleSum::monomial({0, 1}, 1, 1.0)), NotHardy);
  EXPECT_THROW(PoleSum::monomial({1, 0}, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(UhpPoint(Complex(1, 0)), std::invalid_argument);
}

TEST(Json, BitExactRoundTrip) {
  RandomRational r(9);
  for (int trial = 0; trial < 10; ++trial) {
    const PoleSum f = r.mixed(3);
    const PoleSum g = pole_sum_from_json(to_json(f));
    ASSERT_EQ(f.terms().size(), g.terms().size());
    for (std::size_t j = 0; j < f.terms().size(); ++j) {
      EXPECT_EQ(f.terms()[j].pole, g.terms()[j].pole);
      EXPECT_EQ(f.terms()[j].coeffs, g.terms()[j].coeffs);
    }
    EXPECT_EQ(to_json(f), to_json(g));
  }
}

TEST(Json, MalformedInputIsConfigInvalid) {
  EXPECT_THROW(pole_sum_from_json("{"), ConfigInvalid);
  EXPECT_THROW(pole_sum_from_json(R"({"terms":[{"pole":[0],"coeffs":[[1,0]]}]})"), ConfigInvalid);
  EXPECT_THROW(pole_sum_from_json(R"({"terms":[{"pole":[0,-1]}]})"), ConfigInvalid);
  EXPECT_THROW(pole_sum_from_json(R"({"terms":[{"pole":[2,0],"coeffs":[[1,0]]}]})"), ConfigInvalid);
}
