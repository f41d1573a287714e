#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "family.hpp"
#include "szego/errors.hpp"
#include "szego/hankel.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

const Complex kNegI(0, -1);
const std::vector<Complex> kProbes{{0.3, 0}, {-1.7, 0}, {2.2, 0.4}, {0.1, 1.5}};

double probe_sup(const PoleSum& f) {
  double d = 0.0;
  for (Complex z : kProbes) d = std::max(d, std::abs(f(z)));
  return d;
}

}  // namespace

TEST(InvariantBasis, SolitonGram) {
  const FiniteBasis b = invariant_basis(soliton());
  ASSERT_EQ(b.dim(), 1);
  EXPECT_NEAR(std::abs(b.gram(0, 0) - kPi), 0.0, 1e-14);
}

TEST(InvariantBasis, TwoPoleGram) {
  const FiniteBasis b = invariant_basis(standard_family()[1].u);
  ASSERT_EQ(b.dim(), 2);
  for (int j = 0; j < 2; ++j) {
    const double im = -b.elems[j].sum().terms()[0].pole.imag();
    EXPECT_NEAR(b.gram(j, j).real(), kPi / im, 1e-14);
  }
  EXPECT_NEAR(std::abs(b.gram(0, 1) - 2 * kPi / 3), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b.gram(1, 0) - 2 * kPi / 3), 0.0, 1e-14);
}

TEST(InvariantBasis, DoublePoleIncludesLowerOrder) {
  const FiniteBasis b = invariant_basis(mono(kNegI, 2, 1.0));
  ASSERT_EQ(b.dim(), 2);
  EXPECT_EQ(b.elems[0].sum().terms()[0].multiplicity(), 1);
  EXPECT_EQ(b.elems[1].sum().terms()[0].multiplicity(), 2);
}

TEST(InvariantBasis, NearlyCoincidentPolesAreIllConditioned) {
  const HardyRational u = mono({0, -1}, 1, 1.0) + mono({1e-8, -1}, 1, 1.0);
  EXPECT_THROW(invariant_basis(u), IllConditioned);
}

TEST(HankelApply, SolitonEigenvector) {
  const HardyRational hu = hankel_apply(soliton(), soliton());
  EXPECT_LT(probe_sup(hu - Complex(0, 0.5) * soliton()), 1e-16);
  EXPECT_TRUE(hankel_apply(soliton(), HardyRational()).is_zero());
}

TEST(HankelApply, SymmetryRelation) {
  RandomRational r(31);
  for (int trial = 0; trial < 10; ++trial) {
    const HardyRational u = r.hardy(2, 2), f = r.hardy(2), g = r.hardy(3);
    const Complex lhs = inner_product(hankel_apply(u, f), g);
    const Complex rhs = inner_product(hankel_apply(u, g), f);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * (1 + std::abs(lhs)));
  }
}

TEST(HankelMatrix, SolitonAndSymmetry) {
  const HankelMatrix h = hankel_matrix(soliton(), invariant_basis(soliton()));
  EXPECT_NEAR(std::abs(h.m(0, 0) - Complex(0, kPi / 2)), 0.0, 1e-14);
  for (const auto& [name, u] : standard_family()) {
    const HankelMatrix m = hankel_matrix(u, invariant_basis(u));
    EXPECT_LT((m.m - m.m.transpose()).norm(), 1e-13) << name;
    const HankelMatrix m3 = hankel_matrix(3.0 * u, invariant_basis(u));
    EXPECT_LT((m3.m - 3.0 * m.m).norm(), 1e-13) << name;
  }
}

TEST(HankelMatrix, AgreesWithHankelApply) {
  RandomRational r(41);
  for (const auto& [name, u] : standard_family()) {
    const FiniteBasis b = invariant_basis(u);
    const HankelMatrix h = hankel_matrix(u, b);
    for (int trial = 0; trial < 20; ++trial) {
      DenseVector c(b.dim());
      for (int k = 0; k < b.dim(); ++k) c(k) = r.coeff();
      const HardyRational via_matrix = b.combine(h.apply(c));
      const HardyRational direct = hankel_apply(u, b.combine(c));
      EXPECT_LT(norm(via_matrix - direct), 1e-10) << name;
    }
  }
}

TEST(Spectrum, Soliton) {
  const SpectralData s = hankel_square_spectrum(soliton());
  ASSERT_EQ(s.dim(), 1);
  EXPECT_NEAR(s.lambdas[0], 0.25, 1e-15);
  EXPECT_NEAR(std::abs(s.a(0)), std::sqrt(kPi), 1e-14);
}

TEST(Spectrum, TinyDatumClampsToZero) {
  const SpectralData s = hankel_square_spectrum(mono({0, -1}, 1, 1e-20) + mono({1, -2}, 1, 1e-20));
  for (double l : s.lambdas) {
    EXPECT_GE(l, 0.0);
    EXPECT_LT(l, 1e-38);
  }
}

TEST(Spectrum, TraceAndParseval) {
  for (const auto& [name, u] : standard_family()) {
    const SpectralData s = hankel_square_spectrum(u);
    const HankelMatrix h = hankel_matrix(u, s.basis);
    const DenseMatrix& g = s.basis.gram;
    const DenseMatrix k = h.m * g.conjugate().inverse() * h.m.conjugate();
    const Complex trace = (g.inverse() * k).trace();
    double sum = 0.0, a2 = 0.0;
    for (int j = 0; j < s.dim(); ++j) {
      sum += s.lambdas[j];
      a2 += std::norm(s.a(j));
      EXPECT_GE(s.lambdas[j], 0.0) << name;
    }
    EXPECT_NEAR(trace.real(), sum, 1e-10) << name;
    EXPECT_NEAR(a2, norm_squared(u), 1e-12 * a2) << name;
  }
}

TEST(Spectrum, EigenfunctionsSatisfyHankelSquare) {
  for (const auto& [name, u] : standard_family()) {
    const SpectralData s = hankel_square_spectrum(u);
    for (int j = 0; j < s.dim(); ++j) {
      const HardyRational& phi = s.eigenfunctions[j];
      EXPECT_NEAR(norm(phi), 1.0, 1e-12) << name;
      EXPECT_LT(norm(hankel_apply(u, hankel_apply(u, phi)) - s.lambdas[j] * phi), 1e-12) << name;
    }
  }
}

TEST(Spectrum, GaugeInvariance) {
  const Complex c = std::polar(1.0, 0.83);
  for (const auto& [name, u] : standard_family()) {
    const SpectralData a = hankel_square_spectrum(u), b = hankel_square_spectrum(c * u);
    for (int j = 0; j < a.dim(); ++j) EXPECT_NEAR(a.lambdas[j], b.lambdas[j], 1e-12) << name;
  }
}

TEST(Spectrum, ContinuousUnderTinyPerturbation) {
  for (const auto& [name, u] : standard_family()) {
    const SpectralData a = hankel_square_spectrum(u);
    PoleSum bumped = u.sum();
    for (const auto& t : u.sum().terms()) bumped += PoleSum::monomial(t.pole, 1, Complex(1e-8, -1e-8));
    const SpectralData b = hankel_square_spectrum(HardyRational(bumped));
    for (int j = 0; j < a.dim(); ++j) EXPECT_NEAR(a.lambdas[j], b.lambdas[j], 1e-6) << name;
  }
}

TEST(Spectrum, JsonShape) {
  const auto j = nlohmann::json::parse(hankel_square_spectrum(soliton()).to_json());
  ASSERT_EQ(j["lambdas"].size(), 1u);
  EXPECT_NEAR(j["lambdas"][0].get<double>(), 0.25, 1e-15);
  const double re = j["a"][0][0], im = j["a"][0][1];
  EXPECT_NEAR(std::hypot(re, im), std::sqrt(kPi), 1e-14);
}

TEST(Toeplitz, SquaredModulusTimesSoliton) {
  const PoleSum b = multiply(soliton(), conjugate(soliton()));
  const HardyRational t = toeplitz_apply(b, soliton());
  const PoleSum expected = PoleSum::monomial(kNegI, 1, 0.25) + PoleSum::monomial(kNegI, 2, Complex(0, 0.5));
  EXPECT_LT(probe_sup(t - expected), 1e-15);
  EXPECT_TRUE(toeplitz_apply(b, HardyRational()).is_zero());
  const HardyRational lower = standard_family()[3].u;
  EXPECT_LT(probe_sup(toeplitz_apply(lower, soliton()) - multiply(lower, soliton())), 1e-15);
}

TEST(LaxB, SkewAndSoliton) {
  RandomRational r(51);
  const HardyRational u = r.hardy(2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const HardyRational f = r.hardy(2);
    EXPECT_LT(std::abs(inner_product(lax_b_apply(u, f), f).real()), 1e-12);
  }
  const PoleSum p = PoleSum::monomial(kNegI, 1, 0.25) + PoleSum::monomial(kNegI, 2, Complex(0, 0.5));
  const PoleSum expected = p * Complex(0, -1) + soliton().sum() * Complex(0, 0.125);
  EXPECT_LT(probe_sup(lax_b_apply(soliton(), soliton()) - expected), 1e-15);
  EXPECT_TRUE(lax_b_apply(soliton(), HardyRational()).is_zero());
}

TEST(Commutators, Bracket0) {
  EXPECT_LT(probe_sup(commutator_bracket0_defect(standard_family()[3].u, mono(kNegI, 2, 1.0))), 1e-15);
  const PoleSum b = multiply(soliton(), conjugate(soliton()));
  EXPECT_LT(probe_sup(commutator_bracket0_defect(b, soliton())), 1e-14);
  EXPECT_LT(probe_sup(commutator_bracket0_defect(b * 4.0, soliton())), 1e-14);
}

TEST(Commutators, LaxBracketAndHankelSquareIdentity) {
  RandomRational r(61);
  for (const auto& [name, u] : standard_family()) {
    const FiniteBasis b = invariant_basis(u);
    for (const auto& e : b.elems) EXPECT_LT(probe_sup(hankel_square_toeplitz_defect(u, e)), 1e-10) << name;
    for (int trial = 0; trial < 3; ++trial) {
      const HardyRational f = r.hardy(2, 2);
      EXPECT_LT(norm(lax_bracket_defect(u, f)), 1e-9) << name;
    }
  }
}
