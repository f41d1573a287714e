#include <cmath>

#include <gtest/gtest.h>

#include "family.hpp"
#include "szego/contraction.hpp"
#include "szego/disk.hpp"
#include "szego/flow.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

const std::vector<Complex> kPoints{{-2.0, 0.0}, {0.0, 0.0}, {0.7, 0.0}, {3.0, 0.0}, {0.4, 0.3}, {-1.0, 1.2}};

DiskCoeffs disk_flow(const HardyRational& u, double t, int modes = 256) {
  const std::vector<double> cps{t};
  return integrate(to_disk(u, modes), cps, {modes, 1e-3, 4}).states[0];
}

}  // namespace

TEST(Metamorphic, GaugeExact) {
  const Complex c = std::polar(1.0, 1.1);
  for (const auto& [name, u] : standard_family())
    for (double t : {0.5, 3.0}) {
      const FlowSolver a(c * u, t), b(u, t);
      for (Complex z : kPoints) EXPECT_NEAR(std::abs(a.value(z) - c * b.value(z)), 0.0, 1e-10) << name;
    }
}

TEST(Metamorphic, ScalingExact) {
  for (const auto& [name, u] : standard_family())
    for (double lambda : {0.5, 1.7}) {
      const double t = 0.8;
      const FlowSolver a(lambda * u, t), b(u, lambda * lambda * t);
      for (Complex z : kPoints) EXPECT_NEAR(std::abs(a.value(z) - lambda * b.value(z)), 0.0, 1e-9) << name;
    }
}

TEST(Metamorphic, DilationExact) {
  for (const auto& [name, u] : standard_family())
    for (double mu : {0.6, 2.0}) {
      const double t = 1.1;
      const FlowSolver a(std::sqrt(mu) * dilate(u, mu), t), b(u, mu * t);
      for (Complex z : kPoints)
        EXPECT_NEAR(std::abs(a.value(z) - std::sqrt(mu) * b.value(mu * z)), 0.0, 1e-9) << name;
    }
}

TEST(Metamorphic, TimeReversal) {
  for (const auto& [name, u] : standard_family()) {
    const FlowSolver a(u, -1.3), b(reflect(u), 1.3);
    for (Complex z : kPoints)
      EXPECT_NEAR(std::abs(a.value(z) - std::conj(b.value(-std::conj(z)))), 0.0, 1e-12) << name;
  }
}

TEST(Metamorphic, GaugeScalingDilationDisk) {
  const HardyRational u = standard_family()[3].u;
  const double t = 0.5;
  const DiskCoeffs base = disk_flow(u, t);
  const Complex c = std::polar(1.0, -0.4);
  const DiskCoeffs gauged = disk_flow(c * u, t);
  for (double x : {-2.0, 0.0, 0.7, 3.0})
    EXPECT_NEAR(std::abs(from_disk(gauged, x) - c * from_disk(base, x)), 0.0, 1e-9);

  const double lambda = 1.25;
  const DiskCoeffs scaled = disk_flow(lambda * u, t / (lambda * lambda));
  for (double x : {-2.0, 0.0, 0.7, 3.0})
    EXPECT_NEAR(std::abs(from_disk(scaled, x) - lambda * from_disk(base, x)), 0.0, 1e-9);

  const double mu = 2.0;
  const DiskCoeffs dilated = disk_flow(std::sqrt(mu) * dilate(u, mu), t / mu);
  for (double x : {-1.0, 0.0, 0.35, 1.5})
    EXPECT_NEAR(std::abs(from_disk(dilated, x) - std::sqrt(mu) * from_disk(base, mu * x)), 0.0, 1e-9);
}

TEST(Continuity, PerturbationShrinksWithAmplitude) {
  const std::vector<double> xs = linspace(-10, 10, 201);
  const HardyRational v = mono({-0.5, -2.0}, 1, Complex(0.01, 0.005));
  for (const auto& [name, u] : standard_family()) {
    const std::vector<FlowSample> ref = flow_grid(u, 1.0, xs);
    double prev = INFINITY;
    for (int n : {1, 2, 4, 8, 16}) {
      const std::vector<FlowSample> s = flow_grid(u + (1.0 / n) * v, 1.0, xs);
      double dev = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) dev = std::max(dev, std::abs(s[k].value - ref[k].value));
      EXPECT_LT(dev, prev) << name << " n=" << n;
      prev = dev;
    }
    EXPECT_LT(prev, 1e-3) << name;
  }
}

// Seeded random data in a bounded pole/coefficient family.
class RandomFamily : public ::testing::TestWithParam<unsigned> {};

TEST_P(RandomFamily, ConservationAndIdentities) {
  RandomRational r(GetParam());
  const HardyRational u = r.hardy(3);
  const double t = r.real(0.1, 5.0);
  const FlowSolver s(u, t);
  const QuadratureNorms q = flow_norms(s);
  EXPECT_NEAR(q.norm2, norm_squared(u), 1e-8 * norm_squared(u));
  EXPECT_NEAR(q.energy, energy(u), 1e-7 * energy(u));

  const Complex z = r.upper_point();
  EXPECT_NEAR(std::abs(s.value(z) - flow_eval_reference(u, t, z)), 0.0, 1e-10 * (1 + std::abs(s.value(z))));

  const ContractionAudit a = run_audit(u, t, 20);
  EXPECT_LT(std::abs(a.q_norm - 1.0), 1e-9);
  EXPECT_LT(a.isometry_defect, 1e-9);
  EXPECT_LT(a.coisometry_defect, 1e-9);
  EXPECT_LT(a.representation_defect, 1e-9);
  EXPECT_LT(a.commutation_defect, 1e-9);
  EXPECT_TRUE(a.plancherel_monotone);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomFamily, ::testing::Range(1000u, 1012u));
