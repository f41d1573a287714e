#pragma once

// The explicit-formula flow Phi(t)u for rational data: spectral propagation
// p = e^{-itH^2}u, the finite-rank operator L_u(t), dissipative resolvent
// solves, and pointwise evaluation
//
//   Phi(t)u(z) = (1/2 pi i) I_+[(A* + L_u(t) - z)^{-1} p].

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "szego/hankel.hpp"
#include "szego/numerics.hpp"
#include "szego/rational.hpp"

namespace szego {

/// L h = sum_j (sum_k c(j, k) <h, phi_k>) phi_j over the eigenbasis of spec.
struct LOperator {
  DenseMatrix c;
  SpectralData spec;
  double t = 0.0;

  HardyRational apply(const PoleSum& h) const;
};

/// Two eigenvalues closer than this (times max(1, lambda_max)) are treated as
/// equal in the divided difference defining L.
inline constexpr double kDegeneracyTol = 1e-10;
/// Imaginary offset used when a boundary solve is singular.
inline constexpr double kBoundaryFallbackEta = 1e-8;

HardyRational evolve_phase(const SpectralData& spec, double t);
LOperator build_L(const SpectralData& spec, double t);

enum class Generator { AstarPlusL, APlusL };

/// Solves (A# + L - w) g = rhs, A# = A* or A, by the finite-rank reduction
/// g = R_w(rhs - L g). AstarPlusL needs Im w >= 0 (real w is accepted for
/// boundary evaluation), APlusL needs Im w < 0.
/// Throws SingularSystem when I + BC is numerically singular.
HardyRational resolve_dissipative(const LOperator& l, Generator which, Complex w,
                                  const HardyRational& rhs);

/// (A# + L - w) g - rhs as a pole sum; vanishes for the output of
/// resolve_dissipative.
PoleSum dissipative_residual(const LOperator& l, Generator which, Complex w,
                             const HardyRational& rhs, const HardyRational& g);

struct FlowSample {
  double t = 0.0;
  Complex z;
  Complex value;
  bool fallback = false;  // evaluated at eta = kBoundaryFallbackEta instead
};

/// Precomputes everything that depends on (u, t) only; each evaluation then
/// costs one d x d solve. Negative t is handled through the time-reversal
/// symmetry Phi(-t)u(z) = conj(Phi(t)(Ru)(-conj z)).
class FlowSolver {
 public:
  FlowSolver(const HardyRational& u, double t);

  double time() const { return t_; }
  bool trivial() const { return trivial_; }
  /// Spectral data of the datum actually propagated (R u when t < 0).
  const SpectralData& spectrum() const { return l_.spec; }
  const LOperator& l_operator() const { return l_; }

  /// Phi(t)u(z) for Im z >= 0. Throws SingularSystem on a degenerate solve.
  Complex value(Complex z) const;
  /// Boundary evaluation at x + i eta with the fallback policy.
  FlowSample sample(double x, double eta) const;

 private:
  struct Slot {
    Complex pole;
    int order;
    int base;  // index of (pole, order 1) in the basis
  };
  Complex value_forward(Complex z) const;

  double t_;
  bool reversed_ = false;
  bool trivial_ = false;
  LOperator l_;
  std::vector<Slot> slots_;
  DenseVector pc_;  // coordinates of p in the monomial basis
};

FlowSample flow_eval(const HardyRational& u, double t, UhpPoint z);
FlowSample flow_negative(const HardyRational& u, double t, UhpPoint z);

/// Same value as FlowSolver::value through resolve_dissipative and pole-sum
/// algebra; an independent route used for cross-checks.
Complex flow_eval_reference(const HardyRational& u, double t, Complex z);

/// Samples at z = x + i eta; OpenMP over x. Order and values are identical to
/// flow_grid_serial.
std::vector<FlowSample> flow_grid(const HardyRational& u, double t, std::span<const double> xs,
                                  double eta = 0.0);
std::vector<FlowSample> flow_grid_serial(const HardyRational& u, double t,
                                         std::span<const double> xs, double eta = 0.0);
std::vector<FlowSample> flow_grid(const FlowSolver& solver, std::span<const double> xs,
                                  double eta = 0.0);
std::vector<FlowSample> flow_grid_serial(const FlowSolver& solver, std::span<const double> xs,
                                         double eta = 0.0);

struct QuadratureNorms {
  double norm2 = 0.0;   // integral of |Phi(t)u|^2 on the real line
  double energy = 0.0;  // (1/4) integral of |Phi(t)u|^4
  int evaluations = 0;
};
QuadratureNorms flow_norms(const FlowSolver& solver, const LineQuadratureOptions& opts = {});

struct InvariantReport {
  double t = 0.0;
  double norm2 = 0.0;
  double energy = 0.0;
  std::vector<std::pair<double, double>> j_values;  // (x, J(x, u_t))
  std::vector<double> hankel_lambdas;
};

/// J(x, u) = <(I + x H_u^2)^{-1} u, u> = sum_j |a_j|^2 / (1 + x lambda_j).
double j_functional(const SpectralData& spec, double x);
/// E(u) = (1/4) ||u||_{L^4}^4 = (1/2) ||H_u u||^2.
double energy(const HardyRational& u);

/// Exact invariants of u; by conservation these are the invariants of
/// Phi(t)u for every t, and the report is stamped with t.
InvariantReport invariants(const HardyRational& u, double t, std::span<const double> j_points);

}  // namespace szego
