#include "szego/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "szego/errors.hpp"

namespace szego {

namespace {

// (1 - e^{-i theta}) / (i delta) without cancellation for small theta.
Complex phase_divided_difference(double delta, double t) {
  const double theta = t * delta;
  const double s = std::sin(0.5 * theta);
  const Complex one_minus = Complex(2.0 * s * s, std::sin(theta));
  return one_minus / Complex(0.0, delta);
}

LOperator zero_operator(double t) {
  LOperator l;
  l.t = t;
  l.c = DenseMatrix::Zero(0, 0);
  return l;
}

SpectralData spectrum_or_empty(const HardyRational& u) {
  if (u.is_zero()) return {};
  return hankel_square_spectrum(u);
}

}  // namespace

HardyRational LOperator::apply(const PoleSum& h) const {
  const int d = spec.dim();
  if (d == 0) return {};
  DenseVector coords(d);
  for (int k = 0; k < d; ++k) coords(k) = inner_product(h, spec.eigenfunctions[k]);
  const DenseVector alpha = c * coords;
  return spec.basis.combine(spec.vectors * alpha);
}

HardyRational evolve_phase(const SpectralData& spec, double t) {
  const int d = spec.dim();
  if (d == 0) return {};
  DenseVector w(d);
  for (int j = 0; j < d; ++j) w(j) = spec.a(j) * std::exp(Complex(0.0, -t * spec.lambdas[j]));
  return spec.basis.combine(spec.vectors * w);
}

LOperator build_L(const SpectralData& spec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("build_L: t must be nonnegative");
  const int d = spec.dim();
  LOperator l;
  l.spec = spec;
  l.t = t;
  l.c = DenseMatrix::Zero(d, d);
  if (d == 0) return l;
  const double lmax = *std::max_element(spec.lambdas.begin(), spec.lambdas.end());
  const double tol = kDegeneracyTol * std::max(1.0, lmax);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const double delta = spec.lambdas[j] - spec.lambdas[k];
      const Complex tau = std::abs(delta) < tol ? Complex(t) : phase_divided_difference(delta, t);
      l.c(j, k) = spec.a(j) * std::conj(spec.a(k)) * tau / (2.0 * kPi);
    }
  return l;
}

namespace {

PoleSum apply_resolvent(Generator which, Complex w, const PoleSum& h) {
  return which == Generator::AstarPlusL ? divided_difference(h, w) : divide_by_linear(h, w);
}

void check_spectral_parameter(Generator which, Complex w) {
  if (which == Generator::AstarPlusL && w.imag() < 0.0)
    throw std::invalid_argument("resolve_dissipative: A* + L - w needs Im w >= 0");
  if (which == Generator::APlusL && !(w.imag() < 0.0))
    throw std::invalid_argument("resolve_dissipative: A + L - w needs Im w < 0");
}

}  // namespace

HardyRational resolve_dissipative(const LOperator& l, Generator which, Complex w,
                                  const HardyRational& rhs) {
  check_spectral_parameter(which, w);
  const PoleSum r_rhs = apply_resolvent(which, w, rhs);
  const int d = l.spec.dim();
  if (d == 0) return HardyRational(r_rhs);

  std::vector<PoleSum> r_phi;
  r_phi.reserve(d);
  for (const auto& phi : l.spec.eigenfunctions) r_phi.push_back(apply_resolvent(which, w, phi));
  DenseMatrix b(d, d);
  DenseVector s(d);
  for (int k = 0; k < d; ++k) {
    const PoleSum& phik = l.spec.eigenfunctions[k];
    s(k) = inner_product(r_rhs, phik);
    for (int j = 0; j < d; ++j) b(k, j) = inner_product(r_phi[j], phik);
  }
  const DenseMatrix m = DenseMatrix::Identity(d, d) + b * l.c;
  const DenseVector gamma = solve(m, s);
  const DenseVector alpha = l.c * gamma;
  PoleSum g = r_rhs;
  for (int j = 0; j < d; ++j) g -= r_phi[j] * alpha(j);
  return HardyRational(std::move(g));
}

PoleSum dissipative_residual(const LOperator& l, Generator which, Complex w,
                             const HardyRational& rhs, const HardyRational& g) {
  (void)which;  // A g and A* g agree on the O(1/x^2) outputs of the A + L solve
  return apply_a_star(g) + l.apply(g).sum() - g.sum() * w - rhs.sum();
}

// ------------------------------------------------------------- FlowSolver

FlowSolver::FlowSolver(const HardyRational& u, double t) : t_(t) {
  if (!std::isfinite(t)) throw std::invalid_argument("FlowSolver: t must be finite");
  reversed_ = t < 0.0;
  const HardyRational datum = reversed_ ? reflect(u) : u;
  const double tau = std::abs(t);
  if (datum.is_zero()) {
    trivial_ = true;
    l_ = zero_operator(tau);
    return;
  }
  l_ = build_L(hankel_square_spectrum(datum), tau);
  const SpectralData& spec = l_.spec;
  int base = 0;
  for (const auto& term : datum.sum().terms()) {
    for (int k = 1; k <= term.multiplicity(); ++k) slots_.push_back({term.pole, k, base});
    base += term.multiplicity();
  }
  DenseVector w(spec.dim());
  for (int j = 0; j < spec.dim(); ++j)
    w(j) = spec.a(j) * std::exp(Complex(0.0, -tau * spec.lambdas[j]));
  pc_ = spec.vectors * w;
}

Complex FlowSolver::value(Complex z) const {
  if (z.imag() < 0.0) throw std::invalid_argument("FlowSolver::value: Im z must be >= 0");
  if (trivial_) return 0.0;
  if (reversed_) return std::conj(value_forward(-std::conj(z)));
  return value_forward(z);
}

Complex FlowSolver::value_forward(Complex z) const {
  // In the monomial basis e_m = (x - p)^{-k}, the resolvent acts as
  //   R_z e_m = -sum_{j=1..k} (x - p)^{-j} (z - p)^{-(k+1-j)},
  // so <R_z e_m, e_n> is a combination of Gram entries.
  const SpectralData& spec = l_.spec;
  const DenseMatrix& gram = spec.basis.gram;
  const int n = static_cast<int>(slots_.size());
  DenseMatrix gz(n, n);
  DenseVector ez(n);
  for (int m = 0; m < n; ++m) {
    const Slot& sl = slots_[m];
    const Complex zp = z - sl.pole;
    if (std::abs(zp) < kPoleMergeTol) throw PoleHit("FlowSolver: z hits a pole");
    const Complex inv = 1.0 / zp;
    std::vector<Complex> pw(sl.order + 1, 1.0);
    for (int j = 1; j <= sl.order; ++j) pw[j] = pw[j - 1] * inv;
    ez(m) = pw[sl.order];
    for (int r = 0; r < n; ++r) {
      Complex acc = 0.0;
      for (int j = 1; j <= sl.order; ++j) acc -= gram(r, sl.base + j - 1) * pw[sl.order + 1 - j];
      gz(r, m) = acc;
    }
  }
  const DenseMatrix& v = spec.vectors;
  const DenseMatrix b = v.adjoint() * gz * v;
  const DenseVector s = v.adjoint() * (gz * pc_);
  const int d = spec.dim();
  const DenseMatrix sys = DenseMatrix::Identity(d, d) + b * l_.c;
  const DenseVector gamma = solve(sys, s);
  const DenseVector coeffs = pc_ - v * (l_.c * gamma);
  return ez.transpose() * coeffs;
}

FlowSample FlowSolver::sample(double x, double eta) const {
  FlowSample out{t_, Complex(x, eta), 0.0, false};
  try {
    out.value = value(out.z);
  } catch (const SingularSystem&) {
    if (eta != 0.0) throw;
    out.z = Complex(x, kBoundaryFallbackEta);
    out.value = value(out.z);
    out.fallback = true;
  }
  return out;
}

FlowSample flow_eval(const HardyRational& u, double t, UhpPoint z) {
  if (!(t >= 0.0)) throw std::invalid_argument("flow_eval: t must be nonnegative");
  const FlowSolver solver(u, t);
  return {t, z.value(), solver.value(z.value()), false};
}

FlowSample flow_negative(const HardyRational& u, double t, UhpPoint z) {
  if (!(t < 0.0)) throw std::invalid_argument("flow_negative: t must be negative");
  const FlowSolver solver(reflect(u), -t);
  return {t, z.value(), std::conj(solver.value(-std::conj(z.value()))), false};
}

Complex flow_eval_reference(const HardyRational& u, double t, Complex z) {
  if (t < 0.0) return std::conj(flow_eval_reference(reflect(u), -t, -std::conj(z)));
  if (u.is_zero()) return 0.0;
  const SpectralData spec = hankel_square_spectrum(u);
  const LOperator l = build_L(spec, t);
  const HardyRational p = evolve_phase(spec, t);
  const HardyRational g = resolve_dissipative(l, Generator::AstarPlusL, z, p);
  return iplus(g) / (2.0 * kPi * kI);
}

// ------------------------------------------------------------- invariants

double j_functional(const SpectralData& spec, double x) {
  double s = 0.0;
  for (int j = 0; j < spec.dim(); ++j) s += std::norm(spec.a(j)) / (1.0 + x * spec.lambdas[j]);
  return s;
}

double energy(const HardyRational& u) { return 0.5 * norm_squared(hankel_apply(u, u)); }

InvariantReport invariants(const HardyRational& u, double t, std::span<const double> j_points) {
  InvariantReport r;
  r.t = t;
  r.norm2 = norm_squared(u);
  r.energy = energy(u);
  const SpectralData spec = spectrum_or_empty(u);
  for (double x : j_points) r.j_values.emplace_back(x, j_functional(spec, x));
  r.hankel_lambdas = spec.lambdas;
  return r;
}

}  // namespace szego
