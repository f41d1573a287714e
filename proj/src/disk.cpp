#include "szego/disk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "szego/errors.hpp"
#include "szego/hankel.hpp"

namespace szego {

namespace {

const double kSqrtPi = std::sqrt(kPi);

// Offset grid theta_k = 2 pi (k + 1/2) / M avoids zeta = 1 (x = infinity).
double offset_theta(int k, int m) { return 2.0 * kPi * (k + 0.5) / m; }
double line_point(double theta) { return -std::cos(0.5 * theta) / std::sin(0.5 * theta); }

int transfer_grid(int modes) {
  if (modes < 16) throw std::invalid_argument("disk transfer: need at least 16 modes");
  return static_cast<int>(next_power_of_two(4L * modes));
}

// Fourier coefficients 0..count-1 of samples taken on the offset grid.
std::vector<Complex> offset_coefficients(const std::vector<Complex>& samples, int count) {
  const int m = static_cast<int>(samples.size());
  const Fft fft(m);
  std::vector<Complex> spec(m);
  fft.forward(samples, spec);
  std::vector<Complex> out(count);
  for (int n = 0; n < count; ++n)
    out[n] = std::exp(Complex(0.0, -kPi * n / m)) * spec[n] / static_cast<double>(m);
  return out;
}

}  // namespace

double DiskCoeffs::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

DiskCoeffs to_disk(const std::function<Complex(double)>& u, int modes, double norm2) {
  const int m = transfer_grid(modes);
  std::vector<Complex> samples(m);
  for (int k = 0; k < m; ++k) {
    const double th = offset_theta(k, m);
    const Complex zeta = std::exp(Complex(0.0, th));
    samples[k] = 2.0 * kI * kSqrtPi / (1.0 - zeta) * u(line_point(th));
  }
  DiskCoeffs f(offset_coefficients(samples, modes + 1));
  if (norm2 > 0.0) {
    const double defect = std::abs(f.norm2() - norm2) / norm2;
    if (defect > kMaxTransferDefect) {
      std::ostringstream os;
      os << "to_disk: relative isometry defect " << defect << " at N = " << modes;
      throw TailTooFat(os.str());
    }
  }
  return f;
}

DiskCoeffs to_disk(const HardyRational& u, int modes) {
  if (u.is_zero()) {
    transfer_grid(modes);
    return DiskCoeffs(modes);
  }
  return to_disk([&u](double x) { return u(Complex(x, 0.0)); }, modes, norm_squared(u));
}

DiskCoeffs to_disk_exact(const HardyRational& u, int modes) {
  DiskCoeffs f(modes);
  for (const auto& t : u.sum().terms()) {
    const Complex r = (kI + t.pole) / (kI - t.pole);
    for (int m = 1; m <= t.multiplicity(); ++m) {
      const Complex c = t.coeffs[m - 1];
      if (c == Complex(0.0)) continue;
      // Taylor series of (1 + r zeta)^{-m}, then m - 1 factors of (1 - zeta).
      std::vector<Complex> a(modes + 1);
      a[0] = 1.0;
      for (int n = 1; n <= modes; ++n) a[n] = a[n - 1] * (-r) * static_cast<double>(n + m - 1) / static_cast<double>(n);
      for (int rep = 0; rep < m - 1; ++rep)
        for (int n = modes; n >= 1; --n) a[n] -= a[n - 1];
      const Complex scale = 2.0 * kI * kSqrtPi * c * std::pow(kI - t.pole, -m);
      for (int n = 0; n <= modes; ++n) f.coeffs[n] += scale * a[n];
    }
  }
  return f;
}

Complex from_disk(const DiskCoeffs& f, double x) {
  const Complex xp(x, 1.0);
  const Complex zeta = Complex(x, -1.0) / xp;
  Complex acc = 0.0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * zeta + *it;
  return acc / (kSqrtPi * xp);
}

std::vector<Complex> from_disk(const DiskCoeffs& f, std::span<const double> xs) {
  std::vector<Complex> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = from_disk(f, xs[k]);
  return out;
}

// ------------------------------------------------------------------ Hankel

std::vector<Complex> disk_hankel_symbol(const DiskCoeffs& f) {
  // u o phi^{-1} = f (1 - zeta) / (2 i sqrt(pi)); drop its zeroth coefficient.
  const int n = f.modes();
  std::vector<Complex> uc(n + 1);
  for (int k = 0; k <= n; ++k) {
    const Complex next = k + 1 <= n ? f.coeffs[k + 1] : Complex(0.0);
    uc[k] = (next - f.coeffs[k]) / (2.0 * kI * kSqrtPi);
  }
  return uc;
}

std::vector<Complex> disk_hankel_symbol(const HardyRational& u, int modes) {
  const int m = transfer_grid(modes);
  std::vector<Complex> samples(m);
  for (int k = 0; k < m; ++k) samples[k] = u(Complex(line_point(offset_theta(k, m)), 0.0));
  std::vector<Complex> c = offset_coefficients(samples, modes + 2);
  return std::vector<Complex>(c.begin() + 1, c.end());
}

DenseMatrix disk_hankel_matrix(const std::vector<Complex>& symbol) {
  const int n = static_cast<int>(symbol.size());
  DenseMatrix g = DenseMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; r + c < n; ++c) g(r, c) = symbol[r + c];
  return g;
}

DenseMatrix disk_hankel_matrix(const HardyRational& u, int modes) {
  return disk_hankel_matrix(disk_hankel_symbol(u, modes));
}

DiskCoeffs disk_hankel_apply(const DenseMatrix& gamma, const DiskCoeffs& f) {
  DenseVector c(f.modes() + 1);
  for (int k = 0; k <= f.modes(); ++k) c(k) = std::conj(f.coeffs[k]);
  const DenseVector r = gamma * c;
  return DiskCoeffs(std::vector<Complex>(r.data(), r.data() + r.size()));
}

DiskSpectrum disk_hankel_spectrum(const DenseMatrix& gamma) {
  const DenseMatrix k = gamma * gamma.adjoint();
  HermitianEigen e = herm_eig(0.5 * (k + k.adjoint()));
  DiskSpectrum s;
  s.lambdas.assign(e.lambdas.rbegin(), e.lambdas.rend());
  s.vectors = e.vectors.rowwise().reverse();
  return s;
}

double disk_j(const DiskCoeffs& f, const DiskSpectrum& spec, double x) {
  const DenseVector fv = Eigen::Map<const DenseVector>(f.coeffs.data(), f.modes() + 1);
  const DenseVector proj = spec.vectors.adjoint() * fv;
  double s = 0.0;
  for (int j = 0; j < proj.size(); ++j) s += std::norm(proj(j)) / (1.0 + x * spec.lambdas[j]);
  return s;
}

double disk_energy(const DiskCoeffs& f) {
  const int m = static_cast<int>(next_power_of_two(2L * (f.modes() + 1)));
  const Fft fft(m);
  std::vector<Complex> in(m, 0.0), vals(m);
  std::copy(f.coeffs.begin(), f.coeffs.end(), in.begin());
  fft.backward(in, vals);
  double s = 0.0;
  for (int k = 0; k < m; ++k) {
    const double sn = std::sin(kPi * k / m);
    const double a2 = std::norm(vals[k]);
    s += a2 * a2 * 4.0 * sn * sn;
  }
  return s / m / (16.0 * kPi);
}

DiskInvariants disk_invariants(const DiskCoeffs& f, std::span<const double> j_points, int top) {
  DiskInvariants r;
  r.norm2 = f.norm2();
  r.energy = disk_energy(f);
  const DiskSpectrum spec = disk_hankel_spectrum(disk_hankel_matrix(disk_hankel_symbol(f)));
  for (double x : j_points) r.j_values.emplace_back(x, disk_j(f, spec, x));
  const int n = std::min<int>(top, static_cast<int>(spec.lambdas.size()));
  r.top_lambdas.assign(spec.lambdas.begin(), spec.lambdas.begin() + n);
  return r;
}

// --------------------------------------------------------------- dynamics

double rhs_consistency(const HardyRational& u, int modes) {
  if (u.is_zero()) return 0.0;
  const DiskCoeffs r = rhs_disk(to_disk(u, modes));
  const HardyRational exact = project_upper(multiply(multiply(u, conjugate(u)), u));
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = -20.0 + 0.1 * k;
    const Complex want = -kI * exact(Complex(x, 0.0));
    num = std::max(num, std::abs(from_disk(r, x) - want));
    den = std::max(den, std::abs(want));
  }
  return num / den;
}

namespace {

void axpy(std::vector<Complex>& y, const std::vector<Complex>& x, Complex a) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

}  // namespace

Trajectory integrate(const DiskCoeffs& f0, std::span<const double> checkpoints,
                     const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (cfg.modes != f0.modes()) throw std::invalid_argument("integrate: mode count mismatch");
  std::vector<double> cps(checkpoints.begin(), checkpoints.end());
  const bool has_pos = std::any_of(cps.begin(), cps.end(), [](double t) { return t > 0.0; });
  const bool has_neg = std::any_of(cps.begin(), cps.end(), [](double t) { return t < 0.0; });
  if (has_pos && has_neg) throw std::invalid_argument("integrate: checkpoints change sign");
  for (double t : cps)
    if (!std::isfinite(t)) throw std::invalid_argument("integrate: non-finite checkpoint");
  std::stable_sort(cps.begin(), cps.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });

  const DiskRhs rhs(f0.modes(), cfg.pad);
  const double n0 = std::sqrt(f0.norm2());
  const double e0 = disk_energy(f0);
  Trajectory traj;
  DiskCoeffs f = f0;
  DiskCoeffs k1(f0.modes()), k2(f0.modes()), k3(f0.modes()), k4(f0.modes()), tmp(f0.modes());
  double t = 0.0;
  for (double target : cps) {
    const double gap = target - t;
    const long steps = gap == 0.0 ? 0 : static_cast<long>(std::ceil(std::abs(gap) / cfg.dt - 1e-9));
    const double h = steps > 0 ? gap / static_cast<double>(steps) : 0.0;
    for (long s = 0; s < steps; ++s) {
      const double peak = rhs(f, k1);
      if (std::abs(h) * 3.0 / (4.0 * kPi) * peak >= 2.5) {
        std::ostringstream os;
        os << "integrate: step " << h << " fails the stability precheck (max |1 - zeta|^2 |f|^2 = " << peak << ")";
        throw Unstable(os.str());
      }
      tmp = f;
      axpy(tmp.coeffs, k1.coeffs, 0.5 * h);
      rhs(tmp, k2);
      tmp = f;
      axpy(tmp.coeffs, k2.coeffs, 0.5 * h);
      rhs(tmp, k3);
      tmp = f;
      axpy(tmp.coeffs, k3.coeffs, h);
      rhs(tmp, k4);
      for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        f.coeffs[k] += h / 6.0 * (k1.coeffs[k] + 2.0 * k2.coeffs[k] + 2.0 * k3.coeffs[k] + k4.coeffs[k]);
      ++traj.steps;
      const double drift = n0 > 0.0 ? std::abs(std::sqrt(f.norm2()) - n0) / n0 : 0.0;
      if (!(drift <= kMaxNormDrift)) {
        std::ostringstream os;
        os << "integrate: norm drift " << drift << " at t = " << t + (s + 1) * h;
        throw Unstable(os.str());
      }
    }
    t = target;
    const double e = disk_energy(f);
    traj.times.push_back(t);
    traj.states.push_back(f);
    traj.log.push_back({t, n0 > 0.0 ? std::abs(std::sqrt(f.norm2()) - n0) / n0 : 0.0,
                        e0 > 0.0 ? std::abs(e - e0) / e0 : 0.0});
  }
  return traj;
}

}  // namespace szego
