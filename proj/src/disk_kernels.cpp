// Pseudospectral right-hand side of the transferred equation. The pointwise
// cubic runs under OpenMP; each grid point is written by exactly one thread
// with the same arithmetic as the serial loop.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "szego/disk.hpp"

namespace szego {

DiskRhs::DiskRhs(int modes, int pad)
    : modes_(modes),
      grid_(static_cast<int>(next_power_of_two(static_cast<long>(std::max(pad, 2)) * (modes + 1)))),
      fft_(grid_) {
  if (modes < 0) throw std::invalid_argument("DiskRhs: negative mode count");
  if (pad < 2) throw std::invalid_argument("DiskRhs: pad must be at least 2");
}

double DiskRhs::operator()(const DiskCoeffs& f, DiskCoeffs& out) const {
  return evaluate(f, out, true);
}
double DiskRhs::serial(const DiskCoeffs& f, DiskCoeffs& out) const {
  return evaluate(f, out, false);
}

double DiskRhs::evaluate(const DiskCoeffs& f, DiskCoeffs& out, bool parallel) const {
  if (f.modes() != modes_) throw std::invalid_argument("DiskRhs: mode count mismatch");
  const int m = grid_;
  std::vector<Complex> buf(m, 0.0), vals(m);
  std::copy(f.coeffs.begin(), f.coeffs.end(), buf.begin());
  fft_.backward(buf, vals);
  // |1 - zeta|^2 |f|^2 f with |1 - zeta_k|^2 = 4 sin^2(pi k / M).
  auto point = [&](int k) {
    const double sn = std::sin(kPi * k / m);
    const double w = 4.0 * sn * sn * std::norm(vals[k]);
    vals[k] *= w;
    return w;
  };
  double peak = 0.0;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(max : peak)
    for (int k = 0; k < m; ++k) peak = std::max(peak, point(k));
  } else {
    for (int k = 0; k < m; ++k) peak = std::max(peak, point(k));
  }
  fft_.forward(vals, buf);
  out.coeffs.resize(modes_ + 1);
  const Complex scale = Complex(0.0, -1.0) / (4.0 * kPi * m);
  for (int n = 0; n <= modes_; ++n) out.coeffs[n] = scale * buf[n];
  return peak;
}

DiskCoeffs rhs_disk(const DiskCoeffs& f, int pad) {
  DiskCoeffs out;
  DiskRhs(f.modes(), pad)(f, out);
  return out;
}

DiskCoeffs rhs_disk_serial(const DiskCoeffs& f, int pad) {
  DiskCoeffs out;
  DiskRhs(f.modes(), pad).serial(f, out);
  return out;
}

}  // namespace szego
