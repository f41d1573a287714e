#pragma once

// The oracle backend on the unit disk. The unitary map
//   (W f)(x) = f(zeta) / (sqrt(pi) (x + i)),  zeta = (x - i)/(x + i),
// carries H^2(T) onto H^2(R); the cubic Szego equation becomes
//   d/dt f = -(i / 4 pi) P(|1 - zeta|^2 |f|^2 f),
// which is integrated pseudospectrally with classical RK4.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "szego/numerics.hpp"
#include "szego/rational.hpp"

namespace szego {

/// Taylor coefficients f(0..N) of f in H^2(T), in the orthonormal basis zeta^n.
struct DiskCoeffs {
  std::vector<Complex> coeffs;

  DiskCoeffs() = default;
  explicit DiskCoeffs(int modes) : coeffs(modes + 1, 0.0) {}
  explicit DiskCoeffs(std::vector<Complex> c) : coeffs(std::move(c)) {}

  int modes() const { return static_cast<int>(coeffs.size()) - 1; }
  double norm2() const;
};

/// Relative isometry defect above which to_disk reports TailTooFat.
inline constexpr double kMaxTransferDefect = 1e-3;

/// W* u sampled on an offset grid of next_power_of_two(4N) points and
/// transformed; requires N >= 16. Throws TailTooFat when
/// | ||coeffs||^2 - ||u||^2 | > kMaxTransferDefect ||u||^2.
DiskCoeffs to_disk(const HardyRational& u, int modes);
/// Same transfer for a function known only through boundary values; `norm2`
/// is the reference squared norm used for the tail check (skipped if < 0).
DiskCoeffs to_disk(const std::function<Complex(double)>& u, int modes, double norm2 = -1.0);
/// Closed-form transfer: W*(x - p)^{-m} = 2i sqrt(pi) (1 - zeta)^{m-1} (i - p)^{-m} (1 + r zeta)^{-m}
/// with r = (i + p)/(i - p).
DiskCoeffs to_disk_exact(const HardyRational& u, int modes);

Complex from_disk(const DiskCoeffs& f, double x);
std::vector<Complex> from_disk(const DiskCoeffs& f, std::span<const double> xs);

/// Symbol coefficients uc(n) = (S* (u o phi^{-1}))(n), n = 0..N.
std::vector<Complex> disk_hankel_symbol(const DiskCoeffs& f);
std::vector<Complex> disk_hankel_symbol(const HardyRational& u, int modes);
/// Gamma(n, k) = uc(n + k); the anti-linear Hankel operator acts as c -> Gamma conj(c).
DenseMatrix disk_hankel_matrix(const std::vector<Complex>& symbol);
DenseMatrix disk_hankel_matrix(const HardyRational& u, int modes);
/// Applies the anti-linear Hankel operator to coefficients.
DiskCoeffs disk_hankel_apply(const DenseMatrix& gamma, const DiskCoeffs& f);

struct DiskSpectrum {
  std::vector<double> lambdas;  // eigenvalues of Gamma Gamma^*, descending
  DenseMatrix vectors;
};
DiskSpectrum disk_hankel_spectrum(const DenseMatrix& gamma);

/// J(x, u) = <(I + x H^2)^{-1} f, f> with H^2 = Gamma Gamma^*.
double disk_j(const DiskCoeffs& f, const DiskSpectrum& spec, double x);
/// E = (1/16 pi) mean_theta |f|^4 |1 - zeta|^2, exact on a grid of size > 2N + 1.
double disk_energy(const DiskCoeffs& f);

struct DiskInvariants {
  double norm2 = 0.0;
  double energy = 0.0;
  std::vector<std::pair<double, double>> j_values;
  std::vector<double> top_lambdas;  // descending
};
DiskInvariants disk_invariants(const DiskCoeffs& f, std::span<const double> j_points, int top = 3);

// ------------------------------------------------------------- dynamics

struct IntegratorConfig {
  int modes = 512;
  double dt = 1e-3;
  int pad = 4;  // grid size is next_power_of_two(pad (N + 1)); pad >= 2
};

/// Reusable FFT workspace for one trajectory.
class DiskRhs {
 public:
  DiskRhs(int modes, int pad);
  int modes() const { return modes_; }
  int grid() const { return grid_; }
  /// d/dt f; the pointwise nonlinearity runs under OpenMP. Returns
  /// max |1 - zeta|^2 |f|^2 over the grid.
  double operator()(const DiskCoeffs& f, DiskCoeffs& out) const;
  /// Same arithmetic in a plain loop; bitwise equal to operator().
  double serial(const DiskCoeffs& f, DiskCoeffs& out) const;

 private:
  double evaluate(const DiskCoeffs& f, DiskCoeffs& out, bool parallel) const;
  int modes_;
  int grid_;
  Fft fft_;
};

DiskCoeffs rhs_disk(const DiskCoeffs& f, int pad = 4);
DiskCoeffs rhs_disk_serial(const DiskCoeffs& f, int pad = 4);

/// sup_x |W rhs_disk(W* u) - (-i P(|u|^2 u))| / sup_x |P(|u|^2 u)| on x in [-20, 20].
double rhs_consistency(const HardyRational& u, int modes);

struct ConservationRecord {
  double t = 0.0;
  double norm_drift = 0.0;    // | ||f_t|| - ||f_0|| | / ||f_0||
  double energy_drift = 0.0;  // |E_t - E_0| / E_0
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DiskCoeffs> states;
  std::vector<ConservationRecord> log;  // one record per checkpoint
  int steps = 0;
};

/// Norm drift that aborts a run.
inline constexpr double kMaxNormDrift = 1e-4;

/// RK4 from t = 0 through the checkpoints (all >= 0 or all <= 0, visited in
/// order of |t|). Each gap between checkpoints is split into
/// ceil(|gap| / dt) equal steps. Throws Unstable when the step fails the
/// precheck |dt| (3/4pi) max |1 - zeta|^2 |f|^2 < 2.5 or the norm drifts
/// beyond kMaxNormDrift.
Trajectory integrate(const DiskCoeffs& f0, std::span<const double> checkpoints,
                     const IntegratorConfig& cfg);

}  // namespace szego
