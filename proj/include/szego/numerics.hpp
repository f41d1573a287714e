#pragma once

// Small dense complex linear algebra, FFT and quadrature shared by every
// other module. Dense work is delegated to Eigen; every routine checks its
// own residual or conditioning and throws on failure.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace szego {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Condition-number ceiling shared by `solve` and the Gram checks.
inline constexpr double kMaxCondition = 1e12;

/// LU solve with partial pivoting. Throws SingularSystem when the reciprocal
/// condition estimate falls below 1/kMaxCondition or the residual bound
/// ||Ax - b|| <= 1e-11 ||A|| ||x|| fails.
DenseVector solve(const DenseMatrix& a, const DenseVector& b);

/// Reusable LU factorization for repeated right-hand sides.
class LuSolver {
 public:
  explicit LuSolver(const DenseMatrix& a);
  DenseVector solve(const DenseVector& b) const;
  double rcond() const { return rcond_; }

 private:
  Eigen::PartialPivLU<DenseMatrix> lu_;
  double rcond_ = 0.0;
};

struct HermitianEigen {
  std::vector<double> lambdas;  // ascending
  DenseMatrix vectors;          // columns, G-orthonormal
};

/// Generalized Hermitian eigenproblem K v = lambda G v by Cholesky reduction
/// G = C C*. Eigenvalues in [-1e-12, 0) are clamped to zero.
/// Throws IllConditioned if G is not numerically positive definite or its
/// condition number exceeds kMaxCondition.
HermitianEigen herm_gen_eig(const DenseMatrix& k, const DenseMatrix& g);

/// Ordinary Hermitian eigenproblem, eigenvalues ascending (no clamping).
HermitianEigen herm_eig(const DenseMatrix& k);

double hermiticity_defect(const DenseMatrix& m);
double condition_number_hpd(const DenseMatrix& g);

// ---------------------------------------------------------------- quadrature

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on the Legendre recurrence).
GaussRule gauss_legendre(int n);

/// Sum of w_k f_k.
Complex quadrature(std::span<const Complex> samples, std::span<const double> weights);
double quadrature(std::span<const double> samples, std::span<const double> weights);

/// Vectorized real integrand: fills out[k] = f(xs[k]).
using BatchIntegrand =
    std::function<void(std::span<const double> xs, std::span<double> out)>;

struct LineQuadratureOptions {
  double half_width = 200.0;  // core window [-X, X]
  int panels = 256;           // initial composite panels on the core
  int nodes_per_panel = 16;
  double rel_tol = 1e-12;     // per-panel refinement target (relative to total)
  int max_depth = 12;
};

struct LineQuadratureResult {
  double value = 0.0;
  double core = 0.0;
  double tails = 0.0;
  int evaluations = 0;
};

/// Integral of a nonnegative-ish integrand over the whole real line: adaptive
/// composite Gauss-Legendre on [-X, X], plus both tails mapped to [0, 1] via
/// x = +-X / s, which is exact for integrands decaying like 1/x^2.
LineQuadratureResult integrate_real_line(const BatchIntegrand& f,
                                         const LineQuadratureOptions& opts = {});

// ----------------------------------------------------------------------- fft

/// Forward transform X[n] = sum_k x[k] e^{-2 pi i n k / M}, unnormalized.
/// `size` must be a power of two. Plans are created under a global lock and
/// then executed on per-call buffers, so the object is safe to share.
class Fft {
 public:
  explicit Fft(int size);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return size_; }
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// Unnormalized inverse, x[k] = sum_n X[n] e^{+2 pi i n k / M}.
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  int size_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

bool is_power_of_two(long n);
long next_power_of_two(long n);

}  // namespace szego
