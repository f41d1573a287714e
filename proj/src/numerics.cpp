#include "szego/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "szego/errors.hpp"

namespace szego {

namespace {

double residual_bound_violation(const DenseMatrix& a, const DenseVector& x,
                                const DenseVector& b) {
  const double r = (a * x - b).norm();
  const double scale = a.norm() * x.norm();
  if (scale == 0.0) return r;
  return r / scale;
}

}  // namespace

LuSolver::LuSolver(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw SingularSystem("solve: matrix is not square");
  if (a.rows() == 0) {
    rcond_ = 1.0;
    return;
  }
  if (!a.allFinite()) throw SingularSystem("solve: non-finite matrix entries");
  lu_.compute(a);
  rcond_ = lu_.rcond();
  if (!(rcond_ >= 1.0 / kMaxCondition)) {
    std::ostringstream os;
    os << "solve: condition estimate " << (rcond_ > 0 ? 1.0 / rcond_ : INFINITY)
       << " exceeds " << kMaxCondition;
    throw SingularSystem(os.str());
  }
}

DenseVector LuSolver::solve(const DenseVector& b) const {
  if (b.size() == 0) return b;
  return lu_.solve(b);
}

DenseVector solve(const DenseMatrix& a, const DenseVector& b) {
  if (a.rows() != b.size()) throw SingularSystem("solve: dimension mismatch");
  LuSolver lu(a);
  DenseVector x = lu.solve(b);
  // One step of iterative refinement keeps the residual at roundoff level.
  x += lu.solve(b - a * x);
  if (residual_bound_violation(a, x, b) > 1e-11)
    throw SingularSystem("solve: residual bound violated");
  return x;
}

double hermiticity_defect(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double condition_number_hpd(const DenseMatrix& g) {
  if (g.size() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) <= 0.0) return INFINITY;
  return ev(ev.size() - 1) / ev(0);
}

HermitianEigen herm_gen_eig(const DenseMatrix& k, const DenseMatrix& g) {
  const auto n = k.rows();
  if (k.cols() != n || g.rows() != n || g.cols() != n)
    throw IllConditioned("herm_gen_eig: dimension mismatch");
  HermitianEigen out;
  if (n == 0) return out;
  const double scale_k = std::max(1.0, k.cwiseAbs().maxCoeff());
  const double scale_g = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (hermiticity_defect(k) > 1e-10 * scale_k || hermiticity_defect(g) > 1e-10 * scale_g)
    throw IllConditioned("herm_gen_eig: input is not Hermitian");
  const double cond = condition_number_hpd(g);
  if (!(cond <= kMaxCondition)) {
    std::ostringstream os;
    os << "herm_gen_eig: Gram condition number " << cond;
    throw IllConditioned(os.str());
  }
  // Symmetrize away the roundoff before handing to the Cholesky reduction.
  const DenseMatrix ks = 0.5 * (k + k.adjoint());
  const DenseMatrix gs = 0.5 * (g + g.adjoint());
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(ks, gs, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw IllConditioned("herm_gen_eig: Cholesky reduction failed");
  out.lambdas.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double l = es.eigenvalues()(j);
    if (l < 0.0 && l >= -1e-12 * scale_k) l = 0.0;
    out.lambdas[j] = l;
  }
  out.vectors = es.eigenvectors();
  return out;
}

HermitianEigen herm_eig(const DenseMatrix& k) {
  HermitianEigen out;
  if (k.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (k + k.adjoint()));
  if (es.info() != Eigen::Success) throw IllConditioned("herm_eig: no convergence");
  out.lambdas.assign(es.eigenvalues().data(), es.eigenvalues().data() + k.rows());
  out.vectors = es.eigenvectors();
  return out;
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

long next_power_of_two(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace szego
