#include "szego/hankel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "szego/errors.hpp"
#include "szego/format.hpp"

namespace szego {

DenseVector FiniteBasis::coordinates(const PoleSum& f) const {
  DenseVector rhs(dim());
  for (int j = 0; j < dim(); ++j) rhs(j) = inner_product(f, elems[j]);
  return solve(gram, rhs);
}

HardyRational FiniteBasis::combine(const DenseVector& c) const {
  PoleSum s;
  std::vector<PoleTerm> terms;
  for (int k = 0; k < dim(); ++k)
    for (const auto& t : elems[k].sum().terms()) {
      PoleTerm scaled = t;
      for (auto& x : scaled.coeffs) x *= c(k);
      terms.push_back(std::move(scaled));
    }
  return HardyRational(PoleSum(std::move(terms)));
}

DenseVector HankelMatrix::apply(const DenseVector& c) const {
  return solve(basis.gram, m * c.conjugate());
}

FiniteBasis invariant_basis(const HardyRational& u) {
  if (u.is_zero()) throw std::invalid_argument("invariant_basis: u must be nonzero");
  FiniteBasis b;
  for (const auto& t : u.sum().terms())
    for (int k = 1; k <= t.multiplicity(); ++k)
      b.elems.emplace_back(PoleSum::monomial(t.pole, k));
  const int d = b.dim();
  b.gram.resize(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) b.gram(j, k) = inner_product(b.elems[k], b.elems[j]);
  const double cond = condition_number_hpd(b.gram);
  if (!(cond <= kMaxCondition)) {
    std::ostringstream os;
    os << "invariant_basis: Gram condition number " << cond << " exceeds " << kMaxCondition;
    throw IllConditioned(os.str());
  }
  return b;
}

HardyRational hankel_apply(const HardyRational& u, const HardyRational& f) {
  return project_upper(multiply(u, conjugate(f)));
}

HankelMatrix hankel_matrix(const HardyRational& u, const FiniteBasis& basis) {
  HankelMatrix h{DenseMatrix(basis.dim(), basis.dim()), basis};
  // m(j, k) = integral of u conj(e_k) conj(e_j), by residues.
  for (int k = 0; k < basis.dim(); ++k) {
    const PoleSum uk = multiply(u, conjugate(basis.elems[k]));
    for (int j = 0; j < basis.dim(); ++j) h.m(j, k) = inner_product(uk, basis.elems[j]);
  }
  return h;
}

SpectralData hankel_square_spectrum(const HardyRational& u) {
  SpectralData s;
  s.basis = invariant_basis(u);
  const HankelMatrix h = hankel_matrix(u, s.basis);
  const DenseMatrix& g = s.basis.gram;
  // H_u^2 on coordinates is G^{-1} M conj(G)^{-1} conj(M); K = M conj(G)^{-1} conj(M).
  const DenseMatrix gbar = g.conjugate();
  const DenseMatrix k = h.m * gbar.partialPivLu().solve(h.m.conjugate());
  HermitianEigen eig = herm_gen_eig(0.5 * (k + k.adjoint()), g);
  s.lambdas = std::move(eig.lambdas);
  s.vectors = std::move(eig.vectors);
  const DenseVector cu = s.basis.coordinates(u);
  s.a = s.vectors.adjoint() * g * cu;
  for (int j = 0; j < s.dim(); ++j) s.eigenfunctions.push_back(s.basis.combine(s.vectors.col(j)));
  return s;
}

DenseVector spectral_coordinates(const SpectralData& spec, const PoleSum& g) {
  DenseVector c(spec.dim());
  for (int j = 0; j < spec.dim(); ++j) c(j) = inner_product(g, spec.eigenfunctions[j]);
  return c;
}

std::string SpectralData::to_json() const {
  std::ostringstream os;
  os << "{\"lambdas\":[";
  for (int j = 0; j < dim(); ++j) os << (j ? "," : "") << format_json_double(lambdas[j]);
  os << "],\"a\":[";
  for (int j = 0; j < dim(); ++j)
    os << (j ? "," : "") << "[" << format_json_double(a(j).real()) << "," << format_json_double(a(j).imag()) << "]";
  os << "]}";
  return os.str();
}

HardyRational toeplitz_apply(const PoleSum& b, const HardyRational& f) {
  return project_upper(multiply(b, f));
}

HardyRational lax_b_apply(const HardyRational& u, const HardyRational& f) {
  const PoleSum u2 = multiply(u, conjugate(u));
  const HardyRational t = toeplitz_apply(u2, f);
  const HardyRational h2 = hankel_apply(u, hankel_apply(u, f));
  return Complex(0.0, -1.0) * t + Complex(0.0, 0.5) * h2;
}

PoleSum commutator_bracket0_defect(const PoleSum& b, const HardyRational& f) {
  const PoleSum lhs = apply_a_star(toeplitz_apply(b, f)) -
                      toeplitz_apply(b, HardyRational(apply_a_star(f)));
  const PoleSum rhs = project_upper(b) * (kI / (2.0 * kPi) * iplus(f));
  return lhs - rhs;
}

PoleSum lax_bracket_defect(const HardyRational& u, const HardyRational& f) {
  const HardyRational af(apply_a_star(f));
  auto h2 = [&](const HardyRational& g) { return hankel_apply(u, hankel_apply(u, g)); };
  const PoleSum bracket_b = apply_a_star(lax_b_apply(u, f)) - lax_b_apply(u, af).sum();
  const PoleSum bracket_h2 = apply_a_star(h2(f)) - h2(af).sum();
  const PoleSum rank_one = u.sum() * (inner_product(f, u) / (2.0 * kPi));
  return bracket_b + bracket_h2 * Complex(0.0, 0.5) - rank_one;
}

PoleSum hankel_square_toeplitz_defect(const HardyRational& u, const HardyRational& f) {
  const PoleSum u2 = multiply(u, conjugate(u));
  const HardyRational h2 = hankel_apply(u, hankel_apply(u, f));
  const HardyRational tu_tubar = toeplitz_apply(u, toeplitz_apply(conjugate(u), f));
  return h2.sum() - (toeplitz_apply(u2, f).sum() - tu_tubar.sum());
}

}  // namespace szego
