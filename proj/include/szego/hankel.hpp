#pragma once

// Anti-linear Hankel operators H_u f = P(u conj f) and Toeplitz operators
// T_b f = P(b f) with rational symbols, the finite-dimensional invariant
// subspace R_u spanned by the pole monomials of u, and the spectral
// decomposition of H_u^2 on it.

#include <string>
#include <vector>

#include "szego/numerics.hpp"
#include "szego/rational.hpp"

namespace szego {

/// Monomial basis {(x - p_j)^{-k}, k = 1..m_j} of R_u with its Gram matrix
/// gram(j, k) = <elems[k], elems[j]>.
struct FiniteBasis {
  std::vector<HardyRational> elems;
  DenseMatrix gram;

  int dim() const { return static_cast<int>(elems.size()); }
  /// Coordinates of f in the basis (Gram solve); f must lie in the span.
  DenseVector coordinates(const PoleSum& f) const;
  HardyRational combine(const DenseVector& c) const;
};

struct HankelMatrix {
  DenseMatrix m;  // m(j, k) = <H_u e_k, e_j>, symmetric
  FiniteBasis basis;

  /// Coordinates of H_u f from coordinates of f: G^{-1} M conj(c).
  DenseVector apply(const DenseVector& c) const;
};

struct SpectralData {
  std::vector<double> lambdas;                // eigenvalues of H_u^2 on R_u, ascending
  DenseMatrix vectors;                        // G-orthonormal coordinate columns
  std::vector<HardyRational> eigenfunctions;  // phi_j
  DenseVector a;                              // a_j = <u, phi_j>
  FiniteBasis basis;

  int dim() const { return static_cast<int>(lambdas.size()); }
  std::string to_json() const;
};

/// Throws std::invalid_argument for u = 0 and IllConditioned when the Gram
/// condition number exceeds 1e12.
FiniteBasis invariant_basis(const HardyRational& u);

HardyRational hankel_apply(const HardyRational& u, const HardyRational& f);
HankelMatrix hankel_matrix(const HardyRational& u, const FiniteBasis& basis);
SpectralData hankel_square_spectrum(const HardyRational& u);

/// Coordinates of g in the eigenbasis, <g, phi_j>; exact when g lies in R_u.
DenseVector spectral_coordinates(const SpectralData& spec, const PoleSum& g);

HardyRational toeplitz_apply(const PoleSum& b, const HardyRational& f);

/// B_u f = -i T_{|u|^2} f + (i/2) H_u^2 f.
HardyRational lax_b_apply(const HardyRational& u, const HardyRational& f);

/// [A*, T_b] f - (i/2pi) I_+(f) P b; identically zero.
PoleSum commutator_bracket0_defect(const PoleSum& b, const HardyRational& f);

/// [A*, B_u] f + (i/2)[A*, H_u^2] f - (1/2pi) <f, u> u; identically zero.
PoleSum lax_bracket_defect(const HardyRational& u, const HardyRational& f);

/// H_u^2 f - (T_{|u|^2} f - T_u T_{conj u} f); identically zero.
PoleSum hankel_square_toeplitz_defect(const HardyRational& u, const HardyRational& f);

}  // namespace szego
