#pragma once

// Exact partial-fraction arithmetic on rational functions vanishing at
// infinity, and the Hardy-space operations on the subclass whose poles all
// lie in the lower half-plane.
//
// A PoleSum stores f(x) = sum_j sum_{k=1..m_j} c_{j,k} (x - p_j)^{-k}.
// Inner products are taken on the real line, linear in the first slot.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "szego/numerics.hpp"

namespace szego {

/// Poles closer than this (absolute complex distance) are the same pole.
inline constexpr double kPoleMergeTol = 1e-10;
/// Coefficients below this fraction of the largest one are dropped.
inline constexpr double kCoeffDropRel = 1e-13;
inline constexpr int kDefaultMaxMultiplicity = 64;

struct PoleTerm {
  Complex pole;
  std::vector<Complex> coeffs;  // coeffs[k-1] multiplies (x - pole)^{-k}

  int multiplicity() const { return static_cast<int>(coeffs.size()); }
};

class PoleSum {
 public:
  PoleSum() = default;
  /// Canonicalizes: merges nearby poles, drops negligible coefficients,
  /// trims vanishing top orders, sorts poles by (real, imag).
  explicit PoleSum(std::vector<PoleTerm> terms);

  /// c (x - pole)^{-order}.
  static PoleSum monomial(Complex pole, int order = 1, Complex coeff = 1.0);

  const std::vector<PoleTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Sum of multiplicities (the degree of the denominator).
  int total_order() const;
  int max_multiplicity() const;
  double max_abs_coeff() const;

  /// pf_eval. Throws PoleHit within kPoleMergeTol of a pole.
  Complex operator()(Complex z) const;

  PoleSum& operator+=(const PoleSum& other);
  PoleSum& operator-=(const PoleSum& other);
  PoleSum& operator*=(Complex s);

  friend PoleSum operator+(PoleSum a, const PoleSum& b) { return a += b; }
  friend PoleSum operator-(PoleSum a, const PoleSum& b) { return a -= b; }
  friend PoleSum operator*(PoleSum a, Complex s) { return a *= s; }
  friend PoleSum operator*(Complex s, PoleSum a) { return a *= s; }
  PoleSum operator-() const { return *this * Complex(-1.0); }

 private:
  std::vector<PoleTerm> terms_;
};

/// A PoleSum with every pole strictly in the lower half-plane, i.e. an element
/// of the rational class inside H^2 of the upper half-plane.
class HardyRational {
 public:
  HardyRational() = default;
  /// Throws NotHardy if some pole has Im >= 0.
  explicit HardyRational(PoleSum f);

  const PoleSum& sum() const { return f_; }
  operator const PoleSum&() const { return f_; }
  Complex operator()(Complex z) const { return f_(z); }
  bool is_zero() const { return f_.is_zero(); }

  friend HardyRational operator+(const HardyRational& a, const HardyRational& b);
  friend HardyRational operator-(const HardyRational& a, const HardyRational& b);
  friend HardyRational operator*(Complex s, const HardyRational& a);
  friend HardyRational operator*(const HardyRational& a, Complex s) { return s * a; }

 private:
  PoleSum f_;
};

/// A point of the open upper half-plane.
class UhpPoint {
 public:
  /// Throws std::invalid_argument unless Im z > 0.
  explicit UhpPoint(Complex z);
  Complex value() const { return z_; }

 private:
  Complex z_;
};

// ------------------------------------------------------------- algebra

Complex evaluate(const PoleSum& f, Complex z);

/// Exact partial-fraction expansion of f g. Throws DegenerateCollision when a
/// merged pole would exceed `max_multiplicity`.
PoleSum multiply(const PoleSum& f, const PoleSum& g,
                 int max_multiplicity = kDefaultMaxMultiplicity);

/// Complex conjugate on the real line: (p, k, c) -> (conj p, k, conj c).
PoleSum conjugate(const PoleSum& f);

/// Szego projection: keeps the lower-half-plane terms.
HardyRational project_upper(const PoleSum& f);

/// Integral of f conj(g) over the real line, by residues in the upper half-plane.
Complex inner_product(const PoleSum& f, const PoleSum& g);
double norm_squared(const PoleSum& f);
double norm(const PoleSum& f);

// ------------------------------------------------- the generator A and A*

/// (A* - z)^{-1} f (x) = (f(x) - f(z)) / (x - z); same poles as f.
HardyRational resolvent_a_star(const HardyRational& f, UhpPoint z);
/// (A - conj z)^{-1} f (x) = f(x) / (x - conj z).
HardyRational resolvent_a(const HardyRational& f, UhpPoint z);

/// Algebraic versions that accept any w off the poles of f; used for boundary
/// evaluation and the dissipative solves.
PoleSum divided_difference(const PoleSum& f, Complex w);  // (f(x) - f(w)) / (x - w)
PoleSum divide_by_linear(const PoleSum& f, Complex w);    // f(x) / (x - w)

/// A* g = x g(x) - lim_{x->oo} x g(x) on rational g.
PoleSum apply_a_star(const PoleSum& g);
/// A g = x g(x); throws std::domain_error unless g = O(1/x^2).
PoleSum apply_a(const PoleSum& g);
/// lim_{x->oo} x f(x) = sum of first-order coefficients.
Complex leading_coefficient(const PoleSum& f);

/// I_+(f) = \hat f(0+) = -2 pi i sum_j c_{j,1}.
Complex iplus(const PoleSum& f);

// ------------------------------------------------------ special vectors

/// Reproducing kernel v_a(x) = (1/(2 pi i)) (conj(a) - x)^{-1}.
HardyRational reproducing_kernel(UhpPoint a);
/// chi_eps(x) = 1/(1 - i eps x).
HardyRational approximate_identity(double eps);
/// (R f)(x) = conj(f(-x)); poles p -> -conj(p).
HardyRational reflect(const HardyRational& f);
/// x -> f(mu x) for mu > 0.
HardyRational dilate(const HardyRational& f, double mu);

// -------------------------------------------------------------- serialization

/// {"terms":[{"pole":[re,im],"coeffs":[[re,im],...]}]}, coeffs[k-1] = order k.
std::string to_json(const PoleSum& f);
PoleSum pole_sum_from_json(const std::string& text);

}  // namespace szego
