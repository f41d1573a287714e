#pragma once

// Cayley transforms of the maximal dissipative operator A + L_u(t):
//   Sigma_u   = (A + L - i)(A + L + i)^{-1}  = I - 2i (A + L + i)^{-1},
//   Sigma_u^* = I + 2i (A* + L - i)^{-1},
// the defect vector q = sqrt(4 pi) (I - (A + L + i)^{-1} L) v_i, and the
// audits built on them.

#include <string>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/flow.hpp"
#include "szego/rational.hpp"

namespace szego {

enum class Cayley { Sigma, SigmaStar };

/// Everything that depends on (u, t) only.
class CayleyTransform {
 public:
  CayleyTransform(const HardyRational& u, double t);

  const LOperator& l_operator() const { return l_; }
  double time() const { return l_.t; }

  HardyRational apply(const HardyRational& f, Cayley which) const;
  HardyRational defect_vector() const;

  /// Sigma_u through the representation
  ///   (Sigma_0 + T)(I + T)^{-1},  T = (1/2i) L (I - Sigma_0),
  /// solved as a second, independent finite-rank system.
  HardyRational apply_representation(const HardyRational& f) const;

  /// e^{-itH^2} H_u f, the auxiliary anti-linear operator.
  HardyRational aux_hankel(const HardyRational& f) const;

 private:
  HardyRational u_;
  LOperator l_;
};

HardyRational cayley_apply(const HardyRational& u, double t, const HardyRational& f, Cayley which);
HardyRational defect_vector_q(const HardyRational& u, double t);

struct PlancherelResult {
  std::vector<double> partials;  // P_n = sum_{m <= n} |<p, Sigma^m q>|^2
  double gram_defect = 0.0;      // max |Gram({Sigma^n q}) - I|
  double p_norm2 = 0.0;          // ||p||^2 = ||u||^2
};

/// Iterates Sigma_u on q in the Blaschke-shift representation. Sigma^n q has
/// a pole of order n + 1 at -i, so `iterations` may not exceed
/// `max_multiplicity` (DegenerateCollision otherwise).
PlancherelResult plancherel_partials(const HardyRational& u, double t, int iterations,
                                     int max_multiplicity = kDefaultMaxMultiplicity);

/// || Sigma^* (H f) - H (Sigma f) || with H the auxiliary Hankel operator.
double commutation_defect(const HardyRational& u, double t, const HardyRational& f);

struct ContractionAudit {
  double t = 0.0;
  double u_norm2 = 0.0;
  double q_norm = 0.0;
  double sigma_star_q = 0.0;          // ||Sigma^* q||
  double isometry_defect = 0.0;       // max |<Sigma f, Sigma g> - <f, g>|
  double coisometry_defect = 0.0;     // max ||Sigma Sigma^* f - f + <f, q> q||
  double representation_defect = 0.0;
  double gram_defect = 0.0;
  std::vector<double> plancherel_partials;
  bool plancherel_monotone = true;
  double plancherel_ratio = 0.0;      // P_N / ||u||^2
  double commutation_defect = 0.0;

  std::string to_json() const;
};

/// Fixed deterministic probe vectors used by the audit.
std::vector<HardyRational> audit_probes(const HardyRational& u);
ContractionAudit run_audit(const HardyRational& u, double t, int iterations = 40);

}  // namespace szego
