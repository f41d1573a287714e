#include "szego/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "szego/errors.hpp"
#include "szego/format.hpp"

namespace szego {

namespace {

const Complex kMinusI(0.0, -1.0);

LOperator make_l(const HardyRational& u, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("CayleyTransform: t must be nonnegative");
  if (u.is_zero()) {
    LOperator l;
    l.t = t;
    l.c = DenseMatrix::Zero(0, 0);
    return l;
  }
  return build_L(hankel_square_spectrum(u), t);
}

// Sigma_0 h = ((x - i)/(x + i)) h.
PoleSum sigma0(const PoleSum& h) { return h - divide_by_linear(h, kMinusI) * Complex(0.0, 2.0); }

}  // namespace

CayleyTransform::CayleyTransform(const HardyRational& u, double t) : u_(u), l_(make_l(u, t)) {}

HardyRational CayleyTransform::apply(const HardyRational& f, Cayley which) const {
  if (which == Cayley::Sigma)
    return f - Complex(0.0, 2.0) * resolve_dissipative(l_, Generator::APlusL, kMinusI, f);
  return f + Complex(0.0, 2.0) * resolve_dissipative(l_, Generator::AstarPlusL, kI, f);
}

HardyRational CayleyTransform::defect_vector() const {
  const HardyRational v = reproducing_kernel(UhpPoint(kI));
  const HardyRational g = resolve_dissipative(l_, Generator::APlusL, kMinusI, l_.apply(v));
  return std::sqrt(4.0 * kPi) * (v - g);
}

HardyRational CayleyTransform::apply_representation(const HardyRational& f) const {
  const SpectralData& spec = l_.spec;
  const int d = spec.dim();
  if (d == 0) return HardyRational(sigma0(f));
  // (I - Sigma_0) h = 2i h / (x + i).
  auto one_minus_sigma0 = [](const PoleSum& h) { return divide_by_linear(h, kMinusI) * Complex(0.0, 2.0); };
  DenseMatrix dm(d, d);
  DenseVector s(d);
  const PoleSum rf = one_minus_sigma0(f);
  for (int j = 0; j < d; ++j) {
    const PoleSum rj = one_minus_sigma0(spec.eigenfunctions[j]);
    for (int k = 0; k < d; ++k) dm(k, j) = inner_product(rj, spec.eigenfunctions[k]);
  }
  for (int k = 0; k < d; ++k) s(k) = inner_product(rf, spec.eigenfunctions[k]);
  const Complex half_inv_i = 1.0 / Complex(0.0, 2.0);
  const DenseMatrix m = DenseMatrix::Identity(d, d) + dm * l_.c * half_inv_i;
  const DenseVector delta = solve(m, s);
  const DenseVector beta = l_.c * delta * half_inv_i;
  const HardyRational th = spec.basis.combine(spec.vectors * beta);
  const HardyRational h = f - th;
  return HardyRational(sigma0(h)) + th;
}

HardyRational CayleyTransform::aux_hankel(const HardyRational& f) const {
  const SpectralData& spec = l_.spec;
  if (spec.dim() == 0) return {};
  const DenseVector beta = spectral_coordinates(spec, hankel_apply(u_, f));
  DenseVector w(spec.dim());
  for (int j = 0; j < spec.dim(); ++j) w(j) = beta(j) * std::exp(Complex(0.0, -l_.t * spec.lambdas[j]));
  return spec.basis.combine(spec.vectors * w);
}

HardyRational cayley_apply(const HardyRational& u, double t, const HardyRational& f, Cayley which) {
  return CayleyTransform(u, t).apply(f, which);
}

HardyRational defect_vector_q(const HardyRational& u, double t) {
  return CayleyTransform(u, t).defect_vector();
}

double commutation_defect(const HardyRational& u, double t, const HardyRational& f) {
  const CayleyTransform ct(u, t);
  const HardyRational lhs = ct.apply(ct.aux_hankel(f), Cayley::SigmaStar);
  const HardyRational rhs = ct.aux_hankel(ct.apply(f, Cayley::Sigma));
  return norm(lhs - rhs);
}

// ------------------------------------------------------------- Plancherel

PlancherelResult plancherel_partials(const HardyRational& u, double t, int iterations,
                                     int max_multiplicity) {
  if (iterations < 0) throw std::invalid_argument("plancherel_partials: negative iteration count");
  if (iterations > max_multiplicity) {
    std::ostringstream os;
    os << "plancherel_partials: " << iterations << " iterations exceed the multiplicity cap "
       << max_multiplicity;
    throw DegenerateCollision(os.str());
  }
  const LOperator l = make_l(u, t);
  const SpectralData& spec = l.spec;
  const int d = spec.dim();
  const BlaschkeSpace space = BlaschkeSpace::for_function(u);

  std::vector<BlaschkeSeries> phi, rphi;
  for (const auto& e : spec.eigenfunctions) {
    phi.push_back(space.embed(e));
    rphi.push_back(BlaschkeSpace::resolvent_plus_i(phi.back()));
  }
  DenseMatrix b(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) b(k, j) = space.inner(rphi[j], phi[k]);
  const LuSolver lu(DenseMatrix::Identity(d, d) + b * l.c);

  // (A + L + i)^{-1} h = R h - sum_j alpha_j R phi_j with R = (A + i)^{-1}.
  auto correction = [&](const BlaschkeSeries& rh) {
    DenseVector s(d);
    for (int k = 0; k < d; ++k) s(k) = space.inner(rh, phi[k]);
    return DenseVector(l.c * lu.solve(s));
  };
  auto sigma = [&](const BlaschkeSeries& f) {
    BlaschkeSeries out = BlaschkeSpace::shift(f);
    if (d == 0) return out;
    const DenseVector alpha = correction(BlaschkeSpace::resolvent_plus_i(f));
    for (int j = 0; j < d; ++j) BlaschkeSpace::axpy(out, Complex(0.0, 2.0) * alpha(j), rphi[j]);
    return out;
  };

  const HardyRational vi = reproducing_kernel(UhpPoint(kI));
  BlaschkeSeries q = space.embed(vi);
  if (d > 0) {
    const BlaschkeSeries rlv = BlaschkeSpace::resolvent_plus_i(space.embed(l.apply(vi)));
    BlaschkeSpace::axpy(q, -1.0, rlv);
    const DenseVector alpha = correction(rlv);
    for (int j = 0; j < d; ++j) BlaschkeSpace::axpy(q, alpha(j), rphi[j]);
  }
  q.c *= std::sqrt(4.0 * kPi);

  const BlaschkeSeries p = space.embed(evolve_phase(spec, t));
  PlancherelResult res;
  res.p_norm2 = space.norm_squared(p);
  std::vector<BlaschkeSeries> iterates;
  BlaschkeSeries cur = q;
  double acc = 0.0;
  for (int n = 0; n <= iterations; ++n) {
    acc += std::norm(space.inner(p, cur));
    res.partials.push_back(acc);
    iterates.push_back(cur);
    if (n < iterations) cur = sigma(cur);
  }
  for (std::size_t i = 0; i < iterates.size(); ++i)
    for (std::size_t j = i; j < iterates.size(); ++j) {
      const Complex g = space.inner(iterates[i], iterates[j]) - (i == j ? 1.0 : 0.0);
      res.gram_defect = std::max(res.gram_defect, std::abs(g));
    }
  return res;
}

// ------------------------------------------------------------------ audit

std::vector<HardyRational> audit_probes(const HardyRational& u) {
  std::vector<HardyRational> probes;
  if (!u.is_zero()) probes.push_back(u);
  probes.push_back(reproducing_kernel(UhpPoint(kI)));
  probes.push_back(reproducing_kernel(UhpPoint(Complex(-0.5, 2.0))));
  probes.emplace_back(PoleSum::monomial(Complex(1.0, -0.5), 1, Complex(0.3, 0.2)));
  probes.emplace_back(PoleSum::monomial(Complex(-1.0, -1.0), 2, 1.0));
  probes.emplace_back(PoleSum::monomial(Complex(0.0, -1.0), 3, 0.5) +
                      PoleSum::monomial(Complex(2.0, -1.5), 1, Complex(0.0, 1.0)));
  return probes;
}

ContractionAudit run_audit(const HardyRational& u, double t, int iterations) {
  ContractionAudit a;
  a.t = t;
  a.u_norm2 = norm_squared(u);
  const CayleyTransform ct(u, t);
  const HardyRational q = ct.defect_vector();
  a.q_norm = norm(q);
  a.sigma_star_q = norm(ct.apply(q, Cayley::SigmaStar));

  const std::vector<HardyRational> probes = audit_probes(u);
  std::vector<HardyRational> images;
  for (const auto& f : probes) images.push_back(ct.apply(f, Cayley::Sigma));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i; j < probes.size(); ++j) {
      const Complex d = inner_product(images[i], images[j]) - inner_product(probes[i], probes[j]);
      a.isometry_defect = std::max(a.isometry_defect, std::abs(d));
    }
    const HardyRational back = ct.apply(ct.apply(probes[i], Cayley::SigmaStar), Cayley::Sigma);
    const HardyRational resid = back - probes[i] + inner_product(probes[i], q) * q;
    a.coisometry_defect = std::max(a.coisometry_defect, norm(resid));
    a.representation_defect =
        std::max(a.representation_defect, norm(images[i] - ct.apply_representation(probes[i])));
    const HardyRational lhs = ct.apply(ct.aux_hankel(probes[i]), Cayley::SigmaStar);
    const HardyRational rhs = ct.aux_hankel(images[i]);
    a.commutation_defect = std::max(a.commutation_defect, norm(lhs - rhs));
  }

  const PlancherelResult pr = plancherel_partials(u, t, iterations);
  a.plancherel_partials = pr.partials;
  a.gram_defect = pr.gram_defect;
  for (std::size_t n = 1; n < pr.partials.size(); ++n)
    if (pr.partials[n] < pr.partials[n - 1]) a.plancherel_monotone = false;
  a.plancherel_ratio = a.u_norm2 > 0.0 ? pr.partials.back() / a.u_norm2 : 1.0;
  return a;
}

std::string ContractionAudit::to_json() const {
  std::ostringstream os;
  os << "{\"t\":" << format_json_double(t) << ",\"u_norm2\":" << format_json_double(u_norm2)
     << ",\"q_norm\":" << format_json_double(q_norm) << ",\"sigma_star_q\":" << format_json_double(sigma_star_q)
     << ",\"isometry_defect\":" << format_json_double(isometry_defect)
     << ",\"coisometry_defect\":" << format_json_double(coisometry_defect)
     << ",\"representation_defect\":" << format_json_double(representation_defect)
     << ",\"gram_defect\":" << format_json_double(gram_defect)
     << ",\"plancherel_partials\":[";
  for (std::size_t n = 0; n < plancherel_partials.size(); ++n)
    os << (n ? "," : "") << format_json_double(plancherel_partials[n]);
  os << "],\"plancherel_monotone\":" << (plancherel_monotone ? "true" : "false")
     << ",\"plancherel_ratio\":" << format_json_double(plancherel_ratio)
     << ",\"commutation_defect\":" << format_json_double(commutation_defect) << "}";
  return os.str();
}

}  // namespace szego
