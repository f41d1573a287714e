#include "szego/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "szego/errors.hpp"

namespace szego {

namespace {

// Pascal's triangle up to the largest order products we can build.
double binomial(int n, int k) {
  static const std::vector<std::vector<double>> table = [] {
    constexpr int kMax = 2 * kDefaultMaxMultiplicity + 8;
    std::vector<std::vector<double>> t(kMax + 1);
    for (int i = 0; i <= kMax; ++i) {
      t[i].assign(i + 1, 1.0);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0;
  if (n < static_cast<int>(table.size())) return table[n][k];
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

Complex ipow(Complex z, int n) {
  // z^n for integer n (n may be negative); repeated squaring keeps it exact-ish.
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex r = 1.0;
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

// Coefficient accumulator keyed by pole (with merge tolerance).
class Accumulator {
 public:
  std::vector<Complex>& at(Complex pole) {
    for (auto& t : terms_)
      if (std::abs(t.pole - pole) < kPoleMergeTol) return t.coeffs;
    terms_.push_back({pole, {}});
    return terms_.back().coeffs;
  }
  void add(Complex pole, int order, Complex c) {
    auto& cs = at(pole);
    if (static_cast<int>(cs.size()) < order) cs.resize(order, 0.0);
    cs[order - 1] += c;
  }
  std::vector<PoleTerm> take() { return std::move(terms_); }

 private:
  std::vector<PoleTerm> terms_;
};

}  // namespace

// ------------------------------------------------------------------ PoleSum

PoleSum::PoleSum(std::vector<PoleTerm> terms) {
  Accumulator acc;
  for (auto& t : terms) {
    if (!is_finite(t.pole)) throw std::invalid_argument("PoleSum: non-finite pole");
    if (std::abs(t.pole.imag()) <= kPoleMergeTol)
      throw std::invalid_argument("PoleSum: pole on the real axis");
    auto& cs = acc.at(t.pole);
    if (cs.size() < t.coeffs.size()) cs.resize(t.coeffs.size(), 0.0);
    for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
      if (!is_finite(t.coeffs[k])) throw std::invalid_argument("PoleSum: non-finite coefficient");
      cs[k] += t.coeffs[k];
    }
  }
  terms_ = acc.take();
  double big = 0.0;
  for (const auto& t : terms_)
    for (auto c : t.coeffs) big = std::max(big, std::abs(c));
  const double floor = big * kCoeffDropRel;
  for (auto& t : terms_) {
    for (auto& c : t.coeffs)
      if (std::abs(c) < floor || c == Complex(0.0)) c = 0.0;
    while (!t.coeffs.empty() && t.coeffs.back() == Complex(0.0)) t.coeffs.pop_back();
  }
  std::erase_if(terms_, [](const PoleTerm& t) { return t.coeffs.empty(); });
  std::sort(terms_.begin(), terms_.end(), [](const PoleTerm& a, const PoleTerm& b) {
    if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
    return a.pole.imag() < b.pole.imag();
  });
}

PoleSum PoleSum::monomial(Complex pole, int order, Complex coeff) {
  if (order < 1) throw std::invalid_argument("PoleSum::monomial: order must be >= 1");
  std::vector<Complex> cs(order, 0.0);
  cs[order - 1] = coeff;
  return PoleSum({{pole, std::move(cs)}});
}

int PoleSum::total_order() const {
  int d = 0;
  for (const auto& t : terms_) d += t.multiplicity();
  return d;
}

int PoleSum::max_multiplicity() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.multiplicity());
  return m;
}

double PoleSum::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_)
    for (auto c : t.coeffs) m = std::max(m, std::abs(c));
  return m;
}

Complex PoleSum::operator()(Complex z) const {
  Complex s = 0.0;
  for (const auto& t : terms_) {
    const Complex d = z - t.pole;
    if (std::abs(d) < kPoleMergeTol) {
      std::ostringstream os;
      os << "evaluation point " << z << " hits pole " << t.pole;
      throw PoleHit(os.str());
    }
    // Horner in 1/d: sum_k c_k d^{-k}.
    const Complex inv = 1.0 / d;
    Complex acc = 0.0;
    for (int k = t.multiplicity() - 1; k >= 0; --k) acc = (acc + t.coeffs[k]) * inv;
    s += acc;
  }
  return s;
}

PoleSum& PoleSum::operator+=(const PoleSum& other) {
  std::vector<PoleTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  *this = PoleSum(std::move(all));
  return *this;
}

PoleSum& PoleSum::operator-=(const PoleSum& other) { return *this += other * Complex(-1.0); }

PoleSum& PoleSum::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_)
    for (auto& c : t.coeffs) c *= s;
  return *this;
}

// ------------------------------------------------------------ HardyRational

HardyRational::HardyRational(PoleSum f) : f_(std::move(f)) {
  for (const auto& t : f_.terms())
    if (!(t.pole.imag() < 0.0)) {
      std::ostringstream os;
      os << "pole " << t.pole << " is not in the lower half-plane";
      throw NotHardy(os.str());
    }
}

HardyRational operator+(const HardyRational& a, const HardyRational& b) {
  return HardyRational(a.f_ + b.f_);
}
HardyRational operator-(const HardyRational& a, const HardyRational& b) {
  return HardyRational(a.f_ - b.f_);
}
HardyRational operator*(Complex s, const HardyRational& a) { return HardyRational(a.f_ * s); }

UhpPoint::UhpPoint(Complex z) : z_(z) {
  if (!(z.imag() > 0.0) || !is_finite(z))
    throw std::invalid_argument("UhpPoint: imaginary part must be positive");
}

// ------------------------------------------------------------------ algebra

Complex evaluate(const PoleSum& f, Complex z) { return f(z); }

PoleSum multiply(const PoleSum& f, const PoleSum& g, int max_multiplicity) {
  Accumulator acc;
  for (const auto& tf : f.terms()) {
    for (const auto& tg : g.terms()) {
      const Complex a = tf.pole, b = tg.pole;
      const int m = tf.multiplicity(), n = tg.multiplicity();
      if (std::abs(a - b) < kPoleMergeTol) {
        if (m + n > max_multiplicity) {
          std::ostringstream os;
          os << "multiplicity " << m + n << " at pole " << a << " exceeds cap " << max_multiplicity;
          throw DegenerateCollision(os.str());
        }
        for (int k = 1; k <= m; ++k)
          for (int l = 1; l <= n; ++l) acc.add(a, k + l, tf.coeffs[k - 1] * tg.coeffs[l - 1]);
        continue;
      }
      // (x-a)^{-k} (x-b)^{-l}
      //   = sum_{s<k} C(l+s-1, s) (-1)^s d^{-l-s} (x-a)^{-(k-s)}
      //   + sum_{s<l} C(k+s-1, s) (-1)^s (-d)^{-k-s} (x-b)^{-(l-s)},   d = a - b.
      const Complex d = a - b;
      const Complex inv_d = 1.0 / d;
      for (int k = 1; k <= m; ++k) {
        const Complex ck = tf.coeffs[k - 1];
        if (ck == Complex(0.0)) continue;
        for (int l = 1; l <= n; ++l) {
          const Complex c = ck * tg.coeffs[l - 1];
          if (c == Complex(0.0)) continue;
          for (int s = 0; s < k; ++s) {
            const double sign = (s % 2 == 0) ? 1.0 : -1.0;
            acc.add(a, k - s, c * sign * binomial(l + s - 1, s) * ipow(inv_d, l + s));
          }
          for (int s = 0; s < l; ++s) {
            const double sign = (s % 2 == 0) ? 1.0 : -1.0;
            acc.add(b, l - s, c * sign * binomial(k + s - 1, s) * ipow(-inv_d, k + s));
          }
        }
      }
    }
  }
  PoleSum out(acc.take());
  if (out.max_multiplicity() > max_multiplicity)
    throw DegenerateCollision("product multiplicity exceeds cap");
  return out;
}

PoleSum conjugate(const PoleSum& f) {
  std::vector<PoleTerm> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    PoleTerm c{std::conj(t.pole), t.coeffs};
    for (auto& x : c.coeffs) x = std::conj(x);
    terms.push_back(std::move(c));
  }
  return PoleSum(std::move(terms));
}

HardyRational project_upper(const PoleSum& f) {
  std::vector<PoleTerm> kept;
  for (const auto& t : f.terms())
    if (t.pole.imag() < 0.0) kept.push_back(t);
  return HardyRational(PoleSum(std::move(kept)));
}

Complex inner_product(const PoleSum& f, const PoleSum& g) {
  // Integral of c (x-a)^{-k} conj(d) (x-b)^{-l} with a = p_f, b = conj(p_g):
  // vanishes unless a and b lie in opposite half-planes; otherwise one residue.
  Complex s = 0.0;
  for (const auto& tf : f.terms()) {
    const Complex a = tf.pole;
    for (const auto& tg : g.terms()) {
      const Complex b = std::conj(tg.pole);
      const bool a_up = a.imag() > 0.0, b_up = b.imag() > 0.0;
      if (a_up == b_up) continue;
      for (int k = 1; k <= tf.multiplicity(); ++k) {
        const Complex ck = tf.coeffs[k - 1];
        if (ck == Complex(0.0)) continue;
        for (int l = 1; l <= tg.multiplicity(); ++l) {
          const Complex c = ck * std::conj(tg.coeffs[l - 1]);
          if (c == Complex(0.0)) continue;
          Complex res;
          if (a_up) {
            const double sign = ((k - 1) % 2 == 0) ? 1.0 : -1.0;
            res = sign * binomial(k + l - 2, k - 1) * ipow(a - b, -(k + l - 1));
          } else {
            const double sign = ((l - 1) % 2 == 0) ? 1.0 : -1.0;
            res = sign * binomial(k + l - 2, l - 1) * ipow(b - a, -(k + l - 1));
          }
          s += c * res;
        }
      }
    }
  }
  return 2.0 * kPi * kI * s;
}

double norm_squared(const PoleSum& f) { return inner_product(f, f).real(); }

double norm(const PoleSum& f) { return std::sqrt(std::max(0.0, norm_squared(f))); }

// ------------------------------------------------------------- resolvents

PoleSum divided_difference(const PoleSum& f, Complex w) {
  // ((x-p)^{-k} - (w-p)^{-k}) / (x - w) = - sum_{j=1..k} (x-p)^{-j} (w-p)^{-(k+1-j)}
  std::vector<PoleTerm> terms;
  for (const auto& t : f.terms()) {
    const Complex zp = w - t.pole;
    if (std::abs(zp) < kPoleMergeTol) throw PoleHit("divided_difference: w hits a pole");
    const Complex inv = 1.0 / zp;
    const int m = t.multiplicity();
    std::vector<Complex> cs(m, 0.0);
    for (int k = 1; k <= m; ++k) {
      const Complex ck = t.coeffs[k - 1];
      if (ck == Complex(0.0)) continue;
      for (int j = 1; j <= k; ++j) cs[j - 1] -= ck * ipow(inv, k + 1 - j);
    }
    terms.push_back({t.pole, std::move(cs)});
  }
  return PoleSum(std::move(terms));
}

PoleSum divide_by_linear(const PoleSum& f, Complex w) {
  return multiply(f, PoleSum::monomial(w));
}

HardyRational resolvent_a_star(const HardyRational& f, UhpPoint z) {
  return HardyRational(divided_difference(f, z.value()));
}

HardyRational resolvent_a(const HardyRational& f, UhpPoint z) {
  return HardyRational(divide_by_linear(f, std::conj(z.value())));
}

Complex leading_coefficient(const PoleSum& f) {
  Complex s = 0.0;
  for (const auto& t : f.terms()) s += t.coeffs[0];
  return s;
}

PoleSum apply_a_star(const PoleSum& g) {
  // x (x-p)^{-k} = (x-p)^{-(k-1)} + p (x-p)^{-k}; the k = 1 constant is dropped.
  std::vector<PoleTerm> terms;
  for (const auto& t : g.terms()) {
    const int m = t.multiplicity();
    std::vector<Complex> cs(m, 0.0);
    for (int k = 0; k < m; ++k) cs[k] = t.pole * t.coeffs[k] + (k + 1 < m ? t.coeffs[k + 1] : 0.0);
    terms.push_back({t.pole, std::move(cs)});
  }
  return PoleSum(std::move(terms));
}

PoleSum apply_a(const PoleSum& g) {
  const Complex lead = leading_coefficient(g);
  if (std::abs(lead) > 1e-10 * std::max(1.0, g.max_abs_coeff()))
    throw std::domain_error("apply_a: argument is not O(1/x^2)");
  return apply_a_star(g);
}

Complex iplus(const PoleSum& f) { return -2.0 * kPi * kI * leading_coefficient(f); }

// ---------------------------------------------------------- special vectors

HardyRational reproducing_kernel(UhpPoint a) {
  return HardyRational(PoleSum::monomial(std::conj(a.value()), 1, -1.0 / (2.0 * kPi * kI)));
}

HardyRational approximate_identity(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("approximate_identity: eps must be positive");
  return HardyRational(PoleSum::monomial(Complex(0.0, -1.0 / eps), 1, kI / eps));
}

HardyRational reflect(const HardyRational& f) {
  std::vector<PoleTerm> terms;
  for (const auto& t : f.sum().terms()) {
    PoleTerm r{-std::conj(t.pole), t.coeffs};
    for (int k = 1; k <= r.multiplicity(); ++k)
      r.coeffs[k - 1] = std::conj(r.coeffs[k - 1]) * ((k % 2 == 0) ? 1.0 : -1.0);
    terms.push_back(std::move(r));
  }
  return HardyRational(PoleSum(std::move(terms)));
}

HardyRational dilate(const HardyRational& f, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("dilate: mu must be positive");
  std::vector<PoleTerm> terms;
  for (const auto& t : f.sum().terms()) {
    PoleTerm r{t.pole / mu, t.coeffs};
    for (int k = 1; k <= r.multiplicity(); ++k) r.coeffs[k - 1] *= std::pow(mu, -k);
    terms.push_back(std::move(r));
  }
  return HardyRational(PoleSum(std::move(terms)));
}

}  // namespace szego
