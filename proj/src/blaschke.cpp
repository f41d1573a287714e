#include "szego/blaschke.hpp"

#include <cmath>
#include <stdexcept>

namespace szego {

namespace {

// Truncated power series in h, coefficients 0..n-1.
using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// (x0 - p + h)^{-a} around h = 0.
Series monomial_series(Complex x0, Complex p, int a, int n) {
  Series s(n);
  const Complex inv = 1.0 / (x0 - p);
  Complex lead = std::pow(inv, a);
  double binom = 1.0;  // C(a + j - 1, j)
  for (int j = 0; j < n; ++j) {
    s[j] = binom * lead * ((j % 2 == 0) ? 1.0 : -1.0);
    lead *= inv;
    binom = binom * (a + j) / (j + 1);
  }
  return s;
}

}  // namespace

BlaschkeSpace::BlaschkeSpace(std::vector<Seed> seeds) : seeds_(std::move(seeds)) {
  for (const auto& s : seeds_) {
    if (!(s.pole.imag() < 0.0)) throw std::invalid_argument("BlaschkeSpace: seed pole must lie in the lower half-plane");
    if (s.order < 1) throw std::invalid_argument("BlaschkeSpace: seed order must be positive");
  }
}

BlaschkeSpace BlaschkeSpace::for_function(const PoleSum& f) {
  std::vector<Seed> seeds;
  bool has_minus_i = false;
  for (const auto& t : f.terms()) {
    if (std::abs(t.pole - Complex(0.0, -1.0)) < kPoleMergeTol) has_minus_i = true;
    for (int k = 1; k <= t.multiplicity(); ++k) seeds.push_back({t.pole, k});
  }
  if (!has_minus_i) seeds.push_back({Complex(0.0, -1.0), 1});
  return BlaschkeSpace(std::move(seeds));
}

BlaschkeSeries BlaschkeSpace::zero(int length) const {
  return {DenseMatrix::Zero(seeds(), length)};
}

BlaschkeSeries BlaschkeSpace::embed(const PoleSum& f) const {
  BlaschkeSeries v = zero(1);
  for (const auto& t : f.terms())
    for (int k = 1; k <= t.multiplicity(); ++k) {
      const Complex c = t.coeffs[k - 1];
      if (c == Complex(0.0)) continue;
      int idx = -1;
      for (int s = 0; s < seeds(); ++s)
        if (seeds_[s].order == k && std::abs(seeds_[s].pole - t.pole) < kPoleMergeTol) idx = s;
      if (idx < 0) throw std::invalid_argument("BlaschkeSpace::embed: term outside the seed set");
      v.c(idx, 0) += c;
    }
  return v;
}

BlaschkeSeries BlaschkeSpace::shift(const BlaschkeSeries& v) {
  BlaschkeSeries out{DenseMatrix::Zero(v.c.rows(), v.c.cols() + 1)};
  out.c.rightCols(v.c.cols()) = v.c;
  return out;
}

BlaschkeSeries BlaschkeSpace::resolvent_plus_i(const BlaschkeSeries& v) {
  BlaschkeSeries out{DenseMatrix::Zero(v.c.rows(), v.c.cols() + 1)};
  out.c.leftCols(v.c.cols()) = v.c;
  out.c.rightCols(v.c.cols()) -= v.c;
  out.c /= Complex(0.0, 2.0);
  return out;
}

void BlaschkeSpace::axpy(BlaschkeSeries& y, Complex a, const BlaschkeSeries& x) {
  if (y.c.cols() < x.c.cols()) {
    DenseMatrix grown = DenseMatrix::Zero(y.c.rows(), x.c.cols());
    grown.leftCols(y.c.cols()) = y.c;
    y.c = std::move(grown);
  }
  y.c.leftCols(x.c.cols()) += a * x.c;
}

void BlaschkeSpace::extend(int k) const {
  // <b^k e_i, e_j> = 2 pi i Res_{x = x0} b^k(x) (x - p_i)^{-a_i} (x - x0)^{-c_j},
  // x0 = conj(q_j); b is analytic in the upper half-plane.
  const int s = seeds();
  const int have = static_cast<int>(moments_.size());
  if (k < have) return;
  for (int kk = have; kk <= k; ++kk) moments_.emplace_back(DenseMatrix::Zero(s, s));
  for (int j = 0; j < s; ++j) {
    const Complex x0 = std::conj(seeds_[j].pole);
    const int n = seeds_[j].order;
    // b(x0 + h) = 1 - 2i / (x0 + i + h).
    Series b(n);
    const Complex inv = 1.0 / (x0 + kI);
    Complex pw = inv;
    for (int l = 0; l < n; ++l) {
      b[l] = -2.0 * kI * pw * ((l % 2 == 0) ? 1.0 : -1.0);
      pw *= inv;
    }
    b[0] += 1.0;
    Series bk(n, 0.0);
    bk[0] = 1.0;
    for (int kk = 0; kk <= k; ++kk) {
      if (kk >= have)
        for (int i = 0; i < s; ++i) {
          const Series prod = series_mul(bk, monomial_series(x0, seeds_[i].pole, seeds_[i].order, n));
          moments_[kk](i, j) = 2.0 * kPi * kI * prod[n - 1];
        }
      bk = series_mul(bk, b);
    }
  }
}

const DenseMatrix& BlaschkeSpace::moment(int k) const {
  extend(k);
  return moments_[k];
}

Complex BlaschkeSpace::inner(const BlaschkeSeries& v, const BlaschkeSeries& w) const {
  const int lv = v.length(), lw = w.length();
  extend(std::max(lv, lw));
  Complex acc = 0.0;
  const DenseMatrix wc = w.c.conjugate();
  for (int n = 0; n < lv; ++n)
    for (int m = 0; m < lw; ++m) {
      if (n >= m)
        acc += (v.c.col(n).transpose() * moments_[n - m] * wc.col(m))(0, 0);
      else
        acc += (v.c.col(n).transpose() * moments_[m - n].adjoint() * wc.col(m))(0, 0);
    }
  return acc;
}

Complex BlaschkeSpace::evaluate(const BlaschkeSeries& v, Complex z) const {
  const Complex b = (z - kI) / (z + kI);
  Complex acc = 0.0;
  for (int s = 0; s < seeds(); ++s) {
    const Complex e = std::pow(z - seeds_[s].pole, -seeds_[s].order);
    Complex row = 0.0;
    for (int n = v.length() - 1; n >= 0; --n) row = row * b + v.c(s, n);
    acc += row * e;
  }
  return acc;
}

PoleSum BlaschkeSpace::to_pole_sum(const BlaschkeSeries& v) const {
  const PoleSum inv_plus_i = PoleSum::monomial(Complex(0.0, -1.0));
  PoleSum out;
  for (int s = 0; s < seeds(); ++s) {
    PoleSum cur = PoleSum::monomial(seeds_[s].pole, seeds_[s].order);
    for (int n = 0; n < v.length(); ++n) {
      if (v.c(s, n) != Complex(0.0)) out += cur * v.c(s, n);
      cur -= multiply(cur, inv_plus_i) * Complex(0.0, 2.0);
    }
  }
  return out;
}

}  // namespace szego
