#pragma once

// Exact representation of rational functions of the form
//   v = sum_e sum_{n >= 0} c(e, n) b^n e,   b(x) = (x - i)/(x + i),
// over a fixed set of seed monomials e = (x - p)^{-k}. Since |b| = 1 on the
// line, multiplication by b is an isometric index shift, and
// 1/(x + i) = (1 - b)/(2i). Iterating Sigma_0 = b and (A + i)^{-1} therefore
// never inflates coefficients, unlike partial fractions in (x + i)^{-k}.

#include <utility>
#include <vector>

#include "szego/numerics.hpp"
#include "szego/rational.hpp"

namespace szego {

struct BlaschkeSeries {
  DenseMatrix c;  // rows: seeds, cols: powers of b

  int length() const { return static_cast<int>(c.cols()); }
};

/// The moment cache is filled lazily, so one space must not be used from
/// several threads at once.
class BlaschkeSpace {
 public:
  struct Seed {
    Complex pole;  // Im < 0
    int order;
  };

  explicit BlaschkeSpace(std::vector<Seed> seeds);
  /// Seeds are the pole monomials of f (all orders up to each multiplicity),
  /// plus (x + i)^{-1}.
  static BlaschkeSpace for_function(const PoleSum& f);

  int seeds() const { return static_cast<int>(seeds_.size()); }
  const std::vector<Seed>& seed_list() const { return seeds_; }

  /// f as a length-1 series; every term of f must be a seed.
  BlaschkeSeries embed(const PoleSum& f) const;
  BlaschkeSeries zero(int length = 1) const;

  static BlaschkeSeries shift(const BlaschkeSeries& v);                // b v
  static BlaschkeSeries resolvent_plus_i(const BlaschkeSeries& v);     // v / (x + i)
  static void axpy(BlaschkeSeries& y, Complex a, const BlaschkeSeries& x);

  /// <b^k e_i, e_j> for k >= 0, by residues at conj(pole_j).
  const DenseMatrix& moment(int k) const;
  Complex inner(const BlaschkeSeries& v, const BlaschkeSeries& w) const;
  double norm_squared(const BlaschkeSeries& v) const { return inner(v, v).real(); }

  Complex evaluate(const BlaschkeSeries& v, Complex z) const;
  /// Expansion into partial fractions; cost grows with the length.
  PoleSum to_pole_sum(const BlaschkeSeries& v) const;

 private:
  void extend(int k) const;
  std::vector<Seed> seeds_;
  mutable std::vector<DenseMatrix> moments_;
};

}  // namespace szego
