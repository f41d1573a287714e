#pragma once

// Test data shared by the suites: the five-member standard family and a
// seeded generator of random simple-pole data.

#include <random>
#include <string>
#include <vector>

#include "szego/rational.hpp"

namespace szego::testing {

inline HardyRational mono(Complex pole, int order, Complex c) {
  return HardyRational(PoleSum::monomial(pole, order, c));
}

inline HardyRational soliton() { return mono({0, -1}, 1, 1.0); }

struct Member {
  std::string name;
  HardyRational u;
};

inline std::vector<Member> standard_family() {
  return {
      {"u1", soliton()},
      {"u2", soliton() + mono({0, -2}, 1, 1.0)},
      {"u3", mono({0, -1}, 2, 0.5) + mono({0.5, -0.8}, 1, {0, 1})},
      {"u4", mono({1, -1}, 1, {1, 0.5}) + mono({-1, -1.5}, 1, 0.7)},
      {"u5", mono({0.5, -0.7}, 1, 0.6) + mono({-0.4, -1.2}, 1, {0.2, -0.5}) + mono({0, -0.9}, 1, {0, 0.4})},
  };
}

class RandomRational {
 public:
  explicit RandomRational(unsigned seed) : rng_(seed) {}

  Complex coeff() { return {uni(-1, 1), uni(-1, 1)}; }
  Complex lower_pole() { return {uni(-2, 2), uni(-2, -0.4)}; }
  Complex upper_point() { return {uni(-2, 2), uni(0.2, 2)}; }
  double real(double lo, double hi) { return uni(lo, hi); }

  /// Up to `poles` simple or double poles in the lower half-plane.
  HardyRational hardy(int poles, int max_order = 1) {
    PoleSum s;
    for (int j = 0; j < poles; ++j) {
      const Complex p = lower_pole();
      const int order = 1 + static_cast<int>(rng_() % static_cast<unsigned>(max_order));
      for (int k = 1; k <= order; ++k) s += PoleSum::monomial(p, k, coeff());
    }
    return HardyRational(s);
  }

  /// Poles on both sides of the real axis.
  PoleSum mixed(int poles) {
    PoleSum s = hardy(poles).sum();
    for (int j = 0; j < poles; ++j) s += PoleSum::monomial(std::conj(lower_pole()), 1, coeff());
    return s;
  }

 private:
  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937_64 rng_;
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) xs[k] = a + (b - a) * k / (n - 1);
  return xs;
}

}  // namespace szego::testing
