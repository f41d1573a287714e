#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "szego/numerics.hpp"

namespace szego {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Complex quadrature(std::span<const Complex> samples, std::span<const double> weights) {
  if (samples.size() != weights.size()) throw std::invalid_argument("quadrature: size mismatch");
  Complex s = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) s += weights[k] * samples[k];
  return s;
}

double quadrature(std::span<const double> samples, std::span<const double> weights) {
  if (samples.size() != weights.size()) throw std::invalid_argument("quadrature: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) s += weights[k] * samples[k];
  return s;
}

namespace {

struct Interval {
  double a, b;
  double value;
  int depth;
};

// Maps the reference interval onto [a, b] and evaluates the rule there.
class PanelEvaluator {
 public:
  PanelEvaluator(const BatchIntegrand& f, int n) : f_(f), rule_(gauss_legendre(n)) {}

  // Integrals over each [a_k, b_k], evaluated in a single batch.
  std::vector<double> integrate(const std::vector<std::pair<double, double>>& ivs, int& evals) const {
    const std::size_t n = rule_.nodes.size();
    std::vector<double> xs(ivs.size() * n);
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const double c = 0.5 * (ivs[k].first + ivs[k].second);
      const double h = 0.5 * (ivs[k].second - ivs[k].first);
      for (std::size_t j = 0; j < n; ++j) xs[k * n + j] = c + h * rule_.nodes[j];
    }
    std::vector<double> ys(xs.size());
    f_(xs, ys);
    evals += static_cast<int>(xs.size());
    std::vector<double> out(ivs.size());
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const double h = 0.5 * (ivs[k].second - ivs[k].first);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += rule_.weights[j] * ys[k * n + j];
      out[k] = h * s;
    }
    return out;
  }

 private:
  const BatchIntegrand& f_;
  GaussRule rule_;
};

double adaptive(const PanelEvaluator& pe, std::vector<std::pair<double, double>> panels,
                double rel_tol, int max_depth, double scale_hint, int& evals) {
  std::vector<double> coarse = pe.integrate(panels, evals);
  std::vector<Interval> active;
  double scale = scale_hint;
  for (std::size_t k = 0; k < panels.size(); ++k) {
    active.push_back({panels[k].first, panels[k].second, coarse[k], 0});
    scale += std::abs(coarse[k]);
  }
  double total = 0.0;
  // Accepted contributions are accumulated in a fixed (a-sorted) order so the
  // result does not depend on the refinement schedule.
  std::map<double, double> accepted;
  while (!active.empty()) {
    std::vector<std::pair<double, double>> halves;
    halves.reserve(2 * active.size());
    for (const auto& iv : active) {
      const double m = 0.5 * (iv.a + iv.b);
      halves.emplace_back(iv.a, m);
      halves.emplace_back(m, iv.b);
    }
    const std::vector<double> hv = pe.integrate(halves, evals);
    std::vector<Interval> next;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto& iv = active[k];
      const double fine = hv[2 * k] + hv[2 * k + 1];
      const double err = std::abs(fine - iv.value);
      if (err <= rel_tol * scale || iv.depth + 1 >= max_depth) {
        accepted[iv.a] += fine;
      } else {
        next.push_back({halves[2 * k].first, halves[2 * k].second, hv[2 * k], iv.depth + 1});
        next.push_back({halves[2 * k + 1].first, halves[2 * k + 1].second, hv[2 * k + 1], iv.depth + 1});
      }
    }
    active = std::move(next);
  }
  for (const auto& [a, v] : accepted) total += v;
  return total;
}

}  // namespace

LineQuadratureResult integrate_real_line(const BatchIntegrand& f, const LineQuadratureOptions& opts) {
  if (opts.half_width <= 0.0 || opts.panels < 1)
    throw std::invalid_argument("integrate_real_line: bad options");
  LineQuadratureResult res;
  const double X = opts.half_width;

  PanelEvaluator core(f, opts.nodes_per_panel);
  std::vector<std::pair<double, double>> panels;
  const double h = 2.0 * X / opts.panels;
  for (int k = 0; k < opts.panels; ++k) panels.emplace_back(-X + k * h, -X + (k + 1) * h);
  res.core = adaptive(core, panels, opts.rel_tol, opts.max_depth, 0.0, res.evaluations);

  // Tails: x = +-X/s, dx = X/s^2 ds, s in (0, 1].
  BatchIntegrand tail = [&](std::span<const double> ss, std::span<double> out) {
    std::vector<double> xs(2 * ss.size());
    for (std::size_t k = 0; k < ss.size(); ++k) {
      xs[2 * k] = X / ss[k];
      xs[2 * k + 1] = -X / ss[k];
    }
    std::vector<double> ys(xs.size());
    f(xs, ys);
    for (std::size_t k = 0; k < ss.size(); ++k)
      out[k] = (ys[2 * k] + ys[2 * k + 1]) * X / (ss[k] * ss[k]);
  };
  PanelEvaluator tails(tail, opts.nodes_per_panel);
  std::vector<std::pair<double, double>> tail_panels;
  for (int k = 0; k < 8; ++k) tail_panels.emplace_back(k / 8.0, (k + 1) / 8.0);
  res.tails = adaptive(tails, tail_panels, opts.rel_tol, opts.max_depth, std::abs(res.core),
                       res.evaluations);
  res.value = res.core + res.tails;
  return res;
}

}  // namespace szego
