// Grid evaluation of the flow. Every sample is an independent d x d solve, so
// the parallel loop writes disjoint slots and reproduces the serial output
// bit for bit.

#include <cmath>
#include <exception>

#include "szego/flow.hpp"

namespace szego {

std::vector<FlowSample> flow_grid_serial(const FlowSolver& solver, std::span<const double> xs,
                                         double eta) {
  std::vector<FlowSample> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = solver.sample(xs[k], eta);
  return out;
}

std::vector<FlowSample> flow_grid(const FlowSolver& solver, std::span<const double> xs,
                                  double eta) {
  const long n = static_cast<long>(xs.size());
  std::vector<FlowSample> out(xs.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    try {
      out[k] = solver.sample(xs[k], eta);
    } catch (...) {
#pragma omp critical(szego_flow_grid_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<FlowSample> flow_grid(const HardyRational& u, double t, std::span<const double> xs,
                                  double eta) {
  return flow_grid(FlowSolver(u, t), xs, eta);
}

std::vector<FlowSample> flow_grid_serial(const HardyRational& u, double t,
                                         std::span<const double> xs, double eta) {
  return flow_grid_serial(FlowSolver(u, t), xs, eta);
}

QuadratureNorms flow_norms(const FlowSolver& solver, const LineQuadratureOptions& opts) {
  QuadratureNorms out;
  auto power = [&](int p) {
    return [&solver, p](std::span<const double> xs, std::span<double> ys) {
      const std::vector<FlowSample> s = flow_grid(solver, xs, 0.0);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double a2 = std::norm(s[k].value);
        ys[k] = p == 2 ? a2 : a2 * a2;
      }
    };
  };
  const LineQuadratureResult n2 = integrate_real_line(power(2), opts);
  const LineQuadratureResult n4 = integrate_real_line(power(4), opts);
  out.norm2 = n2.value;
  out.energy = 0.25 * n4.value;
  out.evaluations = n2.evaluations + n4.evaluations;
  return out;
}

}  // namespace szego
