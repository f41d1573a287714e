#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "szego/cli.hpp"
#include "szego/contraction.hpp"
#include "szego/disk.hpp"
#include "szego/errors.hpp"
#include "szego/flow.hpp"
#include "szego/format.hpp"
#include "szego/hankel.hpp"

namespace szego::cli {

namespace {

// Tolerances shared with the acceptance suite.
constexpr double kCompareTol = 1e-4;
constexpr double kNormTol = 1e-6;
constexpr double kEnergyTol = 1e-6;
constexpr double kJTol = 1e-5;
constexpr double kLambdaTol = 1e-4;
constexpr double kAuditTol = 1e-8;
constexpr double kCommutationTol = 1e-9;
constexpr double kPlancherelShortfall = 0.01;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> sorted_times(const RunConfig& cfg) {
  std::vector<double> ts = cfg.times;
  std::stable_sort(ts.begin(), ts.end());
  return ts;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string at_t(const std::string& what, double t) { return what + "@t=" + short_number(t); }

// Disk trajectory evaluated at each requested time, running t >= 0 and t < 0
// as two separate integrations from the same initial coefficients.
struct DiskRun {
  std::map<double, DiskCoeffs> states;
  std::map<double, ConservationRecord> log;
  int steps = 0;
};

DiskRun run_disk(const RunConfig& cfg, const std::vector<double>& times) {
  DiskRun run;
  const DiskCoeffs f0 = to_disk(cfg.initial, cfg.disk.modes);
  const IntegratorConfig ic{cfg.disk.modes, cfg.disk.dt, cfg.disk.pad};
  std::vector<double> pos, neg;
  for (double t : times) (t < 0.0 ? neg : pos).push_back(t);
  for (const auto* group : {&pos, &neg}) {
    if (group->empty()) continue;
    const Trajectory tr = integrate(f0, *group, ic);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      run.states[tr.times[k]] = tr.states[k];
      run.log[tr.times[k]] = tr.log[k];
    }
    run.steps += tr.steps;
  }
  return run;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  bool first = true;
  for (double v : values) {
    if (!first) row += ',';
    row += format_double(v);
    first = false;
  }
  return row + '\n';
}

std::vector<double> abs_values(const std::vector<Complex>& v) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::abs(v[k]);
  return out;
}

std::vector<Complex> flow_values(const FlowSolver& solver, const std::vector<double>& xs, double eta,
                                 int* fallbacks = nullptr) {
  const std::vector<FlowSample> samples = flow_grid(solver, xs, eta);
  std::vector<Complex> out(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out[k] = samples[k].value;
    if (fallbacks && samples[k].fallback) ++*fallbacks;
  }
  return out;
}

double rel(double a, double b) { return b != 0.0 ? std::abs(a - b) / std::abs(b) : std::abs(a); }

// Largest departure of an invariants time series from the exact values at t = 0.
struct Deviation {
  double norm2 = 0, energy = 0, j = 0, lambda = 0;

  void track(const InvariantReport& ref, double n2, double e,
             const std::vector<std::pair<double, double>>& jv, const std::vector<double>& lambdas) {
    norm2 = std::max(norm2, rel(n2, ref.norm2));
    energy = std::max(energy, rel(e, ref.energy));
    for (std::size_t k = 0; k < jv.size(); ++k) j = std::max(j, std::abs(jv[k].second - ref.j_values[k].second));
    // lambdas are descending, the reference spectrum ascending.
    const auto& exact = ref.hankel_lambdas;
    for (std::size_t k = 0; k < exact.size() && k < lambdas.size(); ++k)
      lambda = std::max(lambda, std::abs(lambdas[k] - exact[exact.size() - 1 - k]));
  }
};

// --------------------------------------------------------------- commands

void cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, RunManifest& m) {
  const std::vector<double> xs = cfg.grid.points();
  std::string csv = "t,x,eta,re_u,im_u\n";
  std::vector<PlotSeries> plots;
  int fallbacks = 0;
  Stopwatch sw;
  for (double t : sorted_times(cfg)) {
    const FlowSolver solver(cfg.initial, t);
    const std::vector<FlowSample> samples = flow_grid(solver, xs, cfg.grid.eta);
    PlotSeries ps{"t=" + short_number(t), {}};
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const FlowSample& s = samples[k];
      if (s.fallback) ++fallbacks;
      csv += csv_row({t, xs[k], s.z.imag(), s.value.real(), s.value.imag()});
      ps.y.push_back(std::abs(s.value));
    }
    plots.push_back(std::move(ps));
  }
  m.add_timing("flow_grid", sw.seconds());
  if (fallbacks > 0)
    m.add_note(std::to_string(fallbacks) + " boundary samples evaluated at eta = " +
               format_double(kBoundaryFallbackEta));
  m.write_file(out, "solve.csv", csv);
  if (cfg.svg) m.write_aux_file(out, "solve.svg", svg_plot("|u(t, x)|, explicit formula", xs, plots));
}

void cmd_integrate(const RunConfig& cfg, const std::filesystem::path& out, RunManifest& m) {
  const std::vector<double> xs = cfg.grid.points();
  const std::vector<double> ts = sorted_times(cfg);
  Stopwatch sw;
  const DiskRun run = run_disk(cfg, ts);
  m.add_timing("rk4", sw.seconds());
  m.add_note("rk4 steps: " + std::to_string(run.steps));

  std::string csv = "t,x,re_u,im_u\n";
  std::string log = "[\n";
  std::vector<PlotSeries> plots;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const std::vector<Complex> u = from_disk(run.states.at(t), xs);
    for (std::size_t k = 0; k < xs.size(); ++k) csv += csv_row({t, xs[k], u[k].real(), u[k].imag()});
    plots.push_back({"t=" + short_number(t), abs_values(u)});
    const ConservationRecord& r = run.log.at(t);
    log += "  {\"t\":" + format_json_double(t) + ",\"norm_drift\":" + format_json_double(r.norm_drift) +
           ",\"energy_drift\":" + format_json_double(r.energy_drift) + "}" +
           (i + 1 < ts.size() ? ",\n" : "\n");
    m.add_check({at_t("norm_drift", t), r.norm_drift, kNormTol});
    m.add_check({at_t("energy_drift", t), r.energy_drift, kEnergyTol});
  }
  log += "]\n";
  m.write_file(out, "integrate.csv", csv);
  m.write_file(out, "conservation.json", log);
  if (cfg.svg) m.write_aux_file(out, "integrate.svg", svg_plot("|u(t, x)|, disk RK4", xs, plots));
}

void cmd_compare(const RunConfig& cfg, const std::filesystem::path& out, RunManifest& m) {
  const std::vector<double> xs = cfg.grid.points();
  const std::vector<double> ts = sorted_times(cfg);
  const double h = (cfg.grid.xmax - cfg.grid.xmin) / (cfg.grid.n - 1);
  Stopwatch sw;
  const DiskRun run = run_disk(cfg, ts);
  m.add_timing("rk4", sw.seconds());
  Stopwatch sw2;

  std::string json = "{\"grid\":{\"xmin\":" + format_json_double(cfg.grid.xmin) +
                     ",\"xmax\":" + format_json_double(cfg.grid.xmax) +
                     ",\"n\":" + std::to_string(cfg.grid.n) + "},\"comparisons\":[\n";
  std::vector<PlotSeries> plots;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const std::vector<Complex> exact = flow_values(FlowSolver(cfg.initial, t), xs, 0.0);
    const std::vector<Complex> disk = from_disk(run.states.at(t), xs);
    double sup = 0.0, l2 = 0.0;
    std::vector<double> diff(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      diff[k] = std::abs(exact[k] - disk[k]);
      sup = std::max(sup, diff[k]);
      const double w = (k == 0 || k + 1 == xs.size()) ? 0.5 * h : h;
      l2 += w * diff[k] * diff[k];
    }
    l2 = std::sqrt(l2);
    json += "  {\"t\":" + format_json_double(t) + ",\"sup\":" + format_json_double(sup) +
            ",\"l2\":" + format_json_double(l2) + "}" + (i + 1 < ts.size() ? ",\n" : "\n");
    m.add_check({at_t("compare_sup", t), sup, kCompareTol});
    plots.push_back({"t=" + short_number(t), diff});
  }
  json += "]}\n";
  m.add_timing("flow_grid", sw2.seconds());
  m.write_file(out, "compare.json", json);
  if (cfg.svg)
    m.write_aux_file(out, "compare.svg", svg_plot("|explicit - disk| on the grid", xs, plots));
}

void cmd_invariants(const RunConfig& cfg, const std::filesystem::path& out, RunManifest& m) {
  const std::vector<double> ts = sorted_times(cfg);
  const int d = cfg.initial.is_zero() ? 0 : hankel_square_spectrum(cfg.initial).dim();
  const InvariantReport ref = invariants(cfg.initial, 0.0, cfg.j_points);

  std::string header = "t,norm2,energy";
  for (double x : cfg.j_points) header += ",J_" + short_number(x);
  for (int j = 1; j <= d; ++j) header += ",lambda_" + std::to_string(j);
  header += '\n';

  auto row = [&](double t, double norm2, double energy,
                 const std::vector<std::pair<double, double>>& jv, const std::vector<double>& lambdas) {
    std::string r = format_double(t) + ',' + format_double(norm2) + ',' + format_double(energy);
    for (const auto& [x, j] : jv) r += ',' + format_double(j);
    for (int k = 0; k < d; ++k)
      r += ',' + format_double(k < static_cast<int>(lambdas.size()) ? lambdas[k] : 0.0);
    return r + '\n';
  };
  // Exact backend: quadrature of Phi(t)u for the norms, and the disk transfer
  // of its boundary values for J and the Hankel spectrum.
  Stopwatch sw;
  std::string exact_csv = header;
  Deviation dev_exact;
  for (double t : ts) {
    const FlowSolver solver(cfg.initial, t);
    const QuadratureNorms qn = flow_norms(solver);
    const DiskCoeffs f = to_disk(
        [&solver](double x) { return solver.sample(x, 0.0).value; }, cfg.disk.modes, qn.norm2);
    const DiskInvariants di = disk_invariants(f, cfg.j_points, d);
    exact_csv += row(t, qn.norm2, qn.energy, di.j_values, di.top_lambdas);
    dev_exact.track(ref, qn.norm2, qn.energy, di.j_values, di.top_lambdas);
  }
  m.add_timing("exact", sw.seconds());

  Stopwatch sw2;
  const DiskRun run = run_disk(cfg, ts);
  std::string disk_csv = header;
  Deviation dev_disk;
  for (double t : ts) {
    const DiskInvariants di = disk_invariants(run.states.at(t), cfg.j_points, d);
    disk_csv += row(t, di.norm2, di.energy, di.j_values, di.top_lambdas);
    dev_disk.track(ref, di.norm2, di.energy, di.j_values, di.top_lambdas);
  }
  m.add_timing("disk", sw2.seconds());

  if (!ts.empty()) {
    for (const auto& [tag, dev] : {std::pair{"exact", dev_exact}, std::pair{"disk", dev_disk}}) {
      const std::string p = tag;
      m.add_check({p + "_norm2_rel", dev.norm2, kNormTol});
      m.add_check({p + "_energy_rel", dev.energy, kEnergyTol});
      m.add_check({p + "_J_abs", dev.j, kJTol});
      m.add_check({p + "_lambda_abs", dev.lambda, kLambdaTol});
    }
  }
  m.write_file(out, "invariants_exact.csv", exact_csv);
  m.write_file(out, "invariants_disk.csv", disk_csv);
  m.write_file(out, "spectrum.json",
               cfg.initial.is_zero() ? std::string("{\"lambdas\":[],\"a\":[]}\n")
                                     : hankel_square_spectrum(cfg.initial).to_json() + "\n");
}

void cmd_audit(const RunConfig& cfg, const std::filesystem::path& out, RunManifest& m) {
  Stopwatch sw;
  std::string json = "[\n";
  std::vector<PlotSeries> plots;
  bool first = true;
  for (double t : sorted_times(cfg)) {
    if (t < 0.0) {
      m.add_note("audit skipped at t = " + format_double(t) + " (defined for t >= 0)");
      continue;
    }
    const ContractionAudit a = run_audit(cfg.initial, t, cfg.audit_iterations);
    json += std::string(first ? "" : ",\n") + "  " + a.to_json();
    first = false;
    m.add_check({at_t("q_norm_defect", t), std::abs(a.q_norm - 1.0), kAuditTol});
    m.add_check({at_t("isometry_defect", t), a.isometry_defect, kAuditTol});
    m.add_check({at_t("coisometry_defect", t), a.coisometry_defect, kAuditTol});
    m.add_check({at_t("gram_defect", t), a.gram_defect, kAuditTol});
    m.add_check({at_t("commutation_defect", t), a.commutation_defect, kCommutationTol});
    m.add_check({at_t("plancherel_shortfall", t), 1.0 - a.plancherel_ratio, kPlancherelShortfall});
    m.add_check({at_t("plancherel_nonmonotone", t), a.plancherel_monotone ? 0.0 : 1.0, 0.5});
    plots.push_back({"t=" + short_number(t), a.plancherel_partials});
  }
  json += first ? "]\n" : "\n]\n";
  m.add_timing("audit", sw.seconds());
  m.write_file(out, "audit.json", json);
  if (cfg.svg && !plots.empty()) {
    std::vector<double> n(cfg.audit_iterations + 1);
    for (std::size_t k = 0; k < n.size(); ++k) n[k] = static_cast<double>(k);
    m.write_aux_file(out, "audit.svg", svg_plot("Plancherel partial sums", n, plots));
  }
}

}  // namespace

RunManifest run_command(const std::string& command, const RunConfig& cfg,
                        const std::filesystem::path& out) {
  using Handler = void (*)(const RunConfig&, const std::filesystem::path&, RunManifest&);
  static const std::map<std::string, Handler> handlers{{"solve", cmd_solve},
                                                       {"integrate", cmd_integrate},
                                                       {"compare", cmd_compare},
                                                       {"invariants", cmd_invariants},
                                                       {"audit", cmd_audit}};
  const auto it = handlers.find(command);
  if (it == handlers.end()) throw ConfigInvalid("unknown command \"" + command + "\"");
  std::filesystem::create_directories(out);
  RunManifest m(command, cfg);
  if (cfg.times.empty()) {
    m.add_note("empty times list; nothing to do");
  } else {
    Stopwatch sw;
    it->second(cfg, out, m);
    m.add_timing("total", sw.seconds());
  }
  std::ofstream mf(out / "manifest.json", std::ios::binary | std::ios::trunc);
  mf << m.to_json();
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  return m;
}

}  // namespace szego::cli
