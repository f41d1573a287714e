#pragma once

// Batch front end: run configuration, the five commands, and the manifest
// written next to their outputs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "szego/rational.hpp"

namespace szego::cli {

struct GridConfig {
  double xmin = -10.0;
  double xmax = 10.0;
  int n = 201;
  double eta = 0.0;

  std::vector<double> points() const;
};

struct DiskConfig {
  int modes = 512;
  double dt = 1e-3;
  int pad = 4;
};

struct RunConfig {
  HardyRational initial;
  std::vector<double> times;
  GridConfig grid;
  DiskConfig disk;
  int audit_iterations = 40;
  std::vector<double> j_points{0.1, 1.0, 10.0};
  bool svg = false;
  std::string source;  // raw config text, hashed into the manifest
};

/// Throws ConfigInvalid on any schema violation, including unknown keys and
/// an initial datum with a pole in the closed upper half-plane.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return value < tolerance; }
};

class RunManifest {
 public:
  RunManifest(std::string command, const RunConfig& cfg);

  /// Writes `contents` to out/name and records its size and checksum.
  void write_file(const std::filesystem::path& out, const std::string& name,
                  const std::string& contents);
  /// Records a file excluded from the byte-determinism contract (SVG).
  void write_aux_file(const std::filesystem::path& out, const std::string& name,
                      const std::string& contents);
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  void add_timing(const std::string& stage, double seconds) { timings_.emplace_back(stage, seconds); }
  void add_note(const std::string& note) { notes_.push_back(note); }

  const std::vector<Check>& checks() const { return checks_; }
  std::string to_json() const;

 private:
  struct Entry {
    std::string file;
    std::size_t bytes;
    std::string checksum;
    bool deterministic;
  };
  std::string command_;
  std::string config_hash_;
  std::vector<Entry> files_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, double>> timings_;
  std::vector<std::string> notes_;
};

/// Runs one of solve | integrate | compare | invariants | audit and writes
/// its outputs plus manifest.json into `out` (created if missing).
RunManifest run_command(const std::string& command, const RunConfig& cfg,
                        const std::filesystem::path& out);

/// Minimal SVG line plot of several series over a shared x axis.
struct PlotSeries {
  std::string label;
  std::vector<double> y;
};
std::string svg_plot(const std::string& title, const std::vector<double>& x,
                     const std::vector<PlotSeries>& series);

}  // namespace szego::cli
