#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "szego/cli.hpp"
#include "szego/errors.hpp"

namespace szego::cli {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

RunManifest::RunManifest(std::string command, const RunConfig& cfg)
    : command_(std::move(command)), config_hash_(hex64(fnv1a(cfg.source))) {}

namespace {

void write_bytes(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void RunManifest::write_file(const std::filesystem::path& out, const std::string& name,
                             const std::string& contents) {
  write_bytes(out / name, contents);
  files_.push_back({name, contents.size(), hex64(fnv1a(contents)), true});
}

void RunManifest::write_aux_file(const std::filesystem::path& out, const std::string& name,
                                 const std::string& contents) {
  write_bytes(out / name, contents);
  files_.push_back({name, contents.size(), hex64(fnv1a(contents)), false});
}

std::string RunManifest::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["artifact_version"] = SZEGO_VERSION;
  j["command"] = command_;
  j["config_fnv1a"] = config_hash_;
  j["files"] = ordered_json::array();
  for (const auto& f : files_)
    j["files"].push_back({{"file", f.file},
                          {"bytes", f.bytes},
                          {"fnv1a", f.checksum},
                          {"deterministic", f.deterministic}});
  j["checks"] = ordered_json::array();
  for (const auto& c : checks_)
    j["checks"].push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
  j["timings_s"] = ordered_json::array();
  for (const auto& [stage, s] : timings_) j["timings_s"].push_back({{"stage", stage}, {"seconds", s}});
  j["notes"] = notes_;
  return j.dump(2) + "\n";
}

}  // namespace szego::cli
