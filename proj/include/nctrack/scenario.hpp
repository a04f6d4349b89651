#ifndef NCTRACK_SCENARIO_HPP_
#define NCTRACK_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nctrack/engine.hpp"
#include "nctrack/kinetics.hpp"

namespace nctrack {

// Kinetic config block: {family: "cubic", beta: ...} or
// {family: "tabulated", samples: [[u, phi_b(u)], ...]}.
struct KineticConfig {
  std::string family = "cubic";
  double beta = 0.75;
  std::vector<std::pair<double, double>> samples;

  KineticModel build(std::optional<double> range_bound = std::nullopt) const;
};

struct ScenarioConfig {
  KineticConfig kinetic;
  PiecewiseConstant initial;
  double eps = 0.1;
  double t_end = 1.0;
  double c_star = -1.0;  // <= 0 means "auto"
  std::uint64_t seed = 0;
  std::optional<double> range_bound;
  std::size_t safety_cap = 200000;
  std::vector<double> snapshot_times;

  std::string event_log_path = "event_log.csv";
  std::string snapshot_path = "snapshots.csv";
  std::string manifest_path = "manifest.json";
};

ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& json_text);
std::string scenario_to_json(const ScenarioConfig& config);
void save_scenario(const ScenarioConfig& config, const std::string& path);

// Deterministic double formatting for the logs (shortest round-trip form).
std::string format_double(double v);

// Event log CSV with the fixed column set:
// time,position,case,incoming_labels,outgoing_labels,V_before,V_after,
// TV_before,TV_after,Qweak_before,Qweak_after,Qpos_before,Qpos_after,
// predicted_bound,mass
std::string event_log_header();
std::string event_log_row(const InteractionRecord& rec);
void write_event_log(const std::vector<InteractionRecord>& records,
                     const std::string& path);

// Snapshot dump rows: time,position,u_left,u_right,label,speed.
void write_snapshots(const std::vector<Snapshot>& snaps, const std::string& path);

struct RunManifest {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string tool_version;
  double wall_clock_seconds = 0.0;
  std::map<std::string, std::size_t> case_counts;
  std::size_t total_records = 0;

  bool counts_consistent() const;
};

void write_manifest(const RunManifest& manifest, const std::string& path);

extern const char* const kToolVersion;

}  // namespace nctrack

#endif  // NCTRACK_SCENARIO_HPP_
