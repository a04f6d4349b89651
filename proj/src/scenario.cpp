#include "nctrack/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nctrack {

using nlohmann::json;

const char* const kToolVersion = "0.1.0";

KineticModel KineticConfig::build(std::optional<double> range_bound) const {
  if (family == "cubic") {
    KineticModel m = cubic_kinetic(beta);
    return range_bound ? with_range_bound(m, *range_bound) : m;
  }
  if (family == "tabulated") {
    KineticModel m = tabulated_kinetic(samples);
    return range_bound ? with_range_bound(m, *range_bound) : m;
  }
  throw std::invalid_argument("unknown kinetic family: " + family);
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j = json::parse(json_text);
  ScenarioConfig c;

  const json& k = j.at("kinetic");
  c.kinetic.family = k.at("family").get<std::string>();
  if (c.kinetic.family == "cubic") {
    c.kinetic.beta = k.at("beta").get<double>();
  } else if (c.kinetic.family == "tabulated") {
    for (const auto& row : k.at("samples")) {
      c.kinetic.samples.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    }
  } else {
    throw std::invalid_argument("unknown kinetic family: " + c.kinetic.family);
  }

  c.initial.left_value = j.at("initial_left").get<double>();
  for (const auto& row : j.at("initial_data")) {
    c.initial.jumps.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
  }
  c.eps = j.at("eps").get<double>();
  c.t_end = j.at("t_end").get<double>();
  if (j.contains("c_star")) {
    if (j["c_star"].is_string()) {
      if (j["c_star"].get<std::string>() != "auto") {
        throw std::invalid_argument("c_star must be a number or \"auto\"");
      }
      c.c_star = -1.0;
    } else {
      c.c_star = j["c_star"].get<double>();
    }
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("range_bound")) c.range_bound = j["range_bound"].get<double>();
  if (j.contains("safety_cap")) c.safety_cap = j["safety_cap"].get<std::size_t>();
  if (j.contains("snapshot_times")) {
    for (const auto& t : j["snapshot_times"]) c.snapshot_times.push_back(t.get<double>());
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (o.contains("event_log")) c.event_log_path = o["event_log"].get<std::string>();
    if (o.contains("snapshots")) c.snapshot_path = o["snapshots"].get<std::string>();
    if (o.contains("manifest")) c.manifest_path = o["manifest"].get<std::string>();
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json k;
  k["family"] = c.kinetic.family;
  if (c.kinetic.family == "cubic") {
    k["beta"] = c.kinetic.beta;
  } else {
    json samples = json::array();
    for (const auto& [u, pb] : c.kinetic.samples) samples.push_back({u, pb});
    k["samples"] = samples;
  }
  json j;
  j["kinetic"] = k;
  j["initial_left"] = c.initial.left_value;
  json data = json::array();
  for (const auto& [x, u] : c.initial.jumps) data.push_back({x, u});
  j["initial_data"] = data;
  j["eps"] = c.eps;
  j["t_end"] = c.t_end;
  if (c.c_star > 0.0) {
    j["c_star"] = c.c_star;
  } else {
    j["c_star"] = "auto";
  }
  j["seed"] = c.seed;
  if (c.range_bound) j["range_bound"] = *c.range_bound;
  j["safety_cap"] = c.safety_cap;
  if (!c.snapshot_times.empty()) j["snapshot_times"] = c.snapshot_times;
  j["outputs"] = {{"event_log", c.event_log_path},
                  {"snapshots", c.snapshot_path},
                  {"manifest", c.manifest_path}};
  return j.dump(2);
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario config: " + path);
  out << scenario_to_json(config) << "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string event_log_header() {
  return "time,position,case,incoming_labels,outgoing_labels,V_before,V_after,"
         "TV_before,TV_after,Qweak_before,Qweak_after,Qpos_before,Qpos_after,"
         "predicted_bound,mass";
}

namespace {

std::string join_labels(const std::vector<WaveInfo>& waves) {
  std::string out;
  for (std::size_t i = 0; i < waves.size(); ++i) {
    if (i > 0) out += "|";
    out += to_string(waves[i].label);
  }
  return out;
}

}  // namespace

std::string event_log_row(const InteractionRecord& rec) {
  std::ostringstream os;
  os << format_double(rec.time) << ',' << format_double(rec.position) << ','
     << to_string(rec.kase) << ',' << join_labels(rec.incoming) << ','
     << join_labels(rec.outgoing) << ',' << format_double(rec.V_before) << ','
     << format_double(rec.V_after) << ',' << format_double(rec.TV_before) << ','
     << format_double(rec.TV_after) << ',' << format_double(rec.Qweak_before) << ','
     << format_double(rec.Qweak_after) << ',' << format_double(rec.Qpos_before)
     << ',' << format_double(rec.Qpos_after) << ','
     << format_double(rec.predicted_bound) << ',' << format_double(rec.mass_after);
  return os.str();
}

void write_event_log(const std::vector<InteractionRecord>& records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write event log: " + path);
  out << event_log_header() << "\n";
  for (const auto& rec : records) out << event_log_row(rec) << "\n";
}

void write_snapshots(const std::vector<Snapshot>& snaps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshots: " + path);
  out << "time,position,u_left,u_right,label,speed\n";
  for (const Snapshot& s : snaps) {
    for (const auto& w : s.waves) {
      out << format_double(s.time) << ',' << format_double(w.position) << ','
          << format_double(w.left) << ',' << format_double(w.right) << ','
          << to_string(w.label) << ',' << format_double(w.speed) << "\n";
    }
  }
}

bool RunManifest::counts_consistent() const {
  std::size_t sum = 0;
  for (const auto& [name, count] : case_counts) sum += count;
  return sum == total_records;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  json j;
  j["config_path"] = manifest.config_path;
  j["out_dir"] = manifest.out_dir;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["wall_clock_seconds"] = manifest.wall_clock_seconds;
  j["case_counts"] = manifest.case_counts;
  j["total_records"] = manifest.total_records;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace nctrack
