#include "nctrack/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "nctrack/experiments.hpp"
#include "nctrack/scenario.hpp"

namespace nctrack {

namespace {

namespace fs = std::filesystem;

ScenarioConfig load_with_overrides(const CommonOptions& options) {
  ScenarioConfig config = load_scenario(options.config_path);
  if (options.eps) config.eps = *options.eps;
  if (options.t_end) config.t_end = *options.t_end;
  if (options.seed) config.seed = *options.seed;
  if (options.c_star) {
    config.c_star = *options.c_star == "auto" ? -1.0 : std::stod(*options.c_star);
  }
  if (!options.snapshot_times.empty()) config.snapshot_times = options.snapshot_times;
  return config;
}

std::string out_path(const CommonOptions& options, const std::string& name) {
  return (fs::path(options.out_dir) / name).string();
}

bool exceptional_case(InteractionCase c) {
  return c == InteractionCase::RC3 || c == InteractionCase::CR4 ||
         c == InteractionCase::CC3 || c == InteractionCase::CN3;
}

}  // namespace

int cmd_run(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  const auto t_start = std::chrono::steady_clock::now();
  ScenarioConfig config;
  KineticModel model;
  try {
    config = load_with_overrides(options);
    model = config.kinetic.build(config.range_bound);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }

  const AxiomReport axioms = verify_axioms(model, 1000);
  if (!axioms.all_passed()) {
    err << "kinetic model rejected:\n" << axioms.summary();
    return kExitRefused;
  }

  fs::create_directories(options.out_dir);

  SimulationState state;
  try {
    state = initialize(model, config.initial, config.eps, config.c_star,
                       config.safety_cap);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }

  std::vector<std::string> violations;
  auto check = [&violations](bool ok, const std::string& what, double t) {
    if (!ok) {
      violations.push_back(what + " at t = " + format_double(t));
    }
  };
  std::vector<Monitor> monitors;
  monitors.push_back([&](const SimulationState& s, const InteractionRecord& r) {
    check(r.delta_V() <= 1e-10, "V increased", r.time);
    if (r.kase != InteractionCase::Multi) {
      check(r.delta_V() <= r.predicted_bound + 1e-10, "V bound violated", r.time);
    }
    check(std::abs(r.mass_after - r.mass_before) <=
              1e-12 * (1.0 + std::abs(r.mass_before)),
          "mass drift", r.time);
    if (!exceptional_case(r.kase) && r.kase != InteractionCase::Multi) {
      check(r.delta_Qweak() <= 1e-10, "Q_weak increased", r.time);
      if (r.c_star_ok) check(r.delta_Qpos() <= 1e-10, "Q_pos increased", r.time);
    }
    check(s.fronts.size() <=
              s.initial_front_count + s.fronts_created_by_splitting,
          "front count exceeded bound", r.time);
  });

  std::vector<InteractionRecord> records;
  std::vector<Snapshot> snaps;
  std::vector<double> snap_times = config.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  try {
    double t_prev = 0.0;
    for (double t : snap_times) {
      if (t <= t_prev || t > config.t_end) continue;
      RunResult r = run(state, t, monitors);
      for (auto& rec : r.records) records.push_back(std::move(rec));
      snaps.push_back(r.final_snapshot);
      t_prev = t;
    }
    if (config.t_end > t_prev) {
      RunResult r = run(state, config.t_end, monitors);
      for (auto& rec : r.records) records.push_back(std::move(rec));
      snaps.push_back(r.final_snapshot);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMonitorFailure;
  }

  write_event_log(records, out_path(options, config.event_log_path));
  write_snapshots(snaps, out_path(options, config.snapshot_path));

  RunManifest manifest;
  manifest.config_path = options.config_path;
  manifest.out_dir = options.out_dir;
  manifest.seed = config.seed;
  manifest.tool_version = kToolVersion;
  manifest.total_records = records.size();
  for (const auto& rec : records) manifest.case_counts[to_string(rec.kase)]++;
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  write_manifest(manifest, out_path(options, config.manifest_path));

  out << "events: " << records.size() << ", final fronts: " << state.fronts.size()
      << ", V: " << format_double(state.V) << "\n";
  if (!violations.empty()) {
    for (const auto& v : violations) err << "violation: " << v << "\n";
    return kExitMonitorFailure;
  }
  return kExitOk;
}

int cmd_verify_kinetic(const CommonOptions& options, std::ostream& out,
                       std::ostream& err) {
  try {
    const ScenarioConfig config = load_scenario(options.config_path);
    const KineticModel model = config.kinetic.build(config.range_bound);
    const AxiomReport report = verify_axioms(model, 1000);
    out << report.summary();
    return report.all_passed() ? kExitOk : kExitMonitorFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }
}

int cmd_search(const std::string& case_name, const CommonOptions& options,
               std::ostream& out, std::ostream& err) {
  InteractionCase kase;
  try {
    kase = interaction_case_from_string(case_name);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }
  ScenarioConfig config;
  KineticModel model;
  try {
    config = load_scenario(options.config_path);
    model = config.kinetic.build(config.range_bound);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }

  const std::vector<double> c0_values = {0.1, 1.0, 10.0};
  const std::uint64_t seed = options.seed.value_or(config.seed ? config.seed : 20240901);
  std::optional<QIncreaseWitness> witness;
  try {
    witness = search_Qweak_increase(kase, model, c0_values, 10000, seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRefused;
  }
  if (!witness) {
    out << "none found\n";
    return kExitNotFound;
  }

  fs::create_directories(options.out_dir);

  // Replay scenario: the two incoming waves as initial jumps, spaced so they
  // collide once; eps large enough that the incoming rarefaction stays whole.
  const double s_left = rankine_hugoniot_speed(model, witness->u_l, witness->u_m);
  const double s_right = rankine_hugoniot_speed(model, witness->u_m, witness->u_r);
  const double gap = 0.2;
  const double t_col = gap / (s_left - s_right);
  ScenarioConfig replay;
  replay.kinetic = config.kinetic;
  replay.initial.left_value = witness->u_l;
  replay.initial.jumps = {{0.0, witness->u_m}, {gap, witness->u_r}};
  const double sig_in = std::max(wave_strength(model, witness->u_l, witness->u_m),
                                 wave_strength(model, witness->u_m, witness->u_r));
  replay.eps = 1.5 * sig_in + 1e-6;
  replay.t_end = 1.5 * t_col;
  replay.seed = seed;
  const std::string replay_path = out_path(options, "replay_config.json");
  save_scenario(replay, replay_path);

  nlohmann::json j;
  j["case"] = to_string(kase);
  j["u_l"] = witness->u_l;
  j["u_m"] = witness->u_m;
  j["u_r"] = witness->u_r;
  j["delta_V"] = witness->delta_V;
  j["delta_Qweak"] = witness->delta_Qweak;
  nlohmann::json combined = nlohmann::json::array();
  for (const auto& [c0, value] : witness->combined) combined.push_back({c0, value});
  j["combined"] = combined;
  j["seed"] = witness->seed;
  j["sample_index"] = witness->sample_index;
  j["replay_config"] = replay_path;
  std::ofstream wf(out_path(options, "witness.json"));
  wf << j.dump(2) << "\n";

  out << "witness: (" << format_double(witness->u_l) << ", "
      << format_double(witness->u_m) << ", " << format_double(witness->u_r)
      << ") delta_V = " << format_double(witness->delta_V)
      << ", delta_Qweak = " << format_double(witness->delta_Qweak) << "\n";
  return kExitOk;
}

}  // namespace nctrack
