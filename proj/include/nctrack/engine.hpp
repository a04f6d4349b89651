#ifndef NCTRACK_ENGINE_HPP_
#define NCTRACK_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "nctrack/functionals.hpp"
#include "nctrack/kinetics.hpp"
#include "nctrack/riemann.hpp"
#include "nctrack/waves.hpp"

namespace nctrack {

// A propagating discontinuity. Fronts are immutable once created; every
// interaction retires the colliding fronts and mints replacements.
struct Front {
  std::uint64_t id = 0;
  double position = 0.0;  // at SimulationState::time
  double speed = 0.0;
  double left = 0.0;
  double right = 0.0;
  WaveLabel label = WaveLabel::CPlus;
};

struct WaveInfo {
  std::uint64_t id = 0;
  double left = 0.0;
  double right = 0.0;
  WaveLabel label = WaveLabel::CPlus;
  double speed = 0.0;
  double sigma = 0.0;
};

// One resolved collision with its functional bookkeeping. q1/q2 follow the
// involved-pairs / one-involved-wave decomposition of the quadratic change.
struct InteractionRecord {
  double time = 0.0;
  double position = 0.0;
  InteractionCase kase = InteractionCase::Multi;
  std::vector<WaveInfo> incoming;
  std::vector<WaveInfo> outgoing;
  double V_before = 0.0, V_after = 0.0;
  double TV_before = 0.0, TV_after = 0.0;
  double Qweak_before = 0.0, Qweak_after = 0.0;
  double Qpos_before = 0.0, Qpos_after = 0.0;
  double q1_weak = 0.0, q2_weak = 0.0;
  double q1_pos = 0.0, q2_pos = 0.0;
  double predicted_bound = 0.0;
  double mass_before = 0.0, mass_after = 0.0;
  bool c_star_ok = true;

  double delta_V() const { return V_after - V_before; }
  double delta_Qweak() const { return Qweak_after - Qweak_before; }
  double delta_Qpos() const { return Qpos_after - Qpos_before; }
};

// Piecewise-constant initial data: left_value left of the first breakpoint,
// jumps[i].second to the right of jumps[i].first.
struct PiecewiseConstant {
  double left_value = 0.0;
  std::vector<std::pair<double, double>> jumps;

  double sup_norm() const;
  double total_variation() const;
};

struct CollisionEvent {
  double time = 0.0;
  std::uint64_t left_id = 0;
  std::uint64_t right_id = 0;
  bool operator>(const CollisionEvent& o) const { return time > o.time; }
};

struct SimulationState {
  KineticModel model;
  double time = 0.0;
  double eps = 0.1;
  double c_star = 1.0;
  std::vector<Front> fronts;  // ordered left to right
  std::priority_queue<CollisionEvent, std::vector<CollisionEvent>,
                      std::greater<CollisionEvent>>
      events;
  std::uint64_t next_id = 1;
  std::size_t events_processed = 0;
  std::size_t safety_cap = 200000;

  // Running functional values, advanced by exact per-event deltas.
  double V = 0.0, TV = 0.0, Qweak = 0.0, Qpos = 0.0;

  // Conservation bookkeeping.
  double initial_mass = 0.0;
  double base_x_min = 0.0, base_x_max = 0.0;
  double max_char_speed = 0.0;

  std::size_t max_front_count = 0;
  std::size_t fronts_created_by_splitting = 0;
  std::size_t initial_front_count = 0;

  // [x_min, x_max] guaranteed to contain every front up to time t.
  std::pair<double, double> domain_at(double t) const;
};

using Monitor = std::function<void(const SimulationState&, const InteractionRecord&)>;

// Replaces every initial jump by its discretized Riemann fan and builds the
// collision queue. Pass c_star <= 0 (or NaN) to pick it automatically from
// the smallness condition. The model's working range is widened to twice the
// sup-norm of the data when necessary.
SimulationState initialize(const KineticModel& m, const PiecewiseConstant& data,
                           double eps, double c_star = -1.0,
                           std::size_t safety_cap = 200000);

// Advances to the earliest pending collision at or before t_limit, resolves
// it, and returns its record; returns nullopt (advancing to t_limit if
// finite) when no such collision exists. Throws std::runtime_error when the
// safety cap is exceeded.
std::optional<InteractionRecord> step(SimulationState& state,
                                      double t_limit = 1e300);

struct RunResult {
  Snapshot final_snapshot;
  std::vector<InteractionRecord> records;
};

// Processes all events up to t_end, invoking each monitor after each event.
RunResult run(SimulationState& state, double t_end,
              const std::vector<Monitor>& monitors = {});

// Profile at time t >= state.time (fronts extrapolated along their speeds).
Snapshot snapshot_at(const SimulationState& state, double t);
Snapshot snapshot_now(const SimulationState& state);

// Integral of u over the domain (piecewise-constant exact summation).
// Throws if a front lies outside the domain.
double mass(const Snapshot& s, std::pair<double, double> domain);

// L1 distance between two piecewise-constant profiles over the domain.
double l1_distance(const Snapshot& a, const Snapshot& b,
                   std::pair<double, double> domain);

}  // namespace nctrack

#endif  // NCTRACK_ENGINE_HPP_
