#include "nctrack/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nctrack {

namespace {

constexpr double kTieTol = 1e-12;      // simultaneous-event merge window
constexpr double kDropTol = 1e-14;     // post-interaction strength cutoff

double position_at(const Front& f, double t_from, double t_to) {
  return f.position + f.speed * (t_to - t_from);
}

SnapshotWave to_snapshot_wave(const Front& f) {
  return {f.position, f.left, f.right, f.label, f.speed};
}

WaveInfo to_wave_info(const KineticModel& m, const Front& f) {
  return {f.id, f.left, f.right, f.label, f.speed,
          wave_strength(m, f.left, f.right)};
}

// Collision time of fronts[i] and fronts[i+1], or nullopt when they never
// meet. Equal speeds never collide.
std::optional<double> collision_time(const SimulationState& s, std::size_t i) {
  const Front& a = s.fronts[i];
  const Front& b = s.fronts[i + 1];
  if (!(a.speed > b.speed)) return std::nullopt;
  const double gap = b.position - a.position;
  const double t = s.time + std::max(0.0, gap / (a.speed - b.speed));
  return t;
}

void schedule(SimulationState& s, std::size_t i) {
  if (i + 1 >= s.fronts.size()) return;
  if (auto t = collision_time(s, i)) {
    s.events.push({*t, s.fronts[i].id, s.fronts[i + 1].id});
  }
}

std::optional<std::size_t> index_of(const SimulationState& s, std::uint64_t id) {
  for (std::size_t i = 0; i < s.fronts.size(); ++i) {
    if (s.fronts[i].id == id) return i;
  }
  return std::nullopt;
}

// Fan waves -> fronts at the collision point, absorbing sub-kDropTol internal
// jumps so the outer states are preserved exactly.
std::vector<Front> fan_to_fronts(SimulationState& s, const WaveFan& fan, double x) {
  std::vector<Wave> waves;
  waves.reserve(fan.waves.size());
  for (const Wave& w : fan.waves) {
    if (!waves.empty() && std::abs(w.right - w.left) < kDropTol &&
        fan.waves.size() > 1) {
      waves.back().right = w.right;  // absorb the micro-jump into the neighbor
      waves.back().speed = rankine_hugoniot_speed(s.model, waves.back().left,
                                                  waves.back().right);
      continue;
    }
    waves.push_back(w);
  }
  std::vector<Front> fronts;
  fronts.reserve(waves.size());
  for (const Wave& w : waves) {
    Front f;
    f.id = s.next_id++;
    f.position = x;
    f.speed = w.speed;
    f.left = w.left;
    f.right = w.right;
    f.label = w.label;
    fronts.push_back(f);
  }
  return fronts;
}

double state_mass(const SimulationState& s) {
  return mass(snapshot_now(s), s.domain_at(s.time));
}

}  // namespace

double PiecewiseConstant::sup_norm() const {
  double m = std::abs(left_value);
  for (const auto& [x, u] : jumps) m = std::max(m, std::abs(u));
  return m;
}

double PiecewiseConstant::total_variation() const {
  double tv = 0.0;
  double prev = left_value;
  for (const auto& [x, u] : jumps) {
    tv += std::abs(u - prev);
    prev = u;
  }
  return tv;
}

std::pair<double, double> SimulationState::domain_at(double t) const {
  const double spread = 1.0 + max_char_speed * std::max(0.0, t);
  return {base_x_min - spread, base_x_max + spread};
}

SimulationState initialize(const KineticModel& m, const PiecewiseConstant& data,
                           double eps, double c_star, std::size_t safety_cap) {
  if (!(eps > 0.0)) throw std::invalid_argument("initialize: eps must be positive");
  if (!std::isfinite(data.left_value)) {
    throw std::invalid_argument("initialize: non-finite data");
  }
  for (std::size_t i = 0; i < data.jumps.size(); ++i) {
    const auto& [x, u] = data.jumps[i];
    if (!std::isfinite(x) || !std::isfinite(u)) {
      throw std::invalid_argument("initialize: non-finite data");
    }
    if (i > 0 && !(x > data.jumps[i - 1].first)) {
      throw std::invalid_argument("initialize: breakpoints must increase");
    }
  }

  SimulationState s;
  const double sup = data.sup_norm();
  s.model = 2.0 * sup > m.range_bound ? with_range_bound(m, 2.0 * sup) : m;
  s.eps = eps;
  s.safety_cap = safety_cap;

  double prev = data.left_value;
  for (const auto& [x, u] : data.jumps) {
    if (u == prev) continue;
    WaveFan fan = solve_riemann_discretized(s.model, prev, u, eps);
    for (const Wave& w : fan.waves) {
      Front f;
      f.id = s.next_id++;
      f.position = x;
      f.speed = w.speed;
      f.left = w.left;
      f.right = w.right;
      f.label = w.label;
      s.fronts.push_back(f);
    }
    prev = u;
  }

  for (std::size_t i = 0; i + 1 < s.fronts.size(); ++i) schedule(s, i);

  if (s.fronts.empty()) {
    s.base_x_min = data.jumps.empty() ? 0.0 : data.jumps.front().first;
    s.base_x_max = data.jumps.empty() ? 0.0 : data.jumps.back().first;
  } else {
    s.base_x_min = s.fronts.front().position;
    s.base_x_max = s.fronts.back().position;
  }
  // Front speeds are flux secants over the working range.
  s.max_char_speed = std::max(std::abs(s.model.flux.deriv(s.model.range_bound)),
                              std::abs(s.model.flux.deriv(-s.model.range_bound)));

  const Snapshot snap = snapshot_now(s);
  s.V = total_V(snap, s.model);
  s.TV = total_TV(snap);
  s.c_star = (c_star > 0.0 && std::isfinite(c_star))
                 ? c_star
                 : auto_c_star(s.model, s.TV);
  s.Qweak = Q_weak(snap, s.model);
  s.Qpos = Q_pos(snap, s.model, s.c_star);
  s.initial_mass = state_mass(s);
  s.initial_front_count = s.fronts.size();
  s.max_front_count = s.fronts.size();
  return s;
}

std::optional<InteractionRecord> step(SimulationState& s, double t_limit) {
  // Find the earliest still-valid event.
  std::optional<CollisionEvent> ev;
  while (!s.events.empty()) {
    const CollisionEvent top = s.events.top();
    const auto li = index_of(s, top.left_id);
    if (!li) {
      s.events.pop();
      continue;
    }
    if (*li + 1 >= s.fronts.size() || s.fronts[*li + 1].id != top.right_id) {
      s.events.pop();
      continue;
    }
    ev = top;
    break;
  }
  if (!ev || ev->time > t_limit) {
    if (t_limit < 1e300 && t_limit > s.time) {
      for (Front& f : s.fronts) f.position = position_at(f, s.time, t_limit);
      s.time = t_limit;
    }
    return std::nullopt;
  }
  s.events.pop();

  if (++s.events_processed > s.safety_cap) {
    throw std::runtime_error(
        "front-tracking safety cap exceeded (tie-breaking pathology?)");
  }

  const double t_star = std::max(ev->time, s.time);
  for (Front& f : s.fronts) f.position = position_at(f, s.time, t_star);
  s.time = t_star;

  std::size_t lo = *index_of(s, ev->left_id);
  std::size_t hi = lo + 1;
  const double x_star = s.fronts[lo].position;

  // Merge genuinely simultaneous adjacent collisions into one event.
  bool grew = true;
  while (grew) {
    grew = false;
    if (lo > 0) {
      if (auto t = collision_time(s, lo - 1); t && *t <= t_star + kTieTol) {
        --lo;
        grew = true;
      }
    }
    if (hi + 1 < s.fronts.size()) {
      if (auto t = collision_time(s, hi); t && *t <= t_star + kTieTol) {
        ++hi;
        grew = true;
      }
    }
  }

  for (std::size_t k = lo; k <= hi; ++k) s.fronts[k].position = x_star;

  InteractionRecord rec;
  rec.time = t_star;
  rec.position = x_star;
  rec.V_before = s.V;
  rec.TV_before = s.TV;
  rec.Qweak_before = s.Qweak;
  rec.Qpos_before = s.Qpos;

  const Snapshot before = snapshot_now(s);
  rec.mass_before = mass(before, s.domain_at(t_star));
  for (std::size_t k = lo; k <= hi; ++k) {
    rec.incoming.push_back(to_wave_info(s.model, s.fronts[k]));
  }

  const double outer_l = s.fronts[lo].left;
  const double outer_r = s.fronts[hi].right;
  WaveFan fan;
  if (std::abs(outer_l - outer_r) > kDropTol * (1.0 + std::abs(outer_l))) {
    fan = solve_riemann_discretized(s.model, outer_l, outer_r, s.eps);
  }
  std::vector<Front> fresh = fan_to_fronts(s, fan, x_star);
  for (const Front& f : fresh) rec.outgoing.push_back(to_wave_info(s.model, f));

  if (hi - lo == 1) {
    const WaveRef lw{s.fronts[lo].left, s.fronts[lo].right, s.fronts[lo].label};
    const WaveRef rw{s.fronts[hi].left, s.fronts[hi].right, s.fronts[hi].label};
    rec.kase = classify_interaction(s.model, lw, rw);
    rec.predicted_bound = predicted_V_bound(rec.kase, lw, rw, s.model);
  } else {
    rec.kase = InteractionCase::Multi;
    rec.predicted_bound = 0.0;
  }

  // Splice the fan in and rebuild the affected queue entries.
  s.fronts.erase(s.fronts.begin() + lo, s.fronts.begin() + hi + 1);
  s.fronts.insert(s.fronts.begin() + lo, fresh.begin(), fresh.end());
  if (lo > 0) schedule(s, lo - 1);
  for (std::size_t k = lo; k < lo + fresh.size(); ++k) schedule(s, k);
  if (fresh.size() > rec.incoming.size()) {
    s.fronts_created_by_splitting += fresh.size() - rec.incoming.size();
  }

  const Snapshot after = snapshot_now(s);
  rec.mass_after = mass(after, s.domain_at(t_star));

  InteractionSite site{lo, lo + rec.incoming.size(), lo, lo + fresh.size()};
  const auto [dv1, dv2] =
      interaction_delta(before, after, site, FunctionalKind::Vtotal, s.model);
  const auto [dtv1, dtv2] =
      interaction_delta(before, after, site, FunctionalKind::TVtotal, s.model);
  std::tie(rec.q1_weak, rec.q2_weak) =
      interaction_delta(before, after, site, FunctionalKind::QWeak, s.model);
  std::tie(rec.q1_pos, rec.q2_pos) = interaction_delta(
      before, after, site, FunctionalKind::QPos, s.model, s.c_star);

  rec.V_after = rec.V_before + dv1 + dv2;
  rec.TV_after = rec.TV_before + dtv1 + dtv2;
  rec.Qweak_after = rec.Qweak_before + rec.q1_weak + rec.q2_weak;
  rec.Qpos_after = rec.Qpos_before + rec.q1_pos + rec.q2_pos;
  rec.c_star_ok = c_star_condition_holds(before, s.model, s.c_star);

  s.V = rec.V_after;
  s.TV = rec.TV_after;
  s.Qweak = rec.Qweak_after;
  s.Qpos = rec.Qpos_after;
  s.max_front_count = std::max(s.max_front_count, s.fronts.size());

  return rec;
}

RunResult run(SimulationState& state, double t_end,
              const std::vector<Monitor>& monitors) {
  if (!(t_end > state.time)) {
    throw std::invalid_argument("run: t_end must exceed the current time");
  }
  RunResult out;
  while (auto rec = step(state, t_end)) {
    for (const Monitor& mon : monitors) mon(state, *rec);
    out.records.push_back(std::move(*rec));
  }
  out.final_snapshot = snapshot_now(state);
  return out;
}

Snapshot snapshot_at(const SimulationState& state, double t) {
  Snapshot s;
  s.time = t;
  s.waves.reserve(state.fronts.size());
  for (const Front& f : state.fronts) {
    SnapshotWave w = to_snapshot_wave(f);
    w.position = position_at(f, state.time, t);
    s.waves.push_back(w);
  }
  return s;
}

Snapshot snapshot_now(const SimulationState& state) {
  return snapshot_at(state, state.time);
}

double mass(const Snapshot& s, std::pair<double, double> domain) {
  const auto [a, b] = domain;
  if (!(b > a)) throw std::invalid_argument("mass: empty domain");
  if (s.waves.empty()) return 0.0;
  for (const auto& w : s.waves) {
    if (w.position < a - 1e-9 || w.position > b + 1e-9) {
      throw std::invalid_argument("mass: front outside domain");
    }
  }
  return profile_mass(s, domain);
}

double l1_distance(const Snapshot& sa, const Snapshot& sb,
                   std::pair<double, double> domain) {
  const auto [a, b] = domain;
  if (!(b > a)) throw std::invalid_argument("l1_distance: empty domain");

  auto value_left_of = [](const Snapshot& s, std::size_t next_idx) {
    if (s.waves.empty()) return 0.0;
    return next_idx == 0 ? s.waves.front().left : s.waves[next_idx - 1].right;
  };

  double x = a;
  std::size_t ia = 0, ib = 0;
  double dist = 0.0;
  while (x < b) {
    double x_next = b;
    if (ia < sa.waves.size()) x_next = std::min(x_next, sa.waves[ia].position);
    if (ib < sb.waves.size()) x_next = std::min(x_next, sb.waves[ib].position);
    if (x_next > x) {
      const double ua = value_left_of(sa, ia);
      const double ub = value_left_of(sb, ib);
      dist += std::abs(ua - ub) * (x_next - x);
      x = x_next;
    }
    while (ia < sa.waves.size() && sa.waves[ia].position <= x) ++ia;
    while (ib < sb.waves.size() && sb.waves[ib].position <= x) ++ib;
    if (x_next == b && x >= b) break;
  }
  return dist;
}

}  // namespace nctrack
