#include "nctrack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace nctrack {

namespace {

bool contains_id(const std::vector<WaveInfo>& waves, std::uint64_t id) {
  return std::any_of(waves.begin(), waves.end(),
                     [id](const WaveInfo& w) { return w.id == id; });
}

const WaveInfo* find_id(const std::vector<WaveInfo>& waves, std::uint64_t id) {
  for (const auto& w : waves) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

const WaveInfo* find_label(const std::vector<WaveInfo>& waves, WaveLabel label) {
  for (const auto& w : waves) {
    if (w.label == label) return &w;
  }
  return nullptr;
}

bool is_birth_case(InteractionCase c) {
  return c == InteractionCase::CR4 || c == InteractionCase::RC3 ||
         c == InteractionCase::CC3;
}

bool is_upward_shock(WaveLabel label) {
  return label == WaveLabel::CMinus || label == WaveLabel::CMinusPlus;
}

}  // namespace

double TrajectoryLedger::total_variation() const {
  double tv = 0.0;
  for (const auto& e : events) tv += std::abs(e.sigma_after - e.sigma_before);
  return tv;
}

double TrajectoryLedger::signed_variation() const { return sigma_death - sigma_birth; }

double contraction_slope(const KineticModel& m, double u) {
  if (m.family == KineticFamily::Cubic) return m.beta;
  const double h = 1e-6;
  auto g = [&m](double v) { return m.kinetic_zero(m.kinetic(v)); };
  return (g(u + h) - g(u - h)) / (2.0 * h);
}

ScenarioConfig build_splitting_merging(
    const KineticModel& m, double u_star,
    const std::vector<std::pair<double, double>>& perturbation, double eps) {
  if (!(u_star > 0.0)) {
    throw std::invalid_argument("build_splitting_merging: u_star must be positive");
  }
  const double l_star = contraction_slope(m, u_star);
  if (!(l_star > 0.5) || !(l_star < 1.0)) {
    throw std::invalid_argument(
        "build_splitting_merging: L* = " + std::to_string(l_star) +
        " outside (1/2, 1)");
  }
  for (const auto& [x, amp] : perturbation) {
    if (x == 0.0) {
      throw std::invalid_argument(
          "build_splitting_merging: perturbation jump at the crossing shock");
    }
    if (!(std::abs(amp) < eps)) {
      throw std::invalid_argument(
          "build_splitting_merging: perturbation amplitude not below eps");
    }
  }

  const double ps = m.companion(u_star);

  // Cumulative perturbation anchored at the origin: the states adjacent to
  // the crossing shock are exactly (u_star, phi_s(u_star)) and the far-field
  // states absorb the offsets, so the t = 0 crossing shock is untouched no
  // matter how the jumps accumulate.
  std::vector<std::pair<double, double>> jumps = perturbation;
  std::sort(jumps.begin(), jumps.end());
  double sum_left = 0.0;
  for (const auto& [x, amp] : jumps) {
    if (x < 0.0) sum_left += amp;
  }

  PiecewiseConstant data;
  data.left_value = u_star - sum_left;
  double level = data.left_value;
  bool crossing_emitted = false;
  for (const auto& [x, amp] : jumps) {
    if (!crossing_emitted && x > 0.0) {
      data.jumps.emplace_back(0.0, ps);
      level = ps;
      crossing_emitted = true;
    }
    level += amp;
    data.jumps.emplace_back(x, level);
  }
  if (!crossing_emitted) data.jumps.emplace_back(0.0, ps);

  // The t=0 wave at the origin must stay a single classical crossing shock.
  double left_of_zero = u_star;
  double right_of_zero = ps;
  for (std::size_t i = 0; i < data.jumps.size(); ++i) {
    if (data.jumps[i].first < 0.0) left_of_zero = data.jumps[i].second;
    if (data.jumps[i].first == 0.0) right_of_zero = data.jumps[i].second;
  }
  const WaveFan fan0 = solve_riemann(m, left_of_zero, right_of_zero);
  if (fan0.waves.size() != 1 || fan0.waves[0].label != WaveLabel::CPlusMinus) {
    throw std::invalid_argument(
        "build_splitting_merging: perturbation breaks the isolated crossing shock");
  }

  ScenarioConfig config;
  config.kinetic.family = m.family == KineticFamily::Cubic ? "cubic" : "tabulated";
  config.kinetic.beta = m.beta;
  config.kinetic.samples = m.samples;
  config.initial = data;
  config.eps = eps;
  config.t_end = 1e6;  // generously past the merge; the queue drains first
  config.c_star = -1.0;
  return config;
}

ScenarioConfig random_splitting_merging(const KineticModel& m, double u_star,
                                        Rng& rng, double eps) {
  std::vector<std::pair<double, double>> pert;
  const double slope = contraction_slope(m, u_star);

  // About a quarter of the scenarios aim at SV(C) < 0: a single left
  // rarefaction drives SV_L ~ -slope*amp while the right shock overshoots the
  // shifted threshold by less than that. The window is non-empty only when
  // 2*slope - 1 > 0, the same L* > 1/2 requirement the builder enforces.
  if (rng.next_double() < 0.25) {
    const double amp = rng.uniform(0.02, 0.03);
    const double a_raref =
        rng.uniform(0.003, std::min(0.006, (2.0 * slope - 1.0) * amp - 0.004));
    const double lo = a_raref + (1.0 - slope) * amp + 0.0015;
    const double hi = slope * amp - 0.0015;
    const double a_shock = rng.uniform(lo, hi);
    pert.emplace_back(-rng.uniform(1.8, 2.6), amp);
    const double x1 = rng.uniform(0.2, 0.5);
    pert.emplace_back(x1, -a_raref);
    pert.emplace_back(x1 + rng.uniform(0.3, 0.8), a_shock);
    return build_splitting_merging(m, u_star, pert, eps);
  }

  // Balanced scenarios: a few left small waves of either sign (positive
  // amplitude = rarefaction, negative = shock; they will cross the
  // nonclassical wave and drift its left state by -sum(amp)), with the right
  // shock sized to both close the pattern (NC) and keep SV(C) nonnegative.
  const int n_left = static_cast<int>(rng.next_below(3));  // 0..2
  double x = -1.5;
  double drift = 0.0;  // net change of the N+- left state, -sum(amp)
  for (int i = 0; i < n_left; ++i) {
    x -= rng.uniform(0.4, 1.2);
    const double amp =
        (rng.next_double() < 0.5 ? 1.0 : -1.0) * rng.uniform(0.006, 0.015);
    pert.emplace_back(x, amp);
    drift += -amp;
  }
  const double a_raref = rng.uniform(0.008, 0.02);
  const double a_shock =
      a_raref + std::max({0.003, -(1.0 - slope) * drift + 0.003,
                          -slope * drift + 0.003});
  const double x1 = rng.uniform(0.2, 0.5);
  pert.emplace_back(x1, -a_raref);
  pert.emplace_back(x1 + rng.uniform(0.3, 0.8), a_shock);

  return build_splitting_merging(m, u_star, pert, eps);
}

Episode analyze_trajectories(const std::vector<InteractionRecord>& records) {
  // Locate the birth: first CR-4/RC-3/CC-3 emitting an N+- with a trailing
  // upward classical shock.
  std::size_t birth = records.size();
  std::uint64_t n_id = 0, c_id = 0;
  double n_sigma = 0.0, c_sigma = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!is_birth_case(records[i].kase)) continue;
    const WaveInfo* n = find_label(records[i].outgoing, WaveLabel::NPlusMinus);
    if (!n) continue;
    const WaveInfo* c = nullptr;
    for (const auto& w : records[i].outgoing) {
      if (is_upward_shock(w.label)) c = &w;
    }
    if (!c) continue;
    birth = i;
    n_id = n->id;
    c_id = c->id;
    n_sigma = n->sigma;
    c_sigma = c->sigma;
    break;
  }
  if (birth == records.size()) {
    throw std::runtime_error("analyze_trajectories: no N+- birth found");
  }

  Episode ep;
  ep.ledger_N.which = "N+-";
  ep.ledger_N.t_birth = records[birth].time;
  ep.ledger_N.sigma_birth = n_sigma;
  ep.ledger_C.which = "C^";
  ep.ledger_C.t_birth = records[birth].time;
  ep.ledger_C.sigma_birth = c_sigma;
  ep.omega.birth_index = birth;
  ep.omega.inside_records.push_back(birth);

  std::set<std::uint64_t> inside;  // waves currently strictly inside Omega

  bool closed = false;
  for (std::size_t i = birth + 1; i < records.size() && !closed; ++i) {
    const auto& rec = records[i];
    const bool has_n = contains_id(rec.incoming, n_id);
    const bool has_c = contains_id(rec.incoming, c_id);

    if (has_n && has_c) {
      // Death: N and C merge back into a crossing shock.
      if (rec.kase != InteractionCase::NC && rec.kase != InteractionCase::NN &&
          rec.kase != InteractionCase::Multi) {
        throw std::runtime_error("analyze_trajectories: unexpected closing case " +
                                 to_string(rec.kase));
      }
      ep.ledger_N.t_death = rec.time;
      ep.ledger_C.t_death = rec.time;
      ep.ledger_N.sigma_death = find_id(rec.incoming, n_id)->sigma;
      ep.ledger_C.sigma_death = find_id(rec.incoming, c_id)->sigma;
      ep.omega.death_index = i;
      ep.omega.inside_records.push_back(i);
      if (!inside.empty()) ep.omega.closure_violated = true;
      closed = true;
      continue;
    }

    if (has_n) {
      // Crossing of a small left wave (RN or CN-3).
      const WaveInfo* n_in = find_id(rec.incoming, n_id);
      const WaveInfo* n_out = find_label(rec.outgoing, WaveLabel::NPlusMinus);
      if (!n_out || rec.incoming.size() != 2 ||
          rec.incoming[1].id != n_id) {
        throw std::runtime_error("analyze_trajectories: malformed N interaction");
      }
      const WaveInfo& small = rec.incoming[0];
      const WaveInfo* transmitted = nullptr;
      for (const auto& w : rec.outgoing) {
        if (w.id != n_out->id) transmitted = &w;
      }
      TrajectoryEvent e;
      e.time = rec.time;
      e.kase = rec.kase;
      e.sigma_before = n_in->sigma;
      e.sigma_after = n_out->sigma;
      e.side = InteractionSide::Left;
      e.sign = is_shock(small.label) ? +1 : -1;
      e.small_sigma_in = small.sigma;
      e.small_sigma_out = transmitted ? transmitted->sigma : 0.0;
      e.record_index = i;
      ep.ledger_N.events.push_back(e);
      n_id = n_out->id;
      if (transmitted) inside.insert(transmitted->id);
      inside.erase(small.id);
      ep.omega.inside_records.push_back(i);
      continue;
    }

    if (has_c) {
      // Classical absorption at the C trajectory.
      const WaveInfo* c_in = find_id(rec.incoming, c_id);
      if (rec.outgoing.size() != 1 || rec.incoming.size() != 2) {
        throw std::runtime_error("analyze_trajectories: malformed C interaction");
      }
      const bool c_is_left = rec.incoming[0].id == c_id;
      const WaveInfo& small = c_is_left ? rec.incoming[1] : rec.incoming[0];
      TrajectoryEvent e;
      e.time = rec.time;
      e.kase = rec.kase;
      e.sigma_before = c_in->sigma;
      e.sigma_after = rec.outgoing[0].sigma;
      e.side = c_is_left ? InteractionSide::Right : InteractionSide::Left;
      e.sign = is_shock(small.label) ? +1 : -1;
      e.small_sigma_in = small.sigma;
      e.record_index = i;
      ep.ledger_C.events.push_back(e);
      c_id = rec.outgoing[0].id;
      inside.erase(small.id);
      ep.omega.inside_records.push_back(i);
      continue;
    }

    // Interactions among the transmitted waves stay inside Omega; anything
    // mixing inside and outside fronts violates the closure property.
    bool any_inside = false, all_inside = true;
    for (const auto& w : rec.incoming) {
      if (inside.count(w.id)) {
        any_inside = true;
      } else {
        all_inside = false;
      }
    }
    if (any_inside) {
      if (!all_inside) {
        ep.omega.closure_violated = true;
      }
      for (const auto& w : rec.incoming) inside.erase(w.id);
      for (const auto& w : rec.outgoing) inside.insert(w.id);
      ep.omega.inside_records.push_back(i);
    }
  }

  if (!closed) {
    throw std::runtime_error("analyze_trajectories: no complete birth-death episode found");
  }

  for (const auto& e : ep.ledger_C.events) {
    const double contribution = e.sign * e.small_sigma_in;
    if (e.side == InteractionSide::Left) {
      ep.SV_L_C += contribution;
    } else {
      ep.SV_R_C += contribution;
    }
  }
  return ep;
}

double omega_Q1(const Episode& episode, const std::vector<InteractionRecord>& records,
                FunctionalKind which) {
  if (which != FunctionalKind::QWeak && which != FunctionalKind::QPos) {
    throw std::invalid_argument("omega_Q1: selector must be a quadratic functional");
  }
  double total = 0.0;
  for (std::size_t idx : episode.omega.inside_records) {
    const auto& rec = records.at(idx);
    total += which == FunctionalKind::QWeak ? rec.q1_weak : rec.q1_pos;
  }
  return total;
}

Lemma52Row lemma52_check(const InteractionRecord& record, const KineticModel& m) {
  if (record.kase != InteractionCase::RN && record.kase != InteractionCase::CN3) {
    throw std::invalid_argument("lemma52_check: case must be RN or CN-3");
  }
  const WaveInfo& small = record.incoming.at(0);
  const WaveInfo& n_in = record.incoming.at(1);
  const WaveInfo* n_out = find_label(record.outgoing, WaveLabel::NPlusMinus);
  const WaveInfo* transmitted = nullptr;
  for (const auto& w : record.outgoing) {
    if (n_out && w.id != n_out->id) transmitted = &w;
  }
  if (!n_out || !transmitted) {
    throw std::invalid_argument("lemma52_check: record lacks the N'/W' pair");
  }

  const double u_l = small.left;
  const double u_m = small.right;
  auto g = [&m](double v) { return m.kinetic_zero(m.kinetic(v)); };

  Lemma52Row row;
  row.L_i = std::abs(g(u_l) - g(u_m)) / std::abs(u_l - u_m);
  row.sign = is_shock(small.label) ? +1 : -1;
  row.residuals[0] = std::abs(transmitted->sigma - row.L_i * small.sigma);
  row.residuals[1] = std::abs(n_out->sigma - n_in.sigma -
                              row.sign * (1.0 - row.L_i) * small.sigma);
  const double q1_expected =
      -(1.0 - row.L_i) * small.sigma * (n_in.sigma - row.sign * row.L_i * small.sigma);
  row.residuals[2] = std::abs(record.q1_weak - q1_expected);
  return row;
}

std::optional<PairInteraction> resolve_pair(const KineticModel& m, double u_l,
                                            double u_m, double u_r) {
  PairInteraction pi;
  try {
    pi.left = {u_l, u_m, classify_wave(m, u_l, u_m)};
    pi.right = {u_m, u_r, classify_wave(m, u_m, u_r)};
    pi.kase = classify_interaction(m, pi.left, pi.right);
  } catch (const std::exception&) {
    return std::nullopt;
  }

  const WaveFan fan = solve_riemann(m, u_l, u_r);
  const double sigma_in =
      wave_strength(m, u_l, u_m) + wave_strength(m, u_m, u_r);
  double sigma_out = 0.0;
  for (const auto& w : fan.waves) sigma_out += wave_strength(m, w.left, w.right);
  pi.delta_V = sigma_out - sigma_in;

  double q_out = 0.0;
  for (std::size_t i = 0; i < fan.waves.size(); ++i) {
    for (std::size_t j = i + 1; j < fan.waves.size(); ++j) {
      if (weakly_approaching(fan.waves[i].label, fan.waves[j].label)) {
        q_out += wave_strength(m, fan.waves[i].left, fan.waves[i].right) *
                 wave_strength(m, fan.waves[j].left, fan.waves[j].right);
      }
    }
  }
  double q_in = 0.0;
  if (weakly_approaching(pi.left.label, pi.right.label)) {
    q_in = wave_strength(m, u_l, u_m) * wave_strength(m, u_m, u_r);
  }
  pi.q1_weak = q_out - q_in;
  return pi;
}

std::optional<QIncreaseWitness> search_Qweak_increase(
    InteractionCase kase, const KineticModel& m, const std::vector<double>& c0_values,
    std::size_t samples, std::uint64_t seed) {
  if (kase != InteractionCase::RC3 && kase != InteractionCase::CR4 &&
      kase != InteractionCase::CC3 && kase != InteractionCase::CN3) {
    throw std::invalid_argument("search_Qweak_increase: case " + to_string(kase) +
                                " is not in the exceptional set");
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const double u_l = rng.uniform(0.5, 1.5);
    const double ps_l = m.companion(u_l);
    const double pb_l = m.kinetic(u_l);
    double u_m = 0.0, u_r = 0.0;

    switch (kase) {
      case InteractionCase::RC3: {
        // Small incoming rarefaction maximizes [Q]1 (largest change at
        // sigma(R_in) = 0).
        const double sr = std::pow(10.0, rng.uniform(-5.0, -1.0));
        u_m = u_l + sr;
        const double lo = std::max(pb_l, m.companion(u_m));
        u_r = rng.uniform(lo, ps_l);
        break;
      }
      case InteractionCase::CR4: {
        // u_m and u_r approach each other across phi_s(u_l).
        const double d1 = std::pow(10.0, rng.uniform(-5.0, -1.0));
        const double d2 = std::pow(10.0, rng.uniform(-5.0, -1.0));
        u_m = ps_l * (1.0 - d2);
        u_r = ps_l + (pb_l - ps_l) * d1;
        break;
      }
      case InteractionCase::CC3: {
        u_m = rng.uniform(std::max(0.0, ps_l), u_l);
        const double lo = std::max(pb_l, m.companion(u_m));
        u_r = rng.uniform(lo, ps_l);
        break;
      }
      case InteractionCase::CN3: {
        // Strong incoming shock: u_m below phi_b0(phi_b(u_l)).
        u_m = rng.uniform(0.05, m.kinetic_zero(m.kinetic(u_l)));
        u_r = m.kinetic(u_m);
        break;
      }
      default:
        break;
    }

    auto pi = resolve_pair(m, u_l, u_m, u_r);
    if (!pi || pi->kase != kase) continue;

    bool ok = true;
    QIncreaseWitness w;
    for (double c0 : c0_values) {
      const double combined = pi->delta_V + c0 * pi->q1_weak;
      w.combined.emplace_back(c0, combined);
      if (!(combined > 0.0)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    w.u_l = u_l;
    w.u_m = u_m;
    w.u_r = u_r;
    w.delta_V = pi->delta_V;
    w.delta_Qweak = pi->q1_weak;
    w.seed = seed;
    w.sample_index = k;
    return w;
  }
  return std::nullopt;
}

std::string episode_report_json(const Episode& episode,
                                const std::vector<InteractionRecord>& records,
                                const KineticModel& m, double u_star) {
  nlohmann::json j;
  j["t0"] = episode.ledger_N.t_birth;
  j["tm1"] = episode.ledger_N.t_death;
  j["TV_N"] = episode.ledger_N.total_variation();
  j["SV_N"] = episode.ledger_N.signed_variation();
  j["SV_L_C"] = episode.SV_L_C;
  j["SV_R_C"] = episode.SV_R_C;
  const double l_star = contraction_slope(m, u_star);
  j["lambda_star"] = (1.0 - l_star) / l_star;
  j["omega_Q1_Qweak"] = omega_Q1(episode, records, FunctionalKind::QWeak);
  j["omega_Q1_Qpos"] = omega_Q1(episode, records, FunctionalKind::QPos);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : episode.ledger_N.events) {
    const auto& rec = records.at(e.record_index);
    if (rec.kase != InteractionCase::RN && rec.kase != InteractionCase::CN3) continue;
    const Lemma52Row row = lemma52_check(rec, m);
    rows.push_back({{"time", e.time},
                    {"case", to_string(rec.kase)},
                    {"L_i", row.L_i},
                    {"sign", row.sign},
                    {"residual_crossing", row.residuals[0]},
                    {"residual_N_update", row.residuals[1]},
                    {"residual_Q1", row.residuals[2]}});
  }
  j["lemma52_rows"] = rows;
  return j.dump(2);
}

}  // namespace nctrack
