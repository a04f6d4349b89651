#include "nctrack/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nctrack {

namespace {

double sigma_of(const KineticModel& m, const SnapshotWave& w) {
  return wave_strength(m, w.left, w.right);
}

// +1 increasing, -1 decreasing after normalization. Admissible waves are
// never flat; treat a flat pair as decreasing (shock-like) for totality.
int monotonicity(const KineticModel& m, const SnapshotWave& w) {
  const double a = normalized_state(m, w.left);
  const double b = normalized_state(m, w.right);
  return b > a ? +1 : -1;
}

// Pairwise Q contribution of (x left of y) for the requested functional.
double pair_term(FunctionalKind which, const KineticModel& m, double c_star,
                 const SnapshotWave& x, const SnapshotWave& y) {
  switch (which) {
    case FunctionalKind::QWeak:
      return weakly_approaching(x.label, y.label) ? sigma_of(m, x) * sigma_of(m, y)
                                                  : 0.0;
    case FunctionalKind::QPos:
      return theta_weight(m, x, y, c_star) * sigma_of(m, x) * sigma_of(m, y);
    default:
      return 0.0;
  }
}

// Single-wave term for the linear functionals.
double single_term(FunctionalKind which, const KineticModel& m,
                   const SnapshotWave& w) {
  switch (which) {
    case FunctionalKind::Vtotal:
      return sigma_of(m, w);
    case FunctionalKind::TVtotal:
      return std::abs(w.left - w.right);
    default:
      return 0.0;
  }
}

bool is_quadratic(FunctionalKind which) {
  return which == FunctionalKind::QWeak || which == FunctionalKind::QPos;
}

}  // namespace

double total_V(const Snapshot& s, const KineticModel& m) {
  double v = 0.0;
  for (const auto& w : s.waves) v += sigma_of(m, w);
  return v;
}

double total_TV(const Snapshot& s) {
  double tv = 0.0;
  for (const auto& w : s.waves) tv += std::abs(w.left - w.right);
  return tv;
}

bool weakly_approaching(WaveLabel a, WaveLabel b) {
  return !(is_rarefaction(a) && is_rarefaction(b));
}

double Q_weak(const Snapshot& s, const KineticModel& m) {
  const std::size_t n = s.waves.size();
  std::vector<double> sig(n);
  for (std::size_t i = 0; i < n; ++i) sig[i] = sigma_of(m, s.waves[i]);
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (weakly_approaching(s.waves[i].label, s.waves[j].label)) {
        q += sig[i] * sig[j];
      }
    }
  }
  return q;
}

double normalized_state(const KineticModel& m, double u) {
  return u >= 0.0 ? u : m.kinetic_zero(u);
}

double normalized_speed(const KineticModel& m, double u_left, double u_right) {
  const double a = normalized_state(m, u_left);
  const double b = normalized_state(m, u_right);
  if (std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a))) {
    return m.flux.deriv(0.5 * (a + b));  // secant limit
  }
  return (m.flux.eval(b) - m.flux.eval(a)) / (b - a);
}

bool same_monotonicity(const KineticModel& m, const SnapshotWave& x,
                       const SnapshotWave& y) {
  return monotonicity(m, x) == monotonicity(m, y);
}

double theta_weight(const KineticModel& m, const SnapshotWave& x,
                    const SnapshotWave& y, double c_star) {
  if (!same_monotonicity(m, x, y)) return 1.0;
  const double diff = normalized_speed(m, x.left, x.right) -
                      normalized_speed(m, y.left, y.right);
  return c_star * std::max(diff, 0.0);
}

double Q_pos(const Snapshot& s, const KineticModel& m, double c_star) {
  const std::size_t n = s.waves.size();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q += pair_term(FunctionalKind::QPos, m, c_star, s.waves[i], s.waves[j]);
    }
  }
  return q;
}

double Q_pos_rarefaction_pairs(const Snapshot& s, const KineticModel& m,
                               double c_star) {
  const std::size_t n = s.waves.size();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (is_rarefaction(s.waves[i].label) && is_rarefaction(s.waves[j].label)) {
        q += pair_term(FunctionalKind::QPos, m, c_star, s.waves[i], s.waves[j]);
      }
    }
  }
  return q;
}

std::pair<double, double> interaction_delta(const Snapshot& before,
                                            const Snapshot& after,
                                            const InteractionSite& site,
                                            FunctionalKind which,
                                            const KineticModel& m,
                                            double c_star) {
  if (site.before_end > before.waves.size() || site.after_end > after.waves.size() ||
      site.before_begin > site.before_end || site.after_begin > site.after_end) {
    throw std::invalid_argument("interaction_delta: site out of range");
  }
  // Bystanders must agree: same prefix before the site, same suffix after it.
  const std::size_t prefix = site.before_begin;
  const std::size_t suffix = before.waves.size() - site.before_end;
  if (prefix != site.after_begin ||
      suffix != after.waves.size() - site.after_end) {
    throw std::invalid_argument("interaction_delta: snapshots differ away from site");
  }
  auto same_wave = [](const SnapshotWave& a, const SnapshotWave& b) {
    return a.left == b.left && a.right == b.right && a.label == b.label;
  };
  for (std::size_t i = 0; i < prefix; ++i) {
    if (!same_wave(before.waves[i], after.waves[i])) {
      throw std::invalid_argument("interaction_delta: snapshots differ away from site");
    }
  }
  for (std::size_t i = 0; i < suffix; ++i) {
    if (!same_wave(before.waves[site.before_end + i],
                   after.waves[site.after_end + i])) {
      throw std::invalid_argument("interaction_delta: snapshots differ away from site");
    }
  }

  double delta_1 = 0.0;
  double delta_2 = 0.0;

  if (!is_quadratic(which)) {
    for (std::size_t i = site.after_begin; i < site.after_end; ++i) {
      delta_1 += single_term(which, m, after.waves[i]);
    }
    for (std::size_t i = site.before_begin; i < site.before_end; ++i) {
      delta_1 -= single_term(which, m, before.waves[i]);
    }
    return {delta_1, 0.0};
  }

  // Pairs fully inside the interaction.
  for (std::size_t i = site.after_begin; i < site.after_end; ++i) {
    for (std::size_t j = i + 1; j < site.after_end; ++j) {
      delta_1 += pair_term(which, m, c_star, after.waves[i], after.waves[j]);
    }
  }
  for (std::size_t i = site.before_begin; i < site.before_end; ++i) {
    for (std::size_t j = i + 1; j < site.before_end; ++j) {
      delta_1 -= pair_term(which, m, c_star, before.waves[i], before.waves[j]);
    }
  }

  // Pairs with exactly one involved wave; bystanders are identical in both
  // snapshots so their cross terms difference is the whole delta_2.
  for (std::size_t b = 0; b < prefix; ++b) {
    for (std::size_t i = site.after_begin; i < site.after_end; ++i) {
      delta_2 += pair_term(which, m, c_star, after.waves[b], after.waves[i]);
    }
    for (std::size_t i = site.before_begin; i < site.before_end; ++i) {
      delta_2 -= pair_term(which, m, c_star, before.waves[b], before.waves[i]);
    }
  }
  for (std::size_t k = 0; k < suffix; ++k) {
    const std::size_t ib = site.before_end + k;
    const std::size_t ia = site.after_end + k;
    for (std::size_t i = site.after_begin; i < site.after_end; ++i) {
      delta_2 += pair_term(which, m, c_star, after.waves[i], after.waves[ia]);
    }
    for (std::size_t i = site.before_begin; i < site.before_end; ++i) {
      delta_2 -= pair_term(which, m, c_star, before.waves[i], before.waves[ib]);
    }
  }
  return {delta_1, delta_2};
}

double bystander_sum(const Snapshot& s, std::size_t target_index,
                     const std::vector<std::size_t>& involved,
                     const KineticModel& m) {
  if (target_index >= s.waves.size()) {
    throw std::invalid_argument("bystander_sum: target index out of range");
  }
  const auto& target = s.waves[target_index];
  double sum = 0.0;
  for (std::size_t i = 0; i < s.waves.size(); ++i) {
    if (i == target_index) continue;
    if (std::find(involved.begin(), involved.end(), i) != involved.end()) continue;
    if (weakly_approaching(s.waves[i].label, target.label)) {
      sum += sigma_of(m, s.waves[i]);
    }
  }
  return sum;
}

Snapshot isometry_image(const Snapshot& s, const KineticModel& m) {
  Snapshot out;
  out.time = s.time;
  out.waves.reserve(s.waves.size());
  for (const auto& w : s.waves) {
    SnapshotWave img = w;
    img.left = m.kinetic_zero(w.left);
    img.right = m.kinetic_zero(w.right);
    img.label = classify_wave(m, img.left, img.right);
    img.speed = rankine_hugoniot_speed(m, img.left, img.right);
    out.waves.push_back(img);
  }
  return out;
}

double profile_mass(const Snapshot& s, std::pair<double, double> domain) {
  const auto [a, b] = domain;
  if (s.waves.empty() || !(b > a)) return 0.0;
  double total = s.waves.front().left * (s.waves.front().position - a);
  for (std::size_t i = 0; i + 1 < s.waves.size(); ++i) {
    total += s.waves[i].right * (s.waves[i + 1].position - s.waves[i].position);
  }
  total += s.waves.back().right * (b - s.waves.back().position);
  return total;
}

FunctionalReport evaluate_functionals(const Snapshot& s, const KineticModel& m,
                                      double c_star,
                                      std::pair<double, double> domain) {
  FunctionalReport rep;
  rep.V = total_V(s, m);
  rep.TV = total_TV(s);
  rep.Q_weak = Q_weak(s, m);
  rep.Q_pos = Q_pos(s, m, c_star);
  rep.mass = profile_mass(s, domain);
  return rep;
}

double flux_secant_lipschitz(const KineticModel& m) {
  const int n = 512;
  double lip = 0.0;
  double prev_u = -m.range_bound;
  double prev_d = m.flux.deriv(prev_u);
  for (int i = 1; i < n; ++i) {
    const double u = -m.range_bound + 2.0 * m.range_bound * i / (n - 1);
    const double d = m.flux.deriv(u);
    lip = std::max(lip, std::abs(d - prev_d) / (u - prev_u));
    prev_u = u;
    prev_d = d;
  }
  return lip;
}

double auto_c_star(const KineticModel& m, double initial_tv) {
  const double c = flux_secant_lipschitz(m);
  if (initial_tv <= 0.0 || c <= 0.0) return 1.0;
  return 0.5 / (c * initial_tv);
}

bool c_star_condition_holds(const Snapshot& s, const KineticModel& m,
                            double c_star) {
  return c_star * flux_secant_lipschitz(m) * total_TV(s) < 1.0;
}

}  // namespace nctrack
