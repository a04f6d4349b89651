#include "nctrack/riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace nctrack {

namespace {

constexpr double kCaseTol = 1e-9;    // case-boundary tolerance (single-wave bias)
constexpr double kExactTol = 1e-12;  // kinetic-graph consistency budget

Wave make_wave(const KineticModel& m, double left, double right) {
  Wave w;
  w.left = left;
  w.right = right;
  w.label = classify_wave(m, left, right);
  w.speed = rankine_hugoniot_speed(m, left, right);
  return w;
}

// Positive-side solver; handles u_l >= 0. Mirroring is done by the caller.
WaveFan solve_positive(const KineticModel& m, double u_l, double u_r) {
  WaveFan fan;
  if (u_r >= u_l) {
    fan.waves.push_back(make_wave(m, u_l, u_r));  // R+
    return fan;
  }
  if (u_l == 0.0) {
    // All three kinetic maps fix the origin; the fan degenerates to the
    // rarefaction into the concave region.
    fan.waves.push_back(make_wave(m, u_l, u_r));  // R-
    return fan;
  }
  const double ps = m.companion(u_l);
  const double pb = m.kinetic(u_l);
  if (u_r >= ps - kCaseTol * (1.0 + std::abs(ps))) {
    fan.waves.push_back(make_wave(m, u_l, u_r));  // single classical shock
    return fan;
  }
  // Nonclassical shock, placed exactly on the kinetic graph.
  if (std::abs(u_r - pb) <= kExactTol * (1.0 + std::abs(pb))) {
    Wave n = make_wave(m, u_l, u_r);
    n.label = WaveLabel::NPlusMinus;
    fan.waves.push_back(n);
    return fan;
  }
  Wave n = make_wave(m, u_l, pb);
  n.label = WaveLabel::NPlusMinus;
  fan.waves.push_back(n);
  fan.waves.push_back(make_wave(m, pb, u_r));  // trailing shock or rarefaction
  return fan;
}

}  // namespace

WaveFan solve_riemann(const KineticModel& m, double u_l, double u_r) {
  const double bound = m.range_bound * (1.0 + 1e-9);
  if (std::abs(u_l) > bound || std::abs(u_r) > bound) {
    throw std::invalid_argument("solve_riemann: states outside the working range");
  }
  if (u_l == u_r) return {};
  if (u_l >= 0.0) return solve_positive(m, u_l, u_r);

  // Mirror construction for u_l < 0: negate states, solve with the
  // symmetrized model, negate back. Wave order and speeds are unchanged.
  WaveFan fan = solve_positive(mirrored(m), -u_l, -u_r);
  for (Wave& w : fan.waves) {
    const double left = -w.left;
    const double right = -w.right;
    w.left = left;
    w.right = right;
    w.label = is_nonclassical(w.label) ? WaveLabel::NMinusPlus
                                       : classify_wave(m, left, right);
    w.speed = rankine_hugoniot_speed(m, left, right);
  }
  return fan;
}

std::vector<Wave> discretize_rarefaction(const KineticModel& m, double u_left,
                                         double u_right, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("discretize_rarefaction: eps must be positive");
  }
  if (u_left == u_right) return {};
  const bool positive_side = u_left >= 0.0 && u_right >= 0.0;
  const bool negative_side = u_left <= 0.0 && u_right <= 0.0;
  const bool spreading = positive_side ? (u_right > u_left)
                        : negative_side ? (u_right < u_left)
                                        : false;
  if (!spreading) {
    throw std::invalid_argument("discretize_rarefaction: not a genuine rarefaction");
  }

  // Uniform split in the sigma metric: interpolate between the
  // normalized images and pull back through the involution.
  const double a = u_left >= 0.0 ? u_left : m.kinetic_zero(u_left);
  const double b = u_right >= 0.0 ? u_right : m.kinetic_zero(u_right);
  const double total = std::abs(b - a);
  const int pieces = std::max(1, static_cast<int>(std::ceil(total / eps - 1e-9)));

  std::vector<Wave> out;
  out.reserve(pieces);
  double prev = u_left;
  for (int i = 1; i <= pieces; ++i) {
    double next;
    if (i == pieces) {
      next = u_right;
    } else {
      const double v = a + (b - a) * i / pieces;
      next = positive_side ? v : m.kinetic_zero(v);
    }
    out.push_back(make_wave(m, prev, next));
    prev = next;
  }
  return out;
}

WaveFan solve_riemann_discretized(const KineticModel& m, double u_l, double u_r,
                                  double eps) {
  WaveFan fan = solve_riemann(m, u_l, u_r);
  WaveFan out;
  for (const Wave& w : fan.waves) {
    if (is_rarefaction(w.label) &&
        wave_strength(m, w.left, w.right) > eps * (1.0 + 1e-9)) {
      auto pieces = discretize_rarefaction(m, w.left, w.right, eps);
      out.waves.insert(out.waves.end(), pieces.begin(), pieces.end());
    } else {
      out.waves.push_back(w);
    }
  }
  return out;
}

}  // namespace nctrack
