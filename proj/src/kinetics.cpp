#include "nctrack/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nctrack {

namespace {

constexpr double kChordTol = 1e-12;

double interp_linear(const std::vector<std::pair<double, double>>& tab, double u) {
  if (u <= tab.front().first) {
    const auto& [x0, y0] = tab[0];
    const auto& [x1, y1] = tab[1];
    return y0 + (y1 - y0) / (x1 - x0) * (u - x0);
  }
  if (u >= tab.back().first) {
    const auto& [x0, y0] = tab[tab.size() - 2];
    const auto& [x1, y1] = tab[tab.size() - 1];
    return y1 + (y1 - y0) / (x1 - x0) * (u - x1);
  }
  auto it = std::upper_bound(tab.begin(), tab.end(), u,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double t = (u - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

}  // namespace

KineticModel make_kinetic_model(Flux flux, RealFn kinetic, RealFn kinetic_zero,
                                RealFn companion, double contraction_factor,
                                double gap_lip_lower, double gap_lip_upper,
                                double kinetic_zero_lip_lower, double range_bound) {
  KineticModel m;
  m.flux = std::move(flux);
  m.kinetic = std::move(kinetic);
  m.kinetic_zero = std::move(kinetic_zero);
  m.companion = std::move(companion);
  m.contraction_factor = contraction_factor;
  m.gap_lip_lower = gap_lip_lower;
  m.gap_lip_upper = gap_lip_upper;
  m.kinetic_zero_lip_lower = kinetic_zero_lip_lower;
  m.range_bound = range_bound;
  m.family = KineticFamily::Tabulated;
  return m;
}

KineticModel cubic_kinetic(double beta, double range_bound) {
  if (!(beta > 0.5) || !(beta < 1.0)) {
    throw std::invalid_argument("cubic_kinetic: beta must lie in (1/2, 1), got " +
                                std::to_string(beta));
  }
  if (!(range_bound > 0.0)) {
    throw std::invalid_argument("cubic_kinetic: range_bound must be positive");
  }
  KineticModel m;
  m.flux.eval = [](double u) { return u * u * u; };
  m.flux.deriv = [](double u) { return 3.0 * u * u; };
  m.flux.second_deriv = [](double u) { return 6.0 * u; };
  m.kinetic = [beta](double u) { return -beta * u; };
  m.kinetic_zero = [](double u) { return -u; };
  m.companion = [beta](double u) { return -(1.0 - beta) * u; };
  m.contraction_factor = beta * beta;
  // u - phi_b0(phi_b(u)) = (1-beta) u exactly for the linear family.
  m.gap_lip_lower = 1.0 - beta;
  m.gap_lip_upper = 1.0 - beta;
  m.kinetic_zero_lip_lower = 1.0;
  m.range_bound = range_bound;
  m.family = KineticFamily::Cubic;
  m.beta = beta;
  return m;
}

KineticModel tabulated_kinetic(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument("tabulated_kinetic: need at least 3 samples");
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) {
      throw std::invalid_argument("tabulated_kinetic: duplicate sample abscissa");
    }
  }
  const double range =
      std::min(std::abs(samples.front().first), std::abs(samples.back().first));
  if (!(range > 0.0)) {
    throw std::invalid_argument("tabulated_kinetic: samples must straddle the origin");
  }

  Flux flux;
  flux.eval = [](double u) { return u * u * u; };
  flux.deriv = [](double u) { return 3.0 * u * u; };
  flux.second_deriv = [](double u) { return 6.0 * u; };

  auto tab = samples;
  RealFn kinetic = [tab](double u) { return interp_linear(tab, u); };
  RealFn kinetic_zero = [](double u) { return -u; };

  KineticModel m = make_kinetic_model(std::move(flux), std::move(kinetic),
                                      std::move(kinetic_zero), RealFn{}, 0.0, 0.0,
                                      1.0, 1.0, range);
  m.samples = std::move(samples);

  // Companion by chord root-finding; the self-reference is resolved through a
  // copy that carries everything compute_phi_sharp needs.
  KineticModel closure = m;
  m.companion = [closure](double u) { return compute_phi_sharp(closure, u); };

  // Empirical constants over a fine grid (gap bounds as difference quotients
  // of u - phi_b0(phi_b(u))); verify_axioms re-checks them independently.
  const int n = 2001;
  double kmax = 0.0;
  double gap_lo = std::numeric_limits<double>::infinity(), gap_hi = 0.0;
  auto h = [&m](double v) { return v - m.kinetic_zero(m.kinetic(v)); };
  double prev_u = -range;
  double prev_h = h(prev_u);
  for (int i = 0; i < n; ++i) {
    const double u = -range + 2.0 * range * i / (n - 1);
    if (i > 0) {
      const double q = (h(u) - prev_h) / (u - prev_u);
      gap_lo = std::min(gap_lo, q);
      gap_hi = std::max(gap_hi, q);
      prev_u = u;
      prev_h = h(u);
    }
    if (std::abs(u) < 1e-9) continue;
    kmax = std::max(kmax, std::abs(m.kinetic(m.kinetic(u))) / std::abs(u));
  }
  m.contraction_factor = kmax;
  m.gap_lip_lower = gap_lo;
  m.gap_lip_upper = gap_hi;
  m.kinetic_zero_lip_lower = 1.0;
  return m;
}

KineticModel with_range_bound(const KineticModel& m, double range_bound) {
  if (!(range_bound > 0.0)) {
    throw std::invalid_argument("with_range_bound: range must be positive");
  }
  if (m.family == KineticFamily::Tabulated && !m.samples.empty()) {
    const double span =
        std::min(std::abs(m.samples.front().first), std::abs(m.samples.back().first));
    if (range_bound > span + 1e-12) {
      throw std::invalid_argument(
          "with_range_bound: tabulated kinetic data does not cover |u| <= " +
          std::to_string(range_bound));
    }
  }
  KineticModel out = m;
  out.range_bound = range_bound;
  return out;
}

KineticModel mirrored(const KineticModel& m) {
  KineticModel out = m;
  const Flux f = m.flux;
  out.flux.eval = [f](double v) { return -f.eval(-v); };
  out.flux.deriv = [f](double v) { return f.deriv(-v); };
  out.flux.second_deriv = [f](double v) { return -f.second_deriv(-v); };
  const RealFn kb = m.kinetic, kz = m.kinetic_zero, cp = m.companion;
  out.kinetic = [kb](double v) { return -kb(-v); };
  out.kinetic_zero = [kz](double v) { return -kz(-v); };
  out.companion = [cp](double v) { return -cp(-v); };
  return out;
}

double compute_phi_sharp(const KineticModel& m, double u) {
  if (u == 0.0) return 0.0;
  if (std::abs(u) > m.range_bound * (1.0 + 1e-9)) {
    throw std::invalid_argument("compute_phi_sharp: |u| exceeds the working range");
  }
  if (u < 0.0) return -compute_phi_sharp(mirrored(m), -u);

  const double pb = m.kinetic(u);
  const double fu = m.flux.eval(u);
  const double chord_slope = (fu - m.flux.eval(pb)) / (u - pb);
  // G(v) = f(v) - chord(v); zeros are exactly {phi_b(u), phi_s(u), u} and G
  // changes sign once inside the open interval, positive near phi_b(u).
  auto G = [&](double v) { return m.flux.eval(v) - (fu + chord_slope * (v - u)); };

  const double span = u - pb;
  double a = pb + 1e-9 * span;
  double b = u - 1e-9 * span;
  double ga = G(a);
  double gb = G(b);
  // If a root sits inside an endpoint offset, tighten that endpoint.
  for (double off = 1e-12; off >= 1e-16 && !(ga > 0.0); off *= 1e-2) {
    a = pb + off * span;
    ga = G(a);
  }
  for (double off = 1e-12; off >= 1e-16 && !(gb < 0.0); off *= 1e-2) {
    b = u - off * span;
    gb = G(b);
  }
  if (!(ga > 0.0) || !(gb < 0.0)) {
    throw std::runtime_error("compute_phi_sharp: no bracketing interval (invalid kinetic/flux pair)");
  }
  // Bisection with a secant polish; the interval is a guaranteed bracket.
  for (int it = 0; it < 200 && b - a > kChordTol; ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = G(mid);
    if (gm > 0.0) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
      gb = gm;
    }
  }
  double root = 0.5 * (a + b);
  for (int it = 0; it < 8; ++it) {
    const double g = G(root);
    const double d = m.flux.deriv(root) - chord_slope;
    if (d == 0.0) break;
    const double next = root - g / d;
    if (next <= a || next >= b) break;
    if (std::abs(next - root) < 0.25 * kChordTol) {
      root = next;
      break;
    }
    root = next;
  }
  return root;
}

double rankine_hugoniot_speed(const KineticModel& m, double u_minus, double u_plus) {
  if (u_minus == u_plus) {
    throw std::invalid_argument("rankine_hugoniot_speed: coincident states");
  }
  return (m.flux.eval(u_plus) - m.flux.eval(u_minus)) / (u_plus - u_minus);
}

double entropy_dissipation(const KineticModel& m, const RealFn& entropy,
                           const RealFn& entropy_flux, double u_minus, double u_plus) {
  if (u_minus == u_plus) {
    throw std::invalid_argument("entropy_dissipation: coincident states");
  }
  const double s = rankine_hugoniot_speed(m, u_minus, u_plus);
  return -s * (entropy(u_plus) - entropy(u_minus)) +
         (entropy_flux(u_plus) - entropy_flux(u_minus));
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.passed) os << "  (u = " << c.witness_u << ": " << c.detail << ")";
    os << "\n";
  }
  os << "empirical contraction K = " << empirical_contraction
     << ", gap Lipschitz in [" << empirical_gap_lower << ", " << empirical_gap_upper
     << "], phi_b0 Lipschitz in [" << empirical_kinetic_zero_lip_lower << ", "
     << empirical_kinetic_zero_lip_upper << "]\n";
  return os.str();
}

AxiomReport verify_axioms(const KineticModel& m, int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("verify_axioms: need at least 2 grid points");
  }
  AxiomReport rep;
  const double M = m.range_bound;
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid[i] = -M + 2.0 * M * i / (grid_points - 1);
  }

  auto add = [&rep](const std::string& name, bool ok, double witness,
                    const std::string& detail) {
    rep.checks.push_back({name, ok, witness, detail});
  };

  // Flux shape: u f''(u) > 0 off the origin, f' growing outward.
  {
    bool ok = true;
    double witness = 0.0;
    for (double u : grid) {
      if (std::abs(u) < 1e-6 * M) continue;
      if (!(u * m.flux.second_deriv(u) > 0.0)) {
        ok = false;
        witness = u;
        break;
      }
    }
    const bool growth = m.flux.deriv(M) > m.flux.deriv(M / 2.0) &&
                        m.flux.deriv(-M) > m.flux.deriv(-M / 2.0);
    add("flux concave-convex", ok, witness, "u*f''(u) <= 0");
    add("flux derivative growth", growth, M, "f'(±M) <= f'(±M/2)");
  }

  // A1/A2: strictly decreasing (hence one-to-one), Lipschitz, phi_b(0) = 0.
  {
    bool decreasing = true, lipschitz = true;
    double wit_dec = 0.0, wit_lip = 0.0;
    double max_slope = 0.0;
    for (int i = 1; i < grid_points; ++i) {
      const double q =
          (m.kinetic(grid[i]) - m.kinetic(grid[i - 1])) / (grid[i] - grid[i - 1]);
      if (!(q < 0.0)) {
        decreasing = false;
        wit_dec = grid[i];
      }
      max_slope = std::max(max_slope, std::abs(q));
      if (!(std::abs(q) < 1e6)) {
        lipschitz = false;
        wit_lip = grid[i];
      }
    }
    const bool at_zero = std::abs(m.kinetic(0.0)) <= 1e-14;
    add("A1 Lipschitz one-to-one", lipschitz && decreasing, wit_lip,
        "difference quotient unbounded or sign change");
    add("A2 strictly decreasing, phi_b(0)=0", decreasing && at_zero, wit_dec,
        at_zero ? "non-negative difference quotient" : "phi_b(0) != 0");
  }

  // A3: second iterate strictly contracting with the advertised factor.
  {
    bool ok = true;
    double witness = 0.0, kmax = 0.0;
    for (double u : grid) {
      if (std::abs(u) < 1e-9 * M) continue;
      const double r = std::abs(m.kinetic(m.kinetic(u))) / std::abs(u);
      kmax = std::max(kmax, r);
      if (!(r <= m.contraction_factor + 1e-12) || !(r < 1.0)) {
        ok = false;
        witness = u;
      }
    }
    rep.empirical_contraction = kmax;
    add("A3 contraction", ok, witness, "|phi_b o phi_b(u)| > K |u|");
  }

  // Involution phi_b0 o phi_b0 = id.
  {
    bool ok = true;
    double witness = 0.0;
    for (double u : grid) {
      if (std::abs(m.kinetic_zero(m.kinetic_zero(u)) - u) > 1e-10 * (1.0 + std::abs(u))) {
        ok = false;
        witness = u;
        break;
      }
    }
    add("involution phi_b0 o phi_b0 = id", ok, witness, "involution residual too large");
  }

  // |phi_b(u)| < |phi_b0(u)| for u != 0.
  {
    bool ok = true;
    double witness = 0.0;
    for (double u : grid) {
      if (std::abs(u) < 1e-9 * M) continue;
      if (!(std::abs(m.kinetic(u)) < std::abs(m.kinetic_zero(u)) + 1e-12)) {
        ok = false;
        witness = u;
        break;
      }
    }
    add("|phi_b| < |phi_b0|", ok, witness, "kinetic function not below the involution");
  }

  // Sandwich bounds on h(u) = u - phi_b0(phi_b(u)). The constants are
  // Lipschitz constants of h, so the difference quotients are checked; the
  // pointwise |h(u)| / |u| version follows from h(0) = 0.
  {
    bool ok = true;
    double witness = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    auto h = [&m](double u) { return u - m.kinetic_zero(m.kinetic(u)); };
    for (int i = 1; i < grid_points; ++i) {
      const double q = (h(grid[i]) - h(grid[i - 1])) / (grid[i] - grid[i - 1]);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      if (!(m.gap_lip_lower * (1.0 - 1e-12) <= q + 1e-12) ||
          !(q <= m.gap_lip_upper * (1.0 + 1e-12) + 1e-12)) {
        ok = false;
        witness = grid[i];
      }
    }
    for (double u : grid) {
      if (std::abs(u) < 1e-9 * M) continue;
      const double gap = std::abs(h(u)) / std::abs(u);
      if (!(m.gap_lip_lower * (1.0 - 1e-12) <= gap + 1e-12) ||
          !(gap <= m.gap_lip_upper * (1.0 + 1e-12) + 1e-12)) {
        ok = false;
        witness = u;
      }
    }
    rep.empirical_gap_lower = lo;
    rep.empirical_gap_upper = hi;
    const bool bracket_valid = lo > 0.0 && hi < 1.0;
    add("gap sandwich bounds", ok && bracket_valid, witness,
        bracket_valid ? "u - phi_b0(phi_b(u)) outside the advertised bracket"
                      : "gap difference quotients leave (0, 1)");
  }

  // phi_b0 difference quotients.
  {
    bool ok = true;
    double witness = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 1; i < grid_points; ++i) {
      const double q = std::abs(m.kinetic_zero(grid[i]) - m.kinetic_zero(grid[i - 1])) /
                       (grid[i] - grid[i - 1]);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      if (!(q + 1e-12 >= m.kinetic_zero_lip_lower * (1.0 - 1e-12))) {
        ok = false;
        witness = grid[i];
      }
    }
    rep.empirical_kinetic_zero_lip_lower = lo;
    rep.empirical_kinetic_zero_lip_upper = hi;
    add("phi_b0 lower Lipschitz", ok, witness, "difference quotient below advertised bound");
  }

  // Companion ordering (Eq.-(8) style) and chord residual, both signs.
  {
    bool order_ok = true, chord_ok = true, monotone = true;
    double wit_order = 0.0, wit_chord = 0.0;
    double prev_ps = std::numeric_limits<double>::quiet_NaN();
    const int n = std::min(grid_points, 201);
    for (int i = 0; i < n; ++i) {
      const double u = -M + 2.0 * M * i / (n - 1);
      if (std::abs(u) < 1e-6 * M) continue;
      double ps;
      try {
        ps = compute_phi_sharp(m, u);
      } catch (const std::exception&) {
        chord_ok = false;
        wit_chord = u;
        continue;
      }
      const double pb = m.kinetic(u);
      const bool ordered = u > 0.0 ? (pb < ps && ps < u) : (u < ps && ps < pb);
      if (!ordered) {
        order_ok = false;
        wit_order = u;
      }
      // Residual of the two difference quotients at the root.
      const double lhs = (m.flux.eval(u) - m.flux.eval(pb)) / (u - pb);
      const double rhs = (m.flux.eval(u) - m.flux.eval(ps)) / (u - ps);
      if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(lhs))) {
        chord_ok = false;
        wit_chord = u;
      }
      if (m.companion && std::abs(m.companion(u) - ps) > 1e-9 * (1.0 + std::abs(ps))) {
        chord_ok = false;
        wit_chord = u;
      }
      if (!std::isnan(prev_ps) && ps >= prev_ps) monotone = false;
      prev_ps = ps;
    }
    rep.companion_monotone = monotone;
    add("companion ordering", order_ok, wit_order, "phi_s outside (phi_b(u), u)");
    add("companion chord residual", chord_ok, wit_chord,
        "chord equation residual above 1e-10 or model/root mismatch");
  }

  return rep;
}

}  // namespace nctrack
