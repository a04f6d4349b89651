#ifndef NCTRACK_FUNCTIONALS_HPP_
#define NCTRACK_FUNCTIONALS_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "nctrack/kinetics.hpp"
#include "nctrack/waves.hpp"

namespace nctrack {

struct SnapshotWave {
  double position = 0.0;
  double left = 0.0;
  double right = 0.0;
  WaveLabel label = WaveLabel::CPlus;
  double speed = 0.0;
};

// Piecewise-constant profile at a fixed time: positions nondecreasing, states
// chaining across consecutive fronts.
struct Snapshot {
  double time = 0.0;
  std::vector<SnapshotWave> waves;
};

struct FunctionalReport {
  double V = 0.0;
  double TV = 0.0;
  double Q_weak = 0.0;
  double Q_pos = 0.0;
  double mass = 0.0;
};

// Integral of the piecewise-constant profile over the domain (exact
// summation, no containment check).
double profile_mass(const Snapshot& s, std::pair<double, double> domain);

// All functionals of one snapshot; mass over [domain.first, domain.second].
FunctionalReport evaluate_functionals(const Snapshot& s, const KineticModel& m,
                                      double c_star,
                                      std::pair<double, double> domain);

// Generalized total variation: sum of wave_strength over all fronts.
double total_V(const Snapshot& s, const KineticModel& m);

// Classical total variation: sum of |u_left - u_right| over all fronts.
double total_TV(const Snapshot& s);

// False only when both labels are rarefactions.
bool weakly_approaching(WaveLabel a, WaveLabel b);

// Sum of sigma(alpha) sigma(beta) over pairs of weakly approaching waves.
double Q_weak(const Snapshot& s, const KineticModel& m);

// u for u >= 0, phi_b0(u) otherwise: maps every state into the convex region.
double normalized_state(const KineticModel& m, double u);

// Rankine-Hugoniot quotient on the normalized states; for coincident
// normalized states falls back to the characteristic speed f'(u_hat).
double normalized_speed(const KineticModel& m, double u_left, double u_right);

// True when both waves move the same way after normalization (both state
// pairs increase, or both decrease).
bool same_monotonicity(const KineticModel& m, const SnapshotWave& x,
                       const SnapshotWave& y);

// Weight of the positive interaction potential: c_star (a_hat(x) - a_hat(y))^+
// for same-monotonicity pairs (x left of y), 1 otherwise.
double theta_weight(const KineticModel& m, const SnapshotWave& x,
                    const SnapshotWave& y, double c_star);

// Weighted interaction potential sum_{x<y} theta(x, y) sigma(x) sigma(y).
double Q_pos(const Snapshot& s, const KineticModel& m, double c_star);

// Contribution of same-monotonicity rarefaction pairs to Q_pos; reported
// separately since those pairs never arise in the monotonicity arguments.
double Q_pos_rarefaction_pairs(const Snapshot& s, const KineticModel& m,
                               double c_star);

enum class FunctionalKind { Vtotal, TVtotal, QWeak, QPos };

// Identifies which fronts took part in one interaction: index ranges
// [before_begin, before_end) in the before snapshot and
// [after_begin, after_end) in the after snapshot.
struct InteractionSite {
  std::size_t before_begin = 0;
  std::size_t before_end = 0;
  std::size_t after_begin = 0;
  std::size_t after_end = 0;
};

// Splits the change of a functional across an interaction:
//   delta_1: pairs (or single-wave terms) fully inside the interaction,
//   delta_2: pairs with exactly one involved wave.
// Snapshots must agree outside the site; delta_1 + delta_2 is the exact total
// change. c_star is only read for QPos.
std::pair<double, double> interaction_delta(const Snapshot& before,
                                            const Snapshot& after,
                                            const InteractionSite& site,
                                            FunctionalKind which,
                                            const KineticModel& m,
                                            double c_star = 0.0);

// W(wave): total strength of waves weakly approaching the target that did not
// take part in the interaction. `involved` lists snapshot indices that did.
double bystander_sum(const Snapshot& s, std::size_t target_index,
                     const std::vector<std::size_t>& involved,
                     const KineticModel& m);

// Image of the snapshot under u -> phi_b0(u); positions kept, labels and
// speeds recomputed. An isometry of V by the involution.
Snapshot isometry_image(const Snapshot& s, const KineticModel& m);

// Lipschitz constant estimate for f' over the working range (max difference
// quotient of f' on a grid); the constant C of the c_star condition.
double flux_secant_lipschitz(const KineticModel& m);

// Default weight constant: 0.5 / (C * TV0), keeping c_star * C * TV < 1 while
// TV stays within twice its initial size.
double auto_c_star(const KineticModel& m, double initial_tv);

// The smallness condition c_star * C * TV(u) < 1 at this snapshot.
bool c_star_condition_holds(const Snapshot& s, const KineticModel& m, double c_star);

}  // namespace nctrack

#endif  // NCTRACK_FUNCTIONALS_HPP_
