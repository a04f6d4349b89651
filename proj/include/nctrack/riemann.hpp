#ifndef NCTRACK_RIEMANN_HPP_
#define NCTRACK_RIEMANN_HPP_

#include <vector>

#include "nctrack/kinetics.hpp"
#include "nctrack/waves.hpp"

namespace nctrack {

struct Wave {
  double left = 0.0;
  double right = 0.0;
  WaveLabel label = WaveLabel::CPlus;
  double speed = 0.0;  // Rankine-Hugoniot speed of the jump
};

// Ordered self-similar solution of a Riemann problem: states chain across
// consecutive waves and speeds strictly increase left to right.
struct WaveFan {
  std::vector<Wave> waves;
};

// Nonclassical Riemann solver. For u_l > 0:
//   u_r >= u_l                          rarefaction,
//   phi_s(u_l) <= u_r < u_l             single classical shock,
//   phi_b(u_l) < u_r < phi_s(u_l)       nonclassical shock + classical shock,
//   u_r <= phi_b(u_l)                   nonclassical shock + rarefaction.
// The u_l < 0 construction is the exact mirror image. Equal states return the
// empty fan. Rarefactions appear as single (undiscretized) waves; the
// tracking engine splits them via discretize_rarefaction.
WaveFan solve_riemann(const KineticModel& m, double u_l, double u_r);

// Splits a genuine rarefaction (u_left, u_right) into fronts of equal
// generalized strength <= eps (uniform in the sigma metric), each moving at
// the Rankine-Hugoniot speed of its own small jump. Throws on
// non-rarefaction input.
std::vector<Wave> discretize_rarefaction(const KineticModel& m, double u_left,
                                         double u_right, double eps);

// solve_riemann with every rarefaction already split at eps.
WaveFan solve_riemann_discretized(const KineticModel& m, double u_l, double u_r,
                                  double eps);

}  // namespace nctrack

#endif  // NCTRACK_RIEMANN_HPP_
