#ifndef NCTRACK_WAVES_HPP_
#define NCTRACK_WAVES_HPP_

#include <string>
#include <utility>

#include "nctrack/kinetics.hpp"

namespace nctrack {

// The eight wave labels. C = classical shock, N = nonclassical shock,
// R = rarefaction; the sign pair gives the signs of (u_left, u_right).
// C+- and C-+ are the crossing shocks.
enum class WaveLabel {
  CPlus,       // C+
  CMinus,      // C-
  CPlusMinus,  // C+-
  CMinusPlus,  // C-+
  NPlusMinus,  // N+-
  NMinusPlus,  // N-+
  RPlus,       // R+
  RMinus,      // R-
};

// The sixteen binary interaction patterns (after mirror normalization), plus
// MULTI for >= 3 fronts meeting at one point, which the taxonomy does not
// cover.
enum class InteractionCase {
  RC1, RC2, RC3, RN,
  CR1, CR2, CR3, CR4,
  CC1, CC2, CC3,
  CN1, CN2, CN3,
  NC, NN,
  Multi,
};

std::string to_string(WaveLabel label);          // "N+-", "R+", ...
std::string to_string(InteractionCase c);        // "RC-3", "MULTI", ...
InteractionCase interaction_case_from_string(const std::string& s);

bool is_rarefaction(WaveLabel label);
bool is_shock(WaveLabel label);                  // classical or nonclassical
bool is_nonclassical(WaveLabel label);

// A wave as seen by the classifier: the two states plus its label.
struct WaveRef {
  double left = 0.0;
  double right = 0.0;
  WaveLabel label = WaveLabel::CPlus;
};

// Unique label of the jump (u_left, u_right). Nonclassical detection uses a
// 1e-9 relative tolerance against the kinetic graph. Throws on zero-strength
// input.
WaveLabel classify_wave(const KineticModel& m, double u_left, double u_right);

// Generalized strength: |n(u_minus) - n(u_plus)| where n maps negative states
// through phi_b0 and leaves nonnegative states alone.
double wave_strength(const KineticModel& m, double u_minus, double u_plus);

// The interaction case of a colliding adjacent pair. States are mirror
// normalized so the leftmost relevant state is positive before the explicit
// state-inequality guards from the case table are applied. Throws
// std::invalid_argument for non-adjacent or non-colliding pairs.
InteractionCase classify_interaction(const KineticModel& m, const WaveRef& left_wave,
                                     const WaveRef& right_wave);

// Upper bound on the change of V for the given case:
//   -c1 sigma(R_in)                       RC-1, RC-3, CR-1, CR-2, CR-4
//   -c2 sigma(R_in)                       RC-2, RN
//   -2 (sigma(R_in) - sigma(R_out))       CR-3
//   0                                     all other cases
// with c1 = min(1, lower Lipschitz of phi_b0) and c2 = the lower Lipschitz
// constant of u - phi_b0(phi_b(u)).
double predicted_V_bound(InteractionCase c, const WaveRef& left_wave,
                         const WaveRef& right_wave, const KineticModel& m);

// Constants (C', C'') with C' |u- - u+| <= sigma(u-, u+) <= C'' |u- - u+| for
// every admissible wave on the working range. C'' uses the empirical upper
// Lipschitz constant of phi_b0 sampled on a grid.
std::pair<double, double> equivalence_constants(const KineticModel& m);

}  // namespace nctrack

#endif  // NCTRACK_WAVES_HPP_
