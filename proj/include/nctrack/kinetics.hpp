#ifndef NCTRACK_KINETICS_HPP_
#define NCTRACK_KINETICS_HPP_

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nctrack {

using RealFn = std::function<double(double)>;

// Concave-convex flux: u f''(u) > 0 away from the origin, f' -> +inf at
// +-infinity. The canonical instance is f(u) = u^3.
struct Flux {
  RealFn eval;
  RealFn deriv;
  RealFn second_deriv;
};

enum class KineticFamily { Cubic, Tabulated };

// A flux together with the kinetic function triple:
//   kinetic        phi_b   selects the right state of a nonclassical shock,
//   kinetic_zero   phi_b0  the zero-entropy-dissipation involution,
//   companion      phi_s   the third chord intersection (shock/nonclassical
//                          threshold of the Riemann solver).
// Verified constants for the working range |u| <= range_bound ride along.
// Immutable after construction; all evaluations are pure.
struct KineticModel {
  Flux flux;
  RealFn kinetic;
  RealFn kinetic_zero;
  RealFn companion;

  double contraction_factor = 0.0;   // K in |phi_b(phi_b(u))| <= K |u|
  double gap_lip_lower = 0.0;        // lower Lipschitz const of u - phi_b0(phi_b(u))
  double gap_lip_upper = 1.0;        // upper Lipschitz const of the same map
  double kinetic_zero_lip_lower = 1.0;  // lower Lipschitz const of phi_b0
  double range_bound = 2.0;          // working range M

  KineticFamily family = KineticFamily::Cubic;
  double beta = 0.0;                                   // cubic family parameter
  std::vector<std::pair<double, double>> samples;      // tabulated family data
};

// Analytic cubic family: f(u) = u^3, phi_b(u) = -beta u, phi_b0(u) = -u,
// phi_s(u) = -(1-beta) u. Requires beta in (1/2, 1). Throws std::invalid_argument
// otherwise.
KineticModel cubic_kinetic(double beta, double range_bound = 2.0);

// Cubic flux with a tabulated kinetic function. `samples` are (u, phi_b(u))
// pairs, strictly increasing in u and strictly decreasing in phi_b(u); the map
// is completed by monotone piecewise-linear interpolation. phi_b0 stays -u
// (the zero-dissipation involution of f = u^3 with U = u^2/2) and the
// companion function is recovered by chord root-finding. The caller is
// expected to run verify_axioms before trusting the model.
KineticModel tabulated_kinetic(std::vector<std::pair<double, double>> samples);

// Low-level constructor for tests and custom families. Constants are taken at
// face value; verify_axioms is the gatekeeper.
KineticModel make_kinetic_model(Flux flux, RealFn kinetic, RealFn kinetic_zero,
                                RealFn companion, double contraction_factor,
                                double gap_lip_lower, double gap_lip_upper,
                                double kinetic_zero_lip_lower, double range_bound);

// Copy of `m` with the working range extended to at least `range_bound`.
// Tabulated models reject ranges beyond their sample span.
KineticModel with_range_bound(const KineticModel& m, double range_bound);

// Mirror view u -> -u with flux symmetrization g(v) = -f(-v). Solving the
// mirrored problem and negating states back gives the u_l < 0 construction.
KineticModel mirrored(const KineticModel& m);

// phi_s(u) by bracketed root-finding on the chord equation
//   (f(u) - f(phi_b(u)))/(u - phi_b(u)) = (f(u) - f(v))/(u - v),
// independent of any closed form stored in the model. Absolute tolerance
// 1e-12. Throws std::runtime_error when no bracketing interval exists (an
// invalid kinetic/flux pair) and std::invalid_argument for u outside the
// working range. compute_phi_sharp(m, 0) = 0 by continuity.
double compute_phi_sharp(const KineticModel& m, double u);

// (f(u_plus) - f(u_minus)) / (u_plus - u_minus). Coincident states throw.
double rankine_hugoniot_speed(const KineticModel& m, double u_minus, double u_plus);

// -s (U(u+) - U(u-)) + F(u+) - F(u-) with s the Rankine-Hugoniot speed.
// Admissible fronts under the single entropy inequality have value <= 0.
double entropy_dissipation(const KineticModel& m, const RealFn& entropy,
                           const RealFn& entropy_flux, double u_minus, double u_plus);

struct AxiomCheck {
  std::string name;
  bool passed = false;
  double witness_u = 0.0;   // grid point exhibiting the failure
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  double empirical_contraction = 0.0;     // max |phi_b(phi_b(u))| / |u|
  double empirical_gap_lower = 0.0;       // min |u - phi_b0(phi_b(u))| / |u|
  double empirical_gap_upper = 0.0;       // max of the same ratio
  double empirical_kinetic_zero_lip_lower = 0.0;
  double empirical_kinetic_zero_lip_upper = 0.0;
  bool companion_monotone = false;        // phi_s decreasing on the grid

  bool all_passed() const;
  const AxiomCheck* find(const std::string& name) const;
  std::string summary() const;
};

// Samples (A1)-(A3), the involution, |phi_b| < |phi_b0|, the Eq.-style
// sandwich bounds, the companion ordering and chord residual, and the flux
// conditions on a grid of `grid_points` points over |u| <= range_bound.
// Failures are reported, never thrown.
AxiomReport verify_axioms(const KineticModel& m, int grid_points);

}  // namespace nctrack

#endif  // NCTRACK_KINETICS_HPP_
