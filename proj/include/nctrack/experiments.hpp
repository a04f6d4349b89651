#ifndef NCTRACK_EXPERIMENTS_HPP_
#define NCTRACK_EXPERIMENTS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nctrack/engine.hpp"
#include "nctrack/rng.hpp"
#include "nctrack/scenario.hpp"

namespace nctrack {

enum class InteractionSide { Left, Right };

struct TrajectoryEvent {
  double time = 0.0;
  InteractionCase kase = InteractionCase::Multi;
  double sigma_before = 0.0;  // tracked wave before the interaction
  double sigma_after = 0.0;   // tracked wave after
  InteractionSide side = InteractionSide::Left;  // where the small wave came from
  int sign = +1;              // +1 small shock, -1 small rarefaction
  double small_sigma_in = 0.0;
  double small_sigma_out = 0.0;  // transmitted strength (crossings only)
  std::size_t record_index = 0;
};

// Per-trajectory strength bookkeeping between birth (t0) and death (t_m+1).
struct TrajectoryLedger {
  std::string which;  // label of the tracked wave at birth
  double t_birth = 0.0;
  double t_death = 0.0;
  double sigma_birth = 0.0;  // sigma(t0+)
  double sigma_death = 0.0;  // sigma(t_{m+1}-)
  std::vector<TrajectoryEvent> events;

  double total_variation() const;   // sum |sigma(t_i+) - sigma(t_i-)|
  double signed_variation() const;  // sigma_death - sigma_birth
};

// The space-time region bounded by the N+- and C trajectories, with the
// interaction records it encloses (birth and death included).
struct OmegaRegion {
  std::size_t birth_index = 0;
  std::size_t death_index = 0;
  std::vector<std::size_t> inside_records;
  bool closure_violated = false;  // an enclosed front appeared outside
};

struct Episode {
  TrajectoryLedger ledger_N;
  TrajectoryLedger ledger_C;
  OmegaRegion omega;
  double SV_L_C = 0.0;  // signed variation of C from left-incoming waves
  double SV_R_C = 0.0;  // ... and from right-incoming waves
};

// d/du (phi_b0 o phi_b) at u: analytic for the cubic family, centered finite
// difference with step 1e-6 otherwise.
double contraction_slope(const KineticModel& m, double u);

// Scenario with data u*_0 + theta: u_star left of 0, phi_s(u_star) right of 0,
// plus the cumulative perturbation jumps (x_i, amplitude_i). Validates
// L* = (phi_b0 o phi_b)'(u_star) in (1/2, 1), per-jump amplitudes < eps, and
// that the t=0 crossing shock stays a single classical wave; throws
// std::invalid_argument otherwise.
ScenarioConfig build_splitting_merging(const KineticModel& m, double u_star,
                                       const std::vector<std::pair<double, double>>& perturbation,
                                       double eps);

// Randomized splitting-merging perturbation around u_star: a few small waves
// on the left, one rarefaction + one shock on the right, the shock sized from
// the net left drift so the closing NC interaction occurs.
ScenarioConfig random_splitting_merging(const KineticModel& m, double u_star,
                                        Rng& rng, double eps);

// Extracts the first complete birth (CR-4/RC-3/CC-3) to death (NC/NN) episode
// of an N+- wave, with the C trajectory and the enclosed records. Throws
// std::runtime_error when no complete episode exists.
Episode analyze_trajectories(const std::vector<InteractionRecord>& records);

// Sum of the delta_1 contributions of all interactions inside Omega
// (birth and death included).
double omega_Q1(const Episode& episode, const std::vector<InteractionRecord>& records,
                FunctionalKind which);

struct Lemma52Row {
  double L_i = 0.0;
  std::array<double, 3> residuals{};  // crossing strength, N update, [Q]1 formula
  int sign = +1;
};

// Checks the three crossing identities at an RN or CN-3 record. Throws on any
// other case.
Lemma52Row lemma52_check(const InteractionRecord& record, const KineticModel& m);

struct QIncreaseWitness {
  double u_l = 0.0, u_m = 0.0, u_r = 0.0;
  double delta_V = 0.0;
  double delta_Qweak = 0.0;  // = [Q]1 for the isolated pair
  std::vector<std::pair<double, double>> combined;  // (C0, delta_V + C0 delta_Q)
  std::uint64_t seed = 0;
  std::size_t sample_index = 0;
};

// Searches the guard region of an exceptional case (RC-3, CR-4, CC-3, CN-3)
// for a colliding pair with delta_V + C0 * delta_Qweak > 0 for every C0 in
// c0_values. Quasi-random sampling with a deterministic seed. Throws
// std::invalid_argument for cases outside the exceptional set.
std::optional<QIncreaseWitness> search_Qweak_increase(
    InteractionCase kase, const KineticModel& m, const std::vector<double>& c0_values,
    std::size_t samples = 10000, std::uint64_t seed = 20240901);

// Incoming/outgoing data of one isolated binary interaction (u_l, u_m, u_r);
// used by the witness search and its replay check.
struct PairInteraction {
  WaveRef left;
  WaveRef right;
  InteractionCase kase = InteractionCase::Multi;
  double delta_V = 0.0;
  double q1_weak = 0.0;
};

// Resolves the isolated pair (u_l -> u_m, u_m -> u_r); nullopt when the pair
// is not adjacent-colliding or classify rejects it.
std::optional<PairInteraction> resolve_pair(const KineticModel& m, double u_l,
                                            double u_m, double u_r);

// JSON episode report {t0, tm1, TV_N, SV_N, SV_L_C, SV_R_C, lambda_star,
// omega_Q1_Qweak, omega_Q1_Qpos, lemma52_rows}.
std::string episode_report_json(const Episode& episode,
                                const std::vector<InteractionRecord>& records,
                                const KineticModel& m, double u_star);

}  // namespace nctrack

#endif  // NCTRACK_EXPERIMENTS_HPP_
