#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "nctrack/riemann.hpp"
#include "nctrack/rng.hpp"
#include "nctrack/waves.hpp"
#include "test_models.hpp"

using namespace nctrack;

namespace {

WaveRef wave(const KineticModel& m, double l, double r) {
  return {l, r, classify_wave(m, l, r)};
}

InteractionCase classify(const KineticModel& m, double u_l, double u_m, double u_r) {
  return classify_interaction(m, wave(m, u_l, u_m), wave(m, u_m, u_r));
}

}  // namespace

TEST_CASE("wave labels") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(classify_wave(m, 1.0, -0.75) == WaveLabel::NPlusMinus);
  CHECK(classify_wave(m, 1.0, -0.5) == WaveLabel::CPlusMinus);
  CHECK(classify_wave(m, 0.2, 0.9) == WaveLabel::RPlus);
  CHECK(classify_wave(m, 0.9, 0.2) == WaveLabel::CPlus);
  CHECK(classify_wave(m, -0.9, -0.2) == WaveLabel::CMinus);
  CHECK(classify_wave(m, -0.2, -0.9) == WaveLabel::RMinus);
  CHECK(classify_wave(m, -1.0, 0.75) == WaveLabel::NMinusPlus);
  CHECK(classify_wave(m, -1.0, 0.3) == WaveLabel::CMinusPlus);
  // snap tolerance on the kinetic graph
  CHECK(classify_wave(m, 1.0, -0.75 + 1e-10) == WaveLabel::NPlusMinus);
  CHECK(classify_wave(m, 1.0, -0.75 + 1e-6) == WaveLabel::CPlusMinus);
  CHECK_THROWS_AS(classify_wave(m, 0.4, 0.4), std::invalid_argument);
}

TEST_CASE("label strings round-trip their standard names") {
  CHECK(to_string(WaveLabel::NPlusMinus) == "N+-");
  CHECK(to_string(WaveLabel::RMinus) == "R-");
  CHECK(to_string(InteractionCase::RC3) == "RC-3");
  CHECK(to_string(InteractionCase::Multi) == "MULTI");
  CHECK(interaction_case_from_string("CN-3") == InteractionCase::CN3);
  CHECK_THROWS_AS(interaction_case_from_string("XX-9"), std::invalid_argument);
}

TEST_CASE("generalized strength branches") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(wave_strength(m, 1.0, -0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wave_strength(m, 1.0, -0.75) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(wave_strength(m, 0.4, 0.4) == 0.0);
  CHECK(wave_strength(m, -0.75, -0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(wave_strength(m, -0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wave_strength(m, 0.2, 0.9) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("interaction classification: spec examples") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(classify(m, 0.8, 1.0, -0.75) == InteractionCase::RN);
  CHECK(classify(m, 1.0, 0.5, 0.3) == InteractionCase::CC1);
  // The u_r discriminator phi_b(1) < u_r < phi_s(1) selects CR-4; the left
  // wave must additionally be an admissible colliding crossing shock
  // (u_m above the threshold), as for (1, -0.2, -0.3).
  CHECK(classify(m, 1.0, -0.2, -0.3) == InteractionCase::CR4);
  // (1, -0.5, -0.7) matches the same u_r window but the trailing rarefaction
  // outruns the (sub-threshold) shock, so the pair never collides.
  CHECK_THROWS_AS(classify(m, 1.0, -0.5, -0.7), std::invalid_argument);
}

TEST_CASE("interaction classification: all cubic-representable cases") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(classify(m, 0.5, 0.8, -0.1) == InteractionCase::RC1);
  CHECK(classify(m, 0.3, 1.0, -0.24) == InteractionCase::RC2);
  CHECK(classify(m, 0.5, 0.8, -0.15) == InteractionCase::RC3);
  CHECK(classify(m, 0.8, 1.0, -0.75) == InteractionCase::RN);
  CHECK(classify(m, 1.0, -0.1, -0.2) == InteractionCase::CR1);
  CHECK(classify(m, 1.0, 0.5, 0.7) == InteractionCase::CR2);
  CHECK(classify(m, 1.0, -0.1, -0.8) == InteractionCase::CR3);
  CHECK(classify(m, 1.0, -0.2, -0.3) == InteractionCase::CR4);
  CHECK(classify(m, 1.0, 0.5, 0.3) == InteractionCase::CC1);
  CHECK(classify(m, 1.0, -0.3, -0.1) == InteractionCase::CC2);
  CHECK(classify(m, 1.0, -0.4, 0.05) == InteractionCase::CC2);
  CHECK(classify(m, 1.0, 0.2, -0.15) == InteractionCase::CN1);
  CHECK(classify(m, 1.0, -0.2, 0.15) == InteractionCase::CN2);
  CHECK(classify(m, 1.0, 0.5, -0.375) == InteractionCase::CN3);
  CHECK(classify(m, 1.0, -0.75, -0.2) == InteractionCase::NC);
  CHECK(classify(m, 1.0, -0.75, 0.5625) == InteractionCase::NN);
}

TEST_CASE("interaction classification: CC-3 needs an increasing companion") {
  const KineticModel m = nctrack_tests::cc3_capable_model();
  REQUIRE(verify_axioms(m, 800).all_passed());
  CHECK_FALSE(verify_axioms(m, 800).companion_monotone);
  CHECK(classify(m, 1.4, 1.0, -0.1) == InteractionCase::CC3);
}

TEST_CASE("interaction classification rejects malformed pairs") {
  const KineticModel m = cubic_kinetic(0.75);
  // not adjacent
  CHECK_THROWS_AS(
      classify_interaction(m, wave(m, 1.0, 0.5), wave(m, 0.4, 0.2)),
      std::invalid_argument);
  // not colliding: trailing wave is faster
  CHECK_THROWS_AS(
      classify_interaction(m, wave(m, 1.0, -0.75), wave(m, -0.75, -0.5)),
      std::invalid_argument);
  // rarefaction pieces never collide
  CHECK_THROWS_AS(
      classify_interaction(m, wave(m, 0.2, 0.5), wave(m, 0.5, 0.9)),
      std::invalid_argument);
}

TEST_CASE("mirror symmetry of the classification for the odd flux") {
  const KineticModel m = cubic_kinetic(0.7);
  Rng rng(23);
  int classified = 0;
  for (int i = 0; i < 60000 && classified < 4000; ++i) {
    const double u_l = rng.uniform(-1.8, 1.8);
    const double u_m = rng.uniform(-1.8, 1.8);
    const double u_r = rng.uniform(-1.8, 1.8);
    // only admissible single waves enter the classifier
    if (solve_riemann(m, u_l, u_m).waves.size() != 1) continue;
    if (solve_riemann(m, u_m, u_r).waves.size() != 1) continue;
    InteractionCase a;
    try {
      a = classify(m, u_l, u_m, u_r);
    } catch (const std::invalid_argument&) {
      continue;  // non-colliding
    }
    const InteractionCase b = classify(m, -u_l, -u_m, -u_r);
    CHECK(a == b);
    ++classified;
  }
  CHECK(classified >= 4000);
}

TEST_CASE("classification is total on colliding admissible pairs") {
  const KineticModel m = cubic_kinetic(0.8);
  Rng rng(101);
  int colliding = 0;
  for (int i = 0; i < 30000; ++i) {
    const double u_l = rng.uniform(-1.8, 1.8);
    const double u_m = rng.uniform(-1.8, 1.8);
    const double u_r = rng.uniform(-1.8, 1.8);
    const WaveFan left = solve_riemann(m, u_l, u_m);
    const WaveFan right = solve_riemann(m, u_m, u_r);
    if (left.waves.size() != 1 || right.waves.size() != 1) continue;
    if (!(left.waves[0].speed > right.waves[0].speed)) continue;
    ++colliding;
    CHECK_NOTHROW(classify(m, u_l, u_m, u_r));
  }
  CHECK(colliding > 3000);
}

TEST_CASE("predicted V bounds") {
  const KineticModel m = cubic_kinetic(0.75);
  // RN with sigma(R_in) = 0.2: c2 = 1 - beta
  CHECK(predicted_V_bound(InteractionCase::RN, wave(m, 0.8, 1.0),
                          wave(m, 1.0, -0.75), m) ==
        doctest::Approx(-0.05).epsilon(1e-14));
  // CC-1 sits in the zero branch
  CHECK(predicted_V_bound(InteractionCase::CC1, wave(m, 1.0, 0.5),
                          wave(m, 0.5, 0.3), m) == 0.0);
  // CR-2 with sigma(R_in) = 0.3: c1 = 1 for the cubic model
  CHECK(predicted_V_bound(InteractionCase::CR2, wave(m, 1.2, 0.4),
                          wave(m, 0.4, 0.7), m) ==
        doctest::Approx(-0.3).epsilon(1e-14));
  // CR-3 bound equals the exact drop -2 (sigma_in - sigma_out)
  const WaveRef cw = wave(m, 1.0, -0.1);
  const WaveRef rw = wave(m, -0.1, -0.8);
  const double sigma_in = wave_strength(m, -0.1, -0.8);
  const double sigma_out = wave_strength(m, m.kinetic(1.0), -0.8);
  CHECK(predicted_V_bound(InteractionCase::CR3, cw, rw, m) ==
        doctest::Approx(-2.0 * (sigma_in - sigma_out)).epsilon(1e-14));
}

TEST_CASE("norm equivalence on admissible waves") {
  const KineticModel m = cubic_kinetic(0.75);
  const auto [c_lo, c_hi] = equivalence_constants(m);
  CHECK(c_lo == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(c_hi == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(59);
  int waves_checked = 0;
  while (waves_checked < 10000) {
    const double a = rng.uniform(-1.9, 1.9);
    const double b = rng.uniform(-1.9, 1.9);
    if (std::abs(a - b) < 1e-6) continue;
    for (const Wave& w : solve_riemann(m, a, b).waves) {
      const double sigma = wave_strength(m, w.left, w.right);
      const double jump = std::abs(w.left - w.right);
      CHECK(sigma >= c_lo * jump - 1e-12);
      CHECK(sigma <= c_hi * jump + 1e-12);
      ++waves_checked;
    }
  }
}

TEST_CASE("strength continuity across the companion threshold") {
  const KineticModel m = cubic_kinetic(0.62);
  for (int i = 1; i <= 100; ++i) {
    const double u = 1.9 * i / 100.0;
    const double ps = m.companion(u);
    const double just_above = wave_strength(m, u, ps + 1e-9);
    const double split = wave_strength(m, u, m.kinetic(u)) +
                         wave_strength(m, m.kinetic(u), ps - 1e-9);
    CHECK(std::abs(just_above - split) < 1e-6);
  }
}

TEST_CASE("classification normalizes a zero left state by its partner") {
  const KineticModel m = cubic_kinetic(0.75);
  // all-negative mirror territory entered through u_l = 0
  const WaveRef left{0.0, -0.6, classify_wave(m, 0.0, -0.6)};
  const WaveRef right{-0.6, -0.75, classify_wave(m, -0.6, -0.75)};
  CHECK(left.label == WaveLabel::RMinus);
  // R- pieces never collide; expect the non-colliding rejection, not a
  // misclassification
  CHECK_THROWS_AS(classify_interaction(m, left, right), std::invalid_argument);

  const WaveRef shock{0.0, -0.4, classify_wave(m, 0.0, -0.4)};
  const WaveRef raref{-0.4, -0.5, classify_wave(m, -0.4, -0.5)};
  CHECK(shock.label == WaveLabel::RMinus);
  (void)raref;
}
