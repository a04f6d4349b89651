#include <stdexcept>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "doctest.h"
#include "nctrack/riemann.hpp"
#include "nctrack/rng.hpp"

using namespace nctrack;

namespace {

void check_chained(const KineticModel& m, const WaveFan& fan, double u_l, double u_r) {
  REQUIRE(!fan.waves.empty());
  CHECK(fan.waves.front().left == u_l);
  CHECK(fan.waves.back().right == u_r);
  for (std::size_t i = 0; i + 1 < fan.waves.size(); ++i) {
    CHECK(fan.waves[i].right == fan.waves[i + 1].left);
    CHECK(fan.waves[i].speed < fan.waves[i + 1].speed);
  }
  for (const Wave& w : fan.waves) {
    if (is_nonclassical(w.label)) {
      CHECK(std::abs(w.right - m.kinetic(w.left)) <= 1e-12 * (1.0 + std::abs(w.right)));
    }
  }
}

}  // namespace

TEST_CASE("riemann solver cases for u_l > 0") {
  const KineticModel m = cubic_kinetic(0.75);

  SUBCASE("single crossing shock when u_r above the threshold") {
    const WaveFan fan = solve_riemann(m, 1.0, -0.1);
    REQUIRE(fan.waves.size() == 1);
    CHECK(fan.waves[0].label == WaveLabel::CPlusMinus);
    CHECK(fan.waves[0].speed == doctest::Approx(0.91).epsilon(1e-15));
  }
  SUBCASE("nonclassical + classical between phi_b and phi_s") {
    const WaveFan fan = solve_riemann(m, 1.0, -0.5);
    REQUIRE(fan.waves.size() == 2);
    CHECK(fan.waves[0].label == WaveLabel::NPlusMinus);
    CHECK(fan.waves[0].right == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(fan.waves[0].speed == doctest::Approx(0.8125).epsilon(1e-15));
    CHECK(fan.waves[1].label == WaveLabel::CMinus);
    CHECK(fan.waves[1].speed == doctest::Approx(1.1875).epsilon(1e-15));
    check_chained(m, fan, 1.0, -0.5);
  }
  SUBCASE("nonclassical + rarefaction below phi_b") {
    const WaveFan fan = solve_riemann(m, 1.0, -0.9);
    REQUIRE(fan.waves.size() == 2);
    CHECK(fan.waves[0].label == WaveLabel::NPlusMinus);
    CHECK(fan.waves[1].label == WaveLabel::RMinus);
    // characteristic speeds across the rarefaction
    CHECK(m.flux.deriv(-0.75) == doctest::Approx(1.6875).epsilon(1e-15));
    CHECK(m.flux.deriv(-0.9) == doctest::Approx(2.43).epsilon(1e-15));
    check_chained(m, fan, 1.0, -0.9);
  }
  SUBCASE("plain rarefaction and plain shock stay classical") {
    CHECK(solve_riemann(m, 0.2, 1.0).waves[0].label == WaveLabel::RPlus);
    CHECK(solve_riemann(m, 1.0, 0.2).waves[0].label == WaveLabel::CPlus);
  }
  SUBCASE("equal states yield the empty fan") {
    CHECK(solve_riemann(m, 0.7, 0.7).waves.empty());
  }
}

TEST_CASE("riemann solver boundary cases bias to fewer fronts") {
  const KineticModel m = cubic_kinetic(0.75);
  // exactly at the threshold: the weak inequality of the classical branch
  const WaveFan at_ps = solve_riemann(m, 1.0, m.companion(1.0));
  REQUIRE(at_ps.waves.size() == 1);
  CHECK(at_ps.waves[0].label == WaveLabel::CPlusMinus);
  // exactly on the kinetic graph: single nonclassical, no trailing wave
  const WaveFan at_pb = solve_riemann(m, 1.0, m.kinetic(1.0));
  REQUIRE(at_pb.waves.size() == 1);
  CHECK(at_pb.waves[0].label == WaveLabel::NPlusMinus);
}

TEST_CASE("riemann solver mirror construction for u_l < 0") {
  const KineticModel m = cubic_kinetic(0.75);
  const WaveFan fan = solve_riemann(m, -1.0, 0.5);
  REQUIRE(fan.waves.size() == 2);
  CHECK(fan.waves[0].label == WaveLabel::NMinusPlus);
  CHECK(fan.waves[0].right == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(fan.waves[1].label == WaveLabel::CPlus);
  check_chained(m, fan, -1.0, 0.5);

  // mirror of the full solver on random pairs
  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.uniform(-1.9, 1.9);
    const double b = rng.uniform(-1.9, 1.9);
    if (a == b) continue;
    const WaveFan f1 = solve_riemann(m, a, b);
    const WaveFan f2 = solve_riemann(m, -a, -b);
    REQUIRE(f1.waves.size() == f2.waves.size());
    for (std::size_t k = 0; k < f1.waves.size(); ++k) {
      CHECK(f1.waves[k].left == doctest::Approx(-f2.waves[k].left).epsilon(1e-14));
      CHECK(f1.waves[k].speed == doctest::Approx(f2.waves[k].speed).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate left state at the origin") {
  const KineticModel m = cubic_kinetic(0.75);
  const WaveFan down = solve_riemann(m, 0.0, -0.5);
  REQUIRE(down.waves.size() == 1);
  CHECK(down.waves[0].label == WaveLabel::RMinus);
  const WaveFan up = solve_riemann(m, 0.0, 0.5);
  REQUIRE(up.waves.size() == 1);
  CHECK(up.waves[0].label == WaveLabel::RPlus);
}

TEST_CASE("states outside the working range are rejected") {
  const KineticModel m = cubic_kinetic(0.75, 2.0);
  CHECK_THROWS_AS(solve_riemann(m, 2.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_riemann(m, 0.0, -2.5), std::invalid_argument);
}

TEST_CASE("fan speed monotonicity on random data") {
  const KineticModel m = cubic_kinetic(0.66);
  Rng rng(7);
  int nonclassical_pairs = 0;
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.uniform(-1.9, 1.9);
    const double b = rng.uniform(-1.9, 1.9);
    if (std::abs(a - b) < 1e-12) continue;
    const WaveFan fan = solve_riemann(m, a, b);
    for (std::size_t k = 0; k + 1 < fan.waves.size(); ++k) {
      CHECK(fan.waves[k].speed < fan.waves[k + 1].speed);
      if (is_nonclassical(fan.waves[k].label)) ++nonclassical_pairs;
    }
  }
  CHECK(nonclassical_pairs > 500);  // the sampling actually hits case ii/iii
}

TEST_CASE("strength additivity at the threshold") {
  const KineticModel m = cubic_kinetic(0.75);
  for (int i = 1; i <= 100; ++i) {
    const double u = 2.0 * i / 100.0;
    const double ps = m.companion(u);
    const double pb = m.kinetic(u);
    const double lhs = wave_strength(m, u, ps);
    const double rhs = wave_strength(m, u, pb) + wave_strength(m, pb, ps);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("self-similarity: re-solving a produced jump returns the jump") {
  const KineticModel m = cubic_kinetic(0.7);
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    const double a = rng.uniform(-1.9, 1.9);
    const double b = rng.uniform(-1.9, 1.9);
    if (std::abs(a - b) < 1e-9) continue;
    for (const Wave& w : solve_riemann(m, a, b).waves) {
      const WaveFan again = solve_riemann(m, w.left, w.right);
      REQUIRE(again.waves.size() == 1);
      CHECK(again.waves[0].label == w.label);
      CHECK(again.waves[0].speed == doctest::Approx(w.speed).epsilon(1e-14));
    }
  }
}

TEST_CASE("rarefaction discretization in the sigma metric") {
  const KineticModel m = cubic_kinetic(0.75);

  SUBCASE("negative-side split lands on equal strengths") {
    const auto fronts = discretize_rarefaction(m, -0.75, -0.9, 0.05);
    REQUIRE(fronts.size() == 3);
    for (const Wave& w : fronts) {
      CHECK(wave_strength(m, w.left, w.right) == doctest::Approx(0.05).epsilon(1e-12));
      CHECK(w.label == WaveLabel::RMinus);
    }
    CHECK(fronts.front().left == -0.75);
    CHECK(fronts.back().right == -0.9);
  }
  SUBCASE("positive-side split") {
    const auto fronts = discretize_rarefaction(m, 0.2, 1.0, 0.4);
    REQUIRE(fronts.size() == 2);
    CHECK(wave_strength(m, fronts[0].left, fronts[0].right) ==
          doctest::Approx(0.4).epsilon(1e-12));
    CHECK(wave_strength(m, fronts[1].left, fronts[1].right) ==
          doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("equal states yield no fronts") {
    CHECK(discretize_rarefaction(m, 0.4, 0.4, 0.1).empty());
  }
  SUBCASE("non-rarefaction input is rejected") {
    CHECK_THROWS_AS(discretize_rarefaction(m, 1.0, 0.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(discretize_rarefaction(m, -0.9, -0.75, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(discretize_rarefaction(m, 0.2, 1.0, 0.0), std::invalid_argument);
  }
  SUBCASE("pieces stay below eps for uneven totals") {
    const auto fronts = discretize_rarefaction(m, 0.0, 1.0, 0.3);
    REQUIRE(fronts.size() == 4);
    double total = 0.0;
    for (const Wave& w : fronts) {
      const double s = wave_strength(m, w.left, w.right);
      CHECK(s <= 0.3 * (1.0 + 1e-12));
      total += s;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("discretized riemann fan splits only rarefactions") {
  const KineticModel m = cubic_kinetic(0.75);
  const WaveFan fan = solve_riemann_discretized(m, 1.0, -0.9, 0.05);
  REQUIRE(fan.waves.size() == 4);  // N then 3 rarefaction pieces
  CHECK(fan.waves[0].label == WaveLabel::NPlusMinus);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(fan.waves[k].label == WaveLabel::RMinus);
    CHECK(wave_strength(m, fan.waves[k].left, fan.waves[k].right) <=
          0.05 * (1.0 + 1e-9));
  }
  check_chained(m, fan, 1.0, -0.9);
}

TEST_CASE("model evaluations are safe to share across threads") {
  const KineticModel m = cubic_kinetic(0.75, 3.0);
  std::vector<std::thread> workers;
  std::atomic<int> fans{0};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&m, &fans, t] {
      Rng rng(1000 + t);
      for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(-1.8, 1.8);
        const double b = rng.uniform(-1.8, 1.8);
        if (a == b) continue;
        const WaveFan fan = solve_riemann(m, a, b);
        if (!fan.waves.empty() &&
            wave_strength(m, fan.waves[0].left, fan.waves[0].right) >= 0.0) {
          fans.fetch_add(1, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(fans.load() > 7000);
}

TEST_CASE("case-boundary tolerance biases toward the single wave") {
  const KineticModel m = cubic_kinetic(0.75);
  const double ps = m.companion(1.0);
  // just below the threshold, inside the 1e-9 window: still one shock
  const WaveFan near = solve_riemann(m, 1.0, ps - 1e-10);
  REQUIRE(near.waves.size() == 1);
  CHECK(near.waves[0].label == WaveLabel::CPlusMinus);
  // clearly below: nonclassical + trailing shock
  const WaveFan below = solve_riemann(m, 1.0, ps - 1e-6);
  REQUIRE(below.waves.size() == 2);
  CHECK(below.waves[0].label == WaveLabel::NPlusMinus);
}
