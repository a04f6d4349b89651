#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "nctrack/kinetics.hpp"

using namespace nctrack;

namespace {

// Independent oracle: entropy flux F(u) = int_0^u U'(v) f'(v) dv by Simpson
// quadrature, no closed form used.
double entropy_flux_quadrature(const RealFn& u_prime, const RealFn& f_prime,
                               double u, int panels = 2000) {
  double sum = 0.0;
  const double h = u / panels;
  auto g = [&](double v) { return u_prime(v) * f_prime(v); };
  for (int i = 0; i < panels; ++i) {
    const double a = i * h;
    sum += h / 6.0 * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
  }
  return sum;
}

// Independent oracle: the zero-dissipation companion state of u, found by
// bisection on the dissipation of the quadratic entropy.
double zero_dissipation_state(const KineticModel& m, double u) {
  auto entropy = [](double v) { return 0.5 * v * v; };
  auto entropy_flux = [](double v) { return 0.75 * v * v * v * v; };
  auto dissipation = [&](double v) {
    return entropy_dissipation(m, entropy, entropy_flux, u, v);
  };
  double lo = -2.0 * u;   // dissipation positive beyond the involution
  double hi = -0.25 * u;  // and negative close to the crossing threshold
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dissipation(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cubic family closed forms") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(m.kinetic(1.0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(m.companion(1.0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(m.kinetic_zero(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(m.contraction_factor == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(m.gap_lip_lower == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.kinetic_zero_lip_lower == 1.0);

  const KineticModel m55 = cubic_kinetic(0.55);
  CHECK(std::abs(m55.kinetic(m55.kinetic(2.0))) ==
        doctest::Approx(0.605).epsilon(1e-14));
}

TEST_CASE("cubic family rejects bad parameters") {
  CHECK_THROWS_AS(cubic_kinetic(0.5), std::invalid_argument);
  CHECK_THROWS_AS(cubic_kinetic(1.0), std::invalid_argument);
  CHECK_THROWS_AS(cubic_kinetic(0.4), std::invalid_argument);
  CHECK_THROWS_AS(cubic_kinetic(0.75, -1.0), std::invalid_argument);
}

TEST_CASE("zero-dissipation involution matches the entropy oracle") {
  const KineticModel m = cubic_kinetic(0.75);
  for (double u : {0.3, 0.8, 1.0, 1.7}) {
    CHECK(zero_dissipation_state(m, u) == doctest::Approx(-u).epsilon(1e-10));
    CHECK(m.kinetic_zero(u) == doctest::Approx(-u).epsilon(1e-15));
  }
}

TEST_CASE("entropy dissipation closed form and quadrature route") {
  const KineticModel m = cubic_kinetic(0.75);
  auto entropy = [](double v) { return 0.5 * v * v; };
  auto entropy_flux = [](double v) { return 0.75 * v * v * v * v; };

  CHECK(entropy_dissipation(m, entropy, entropy_flux, 1.0, -1.0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // (1/4) (u+ - u-)^3 (u+ + u-)
  CHECK(entropy_dissipation(m, entropy, entropy_flux, 1.0, -0.75) ==
        doctest::Approx(0.25 * std::pow(-1.75, 3) * 0.25).epsilon(1e-13));
  CHECK(entropy_dissipation(m, entropy, entropy_flux, 1.0, -0.75) ==
        doctest::Approx(-0.3349609375).epsilon(1e-12));

  // Same value with the entropy flux built by quadrature only.
  auto flux_quad = [&](double v) {
    return entropy_flux_quadrature([](double w) { return w; },
                                   [&m](double w) { return m.flux.deriv(w); }, v);
  };
  CHECK(entropy_dissipation(m, entropy, flux_quad, 1.0, -0.75) ==
        doctest::Approx(-0.3349609375).epsilon(1e-9));

  // (a, a) limit: dissipation vanishes with the jump.
  CHECK(std::abs(entropy_dissipation(m, entropy, entropy_flux, 0.5, 0.5 + 1e-7)) <
        1e-13);
  CHECK_THROWS_AS(entropy_dissipation(m, entropy, entropy_flux, 0.5, 0.5),
                  std::invalid_argument);
}

TEST_CASE("rankine-hugoniot speeds") {
  const KineticModel m = cubic_kinetic(0.75);
  CHECK(rankine_hugoniot_speed(m, 1.0, -0.75) ==
        doctest::Approx(0.8125).epsilon(1e-15));
  CHECK(rankine_hugoniot_speed(m, -0.75, -0.5) ==
        doctest::Approx(1.1875).epsilon(1e-15));
  // secant -> tangent
  const double a = 0.7;
  CHECK(rankine_hugoniot_speed(m, a, a + 1e-9) ==
        doctest::Approx(m.flux.deriv(a)).epsilon(1e-8));
  CHECK_THROWS_AS(rankine_hugoniot_speed(m, 0.3, 0.3), std::invalid_argument);
}

TEST_CASE("companion root-finding against the cubic closed form") {
  for (double beta : {0.55, 0.75, 0.95}) {
    const KineticModel m = cubic_kinetic(beta);
    for (int i = 1; i <= 100; ++i) {
      const double u = 2.0 * i / 100.0;
      CHECK(std::abs(compute_phi_sharp(m, u) - (-(1.0 - beta) * u)) < 1e-10);
      CHECK(std::abs(compute_phi_sharp(m, -u) - ((1.0 - beta) * u)) < 1e-10);
    }
  }
  const KineticModel m = cubic_kinetic(0.75, 2.5);
  CHECK(compute_phi_sharp(m, -2.0) == doctest::Approx(0.5).epsilon(1e-12));
  // all three kinetic maps fix the origin
  CHECK(compute_phi_sharp(m, 0.0) == 0.0);
  CHECK(std::abs(compute_phi_sharp(m, 1e-8)) < 1e-8);
  CHECK_THROWS_AS(compute_phi_sharp(m, 5.0), std::invalid_argument);
}

TEST_CASE("companion chord residual stays below 1e-10") {
  const KineticModel m = cubic_kinetic(0.6);
  for (int i = 1; i <= 50; ++i) {
    const double u = -2.0 + 4.0 * i / 51.0;
    if (std::abs(u) < 1e-3) continue;
    const double ps = compute_phi_sharp(m, u);
    const double pb = m.kinetic(u);
    const double lhs = (m.flux.eval(u) - m.flux.eval(pb)) / (u - pb);
    const double rhs = (m.flux.eval(u) - m.flux.eval(ps)) / (u - ps);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("verify_axioms passes the cubic family with exact constants") {
  for (double beta : {0.55, 0.75, 0.95}) {
    const KineticModel m = cubic_kinetic(beta, 2.0);
    const AxiomReport rep = verify_axioms(m, 1000);
    CHECK(rep.all_passed());
    CHECK(std::abs(rep.empirical_contraction - beta * beta) < 1e-12);
    CHECK(std::abs(rep.empirical_gap_lower - (1.0 - beta)) < 1e-12);
    CHECK(std::abs(rep.empirical_gap_upper - (1.0 - beta)) < 1e-12);
    CHECK(rep.companion_monotone);
  }
}

TEST_CASE("verify_axioms flags an expanding kinetic function") {
  KineticModel bad = cubic_kinetic(0.75);
  bad.kinetic = [](double u) { return -1.1 * u; };
  bad.companion = [](double u) { return 0.1 * u; };  // third chord root
  const AxiomReport rep = verify_axioms(bad, 500);
  CHECK_FALSE(rep.all_passed());
  const AxiomCheck* a3 = rep.find("A3 contraction");
  REQUIRE(a3 != nullptr);
  CHECK_FALSE(a3->passed);
  CHECK(a3->witness_u != 0.0);
}

TEST_CASE("verify_axioms flags a non-monotone tabulated map") {
  std::vector<std::pair<double, double>> samples;
  for (double u = -2.0; u <= 2.001; u += 0.25) {
    samples.emplace_back(u, -0.7 * u + 0.3 * std::sin(3.0 * u));
  }
  const KineticModel m = tabulated_kinetic(samples);
  const AxiomReport rep = verify_axioms(m, 500);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(rep.find("A2 strictly decreasing, phi_b(0)=0")->passed);
}

TEST_CASE("verify_axioms requires Lipschitz gap bounds, not pointwise ratios") {
  // Steep middle segment: pointwise |u - phi_b0(phi_b(u))| / |u| stays inside
  // (0, 1) but the difference quotient turns negative, which breaks the
  // diminishing-V argument. Must be rejected.
  std::vector<std::pair<double, double>> samples;
  for (double u = -2.2; u <= 2.201; u += 0.05) {
    const double a = std::abs(u);
    const double v = a <= 0.6 ? 0.55 * a : 0.33 + 1.25 * (a - 0.6);
    samples.emplace_back(u, u >= 0.0 ? -v : v);
  }
  const KineticModel m = tabulated_kinetic(samples);
  CHECK(m.gap_lip_lower < 0.0);
  CHECK_FALSE(verify_axioms(m, 1000).all_passed());
}

TEST_CASE("well-behaved tabulated kinetic passes and solves") {
  // phi_b(u) = -0.7 u - 0.05 u^3 sampled densely: strictly decreasing,
  // second iterate contracting, gap quotients inside (0, 1) on |u| <= 1.2.
  std::vector<std::pair<double, double>> samples;
  for (double u = -1.4; u <= 1.401; u += 0.01) {
    samples.emplace_back(u, -0.7 * u - 0.05 * u * u * u);
  }
  KineticModel m = tabulated_kinetic(samples);
  m = with_range_bound(m, 1.2);
  const AxiomReport rep = verify_axioms(m, 800);
  CHECK(rep.all_passed());
  // companion between phi_b(u) and u, on the chord
  const double ps = compute_phi_sharp(m, 1.0);
  CHECK(ps > m.kinetic(1.0));
  CHECK(ps < 1.0);
  CHECK_THROWS_AS(with_range_bound(m, 3.0), std::invalid_argument);
}

TEST_CASE("involution and sandwich invariants on a fine grid") {
  const KineticModel m = cubic_kinetic(0.64);
  for (int i = 0; i <= 400; ++i) {
    const double u = -2.0 + 4.0 * i / 400.0;
    CHECK(std::abs(m.kinetic_zero(m.kinetic_zero(u)) - u) <=
          1e-10 * (1.0 + std::abs(u)));
    if (std::abs(u) < 1e-9) continue;
    const double gap = std::abs(u - m.kinetic_zero(m.kinetic(u)));
    CHECK(m.gap_lip_lower * std::abs(u) <= gap + 1e-12);
    CHECK(gap <= m.gap_lip_upper * std::abs(u) + 1e-12);
    // ordering, both signs
    if (u > 0.0) {
      CHECK(m.kinetic(u) < m.companion(u));
      CHECK(m.companion(u) < u);
    } else {
      CHECK(u < m.companion(u));
      CHECK(m.companion(u) < m.kinetic(u));
    }
  }
}

TEST_CASE("mirrored model flips states and kinetic maps") {
  const KineticModel m = cubic_kinetic(0.8);
  const KineticModel mm = mirrored(m);
  for (double u : {-1.5, -0.3, 0.2, 1.1}) {
    CHECK(mm.kinetic(u) == doctest::Approx(-m.kinetic(-u)).epsilon(1e-15));
    CHECK(mm.kinetic_zero(u) == doctest::Approx(-m.kinetic_zero(-u)).epsilon(1e-15));
    CHECK(mm.flux.eval(u) == doctest::Approx(-m.flux.eval(-u)).epsilon(1e-15));
    CHECK(mm.flux.deriv(u) == doctest::Approx(m.flux.deriv(-u)).epsilon(1e-15));
  }
}

TEST_CASE("verify_axioms rejects too few grid points") {
  CHECK_THROWS_AS(verify_axioms(cubic_kinetic(0.75), 1), std::invalid_argument);
}
