#include "nctrack/waves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nctrack {

namespace {

constexpr double kCaseTol = 1e-9;  // case-boundary comparison tolerance

double normalized(const KineticModel& m, double u) {
  return u >= 0.0 ? u : m.kinetic_zero(u);
}

WaveLabel mirror_label(WaveLabel label) {
  switch (label) {
    case WaveLabel::CPlus: return WaveLabel::CMinus;
    case WaveLabel::CMinus: return WaveLabel::CPlus;
    case WaveLabel::CPlusMinus: return WaveLabel::CMinusPlus;
    case WaveLabel::CMinusPlus: return WaveLabel::CPlusMinus;
    case WaveLabel::NPlusMinus: return WaveLabel::NMinusPlus;
    case WaveLabel::NMinusPlus: return WaveLabel::NPlusMinus;
    case WaveLabel::RPlus: return WaveLabel::RMinus;
    case WaveLabel::RMinus: return WaveLabel::RPlus;
  }
  return label;
}

}  // namespace

std::string to_string(WaveLabel label) {
  switch (label) {
    case WaveLabel::CPlus: return "C+";
    case WaveLabel::CMinus: return "C-";
    case WaveLabel::CPlusMinus: return "C+-";
    case WaveLabel::CMinusPlus: return "C-+";
    case WaveLabel::NPlusMinus: return "N+-";
    case WaveLabel::NMinusPlus: return "N-+";
    case WaveLabel::RPlus: return "R+";
    case WaveLabel::RMinus: return "R-";
  }
  return "?";
}

std::string to_string(InteractionCase c) {
  switch (c) {
    case InteractionCase::RC1: return "RC-1";
    case InteractionCase::RC2: return "RC-2";
    case InteractionCase::RC3: return "RC-3";
    case InteractionCase::RN: return "RN";
    case InteractionCase::CR1: return "CR-1";
    case InteractionCase::CR2: return "CR-2";
    case InteractionCase::CR3: return "CR-3";
    case InteractionCase::CR4: return "CR-4";
    case InteractionCase::CC1: return "CC-1";
    case InteractionCase::CC2: return "CC-2";
    case InteractionCase::CC3: return "CC-3";
    case InteractionCase::CN1: return "CN-1";
    case InteractionCase::CN2: return "CN-2";
    case InteractionCase::CN3: return "CN-3";
    case InteractionCase::NC: return "NC";
    case InteractionCase::NN: return "NN";
    case InteractionCase::Multi: return "MULTI";
  }
  return "?";
}

InteractionCase interaction_case_from_string(const std::string& s) {
  static const std::pair<const char*, InteractionCase> table[] = {
      {"RC-1", InteractionCase::RC1}, {"RC-2", InteractionCase::RC2},
      {"RC-3", InteractionCase::RC3}, {"RN", InteractionCase::RN},
      {"CR-1", InteractionCase::CR1}, {"CR-2", InteractionCase::CR2},
      {"CR-3", InteractionCase::CR3}, {"CR-4", InteractionCase::CR4},
      {"CC-1", InteractionCase::CC1}, {"CC-2", InteractionCase::CC2},
      {"CC-3", InteractionCase::CC3}, {"CN-1", InteractionCase::CN1},
      {"CN-2", InteractionCase::CN2}, {"CN-3", InteractionCase::CN3},
      {"NC", InteractionCase::NC},    {"NN", InteractionCase::NN},
      {"MULTI", InteractionCase::Multi},
  };
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw std::invalid_argument("unknown interaction case: " + s);
}

bool is_rarefaction(WaveLabel label) {
  return label == WaveLabel::RPlus || label == WaveLabel::RMinus;
}

bool is_shock(WaveLabel label) { return !is_rarefaction(label); }

bool is_nonclassical(WaveLabel label) {
  return label == WaveLabel::NPlusMinus || label == WaveLabel::NMinusPlus;
}

WaveLabel classify_wave(const KineticModel& m, double u_left, double u_right) {
  if (std::abs(u_left - u_right) <= 1e-14 * (1.0 + std::abs(u_left))) {
    throw std::invalid_argument("classify_wave: zero-strength input");
  }
  // A zero state joins the region of its partner: (0, u<0) lives on the
  // concave side, (u<0, 0) likewise.
  const bool lneg = u_left < 0.0 || (u_left == 0.0 && u_right < 0.0);
  const bool rneg = u_right < 0.0 || (u_right == 0.0 && u_left < 0.0);
  if (!lneg && !rneg) return u_left > u_right ? WaveLabel::CPlus : WaveLabel::RPlus;
  if (lneg && rneg) return u_left < u_right ? WaveLabel::CMinus : WaveLabel::RMinus;
  const double pb = m.kinetic(u_left);
  const bool on_kinetic_graph = std::abs(u_right - pb) <= 1e-9 * (1.0 + std::abs(pb));
  if (!lneg) return on_kinetic_graph ? WaveLabel::NPlusMinus : WaveLabel::CPlusMinus;
  return on_kinetic_graph ? WaveLabel::NMinusPlus : WaveLabel::CMinusPlus;
}

double wave_strength(const KineticModel& m, double u_minus, double u_plus) {
  return std::abs(normalized(m, u_minus) - normalized(m, u_plus));
}

InteractionCase classify_interaction(const KineticModel& m, const WaveRef& left_wave,
                                     const WaveRef& right_wave) {
  if (std::abs(left_wave.right - right_wave.left) >
      1e-9 * (1.0 + std::abs(left_wave.right))) {
    throw std::invalid_argument("classify_interaction: waves are not adjacent");
  }
  {
    const double s_left = rankine_hugoniot_speed(m, left_wave.left, left_wave.right);
    const double s_right = rankine_hugoniot_speed(m, right_wave.left, right_wave.right);
    if (!(s_left > s_right)) {
      throw std::invalid_argument("classify_interaction: pair is not colliding");
    }
  }

  double u_l = left_wave.left;
  double u_m = left_wave.right;
  double u_r = right_wave.right;
  WaveLabel lab_l = left_wave.label;
  WaveLabel lab_r = right_wave.label;
  const KineticModel* model = &m;
  KineticModel mirror_model;

  // Normalize so the leftmost relevant state is positive.
  if (u_l < 0.0 || (u_l == 0.0 && u_m < 0.0)) {
    mirror_model = mirrored(m);
    model = &mirror_model;
    u_l = -u_l;
    u_m = -u_m;
    u_r = -u_r;
    lab_l = mirror_label(lab_l);
    lab_r = mirror_label(lab_r);
  }

  const double ps_l = model->companion(u_l);
  const double pb_l = model->kinetic(u_l);

  if (is_rarefaction(lab_l)) {
    if (is_rarefaction(lab_r)) {
      throw std::invalid_argument("classify_interaction: rarefaction pair cannot collide");
    }
    if (is_nonclassical(lab_r)) return InteractionCase::RN;
    if (u_r >= ps_l - kCaseTol) return InteractionCase::RC1;
    if (u_r <= pb_l + kCaseTol) return InteractionCase::RC2;
    return InteractionCase::RC3;
  }

  if (is_nonclassical(lab_l)) {
    if (is_nonclassical(lab_r)) return InteractionCase::NN;
    if (is_rarefaction(lab_r)) {
      // An undercompressive shock is slower than its trailing rarefaction.
      throw std::invalid_argument("classify_interaction: N followed by R cannot collide");
    }
    return InteractionCase::NC;
  }

  // Left wave is a classical shock.
  if (is_rarefaction(lab_r)) {
    if (u_m >= 0.0) return InteractionCase::CR2;
    if (u_r >= ps_l - kCaseTol) return InteractionCase::CR1;
    if (u_r <= pb_l + kCaseTol) return InteractionCase::CR3;
    return InteractionCase::CR4;
  }
  if (is_nonclassical(lab_r)) {
    if (u_m < 0.0) return InteractionCase::CN2;
    return u_r >= ps_l - kCaseTol ? InteractionCase::CN1 : InteractionCase::CN3;
  }
  // Shock-shock.
  if (u_m < 0.0) return InteractionCase::CC2;
  if (u_r >= ps_l - kCaseTol) return InteractionCase::CC1;
  return InteractionCase::CC3;
}

double predicted_V_bound(InteractionCase c, const WaveRef& left_wave,
                         const WaveRef& right_wave, const KineticModel& m) {
  const double c1 = std::min(1.0, m.kinetic_zero_lip_lower);
  const double c2 = m.gap_lip_lower;
  auto sigma = [&m](const WaveRef& w) { return wave_strength(m, w.left, w.right); };
  switch (c) {
    case InteractionCase::RC1:
    case InteractionCase::RC3:
      return -c1 * sigma(left_wave);
    case InteractionCase::CR1:
    case InteractionCase::CR2:
    case InteractionCase::CR4:
      return -c1 * sigma(right_wave);
    case InteractionCase::RC2:
    case InteractionCase::RN:
      return -c2 * sigma(left_wave);
    case InteractionCase::CR3: {
      // Outgoing rarefaction runs from phi_b(u_l) to u_r.
      const double sigma_in = sigma(right_wave);
      const double sigma_out =
          wave_strength(m, m.kinetic(left_wave.left), right_wave.right);
      return -2.0 * (sigma_in - sigma_out);
    }
    default:
      return 0.0;
  }
}

std::pair<double, double> equivalence_constants(const KineticModel& m) {
  // Upper constant from the sampled Lipschitz bound of phi_b0; for crossing
  // shocks |u- - u+| <= (1 + Lip(phi_b0)) |u-| while sigma >= gap |u-|.
  double lip_up = 1.0;
  const int n = 512;
  double prev_u = -m.range_bound;
  double prev_v = m.kinetic_zero(prev_u);
  for (int i = 1; i < n; ++i) {
    const double u = -m.range_bound + 2.0 * m.range_bound * i / (n - 1);
    const double v = m.kinetic_zero(u);
    lip_up = std::max(lip_up, std::abs(v - prev_v) / (u - prev_u));
    prev_u = u;
    prev_v = v;
  }
  const double c_lower = std::min(
      {1.0, m.kinetic_zero_lip_lower, m.gap_lip_lower / (1.0 + lip_up)});
  return {c_lower, lip_up};
}

}  // namespace nctrack
