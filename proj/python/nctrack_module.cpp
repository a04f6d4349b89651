#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nctrack/engine.hpp"
#include "nctrack/experiments.hpp"
#include "nctrack/kinetics.hpp"
#include "nctrack/riemann.hpp"
#include "nctrack/scenario.hpp"

namespace py = pybind11;
using namespace nctrack;

namespace {

py::dict wave_to_dict(const Wave& w) {
  py::dict d;
  d["left"] = w.left;
  d["right"] = w.right;
  d["label"] = to_string(w.label);
  d["speed"] = w.speed;
  return d;
}

py::dict record_to_dict(const InteractionRecord& rec) {
  py::dict d;
  d["time"] = rec.time;
  d["position"] = rec.position;
  d["case"] = to_string(rec.kase);
  py::list incoming, outgoing;
  for (const auto& w : rec.incoming) {
    py::dict wd;
    wd["left"] = w.left;
    wd["right"] = w.right;
    wd["label"] = to_string(w.label);
    wd["sigma"] = w.sigma;
    incoming.append(wd);
  }
  for (const auto& w : rec.outgoing) {
    py::dict wd;
    wd["left"] = w.left;
    wd["right"] = w.right;
    wd["label"] = to_string(w.label);
    wd["sigma"] = w.sigma;
    outgoing.append(wd);
  }
  d["incoming"] = incoming;
  d["outgoing"] = outgoing;
  d["V_before"] = rec.V_before;
  d["V_after"] = rec.V_after;
  d["Qweak_before"] = rec.Qweak_before;
  d["Qweak_after"] = rec.Qweak_after;
  d["Qpos_before"] = rec.Qpos_before;
  d["Qpos_after"] = rec.Qpos_after;
  d["predicted_bound"] = rec.predicted_bound;
  d["q1_weak"] = rec.q1_weak;
  d["q2_weak"] = rec.q2_weak;
  d["mass_before"] = rec.mass_before;
  d["mass_after"] = rec.mass_after;
  return d;
}

Snapshot snapshot_from_states(const KineticModel& m, double time,
                              const std::vector<std::tuple<double, double, double>>& rows) {
  Snapshot s;
  s.time = time;
  for (const auto& [pos, left, right] : rows) {
    SnapshotWave w;
    w.position = pos;
    w.left = left;
    w.right = right;
    w.label = classify_wave(m, left, right);
    w.speed = rankine_hugoniot_speed(m, left, right);
    s.waves.push_back(w);
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(nctrack, mod) {
  mod.doc() = "Front tracking for scalar conservation laws with "
              "kinetic-function-selected nonclassical shocks";

  py::class_<KineticModel>(mod, "KineticModel")
      .def("kinetic", [](const KineticModel& m, double u) { return m.kinetic(u); })
      .def("kinetic_zero",
           [](const KineticModel& m, double u) { return m.kinetic_zero(u); })
      .def("companion",
           [](const KineticModel& m, double u) { return m.companion(u); })
      .def("flux", [](const KineticModel& m, double u) { return m.flux.eval(u); })
      .def_readonly("contraction_factor", &KineticModel::contraction_factor)
      .def_readonly("gap_lip_lower", &KineticModel::gap_lip_lower)
      .def_readonly("range_bound", &KineticModel::range_bound)
      .def_readonly("beta", &KineticModel::beta);

  mod.def("cubic_kinetic", &cubic_kinetic, py::arg("beta"),
          py::arg("range_bound") = 2.0);
  mod.def("tabulated_kinetic", &tabulated_kinetic, py::arg("samples"));
  mod.def("compute_phi_sharp", &compute_phi_sharp, py::arg("model"), py::arg("u"));
  mod.def("rankine_hugoniot_speed", &rankine_hugoniot_speed, py::arg("model"),
          py::arg("u_minus"), py::arg("u_plus"));
  mod.def("wave_strength", &wave_strength, py::arg("model"), py::arg("u_minus"),
          py::arg("u_plus"));
  mod.def(
      "classify_wave",
      [](const KineticModel& m, double ul, double ur) {
        return to_string(classify_wave(m, ul, ur));
      },
      py::arg("model"), py::arg("u_left"), py::arg("u_right"));
  mod.def(
      "classify_interaction",
      [](const KineticModel& m, std::pair<double, double> left,
         std::pair<double, double> right) {
        const WaveRef lw{left.first, left.second,
                         classify_wave(m, left.first, left.second)};
        const WaveRef rw{right.first, right.second,
                         classify_wave(m, right.first, right.second)};
        return to_string(classify_interaction(m, lw, rw));
      },
      py::arg("model"), py::arg("left_wave"), py::arg("right_wave"));
  mod.def(
      "solve_riemann",
      [](const KineticModel& m, double ul, double ur) {
        py::list out;
        for (const auto& w : solve_riemann(m, ul, ur).waves) {
          out.append(wave_to_dict(w));
        }
        return out;
      },
      py::arg("model"), py::arg("u_l"), py::arg("u_r"));
  mod.def(
      "discretize_rarefaction",
      [](const KineticModel& m, double ul, double ur, double eps) {
        py::list out;
        for (const auto& w : discretize_rarefaction(m, ul, ur, eps)) {
          out.append(wave_to_dict(w));
        }
        return out;
      },
      py::arg("model"), py::arg("u_left"), py::arg("u_right"), py::arg("eps"));
  mod.def(
      "verify_axioms",
      [](const KineticModel& m, int grid_points) {
        const AxiomReport rep = verify_axioms(m, grid_points);
        py::dict d;
        d["all_passed"] = rep.all_passed();
        d["empirical_contraction"] = rep.empirical_contraction;
        d["empirical_gap_lower"] = rep.empirical_gap_lower;
        d["empirical_gap_upper"] = rep.empirical_gap_upper;
        py::list checks;
        for (const auto& c : rep.checks) {
          py::dict cd;
          cd["name"] = c.name;
          cd["passed"] = c.passed;
          checks.append(cd);
        }
        d["checks"] = checks;
        return d;
      },
      py::arg("model"), py::arg("grid_points") = 1000);

  mod.def("normalized_state", &normalized_state, py::arg("model"), py::arg("u"));
  mod.def("normalized_speed", &normalized_speed, py::arg("model"),
          py::arg("u_left"), py::arg("u_right"));

  py::class_<Snapshot>(mod, "Snapshot")
      .def_readonly("time", &Snapshot::time)
      .def("__len__", [](const Snapshot& s) { return s.waves.size(); })
      .def("rows", [](const Snapshot& s) {
        py::list out;
        for (const auto& w : s.waves) {
          out.append(py::make_tuple(w.position, w.left, w.right,
                                    to_string(w.label), w.speed));
        }
        return out;
      });

  mod.def("make_snapshot", &snapshot_from_states, py::arg("model"), py::arg("time"),
          py::arg("rows"));
  mod.def("total_V", &total_V, py::arg("snapshot"), py::arg("model"));
  mod.def("total_TV", &total_TV, py::arg("snapshot"));
  mod.def("q_weak", &Q_weak, py::arg("snapshot"), py::arg("model"));
  mod.def("q_pos", &Q_pos, py::arg("snapshot"), py::arg("model"), py::arg("c_star"));

  mod.def(
      "run_scenario",
      [](const std::string& json_text) {
        const ScenarioConfig config = parse_scenario(json_text);
        const KineticModel model = config.kinetic.build(config.range_bound);
        SimulationState state = initialize(model, config.initial, config.eps,
                                           config.c_star, config.safety_cap);
        RunResult result = run(state, config.t_end);
        py::dict d;
        py::list records;
        for (const auto& rec : result.records) records.append(record_to_dict(rec));
        d["records"] = records;
        py::list rows;
        for (const auto& w : result.final_snapshot.waves) {
          rows.append(py::make_tuple(w.position, w.left, w.right,
                                     to_string(w.label), w.speed));
        }
        d["final_snapshot"] = rows;
        d["V"] = state.V;
        d["TV"] = state.TV;
        d["time"] = state.time;
        return d;
      },
      py::arg("config_json"));

  mod.def(
      "splitting_merging_report",
      [](const KineticModel& m, double u_star,
         const std::vector<std::pair<double, double>>& perturbation, double eps) {
        const ScenarioConfig config =
            build_splitting_merging(m, u_star, perturbation, eps);
        SimulationState state = initialize(m, config.initial, config.eps,
                                           config.c_star, config.safety_cap);
        const RunResult result = run(state, config.t_end);
        const Episode episode = analyze_trajectories(result.records);
        return episode_report_json(episode, result.records, m, u_star);
      },
      py::arg("model"), py::arg("u_star"), py::arg("perturbation"), py::arg("eps"));

  mod.def(
      "search_qweak_increase",
      [](const std::string& case_name, const KineticModel& m,
         const std::vector<double>& c0_values) -> py::object {
        const auto witness = search_Qweak_increase(
            interaction_case_from_string(case_name), m, c0_values);
        if (!witness) return py::none();
        py::dict d;
        d["u_l"] = witness->u_l;
        d["u_m"] = witness->u_m;
        d["u_r"] = witness->u_r;
        d["delta_V"] = witness->delta_V;
        d["delta_Qweak"] = witness->delta_Qweak;
        return d;
      },
      py::arg("case_name"), py::arg("model"), py::arg("c0_values"));
}
