#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cogradar/dominance.hpp"
#include "cogradar/errors.hpp"
#include "cogradar/harness.hpp"
#include "cogradar/loss.hpp"
#include "cogradar/markov_channel.hpp"
#include "cogradar/policy.hpp"
#include "cogradar/report.hpp"
#include "cogradar/waveform.hpp"

namespace py = pybind11;
using namespace cogradar;

namespace {

using Bits = std::vector<std::uint8_t>;
using Arm = std::pair<std::size_t, std::size_t>;  // (start, width)

OccupancyVector occ(const Bits& b) { return OccupancyVector(b); }

std::vector<OccupancyVector> occ_list(const std::vector<Bits>& states) {
  std::vector<OccupancyVector> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(occ(s));
  return out;
}

Arm arm(const Waveform& w) { return {w.start, w.width}; }

Waveform waveform(const Arm& a, std::size_t d) { return Waveform(a.first, a.second, d); }

LossParams loss_params(double eta, double snr0_db, double inr_db) {
  LossParams p;
  p.eta = eta;
  p.sinr.snr0_db = snr0_db;
  p.sinr.inr_db = inr_db;
  return p;
}

ExperimentConfig config_from(const std::string& text) {
  ExperimentConfig c;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(e.what());
  }
  apply_config_json(doc, c);
  c.validate();
  return c;
}

std::string run_experiment(const std::string& kind, const std::string& config_text) {
  const auto c = config_from(config_text);
  std::vector<ResultRow> rows;
  if (kind == "run") {
    rows = run_single(c);
  } else if (kind == "sweep-p12") {
    rows = sweep_p12(c);
  } else if (kind == "sweep-joint") {
    rows = sweep_joint(c);
  } else if (kind == "sweep-miss") {
    rows = sweep_miss(c);
  } else if (kind == "short-horizon") {
    rows = short_horizon(c);
  } else {
    throw ConfigError("unknown experiment '" + kind + "'");
  }
  return rows_to_json(kind, c, rows).dump();
}

std::string dominance(const std::string& config_text, const std::string& p1, const std::string& p2,
                      const std::string& statistic) {
  const auto c = config_from(config_text);
  DominanceStatistic stat;
  if (statistic == "loss") {
    stat = DominanceStatistic::loss;
  } else if (statistic == "sinr") {
    stat = DominanceStatistic::sinr;
  } else {
    throw ConfigError("statistic must be loss or sinr");
  }
  return dominance_to_json(run_dominance(c, p1, p2, stat), c).dump();
}

std::string verdict(DominanceVerdict v) { return to_string(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cognitive radar spectrum-sharing simulator";

  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  m.def("catalog_size", &catalog_size, py::arg("d"));
  m.def(
      "enumerate_waveforms",
      [](std::size_t d) {
        std::vector<Arm> out;
        for (const auto& w : enumerate_waveforms(d)) out.push_back(arm(w));
        return out;
      },
      py::arg("d"), "All (start, width) pairs, widest first.");
  m.def(
      "widest_vacancy_width", [](const Bits& s) { return widest_vacancy_width(occ(s)); },
      py::arg("state"));
  m.def(
      "widest_vacancy_candidates",
      [](const Bits& o) {
        std::vector<Arm> out;
        for (const auto& w : widest_vacancy_candidates(occ(o))) out.push_back(arm(w));
        return out;
      },
      py::arg("observation"));
  m.def(
      "collision_count",
      [](const Arm& w, const Bits& s) { return collision_count(waveform(w, s.size()), occ(s)); },
      py::arg("waveform"), py::arg("state"));
  m.def(
      "missed_opportunity_count",
      [](const Arm& w, const Bits& s) {
        return missed_opportunity_count(waveform(w, s.size()), occ(s));
      },
      py::arg("waveform"), py::arg("state"));
  m.def(
      "loss",
      [](const Arm& w, const Bits& s, double eta) {
        auto p = loss_params(eta, 10.0, 14.0);
        p.validate(s.size());
        return loss(waveform(w, s.size()), occ(s), p);
      },
      py::arg("waveform"), py::arg("state"), py::arg("eta") = 0.1);
  m.def(
      "sinr_db",
      [](const Arm& w, const Bits& s, double snr0_db, double inr_db) {
        return sinr_db(waveform(w, s.size()), occ(s), loss_params(0.0, snr0_db, inr_db));
      },
      py::arg("waveform"), py::arg("state"), py::arg("snr0_db") = 10.0, py::arg("inr_db") = 14.0);

  m.def(
      "stationary_distribution",
      [](const std::vector<std::vector<double>>& P, bool cesaro) {
        const TransitionMatrix tm(P);
        return cesaro ? stationary_distribution_cesaro(tm) : stationary_distribution(tm);
      },
      py::arg("P"), py::arg("cesaro") = false);
  m.def(
      "saa_average_cost",
      [](const std::vector<Bits>& states, const std::vector<std::vector<double>>& P, double eta,
         bool cesaro) {
        const auto s = occ_list(states);
        auto p = loss_params(eta, 10.0, 14.0);
        p.validate(s.front().size());
        return analytic_average_cost(s, TransitionMatrix(P), saa_action_map(s), p, cesaro);
      },
      py::arg("states"), py::arg("P"), py::arg("eta") = 0.1, py::arg("cesaro") = false,
      "Long-run average loss of sense-and-avoid under perfect observation.");
  m.def(
      "bellman_actions",
      [](const std::vector<Bits>& states, const std::vector<std::vector<double>>& P, double eta,
         double alpha) {
        const auto s = occ_list(states);
        auto p = loss_params(eta, 10.0, 14.0);
        p.validate(s.front().size());
        std::vector<Arm> out;
        for (const auto& w : bellman_build(s, TransitionMatrix(P), p, alpha).action) out.push_back(arm(w));
        return out;
      },
      py::arg("states"), py::arg("P"), py::arg("eta") = 0.1, py::arg("alpha") = 0.9);

  m.def(
      "first_order_dominates",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return verdict(first_order_dominates(EmpiricalCdf(a), EmpiricalCdf(b)));
      },
      py::arg("costs_1"), py::arg("costs_2"));
  m.def(
      "second_order_dominates",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return verdict(second_order_dominates(EmpiricalCdf(a), EmpiricalCdf(b)));
      },
      py::arg("costs_1"), py::arg("costs_2"));

  m.def("_run_experiment", &run_experiment, py::arg("kind"), py::arg("config_json"),
        py::call_guard<py::gil_scoped_release>());
  m.def("_dominance", &dominance, py::arg("config_json"), py::arg("policy_1"),
        py::arg("policy_2"), py::arg("statistic"), py::call_guard<py::gil_scoped_release>());
}
