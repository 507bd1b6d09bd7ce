#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmbh/baselines.hpp"
#include "mmbh/config.hpp"
#include "mmbh/contention.hpp"
#include "mmbh/error.hpp"
#include "mmbh/experiment.hpp"
#include "mmbh/metrics.hpp"
#include "mmbh/model.hpp"
#include "mmbh/oracle.hpp"
#include "mmbh/power_control.hpp"
#include "mmbh/scheduler.hpp"
#include "mmbh/schedule_io.hpp"

namespace py = pybind11;
using namespace mmbh;

PYBIND11_MODULE(_core, m) {
  m.doc() = "mmWave backhaul scheduling and power control";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DegenerateGeometryError>(m, "DegenerateGeometryError", base.ptr());
  py::register_exception<InfeasibleDemandError>(m, "InfeasibleDemandError", base.ptr());
  py::register_exception<InfeasibleScenarioError>(m, "InfeasibleScenarioError", base.ptr());
  py::register_exception<StarvedFlowError>(m, "StarvedFlowError", base.ptr());
  py::register_exception<DegeneratePairingError>(m, "DegeneratePairingError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ScenarioGenerationError>(m, "ScenarioGenerationError", base.ptr());

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init(&SystemParams::defaults))
      .def_readwrite("bandwidth_hz", &SystemParams::bandwidth_hz)
      .def_readwrite("noise_psd_w_per_hz", &SystemParams::noise_psd_w_per_hz)
      .def_readwrite("pathloss_exponent", &SystemParams::pathloss_exponent)
      .def_readwrite("max_power_w", &SystemParams::max_power_w)
      .def_readwrite("mui_factor", &SystemParams::mui_factor)
      .def_readwrite("cta_duration_s", &SystemParams::cta_duration_s)
      .def_readwrite("cta_count", &SystemParams::cta_count)
      .def_readwrite("beamwidth_3db_deg", &SystemParams::beamwidth_3db_deg)
      .def_readwrite("sigma", &SystemParams::sigma)
      .def_readwrite("efficiency", &SystemParams::efficiency)
      .def_readwrite("carrier_wavelength_m", &SystemParams::carrier_wavelength_m)
      .def_readwrite("k0", &SystemParams::k0)
      .def("noise_power_w", &SystemParams::noise_power_w)
      .def("validate", &SystemParams::validate);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y);
  py::class_<Node>(m, "Node")
      .def(py::init([](NodeId id, double x, double y) { return Node{id, {x, y}}; }),
           py::arg("id"), py::arg("x"), py::arg("y"))
      .def_readwrite("id", &Node::id)
      .def_readwrite("position", &Node::position);
  py::class_<Flow>(m, "Flow")
      .def(py::init([](FlowId id, NodeId s, NodeId r, double q) { return Flow{id, s, r, q}; }),
           py::arg("id"), py::arg("sender"), py::arg("receiver"), py::arg("demand_bps"))
      .def_readwrite("id", &Flow::id)
      .def_readwrite("sender", &Flow::sender)
      .def_readwrite("receiver", &Flow::receiver)
      .def_readwrite("demand_bps", &Flow::demand_bps);
  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](std::vector<Node> nodes, std::vector<Flow> flows, std::uint64_t seed) {
             Scenario s{std::move(nodes), std::move(flows), seed};
             s.validate();
             return s;
           }),
           py::arg("nodes"), py::arg("flows"), py::arg("seed") = 0)
      .def_readonly("nodes", &Scenario::nodes)
      .def_readonly("flows", &Scenario::flows)
      .def("hash", &Scenario::hash);

  py::class_<AntennaPattern>(m, "AntennaPattern")
      .def_static("from_beamwidth", &AntennaPattern::from_beamwidth)
      .def_readonly("peak_gain_db", &AntennaPattern::peak_gain_db)
      .def_readonly("side_lobe_gain_db", &AntennaPattern::side_lobe_gain_db)
      .def_readonly("main_lobe_width_deg", &AntennaPattern::main_lobe_width_deg);
  m.def("antenna_gain", &antenna_gain);
  m.def("antenna_gain_db", &antenna_gain_db);
  m.def("shannon_rate", &shannon_rate);
  m.def("tdma_ctas", &tdma_ctas);
  m.def("theta_condition", &theta_condition, py::arg("demand_bps"), py::arg("params"));

  py::class_<ContentionGraph>(m, "ContentionGraph")
      .def_property_readonly("vertices", &ContentionGraph::vertices)
      .def("edges", &ContentionGraph::edges)
      .def("has_edge", &ContentionGraph::has_edge)
      .def("edge_list", [](const ContentionGraph& g) {
        std::ostringstream os;
        g.write_edge_list(os);
        return os.str();
      });
  m.def("build_graph", &build_graph);

  py::class_<Pairing>(m, "Pairing")
      .def_readonly("index", &Pairing::index)
      .def_readonly("flows", &Pairing::flows)
      .def_readonly("ctas", &Pairing::ctas)
      .def_readonly("power", &Pairing::power);
  m.def("schedule", &schedule);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("pairings", &Schedule::pairings)
      .def_property_readonly("scheme", [](const Schedule& s) { return to_string(s.scheme); })
      .def("total_ctas", &Schedule::total_ctas)
      .def("shortfall_count", &Schedule::shortfall_count)
      .def("to_json", [](const Schedule& s) { return to_json(s).dump(); });
  m.def("apportion_ctas", &apportion_ctas);
  m.def("run_power_control",
        py::overload_cast<std::vector<Pairing>, const Scenario&, const SystemParams&>(
            &run_power_control));

  py::class_<SchemeSet>(m, "SchemeSet")
      .def_readonly("served", &SchemeSet::served)
      .def_readonly("graph", &SchemeSet::graph)
      .def_readonly("tdma", &SchemeSet::tdma)
      .def_readonly("proposed", &SchemeSet::proposed)
      .def_readonly("ctfp", &SchemeSet::ctfp)
      .def_property_readonly("tdma_ctas", [](const SchemeSet& s) { return s.plan.ctas; });
  m.def(
      "run_schemes",
      [](const Scenario& sc, const SystemParams& p, const std::string& reference) {
        return run_schemes(sc, p, reference_from_string(reference));
      },
      py::arg("scenario"), py::arg("params"), py::arg("reference") = "tdma-throughput");

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("scheme", &MetricsReport::scheme)
      .def_readonly("total_energy_j", &MetricsReport::total_energy_j)
      .def_readonly("network_throughput_bps", &MetricsReport::network_throughput_bps)
      .def_readonly("energy_efficiency", &MetricsReport::energy_efficiency)
      .def_readonly("shortfall_count", &MetricsReport::shortfall_count);
  m.def("evaluate",
        py::overload_cast<const Schedule&, const Scenario&, const SystemParams&>(&evaluate));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("feasible", &OracleResult::feasible)
      .def_readonly("energy_j", &OracleResult::energy_j)
      .def_readonly("schedule", &OracleResult::schedule)
      .def_readonly("candidates", &OracleResult::candidates)
      .def("report", &OracleResult::report);
  m.def("solve_exact", [](const Scenario& sc, const SystemParams& p) { return solve_exact(sc, p); });
  m.def("check_feasible", [](const Schedule& s, const Scenario& sc, const SystemParams& p) {
    const FeasibilityReport r = check_feasible(s, sc, p);
    return py::make_tuple(r.ok, r.summary());
  });

  m.def("parse_config", [](const std::string& text) {
    std::istringstream in(text);
    return to_text(parse_config(in));
  });
  m.def("generate_scenario", [](const std::string& config_text, std::uint32_t trial) {
    std::istringstream in(config_text);
    return generate_scenario(parse_config(in), trial);
  });
  m.def(
      "run_experiment",
      [](const std::string& config_text, unsigned threads) {
        std::istringstream in(config_text);
        RunOptions opts;
        opts.threads = threads;
        std::ostringstream out;
        write_csv(out, run_experiment(parse_config(in), opts));
        return out.str();
      },
      py::arg("config_text") = "", py::arg("threads") = 1);
}
