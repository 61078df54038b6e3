#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iarq/arq.hpp"
#include "iarq/cli.hpp"
#include "iarq/errors.hpp"
#include "iarq/output.hpp"
#include "iarq/presets.hpp"
#include "iarq/serialization.hpp"
#include "iarq/special_functions.hpp"

#include <sstream>

namespace py = pybind11;
using namespace iarq;

namespace {

// Runs one simulation from a JSON config ({"simulation": ..., "dataset": ...}) and returns
// {"summary": ..., "curve_csv": ..., "decisions_csv": ...} as JSON text.
std::string run_config(const std::string& text) {
    const Json j = Json::parse(text);
    SimulationConfig sim = simulation_config_from_json(j.at("simulation"));
    const DatasetSpec spec = dataset_spec_from_json(j.at("dataset"));
    RunLog log;
    {
        py::gil_scoped_release release;
        log = run(sim, load_dataset(spec));
    }
    std::ostringstream curve, decisions;
    write_curve_csv(curve, log);
    write_decisions_csv(decisions, log);
    return Json{{"summary", run_summary(log)}, {"curve_csv", curve.str()}, {"decisions_csv", decisions.str()}}.dump();
}

std::string preset_config(const std::string& name, bool desk_scale, const std::string& policy) {
    const ExperimentPreset p = make_preset(name, desk_scale);
    SimulationConfig sim = p.simulation;
    sim.arq = make_arq(policy_choice_from_string(policy), p.policy, sim.model_kind, class_count_of(p.dataset));
    return Json{{"preset", p.name}, {"policy", policy}, {"simulation", to_json(sim)}, {"dataset", to_json(p.dataset)}}.dump();
}

int cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"iarq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = parse_and_run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    py::print(out.str(), py::arg("end") = "");
    if (!err.str().empty()) py::print(err.str(), py::arg("end") = "", py::arg("file") = py::module_::import("sys").attr("stderr"));
    return code;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Importance-aware retransmission simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_OSError);

    m.def("erf_inv", &erf_inv, py::arg("y"));
    m.def("alignment_probability", &alignment_probability, py::arg("score"), py::arg("snr"));
    m.def("theta0_from_pc", &theta0_from_pc, py::arg("pc"));
    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));
    m.def("preset_names", &preset_names);
    m.def("preset_config", &preset_config, py::arg("name"), py::arg("desk_scale") = true,
          py::arg("policy") = "importance");
    m.def("run_config", &run_config, py::arg("config_json"));
    m.def("cli", &cli, py::arg("args"));
}
