#include "chaselab/data_dependent.hpp"
#include "chaselab/parser.hpp"
#include "chaselab/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace chaselab;

namespace {

Instance instance_for(const std::string& text, const ConstraintSet& sigma) {
    Schema schema = sigma.schema();
    return parse_instance(text, &schema);
}

std::string chase_json(const std::string& constraints, const std::string& instance, const std::string& policy,
                       std::size_t budget, std::optional<int> monitor_k, bool oblivious) {
    auto sigma = parse_constraints(constraints);
    auto p = policy_from_string(policy);
    if (!p) throw py::value_error("unknown policy '" + policy + "'");
    ChaseOptions opts;
    opts.policy = *p;
    opts.budget = budget;
    opts.mode = oblivious ? ChaseMode::Oblivious : ChaseMode::Standard;
    if (monitor_k) opts.monitor = MonitorConfig{*monitor_k};
    auto out = chase(instance_for(instance, sigma), sigma, opts);
    auto j = to_json(out);
    if (out.result) j["result_text"] = serialize(*out.result);
    return j.dump();
}

py::tuple verdict(const std::string& constraints, const std::string& instance, int max_k, bool standard_graph) {
    auto sigma = parse_constraints(constraints);
    auto r = data_dependent_verdict(instance_for(instance, sigma), sigma, max_k,
                                    standard_graph ? ChaseMode::Standard : ChaseMode::Oblivious);
    return py::make_tuple(to_string(r.verdict), std::vector<std::string>(r.irrelevant.begin(), r.irrelevant.end()),
                          r.level);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("normalize", [](const std::string& text) { return serialize(parse_constraints(text)); },
          py::arg("constraints"));
    m.def("normalize_instance", [](const std::string& text) { return serialize(parse_instance(text)); },
          py::arg("instance"));
    m.def("classify", [](const std::string& text, int max_k) { return to_json(classify(parse_constraints(text), max_k)).dump(); },
          py::arg("constraints"), py::arg("max_k") = 3);
    m.def("chase", &chase_json, py::arg("constraints"), py::arg("instance"), py::arg("policy") = "round-robin",
          py::arg("budget") = 10000, py::arg("monitor_k") = py::none(), py::arg("oblivious") = false);
    m.def("chase_graph",
          [](const std::string& text, bool oblivious) {
              return to_json(chase_graph(parse_constraints(text), oblivious ? ChaseMode::Oblivious : ChaseMode::Standard))
                  .dump();
          },
          py::arg("constraints"), py::arg("oblivious") = false);
    m.def("terminating_order", [](const std::string& text) { return terminating_order(parse_constraints(text)); },
          py::arg("constraints"));
    m.def("verdict", &verdict, py::arg("constraints"), py::arg("instance"), py::arg("max_k") = 3,
          py::arg("standard_graph") = false);
}
