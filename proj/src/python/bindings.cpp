#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oredual/corpus.hpp"
#include "oredual/duality.hpp"
#include "oredual/error.hpp"
#include "oredual/syzygy.hpp"
#include "oredual/systemdoc.hpp"

namespace py = pybind11;
using namespace oredual;

// Systems cross the boundary as SystemDoc JSON text; the Python package
// wraps these calls with json.loads/json.dumps.
namespace {

OpMatrix parse(const std::string& doc, const std::map<std::string, std::string>& assume) {
  OpMatrix m = system_from_json(nlohmann::json::parse(doc));
  if (assume.empty()) return m;
  std::map<std::string, Q> b;
  for (auto& [k, v] : assume) b[k] = Q(v);
  for (auto& [k, v] : b) v.canonicalize();
  return specialize_params(m, b);
}

CompletionOptions opts(int budget) {
  CompletionOptions o;
  o.budget = budget;
  return o;
}

std::string dump(const nlohmann::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear differential systems: completion, compatibility conditions and duality";
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<Error>(m, "OredualError", PyExc_ValueError);

  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) {
    Fixture f = fixture(name);
    return dump(system_to_json(f.op, {f.name, f.citation, f.note}));
  });
  m.def("adjoint", [](const std::string& doc) { return dump(system_to_json(adjoint(parse(doc, {})))); });
  m.def(
      "compatibility_conditions",
      [](const std::string& doc, int budget, const std::map<std::string, std::string>& assume) {
        return dump(system_to_json(compatibility_conditions(parse(doc, assume), opts(budget)).cc));
      },
      py::arg("doc"), py::arg("budget") = -1, py::arg("assume") = std::map<std::string, std::string>{});
  m.def(
      "differential_rank",
      [](const std::string& doc, int budget) { return differential_rank(parse(doc, {}), opts(budget)); },
      py::arg("doc"), py::arg("budget") = -1);
  m.def(
      "torsion_test",
      [](const std::string& doc, int budget, const std::map<std::string, std::string>& assume) {
        DualityOptions o;
        o.completion = opts(budget);
        DualityReport r = torsion_test(parse(doc, assume), o);
        nlohmann::json j = report_to_json(r);
        j["text"] = render_report(r);
        return dump(j);
      },
      py::arg("doc"), py::arg("budget") = -1, py::arg("assume") = std::map<std::string, std::string>{});
  m.def(
      "parametrize",
      [](const std::string& doc, int budget) {
        DualityOptions o;
        o.completion = opts(budget);
        return dump(system_to_json(parametrize(torsion_test(parse(doc, {}), o))));
      },
      py::arg("doc"), py::arg("budget") = -1);
  m.def("localize_parametrize", [](const std::string& doc) { return dump(system_to_json(localize_parametrize(parse(doc, {})))); });
  m.def("modules_equal", [](const std::string& a, const std::string& b) { return modules_equal(parse(a, {}), parse(b, {})); });
}
