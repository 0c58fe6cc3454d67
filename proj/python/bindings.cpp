#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewdens/error.hpp"
#include "skewdens/io.hpp"

namespace py = pybind11;
using namespace skewdens;

namespace {

RunOptions options(std::optional<std::size_t> horizon, std::optional<std::size_t> max_cylinder,
                   std::optional<std::size_t> cap) {
  RunOptions o;
  o.horizon = horizon;
  o.max_cylinder = max_cylinder;
  o.cap = cap;
  return o;
}

std::string run(const std::string& command, const std::optional<std::string>& spec_json,
                std::optional<std::size_t> horizon, std::optional<std::size_t> max_cylinder,
                std::optional<std::size_t> cap) {
  const RunOptions o = options(horizon, max_cylinder, cap);
  std::optional<ProblemSpec> spec;
  if (spec_json) {
    spec = parse_spec_text(*spec_json);
  } else if (command_needs_spec(command)) {
    throw Error(ErrorKind::schema, "command \"" + command + "\" needs a problem spec");
  }
  std::string out;
  {
    py::gil_scoped_release release;
    out = run_command(command, spec ? &*spec : nullptr, o).dump();
  }
  return out;
}

std::string normalize(const std::string& spec_json) {
  return to_json(parse_spec_text(spec_json)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "skew-product density engine";

  static py::exception<Error> base(m, "SkewdensError", PyExc_ValueError);
  static py::exception<Error> schema(m, "SchemaError", base.ptr());
  static py::exception<Error> semantic(m, "SemanticError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const Error& e) {
      std::string msg = e.what();
      if (!e.pointer().empty()) {
        msg = e.pointer() + ": " + msg;
      }
      switch (e.kind()) {
        case ErrorKind::schema:
          py::set_error(schema, msg.c_str());
          break;
        case ErrorKind::semantic:
          py::set_error(semantic, msg.c_str());
          break;
        case ErrorKind::internal:
          py::set_error(PyExc_RuntimeError, msg.c_str());
          break;
      }
    }
  });

  m.def("run", &run, py::arg("command"), py::arg("spec_json") = py::none(),
        py::arg("horizon") = py::none(), py::arg("max_cylinder") = py::none(),
        py::arg("cap") = py::none(), "Run a command and return the JSON report as text.");
  m.def("normalize", &normalize, py::arg("spec_json"),
        "Parse a problem spec and return its normalized JSON text.");
}
