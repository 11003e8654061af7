#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zsigff/api.hpp"
#include "zsigff/errors.hpp"

namespace py = pybind11;
using zsigff::api::json;

namespace {

zsigff::api::RunOptions options(unsigned jobs) {
  zsigff::api::RunOptions opt;
  opt.jobs = jobs == 0 ? 1 : jobs;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-level bindings; see the zsigff package for the Python-side wrappers";

  static py::exception<zsigff::Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<zsigff::DomainError> domain(m, "DomainError", base.ptr());
  static py::exception<zsigff::ParseError> parse(m, "ParseError", domain.ptr());
  static py::exception<zsigff::AmbiguousPlace> ambiguous(m, "AmbiguousPlace", base.ptr());
  static py::exception<zsigff::Inconclusive> inconclusive(m, "Inconclusive", base.ptr());
  static py::exception<zsigff::ConsistencyError> consistency(m, "ConsistencyError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const zsigff::ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const zsigff::DomainError& e) {
      py::set_error(domain, e.what());
    } catch (const zsigff::AmbiguousPlace& e) {
      py::set_error(ambiguous, e.what());
    } catch (const zsigff::Inconclusive& e) {
      py::set_error(inconclusive, e.what());
    } catch (const zsigff::ConsistencyError& e) {
      py::set_error(consistency, e.what());
    } catch (const zsigff::Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("kinds", &zsigff::api::kinds);
  m.def(
      "run_json",
      [](const std::string& kind, const std::string& input, unsigned jobs) {
        json in = json::parse(input);
        json out;
        {
          py::gil_scoped_release release;
          out = zsigff::api::run(kind, in, options(jobs));
        }
        return out.dump();
      },
      py::arg("kind"), py::arg("input"), py::arg("jobs") = 1);
  m.def(
      "verify_json",
      [](const std::string& report, unsigned jobs) {
        json in = json::parse(report);
        json out;
        {
          py::gil_scoped_release release;
          out = zsigff::api::verify(in, options(jobs));
        }
        return out.dump();
      },
      py::arg("report"), py::arg("jobs") = 1);
  m.def("reference_admissible", &zsigff::api::reference_admissible, py::arg("p"), py::arg("r"));
}
