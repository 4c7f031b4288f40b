#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wdl/blaschke.hpp"
#include "wdl/classify.hpp"
#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"
#include "wdl/io.hpp"
#include "wdl/itinerary.hpp"
#include "wdl/lemmas.hpp"
#include "wdl/model.hpp"
#include "wdl/schedule.hpp"

namespace py = pybind11;

namespace {

wdl::PerturbationModel model_from(const std::string& kind, std::uint64_t seed, double envelope, bool real_only) {
  if (kind == "zero") return wdl::PerturbationModel::zero();
  if (kind == "random") return wdl::PerturbationModel::random(seed, envelope, real_only);
  if (kind == "extremal+") return wdl::PerturbationModel::extremal(1, envelope);
  if (kind == "extremal-") return wdl::PerturbationModel::extremal(-1, envelope);
  throw wdl::DomainError("unknown perturbation " + kind);
}

}  // namespace

PYBIND11_MODULE(_wdl, m) {
  m.doc() = "Bindings to the wdl C++ core; structured results are returned as JSON text.";

  py::register_exception<wdl::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<wdl::RegionError>(m, "RegionError", PyExc_RuntimeError);
  py::register_exception<wdl::InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<wdl::InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  m.def("ell", &wdl::ell, py::arg("n"));
  m.def("hyp_dist_unit", py::overload_cast<wdl::cplx, wdl::cplx>(&wdl::hyp_dist_unit), py::arg("z"), py::arg("w"));
  m.def("contraction_factor", &wdl::contraction_factor, py::arg("s"), py::arg("R"));
  m.def(
      "blaschke_eval", [](const std::string& id, wdl::cplx w) { return wdl::BlaschkeProduct::named(id)(w); },
      py::arg("family"), py::arg("w"));
  m.def(
      "multiplier_at_one", [](const std::string& id) { return wdl::multiplier_at_one(wdl::BlaschkeProduct::named(id)).multiplier; },
      py::arg("family"));
  m.def(
      "boundary_gap_series",
      [](const std::string& id, std::uint64_t n) { return wdl::boundary_gap_series(wdl::BlaschkeProduct::named(id), n); },
      py::arg("family"), py::arg("n_max"));
  m.def(
      "fit_power_law",
      [](const std::vector<std::pair<double, double>>& s) {
        const wdl::PowerFit f = wdl::fit_power_law(s);
        return py::make_tuple(f.exponent, f.constant, f.residual);
      },
      py::arg("series"));
  m.def(
      "schedule_json",
      [](const std::string& family, std::size_t depth, std::size_t samples) {
        return wdl::io::to_json(wdl::build_schedule(family, depth, samples)).dump();
      },
      py::arg("family"), py::arg("depth"), py::arg("samples") = 1024);
  m.def(
      "orbit_jsonl",
      [](const std::string& family, std::size_t depth, wdl::cplx start, const std::string& perturbation,
         std::uint64_t seed, double envelope) {
        const wdl::Schedule s = wdl::build_schedule(family, depth);
        const wdl::PerturbationModel model = model_from(perturbation, seed, envelope, false);
        const wdl::OrbitTrace t = wdl::orbit(wdl::local_point(s, 0, start - 4.0), s.last_step(), model, s);
        return wdl::io::orbit_jsonl(t, wdl::io::json{{"schema", wdl::io::schema}, {"family", family}, {"model", model.name()}});
      },
      py::arg("family"), py::arg("depth"), py::arg("start") = wdl::cplx(4.0, 0.0), py::arg("perturbation") = "random",
      py::arg("seed") = 0, py::arg("envelope") = 0.9);
  m.def(
      "example_json",
      [](const std::string& id, std::size_t depth, const std::string& perturbation, std::uint64_t seed, double envelope) {
        const wdl::ClassificationReport r =
            wdl::run_example(wdl::example_spec(id), depth, model_from(perturbation, seed, envelope, true));
        return wdl::io::to_json(r).dump();
      },
      py::arg("id"), py::arg("depth") = 12, py::arg("perturbation") = "random", py::arg("seed") = 0,
      py::arg("envelope") = 0.9);
  m.def(
      "cross_ratio_sweep_json",
      [](std::size_t nr, std::size_t nx) { return wdl::io::to_json(wdl::sweep_cross_ratio(nr, nx)).dump(); },
      py::arg("nr") = 99, py::arg("nx") = 999);
}
