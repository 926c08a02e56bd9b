#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roal/catalog.hpp"
#include "roal/cones.hpp"
#include "roal/io.hpp"
#include "roal/maps.hpp"

namespace py = pybind11;
using namespace roal;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

RealMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return RealMatrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Array to_array(const RealMatrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

ToleranceConfig make_tol(double psd_tol, double norm_rel_tol) {
  ToleranceConfig t;
  t.psd_tol = psd_tol;
  t.norm_rel_tol = norm_rel_tol;
  t.validate();
  return t;
}

// JSON text through the json module keeps one schema for CLI and Python.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<RealMatrix> to_matrices(const std::vector<Array>& v) {
  std::vector<RealMatrix> out;
  for (const auto& a : v) out.push_back(to_matrix(a));
  return out;
}

}  // namespace

PYBIND11_MODULE(_roal, m) {
  m.doc() = "Real operator algebra workbench";
  const ToleranceConfig d;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UnknownScenario>(m, "UnknownScenario", PyExc_KeyError);

  m.def("operator_norm", [](const Array& a) { return operator_norm(to_matrix(a)); });
  m.def("lambda_min", [](const Array& a) { return lambda_min(to_matrix(a)); });

  m.def("embed", [](const Array& re, const Array& im) { return to_array(embed(ComplexPair(to_matrix(re), to_matrix(im)))); },
        py::arg("re"), py::arg("im"), "[[re, -im], [im, re]]");
  m.def("complex_is_psd",
        [](const Array& re, const Array& im, double psd_tol) {
          return complex_is_psd(ComplexPair(to_matrix(re), to_matrix(im)), make_tol(psd_tol, ToleranceConfig{}.norm_rel_tol));
        },
        py::arg("re"), py::arg("im"), py::arg("psd_tol") = d.psd_tol);

  m.def("subspace_flags", [](const std::vector<Array>& gens) {
    const auto f = structure_flags(orthonormal_basis(to_matrices(gens)));
    py::dict out;
    out["selfadjoint"] = f.is_selfadjoint_space;
    out["jordan_closed"] = f.is_jordan_closed;
    out["assoc_closed"] = f.is_assoc_closed;
    out["dimension"] = orthonormal_basis(to_matrices(gens)).size();
    return out;
  });
  m.def("jordan_closure_dimension",
        [](const std::vector<Array>& gens) { return close_jordan(to_matrices(gens)).size(); });

  m.def("f_transform",
        [](const Array& x) {
          const RealMatrix xm = to_matrix(x);
          const auto r = f_transform(ConeContext::full(xm.dim()), xm);
          return py::make_tuple(to_array(r.value), r.half_f_distance, r.ok);
        },
        py::arg("x"), "x(1+x)^-1 in M_n: (value, ‖1 − 2·value‖, in ½F)");
  m.def("f_transform_inverse", [](const Array& w) {
    const RealMatrix wm = to_matrix(w);
    return to_array(f_transform_inverse(ConeContext::full(wm.dim()), wm));
  });
  m.def("is_real_positive", [](const Array& x) {
    const RealMatrix xm = to_matrix(x);
    return is_real_positive(ConeContext::full(xm.dim()), xm).real_positive;
  });

  m.def("functional_norm",
        [](const Array& riesz, std::uint64_t seed) {
          const RealMatrix g = to_matrix(riesz);
          FunctionalNormOptions opts;
          opts.seed = seed;
          const auto c = functional_norm(Functional(full_matrix_space(g.dim()), g), opts);
          return py::make_tuple(c.value, c.upper_bound);
        },
        py::arg("riesz"), py::arg("seed") = 0, "Norm of tr(Gᵀ·) on M_n: (lower bound, upper bound)");

  m.def("is_cp_conjugation",
        [](const std::vector<Array>& kraus_ops) { return is_cp(conjugation_map(to_matrices(kraus_ops))); });
  m.def("transpose_choi_lambda_min", [](std::size_t n) { return lambda_min(choi(transpose_map(n)).matrix); });
  m.def("stinespring_residual", [](const std::vector<Array>& kraus_ops) {
    const auto s = stinespring(conjugation_map(to_matrices(kraus_ops)));
    return py::make_tuple(s.reconstruction_residual, s.norm_gap);
  });

  m.def("list_scenarios", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : list_scenarios()) out.emplace_back(s.name, s.description);
    return out;
  });
  m.def("run_scenario",
        [](const std::string& name, std::uint64_t seed, double psd_tol, double norm_rel_tol) {
          Verdict v;
          {
            py::gil_scoped_release release;
            v = run_scenario(name, seed, make_tol(psd_tol, norm_rel_tol));
          }
          return to_python(verdict_to_json(v));
        },
        py::arg("name"), py::arg("seed") = 0, py::arg("psd_tol") = d.psd_tol,
        py::arg("norm_rel_tol") = d.norm_rel_tol, "Verdict as a dict with the CLI's JSON schema");
}
