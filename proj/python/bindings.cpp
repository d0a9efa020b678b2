#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "qwahba/oracle.hpp"
#include "qwahba/wahba.hpp"

namespace py = pybind11;
using namespace qwahba;

namespace {

Quaternion from_sequence(const py::sequence& s) {
  if (s.size() == 3) return Quaternion::pure(s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>());
  if (s.size() == 4) {
    return Quaternion(s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>(), s[3].cast<double>());
  }
  throw py::value_error("expected 3 (pure) or 4 components");
}

py::tuple as_tuple(const Quaternion& q) { return py::make_tuple(q.w(), q.x(), q.y(), q.z()); }

std::string repr(const Quaternion& q) {
  std::ostringstream s;
  s.precision(17);
  s << "Quaternion(" << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ")";
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form zero-cost solutions of the two-observation Wahba problem";

  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      instance.attr("detail") = e.detail();
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

  py::class_<Quaternion>(m, "Quaternion")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("z"))
      .def(py::init(&from_sequence), py::arg("components"))
      .def_static("real", &Quaternion::real)
      .def_static("pure", &Quaternion::pure)
      .def_property_readonly("w", &Quaternion::w)
      .def_property_readonly("x", &Quaternion::x)
      .def_property_readonly("y", &Quaternion::y)
      .def_property_readonly("z", &Quaternion::z)
      .def("imag", &Quaternion::imag)
      .def("components", &as_tuple)
      .def("__iter__", [](const Quaternion& q) { return py::iter(as_tuple(q)); })
      .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; }, py::is_operator())
      .def("__mul__", [](const Quaternion& a, double s) { return a * s; }, py::is_operator())
      .def("__rmul__", [](const Quaternion& a, double s) { return s * a; }, py::is_operator())
      .def("__truediv__", [](const Quaternion& a, double s) { return a / s; }, py::is_operator())
      .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; }, py::is_operator())
      .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; }, py::is_operator())
      .def("__neg__", [](const Quaternion& a) { return -a; })
      .def("__abs__", [](const Quaternion& a) { return norm(a); })
      .def("__eq__", [](const Quaternion& a, const Quaternion& b) { return a == b; }, py::is_operator())
      .def("__repr__", &repr);
  py::implicitly_convertible<py::tuple, Quaternion>();
  py::implicitly_convertible<py::list, Quaternion>();

  m.def("conj", &conj);
  m.def("norm", &norm);
  m.def("inverse", &inverse);
  m.def("normalized", &normalized);
  m.def("cross", &cross);
  m.def("conjugate_by", &conjugate_by, py::arg("q"), py::arg("a"), "q^-1 a q");
  m.def("canonical_sign", &canonical_sign);
  m.def("rotation_angle_between", &rotation_angle_between);

  py::class_<SqrtResult>(m, "SqrtResult")
      .def_readonly("negative_real_branch", &SqrtResult::negative_real_branch)
      .def_readonly("near_branch_ambiguity", &SqrtResult::near_branch_ambiguity)
      .def_readonly("magnitude", &SqrtResult::magnitude)
      .def_readonly("root", &SqrtResult::root)
      .def("roots", &SqrtResult::roots)
      .def("sample", &SqrtResult::sample, py::arg("direction"), py::arg("tol") = kDefaultTolerance);
  m.def("quat_sqrt", &quat_sqrt, py::arg("a"), py::arg("tol") = kDefaultTolerance);

  py::class_<SimilarityReport>(m, "SimilarityReport")
      .def_readonly("scalar_residual", &SimilarityReport::scalar_residual)
      .def_readonly("modulus_residual", &SimilarityReport::modulus_residual)
      .def_readonly("inner_residual", &SimilarityReport::inner_residual)
      .def_readonly("pairwise", &SimilarityReport::pairwise)
      .def_readonly("tolerance_used", &SimilarityReport::tolerance_used)
      .def_readonly("scale", &SimilarityReport::scale)
      .def_readonly("verdict", &SimilarityReport::verdict)
      .def("__bool__", [](const SimilarityReport& r) { return r.verdict; });
  m.def("is_similar", &is_similar, py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);
  m.def("is_pairwise_similar", &is_pairwise_similar, py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"),
        py::arg("tol") = kDefaultTolerance);

  py::class_<SylvesterFamily>(m, "SylvesterFamily")
      .def_readonly("sqrt_part", &SylvesterFamily::sqrt_part)
      .def_readonly("sqrt_magnitude", &SylvesterFamily::sqrt_magnitude)
      .def_readonly("sum_part", &SylvesterFamily::sum_part)
      .def_readonly("antipodal", &SylvesterFamily::antipodal)
      .def_readonly("constraint_normal", &SylvesterFamily::constraint_normal);
  m.def("sylvester_solve", &sylvester_solve, py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);
  m.def("family_sample", &family_sample, py::arg("family"), py::arg("lam"), py::arg("mu"),
        py::arg("direction") = std::nullopt, py::arg("tol") = kDefaultTolerance);

  py::class_<ObservationPair>(m, "ObservationPair")
      .def(py::init<const Quaternion&, const Quaternion&, const Quaternion&, const Quaternion&, double>(),
           py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("tol") = kDefaultTolerance)
      .def_property_readonly("a1", &ObservationPair::a1)
      .def_property_readonly("a2", &ObservationPair::a2)
      .def_property_readonly("b1", &ObservationPair::b1)
      .def_property_readonly("b2", &ObservationPair::b2)
      .def_property_readonly("report", &ObservationPair::report);

  py::class_<WahbaFamily>(m, "WahbaFamily")
      .def_readonly("reduced", &WahbaFamily::reduced)
      .def_readonly("q1_family", &WahbaFamily::q1_family)
      .def_readonly("q1", &WahbaFamily::q1)
      .def_readonly("a3", &WahbaFamily::a3)
      .def_readonly("b3", &WahbaFamily::b3)
      .def_readonly("q2_sqrt_arg", &WahbaFamily::q2_sqrt_arg)
      .def_readonly("q2_antipodal", &WahbaFamily::q2_antipodal)
      .def_readonly("q2_commutant_axis", &WahbaFamily::q2_commutant_axis)
      .def_readonly("q2", &WahbaFamily::q2)
      .def_readonly("collinear", &WahbaFamily::collinear)
      .def_readonly("canonical", &WahbaFamily::canonical);

  py::class_<WahbaParameters>(m, "WahbaParameters")
      .def(py::init([](double lambda1, double mu1, std::optional<Quaternion> q1_direction, double lambda2, int root,
                       std::optional<Quaternion> q2_direction) {
             return WahbaParameters{lambda1, mu1, q1_direction, lambda2, root, q2_direction};
           }),
           py::arg("lambda1") = 1.0, py::arg("mu1") = 0.0, py::arg("q1_direction") = std::nullopt,
           py::arg("lambda2") = 1.0, py::arg("root") = 1, py::arg("q2_direction") = std::nullopt)
      .def_readwrite("lambda1", &WahbaParameters::lambda1)
      .def_readwrite("mu1", &WahbaParameters::mu1)
      .def_readwrite("q1_direction", &WahbaParameters::q1_direction)
      .def_readwrite("lambda2", &WahbaParameters::lambda2)
      .def_readwrite("root", &WahbaParameters::root)
      .def_readwrite("q2_direction", &WahbaParameters::q2_direction);

  m.def("reduce_to_pure", &reduce_to_pure, py::arg("pair"), py::arg("tol") = kDefaultTolerance);
  m.def("solve_two_obs", &solve_two_obs, py::arg("pair"), py::arg("tol") = kDefaultTolerance);
  m.def("family_member", &family_member, py::arg("family"), py::arg("params") = WahbaParameters{});
  m.def("project_to_pairwise_similar", &project_to_pairwise_similar, py::arg("pair"),
        py::arg("tol") = kDefaultTolerance);
  m.def("cost_scale", &cost_scale);
  m.def("wahba_cost", py::overload_cast<const Quaternion&, const ObservationPair&>(&wahba_cost), py::arg("q"),
        py::arg("pair"));
  m.def(
      "wahba_cost",
      [](const Quaternion& q, const std::vector<Correspondence>& pairs) { return wahba_cost(q, pairs); },
      py::arg("q"), py::arg("pairs"));

  m.def(
      "davenport_solve", [](const std::vector<Correspondence>& pairs) { return davenport_solve(pairs); },
      py::arg("pairs"));
  py::class_<BruteForceResult>(m, "BruteForceResult")
      .def_readonly("q", &BruteForceResult::q)
      .def_readonly("cost", &BruteForceResult::cost);
  m.def(
      "brute_force_min",
      [](const std::vector<Correspondence>& pairs, std::int64_t n, std::uint64_t seed) {
        return brute_force_min(pairs, n, seed);
      },
      py::arg("pairs"), py::arg("n_samples"), py::arg("seed"));

  py::class_<GeneratedInstance>(m, "GeneratedInstance")
      .def_readonly("pair", &GeneratedInstance::pair)
      .def_readonly("truth", &GeneratedInstance::truth)
      .def_property_readonly("kind", [](const GeneratedInstance& g) { return std::string(to_string(g.kind)); })
      .def_readonly("seed", &GeneratedInstance::seed);
  m.def(
      "random_instance",
      [](std::uint64_t seed, const std::string& kind) {
        const auto k = parse_instance_kind(kind);
        if (!k) throw py::value_error("unknown instance kind '" + kind + "'");
        return random_instance(seed, *k);
      },
      py::arg("seed"), py::arg("kind") = "generic");
}
