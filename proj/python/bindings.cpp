#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schmidtkit/bipartite.hpp"
#include "schmidtkit/error.hpp"
#include "schmidtkit/multipartite.hpp"
#include "schmidtkit/report.hpp"
#include "schmidtkit/state_io.hpp"

namespace py = pybind11;
using namespace schmidtkit;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_array(std::span<const Complex> v) { return CArray(static_cast<py::ssize_t>(v.size()), v.data()); }

CArray to_array(const ComplexMatrix& m) {
  CArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

ComplexVector from_array(const CArray& a) { return ComplexVector(a.data(), a.data() + a.size()); }

ComplexMatrix matrix_from(const CArray& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::ShapeMismatch, "expected a 2-D array");
  return ComplexMatrix(a.shape(0), a.shape(1), from_array(a));
}

py::list vectors(const std::vector<ComplexVector>& vs) {
  py::list out;
  for (const auto& v : vs) out.append(to_array(v));
  return out;
}

std::vector<RandomSeed> seeds_from(const std::vector<std::uint64_t>& s) {
  std::vector<RandomSeed> out;
  for (auto v : s) out.push_back({v});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schmidt decompositions and homogeneous-form tests for pure states";

  // Raised as SchmidtkitError (a ValueError) with the error kind in `.kind`.
  static py::handle exc_type = py::exception<Error>(m, "SchmidtkitError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(exc_type)(e.what());
      err.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(exc_type.ptr(), err.ptr());
    }
  });

  py::class_<PureState>(m, "PureState")
      .def_property_readonly("dims", &PureState::dims)
      .def_property_readonly("amps", [](const PureState& s) { return to_array(s.amps()); })
      .def_property_readonly("parties", &PureState::parties)
      .def("__len__", &PureState::size)
      .def("__repr__", [](const PureState& s) {
        std::string d;
        for (auto x : s.dims()) d += (d.empty() ? "" : ", ") + std::to_string(x);
        return "PureState(dims=[" + d + "])";
      });

  m.def("normalize", [](const CArray& amps, std::vector<std::size_t> dims) {
    return normalize(from_array(amps), std::move(dims));
  }, py::arg("amps"), py::arg("dims"));
  m.def("random_state", [](std::vector<std::size_t> dims, std::uint64_t seed) {
    return random_state(std::move(dims), {seed});
  }, py::arg("dims"), py::arg("seed"));
  m.def("make_correlated_state", [](const CArray& c, std::vector<std::size_t> dims) {
    return make_correlated_state(from_array(c), std::move(dims));
  }, py::arg("coeffs"), py::arg("dims"));
  m.def("product_state", [](const std::vector<CArray>& fs) {
    std::vector<ComplexVector> v;
    for (const auto& f : fs) v.push_back(from_array(f));
    return product_state(v);
  }, py::arg("factors"));
  m.def("singlet_state", &singlet_state);
  m.def("ghz_state", &ghz_state, py::arg("parties"), py::arg("dim") = 2);
  m.def("w_state", &w_state, py::arg("parties"));
  m.def("apply_local_unitary", [](const PureState& s, std::size_t party, const CArray& u) {
    return apply_local_unitary(s, party, matrix_from(u));
  }, py::arg("state"), py::arg("party"), py::arg("u"));

  m.def("matricize", [](const PureState& s, std::vector<std::size_t> left, std::vector<std::size_t> right) {
    return to_array(matricize(s, Bipartition{std::move(left), std::move(right)}));
  }, py::arg("state"), py::arg("left"), py::arg("right"));

  py::class_<SchmidtDecomposition>(m, "SchmidtDecomposition")
      .def_property_readonly("left", [](const SchmidtDecomposition& d) { return d.split.left; })
      .def_property_readonly("right", [](const SchmidtDecomposition& d) { return d.split.right; })
      .def_readonly("weights", &SchmidtDecomposition::weights)
      .def_property_readonly("left_vectors", [](const SchmidtDecomposition& d) { return vectors(d.left_vectors); })
      .def_property_readonly("right_vectors", [](const SchmidtDecomposition& d) { return vectors(d.right_vectors); })
      .def_readonly("degeneracy_groups", &SchmidtDecomposition::degeneracy_groups)
      .def_property_readonly("rank", &SchmidtDecomposition::rank)
      .def_property_readonly("left_zero_dim", &SchmidtDecomposition::left_zero_dim)
      .def_property_readonly("right_zero_dim", &SchmidtDecomposition::right_zero_dim)
      .def("reconstruct", [](const SchmidtDecomposition& d) { return to_array(d.reconstruct_matrix_form()); });

  m.def("schmidt_decompose", [](const PureState& s, std::vector<std::size_t> left, std::vector<std::size_t> right,
                                double tol, double deg_tol) {
    return schmidt_decompose(s, Bipartition{std::move(left), std::move(right)}, tol, deg_tol);
  }, py::arg("state"), py::arg("left"), py::arg("right"), py::arg("tol") = kDefaultRankTol,
        py::arg("deg_tol") = kDefaultDegeneracyTol);
  m.def("reduced_density", [](const PureState& s, std::vector<std::size_t> left, std::vector<std::size_t> right,
                              const std::string& side) {
    if (side != "left" && side != "right") throw Error(ErrorKind::InvalidArgument, "side must be 'left' or 'right'");
    return to_array(reduced_density(s, Bipartition{std::move(left), std::move(right)},
                                    side == "left" ? Side::Left : Side::Right).matrix);
  }, py::arg("state"), py::arg("left"), py::arg("right"), py::arg("side") = "right");
  m.def("entanglement_entropy", &entanglement_entropy, py::arg("decomposition"));
  m.def("nats_to_bits", &nats_to_bits);

  m.def("generalized_schmidt_test", [](const PureState& s, double tol, const std::vector<std::uint64_t>& seeds) {
    const auto sv = seeds_from(seeds);
    const auto r = generalized_schmidt_test(s, tol, sv);
    py::dict out;
    out["verdict"] = std::string(to_string(r.verdict));
    out["weights"] = r.weights;
    py::list bases;
    for (const auto& party : r.party_bases) bases.append(vectors(party));
    out["party_bases"] = bases;
    out["residual"] = r.residual;
    if (r.witness) {
      py::dict w;
      w["kind"] = std::string(to_string(r.witness->kind));
      w["left"] = r.witness->split.left;
      w["right"] = r.witness->split.right;
      w["weight_index"] = r.witness->weight_index;
      w["rank"] = r.witness->rank ? py::cast(*r.witness->rank) : py::none();
      w["magnitude"] = r.witness->magnitude;
      out["witness"] = w;
    } else {
      out["witness"] = py::none();
    }
    return out;
  }, py::arg("state"), py::arg("tol") = kDefaultMultipartiteTol, py::arg("seeds") = std::vector<std::uint64_t>{});

  m.def("product_test", [](const PureState& s, double tol) {
    const auto r = product_test(s, tol);
    py::dict out;
    out["verdict"] = std::string(to_string(r.verdict));
    out["factors"] = vectors(r.factors);
    out["residual"] = r.residual;
    if (r.witness) {
      py::dict w;
      w["left"] = r.witness->split.left;
      w["right"] = r.witness->split.right;
      w["rank"] = r.witness->rank;
      out["witness"] = w;
    } else {
      out["witness"] = py::none();
    }
    return out;
  }, py::arg("state"), py::arg("tol") = kDefaultMultipartiteTol);

  m.def("pure_vs_mixture_gap", [](const CArray& psi, const std::vector<double>& weights,
                                  const std::vector<CArray>& components) {
    MixtureSpec mix{weights, {}};
    for (const auto& c : components) mix.components.push_back(from_array(c));
    return pure_vs_mixture_gap(from_array(psi), mix);
  }, py::arg("psi"), py::arg("weights"), py::arg("components"));

  m.def("counting_check", [](const std::vector<std::size_t>& dims) {
    const auto c = counting_check(std::span<const std::size_t>(dims));
    py::dict out;
    out["unknowns"] = c.unknowns;
    out["equations"] = c.equations;
    out["overdetermined"] = c.overdetermined;
    return out;
  }, py::arg("dims"));

  m.def("parse_state_json", [](const std::string& text) { return parse_state_json(text); });
  m.def("state_to_json", &state_to_json);
  m.attr("__version__") = SCHMIDTKIT_VERSION;
  m.attr("REPORT_SCHEMA_VERSION") = std::string(kReportSchemaVersion);
}
