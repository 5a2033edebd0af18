#include <pybind11/pybind11.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "quadpencil/error.hpp"
#include "quadpencil/io.hpp"
#include "quadpencil/moments.hpp"
#include "quadpencil/multinode.hpp"
#include "quadpencil/rules.hpp"

namespace py = pybind11;
using namespace quadpencil;

namespace {

// Nodes cross the boundary as floats, with math.inf standing for the node at infinity.
double node_to_float(const Node& n) {
  return n.is_infinite() ? std::numeric_limits<double>::infinity() : n.value();
}

std::vector<double> nodes_to_floats(const std::vector<Node>& nodes) {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const Node& n : nodes) out.push_back(node_to_float(n));
  return out;
}

std::vector<Node> floats_to_nodes(const std::vector<double>& xs) {
  std::vector<Node> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (std::isinf(x) && x > 0) {
      out.push_back(Node::infinity());
    } else {
      out.push_back(Node::real(x));
    }
  }
  return out;
}

MomentSequence as_moments(const std::vector<double>& m) { return MomentSequence(m, "python"); }

std::vector<double> as_list(const MomentSequence& seq) { return {seq.values().begin(), seq.values().end()}; }

std::vector<double> as_list(const Polynomial& p) { return {p.coefficients().begin(), p.coefficients().end()}; }

QuadratureRule rule_from(std::size_t degree, const std::vector<double>& nodes, const std::vector<double>& weights) {
  if (nodes.size() != weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "nodes and weights differ in length");
  }
  QuadratureRule r;
  r.degree = degree;
  r.nodes = floats_to_nodes(nodes);
  r.weights = weights;
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quadrature rules from moment pencils";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() { return py::object(py::exception<Error>(m, "QuadpencilError", PyExc_RuntimeError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("degeneracy", &Tolerances::degeneracy)
      .def_readwrite("condition_warning", &Tolerances::condition_warning)
      .def_readwrite("rank", &Tolerances::rank)
      .def_readwrite("eig_residual", &Tolerances::eig_residual)
      .def_readwrite("residual", &Tolerances::residual)
      .def_readwrite("infinity", &Tolerances::infinity)
      .def_readwrite("imaginary", &Tolerances::imaginary)
      .def_readwrite("merge", &Tolerances::merge)
      .def_readwrite("kernel", &Tolerances::kernel)
      .def_readwrite("positivity", &Tolerances::positivity);

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def(py::init(&rule_from), py::arg("degree"), py::arg("nodes"), py::arg("weights"))
      .def_readonly("degree", &QuadratureRule::degree)
      .def_property_readonly("nodes", [](const QuadratureRule& r) { return nodes_to_floats(r.nodes); })
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("max_residual", &QuadratureRule::max_residual)
      .def_readonly("warnings", &QuadratureRule::warnings)
      .def_property_readonly("has_infinity", &QuadratureRule::has_infinity)
      .def("to_text",
           [](const QuadratureRule& r) {
             std::ostringstream out;
             io::write_rule(out, r);
             return out.str();
           })
      .def("__repr__", [](const QuadratureRule& r) {
        return "<QuadratureRule degree " + std::to_string(r.degree) + ", " + std::to_string(r.nodes.size()) +
               " nodes>";
      });

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("residuals", &VerificationReport::residuals)
      .def_readonly("max_residual", &VerificationReport::max_residual)
      .def_readonly("threshold", &VerificationReport::threshold)
      .def_readonly("passed", &VerificationReport::pass)
      .def_property_readonly("first_failing_degree", [](const VerificationReport& v) -> py::object {
        if (v.first_failing_degree < 0) return py::none();
        return py::int_(v.first_failing_degree);
      });

  py::class_<InfinityRule>(m, "InfinityRule")
      .def_readonly("rule", &InfinityRule::rule)
      .def_readonly("w_inf_determinant", &InfinityRule::w_inf_determinant)
      .def_readonly("w_inf_least_squares", &InfinityRule::w_inf_least_squares);

  py::class_<CandidateResult>(m, "CandidateResult")
      .def_readonly("x", &CandidateResult::x_n)
      .def_property_readonly("kernel_nodes", [](const CandidateResult& c) { return nodes_to_floats(c.kernel_nodes); })
      .def_property_readonly("outcome", [](const CandidateResult& c) { return to_string(c.outcome); })
      .def_readonly("margin", &CandidateResult::margin)
      .def_readonly("warnings", &CandidateResult::warnings);

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_property_readonly("verdict", [](const FeasibilityReport& f) { return to_string(f.verdict); })
      .def_readonly("candidates", &FeasibilityReport::candidates)
      .def_readonly("rules", &FeasibilityReport::rules_found)
      .def_readonly("warnings", &FeasibilityReport::warnings);

  m.def("moments_normal", [](std::size_t k) { return as_list(moments_normal(k)); }, py::arg("max_degree"));
  m.def("moments_exponential", [](std::size_t k) { return as_list(moments_exponential(k)); }, py::arg("max_degree"));
  m.def(
      "moments_uniform", [](double a, double b, std::size_t k) { return as_list(moments_uniform(a, b, k)); },
      py::arg("a"), py::arg("b"), py::arg("max_degree"));
  m.def(
      "moments_from_atoms",
      [](const std::vector<double>& positions, const std::vector<double>& weights, std::size_t k) {
        if (positions.size() != weights.size()) {
          throw Error(ErrorKind::InvalidArgument, "positions and weights differ in length");
        }
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < positions.size(); ++i) atoms.push_back({positions[i], weights[i]});
        return as_list(moments_from_atoms(AtomicMeasure(std::move(atoms)), k));
      },
      py::arg("positions"), py::arg("weights"), py::arg("max_degree"));

  m.def(
      "gaussian_odd", [](const std::vector<double>& mom, std::size_t d, const Tolerances& tol) {
        return gaussian_odd(as_moments(mom), d, tol);
      },
      py::arg("moments"), py::arg("d"), py::arg("tol") = Tolerances{});
  m.def(
      "even_rule_through",
      [](const std::vector<double>& mom, std::size_t d, double y, const Tolerances& tol) {
        return even_rule_through(as_moments(mom), d, y, tol);
      },
      py::arg("moments"), py::arg("d"), py::arg("y"), py::arg("tol") = Tolerances{});
  m.def(
      "even_rule_linear",
      [](const std::vector<double>& mom, std::size_t d, double y, const Tolerances& tol) {
        return nodes_to_floats(even_rule_linear(as_moments(mom), d, y, tol).nodes);
      },
      py::arg("moments"), py::arg("d"), py::arg("y"), py::arg("tol") = Tolerances{});
  m.def(
      "infinity_rule", [](const std::vector<double>& mom, std::size_t d, const Tolerances& tol) {
        return infinity_rule(as_moments(mom), d, tol);
      },
      py::arg("moments"), py::arg("d"), py::arg("tol") = Tolerances{});
  m.def(
      "f_infinity", [](const std::vector<double>& mom, std::size_t d) { return as_list(f_infinity(as_moments(mom), d)); },
      py::arg("moments"), py::arg("d"));
  m.def(
      "f_eval",
      [](const std::vector<double>& mom, std::size_t d, double x, double y) {
        return f_eval(EvenFamily::build(as_moments(mom), d), x, y);
      },
      py::arg("moments"), py::arg("d"), py::arg("x"), py::arg("y"));
  m.def(
      "weights_for_nodes",
      [](const std::vector<double>& mom, std::size_t degree, const std::vector<double>& nodes, const Tolerances& tol) {
        return weights_for_nodes(as_moments(mom), degree, floats_to_nodes(nodes), tol).weights;
      },
      py::arg("moments"), py::arg("degree"), py::arg("nodes"), py::arg("tol") = Tolerances{});
  m.def(
      "verify_rule", [](const std::vector<double>& mom, const QuadratureRule& rule, const Tolerances& tol) {
        return verify_rule(as_moments(mom), rule, tol);
      },
      py::arg("moments"), py::arg("rule"), py::arg("tol") = Tolerances{});
  m.def(
      "multinode_determinant",
      [](const std::vector<double>& mom, std::size_t n, std::size_t l, const std::vector<double>& fixed) {
        return as_list(multinode_determinant(MultiNodeProblem(n, l, fixed, as_moments(mom))));
      },
      py::arg("moments"), py::arg("n"), py::arg("l"), py::arg("fixed"));
  m.def(
      "multinode_solve",
      [](const std::vector<double>& mom, std::size_t n, std::size_t l, const std::vector<double>& fixed,
         const Tolerances& tol) { return multinode_solve(MultiNodeProblem(n, l, fixed, as_moments(mom)), tol); },
      py::arg("moments"), py::arg("n"), py::arg("l"), py::arg("fixed"), py::arg("tol") = Tolerances{});
  m.def(
      "parse_rule",
      [](const std::string& text) {
        std::istringstream in(text);
        return io::read_rule(in);
      },
      py::arg("text"));
}
