#include "qpdas/errors.hpp"
#include "qpdas/generators.hpp"
#include "qpdas/masked_factor.hpp"
#include "qpdas/oracle.hpp"
#include "qpdas/problem_io.hpp"
#include "qpdas/refine.hpp"
#include "qpdas/solver.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace qpdas;

namespace {

Matrix
rows_or_empty(const std::optional<Matrix>& M, Index n)
{
  return M ? *M : Matrix(0, n);
}

Vector
vector_or_empty(const std::optional<Vector>& v)
{
  return v ? *v : Vector(0);
}

PrimalQP
make_problem(const std::optional<Matrix>& P,
             const Vector& q,
             const std::optional<Matrix>& A,
             const std::optional<Vector>& b,
             const std::optional<Matrix>& C,
             const std::optional<Vector>& d)
{
  PrimalQP qp;
  const Index n = q.size();
  qp.identity_P = !P.has_value();
  qp.P = P ? *P : Matrix(0, 0);
  qp.q = q;
  qp.A = rows_or_empty(A, n);
  qp.b = vector_or_empty(b);
  qp.C = rows_or_empty(C, n);
  qp.d = vector_or_empty(d);
  qp.validate();
  return qp;
}

SolverConfig
make_config(bool smartstart, double epsilon, int max_iters)
{
  SolverConfig cfg;
  cfg.smartstart = smartstart;
  cfg.refine.epsilon = epsilon;
  cfg.max_outer = max_iters;
  return cfg;
}

std::string
report_string(const SolveResult& r)
{
  return report_to_json(r).dump();
}

} // namespace

PYBIND11_MODULE(_qpdas, m)
{
  m.doc() = "Dual active-set QP solver (compiled core)";

  auto base = py::register_exception<Error>(m, "QpdasError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<InvalidProblem>(m, "InvalidProblem", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NumericalBreakdown>(m, "NumericalBreakdown", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<UnboundedDual>(m, "UnboundedDual", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.attr("DEFAULT_EPSILON") = kDefaultEpsilon;

  py::class_<PrimalQP>(m, "PrimalQP")
    .def(py::init(&make_problem),
         py::arg("P").none(true),
         py::arg("q"),
         py::arg("A") = py::none(),
         py::arg("b") = py::none(),
         py::arg("C") = py::none(),
         py::arg("d") = py::none())
    .def_readonly("P", &PrimalQP::P)
    .def_readonly("q", &PrimalQP::q)
    .def_readonly("A", &PrimalQP::A)
    .def_readonly("b", &PrimalQP::b)
    .def_readonly("C", &PrimalQP::C)
    .def_readonly("d", &PrimalQP::d)
    .def_readonly("identity_P", &PrimalQP::identity_P)
    .def_property_readonly("n", &PrimalQP::n)
    .def_property_readonly("m_eq", &PrimalQP::m_eq)
    .def_property_readonly("m_in", &PrimalQP::m_in)
    .def("objective", &PrimalQP::objective, py::arg("x"));

  m.def(
    "_solve",
    [](const PrimalQP& qp, bool smartstart, double epsilon, int max_iters,
       bool dual_only) {
      SolveResult r;
      {
        py::gil_scoped_release release;
        r = solve(qp, make_config(smartstart, epsilon, max_iters), dual_only);
      }
      return report_string(r);
    },
    py::arg("problem"),
    py::arg("smartstart") = true,
    py::arg("epsilon") = kDefaultEpsilon,
    py::arg("max_iters") = 0,
    py::arg("dual_only") = false);

  m.def(
    "build_dual",
    [](const PrimalQP& qp) {
      DualProblem dp = build_dual(qp);
      return py::make_tuple(dp.dual.G, dp.dual.h, dp.dual.m_eq, dp.dual.m_in);
    },
    py::arg("problem"),
    "Returns (G, h, m_eq, m_in) of the dual problem.");

  m.def(
    "_solve_dual",
    [](const Matrix& G, const Vector& h, Index m_eq, bool smartstart,
       double epsilon, int max_iters) {
      DualQP qp{ G, h, m_eq, h.size() - m_eq };
      const SolveReport r =
        solve_dual(qp, make_config(smartstart, epsilon, max_iters));
      py::dict out;
      out["mu"] = r.mu_star;
      out["working_set"] = r.working_set.indices();
      out["status"] = to_string(r.status);
      out["outer_iters"] = r.outer_iters;
      out["descent_directions"] = r.descent_directions;
      out["refine_iters"] =
        py::make_tuple(r.refine_iters_min, r.refine_iters_max);
      out["kkt_residual"] = r.kkt_residual;
      out["objective"] = r.objective;
      out["diagnostic"] = r.diagnostic;
      return out;
    },
    py::arg("G"),
    py::arg("h"),
    py::arg("m_eq") = 0,
    py::arg("smartstart") = true,
    py::arg("epsilon") = kDefaultEpsilon,
    py::arg("max_iters") = 0);

  m.def(
    "mpc_problem",
    [](Index horizon, std::optional<Vector> x0) {
      MpcSpec spec = MpcSpec::afti16(horizon);
      if (x0)
        spec.x0 = *x0;
      return build_mpc(spec);
    },
    py::arg("horizon") = 30,
    py::arg("x0") = py::none());

  m.def(
    "polytope_problem",
    [](Index n, Index m_, std::uint64_t seed, double fraction) {
      return build_polytope(PolytopeSpec{ n, m_, seed, fraction });
    },
    py::arg("n") = 1000,
    py::arg("m") = 50,
    py::arg("seed") = 1,
    py::arg("active_fraction") = 0.5);

  m.def("random_problem", &random_qp, py::arg("seed"), py::arg("n"),
        py::arg("m_eq"), py::arg("m_in"), py::arg("degenerate") = false);

  m.def(
    "oracle_solve",
    [](const PrimalQP& qp) {
      const OracleResult r = enumerate_solve(qp);
      py::dict out;
      out["feasible"] = r.feasible;
      out["certified"] = r.certified;
      out["x"] = r.x;
      out["mu_eq"] = r.mu_eq;
      out["mu_in"] = r.mu_in;
      out["active"] = r.active;
      out["objective"] = r.objective;
      return out;
    },
    py::arg("problem"));

  m.def("read_problem", &read_problem, py::arg("path"));
  m.def("write_problem", &write_problem, py::arg("problem"), py::arg("path"));

  py::class_<MaskedFactor>(m, "MaskedFactor")
    .def(py::init([](const Matrix& G, const std::vector<Index>& mask,
                     double epsilon) {
           WorkingSet W(0, G.rows());
           for (Index i : mask)
             W.insert(i);
           return MaskedFactor(G, W, epsilon);
         }),
         py::arg("G"),
         py::arg("mask") = std::vector<Index>{},
         py::arg("epsilon") = kDefaultEpsilon)
    .def("add_index", &MaskedFactor::add_index, py::arg("i"))
    .def("remove_index", &MaskedFactor::remove_index, py::arg("i"))
    .def("refactorize", &MaskedFactor::refactorize)
    .def("solve", &MaskedFactor::solve, py::arg("rhs"))
    .def("consistency_error", &MaskedFactor::consistency_error)
    .def_property_readonly("factor", &MaskedFactor::factor)
    .def_property_readonly("mask",
                           [](const MaskedFactor& f) {
                             return f.mask().indices();
                           })
    .def_property_readonly("epsilon", &MaskedFactor::epsilon);

  m.def("build_masked", [](const Matrix& G, const std::vector<Index>& mask) {
    WorkingSet W(0, G.rows());
    for (Index i : mask)
      W.insert(i);
    return build_masked(G, W);
  }, py::arg("G"), py::arg("mask"));

  m.def(
    "refine",
    [](const MaskedFactor& f, const Vector& c_bar) {
      const RefineOutcome r = refine_solve(f, c_bar, RefineConfig{});
      return py::make_tuple(r.kind == RefineKind::Solution ? "Solution"
                                                           : "DescentDirection",
                            r.p, r.iters);
    },
    py::arg("factor"),
    py::arg("c_bar"),
    "Returns (kind, p, iterations).");
}
