#include "qpdas/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qpdas {

using nlohmann::json;

namespace {

json
vector_json(const Vector& v)
{
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i)
    out.push_back(v(i));
  return out;
}

json
matrix_json(const Matrix& M)
{
  json out = json::array();
  for (Index i = 0; i < M.rows(); ++i)
    out.push_back(vector_json(M.row(i).transpose()));
  return out;
}

double
number_at(const json& v, const std::string& where)
{
  if (!v.is_number())
    throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw ParseError(where + ": non-finite value");
  return x;
}

Vector
parse_vector(const json& doc, const char* field, bool required)
{
  if (!doc.contains(field)) {
    if (required)
      throw ParseError(std::string("field '") + field + "': missing");
    return Vector(0);
  }
  const json& arr = doc.at(field);
  if (!arr.is_array())
    throw ParseError(std::string("field '") + field + "': expected an array");
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v(static_cast<Index>(i)) = number_at(arr[i],
                                         std::string("field '") + field +
                                           "' entry " + std::to_string(i));
  return v;
}

// Row-major nested array with `cols` columns; `cols` < 0 accepts the width
// of the first row.
Matrix
parse_matrix(const json& doc, const char* field, Index cols)
{
  const std::string name = std::string("field '") + field + "'";
  if (!doc.contains(field))
    return Matrix(0, cols < 0 ? 0 : cols);
  const json& arr = doc.at(field);
  if (!arr.is_array())
    throw ParseError(name + ": expected an array of rows");
  const auto rows = static_cast<Index>(arr.size());
  if (rows == 0)
    return Matrix(0, cols < 0 ? 0 : cols);
  if (cols < 0) {
    if (!arr[0].is_array())
      throw ParseError(name + " row 0: expected an array");
    cols = static_cast<Index>(arr[0].size());
  }
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = arr[static_cast<std::size_t>(i)];
    const std::string where = name + " row " + std::to_string(i);
    if (!row.is_array())
      throw ParseError(where + ": expected an array");
    if (static_cast<Index>(row.size()) != cols)
      throw ParseError(where + ": expected " + std::to_string(cols) +
                       " entries, got " + std::to_string(row.size()));
    for (Index j = 0; j < cols; ++j)
      M(i, j) = number_at(row[static_cast<std::size_t>(j)],
                          where + " column " + std::to_string(j));
  }
  return M;
}

} // namespace

json
problem_to_json(const PrimalQP& qp)
{
  json doc;
  doc["schema_version"] = kProblemSchema;
  doc["identity_P"] = qp.identity_P;
  if (!qp.identity_P)
    doc["P"] = matrix_json(qp.P);
  doc["q"] = vector_json(qp.q);
  doc["A"] = matrix_json(qp.A);
  doc["b"] = vector_json(qp.b);
  doc["C"] = matrix_json(qp.C);
  doc["d"] = vector_json(qp.d);
  return doc;
}

PrimalQP
problem_from_json(const json& doc)
{
  if (!doc.is_object())
    throw ParseError("document: expected an object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_string())
    throw ParseError("field 'schema_version': missing");
  if (doc["schema_version"].get<std::string>() != kProblemSchema)
    throw ParseError("field 'schema_version': unsupported version '" +
                     doc["schema_version"].get<std::string>() + "'");

  PrimalQP qp;
  if (doc.contains("identity_P")) {
    if (!doc["identity_P"].is_boolean())
      throw ParseError("field 'identity_P': expected a boolean");
    qp.identity_P = doc["identity_P"].get<bool>();
  }
  qp.q = parse_vector(doc, "q", true);
  const Index n = qp.q.size();
  if (n == 0)
    throw ParseError("field 'q': must not be empty");

  if (qp.identity_P) {
    qp.P = parse_matrix(doc, "P", n);
    if (qp.P.rows() != 0 && qp.P.rows() != n)
      throw ParseError("field 'P': expected " + std::to_string(n) + " rows");
  } else {
    if (!doc.contains("P"))
      throw ParseError("field 'P': missing (set identity_P for P = I)");
    qp.P = parse_matrix(doc, "P", n);
    if (qp.P.rows() != n)
      throw ParseError("field 'P': expected " + std::to_string(n) +
                       " rows, got " + std::to_string(qp.P.rows()));
  }
  qp.A = parse_matrix(doc, "A", n);
  qp.b = parse_vector(doc, "b", false);
  if (qp.b.size() != qp.A.rows())
    throw ParseError("field 'b': expected " + std::to_string(qp.A.rows()) +
                     " entries (rows of A), got " +
                     std::to_string(qp.b.size()));
  qp.C = parse_matrix(doc, "C", n);
  qp.d = parse_vector(doc, "d", false);
  if (qp.d.size() != qp.C.rows())
    throw ParseError("field 'd': expected " + std::to_string(qp.C.rows()) +
                     " entries (rows of C), got " +
                     std::to_string(qp.d.size()));
  try {
    qp.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("field 'P': ") + e.what());
  }
  return qp;
}

PrimalQP
read_problem(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  return problem_from_json(doc);
}

void
write_problem(const PrimalQP& qp, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write '" + path + "'");
  // One matrix row per line keeps files diffable.
  const json doc = problem_to_json(qp);
  out << "{\n";
  bool first = true;
  for (const char* key :
       { "schema_version", "identity_P", "P", "q", "A", "b", "C", "d" }) {
    if (!doc.contains(key))
      continue;
    if (!first)
      out << ",\n";
    first = false;
    out << "  \"" << key << "\": ";
    const json& v = doc[key];
    if (v.is_array() && !v.empty() && v[0].is_array()) {
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i)
        out << "    " << v[i].dump() << (i + 1 < v.size() ? ",\n" : "\n");
      out << "  ]";
    } else {
      out << v.dump();
    }
  }
  out << "\n}\n";
}

json
report_to_json(const SolveResult& result)
{
  const SolveReport& d = result.dual;
  json doc;
  doc["schema_version"] = kReportSchema;
  doc["status"] = to_string(d.status);
  if (!d.diagnostic.empty())
    doc["diagnostic"] = d.diagnostic;
  doc["dual_objective"] = d.objective;
  doc["outer_iters"] = d.outer_iters;
  doc["working_set_size"] = d.working_set.size();
  // Free inequality multipliers, i.e. the constraints treated as active.
  doc["active_inequalities"] = d.working_set.m_in() - d.working_set.size();
  doc["descent_directions"] = d.descent_directions;
  doc["refactorizations"] = d.refactorizations;
  doc["refine_iter_stats"] = { { "subproblems", d.subproblems },
                               { "min", d.refine_iters_min },
                               { "max", d.refine_iters_max },
                               { "mean", d.refine_iters_mean } };
  doc["timings"] = { { "build_dual", result.timings.build_dual },
                     { "solve_dual", result.timings.solve_dual },
                     { "recover_primal", result.timings.recover_primal },
                     { "dual_only", result.timings.dual_only() },
                     { "total", result.timings.total() } };
  doc["dual_residuals"] = { { "stationarity", d.residuals.stationarity },
                            { "dual_feasibility", d.residuals.dual_feasibility },
                            { "multiplier_sign", d.residuals.multiplier_sign },
                            { "complementarity", d.residuals.complementarity } };

  const Index me = d.working_set.m_eq();
  doc["mu_eq"] = vector_json(d.mu_star.head(me));
  doc["mu_in"] = vector_json(d.mu_star.tail(d.mu_star.size() - me));

  if (result.primal) {
    const PrimalSolution& p = *result.primal;
    doc["objective"] = p.objective;
    doc["x"] = vector_json(p.x);
    doc["kkt_residuals"] = {
      { "stationarity", p.stationarity_residual },
      { "primal_feasibility",
        std::max(p.primal_residuals.eq_violation,
                 p.primal_residuals.ineq_violation) },
      { "complementarity", p.complementarity },
      { "dual_feasibility", d.residuals.dual_feasibility },
    };
  } else {
    // The dual gradient is [b; d] - [A; C] x, so the dual residuals are the
    // primal ones expressed without x.
    doc["objective"] = nullptr;
    doc["x"] = nullptr;
    doc["kkt_residuals"] = {
      { "stationarity", d.residuals.stationarity },
      { "primal_feasibility",
        std::max(d.residuals.stationarity, d.residuals.multiplier_sign) },
      { "complementarity", d.residuals.complementarity },
      { "dual_feasibility", d.residuals.dual_feasibility },
    };
  }
  return doc;
}

} // namespace qpdas
