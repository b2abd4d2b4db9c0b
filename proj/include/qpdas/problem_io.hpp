#ifndef QPDAS_PROBLEM_IO_HPP
#define QPDAS_PROBLEM_IO_HPP

#include "qpdas/errors.hpp"
#include "qpdas/solver.hpp"
#include "qpdas/transform.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace qpdas {

inline constexpr const char* kProblemSchema = "qpdas-problem/1";
inline constexpr const char* kReportSchema = "qpdas-report/1";

/// Problem file could not be parsed; the message names the offending field.
class ParseError : public Error
{
public:
  using Error::Error;
};

/**
 * Problem document:
 *
 *   { "schema_version": "qpdas-problem/1",
 *     "P": [[...], ...], "q": [...],
 *     "A": [[...], ...], "b": [...],
 *     "C": [[...], ...], "d": [...],
 *     "identity_P": false }
 *
 * Matrices are row-major nested arrays. A/b and C/d may be empty or
 * omitted; P is omitted when identity_P is true.
 */
nlohmann::json
problem_to_json(const PrimalQP& qp);

PrimalQP
problem_from_json(const nlohmann::json& doc);

PrimalQP
read_problem(const std::string& path);

void
write_problem(const PrimalQP& qp, const std::string& path);

/// Report document with status, solution, iteration and refinement
/// statistics, phase timings and KKT residuals.
nlohmann::json
report_to_json(const SolveResult& result);

} // namespace qpdas

#endif // QPDAS_PROBLEM_IO_HPP
