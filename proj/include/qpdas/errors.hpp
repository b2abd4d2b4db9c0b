#ifndef QPDAS_ERRORS_HPP
#define QPDAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpdas {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, non-finite entries, bad tolerances.
class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// The primal problem violates an assumption, e.g. P is not positive definite.
class InvalidProblem : public Error
{
public:
  using Error::Error;
};

/// A call was made on a state that does not satisfy its precondition, such
/// as masking an index that is already in the working set.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// A Cholesky downdate lost positivity. The factor must be rebuilt with
/// MaskedFactor::refactorize() before it is used again.
class NumericalBreakdown : public Error
{
public:
  NumericalBreakdown(const std::string& what, double pivot)
    : Error(what)
    , pivot(pivot)
  {
  }
  double pivot;
};

/// Iterative refinement ran out of iterations before it could classify the
/// subproblem.
class NoConvergence : public Error
{
public:
  NoConvergence(const std::string& what,
                int iters,
                double residual,
                double step_ratio)
    : Error(what)
    , iters(iters)
    , residual(residual)
    , step_ratio(step_ratio)
  {
  }
  int iters;
  double residual;
  double step_ratio;
};

/// A zero-curvature descent direction has no blocking constraint, so the
/// dual is unbounded below and the primal is infeasible.
class UnboundedDual : public Error
{
public:
  using Error::Error;
};

} // namespace qpdas

#endif // QPDAS_ERRORS_HPP
