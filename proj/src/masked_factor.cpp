#include "qpdas/masked_factor.hpp"

#include "qpdas/errors.hpp"

#include <cmath>
#include <string>

namespace qpdas {

namespace {

void
check_square(const Matrix& G, const WorkingSet& W, const char* where)
{
  if (G.rows() != G.cols())
    throw InvalidInput(std::string(where) + ": matrix is not square");
  if (G.rows() != W.dimension())
    throw InvalidInput(std::string(where) + ": working set has dimension " +
                       std::to_string(W.dimension()) + ", matrix has " +
                       std::to_string(G.rows()));
}

} // namespace

Matrix
build_masked(const Matrix& G, const WorkingSet& W)
{
  check_square(G, W, "build_masked");
  Matrix out = G;
  for (Index i : W) {
    out.row(i).setZero();
    out.col(i).setZero();
    out(i, i) = 1.0;
  }
  return out;
}

Vector
mask_vector(const Vector& c, const WorkingSet& W)
{
  if (c.size() != W.dimension())
    throw InvalidInput("mask_vector: length mismatch");
  Vector out = c;
  for (Index i : W)
    out(i) = 0.0;
  return out;
}

Vector
lambda_from_direction(const Matrix& G,
                      const Vector& p,
                      const Vector& c,
                      const WorkingSet& W)
{
  check_square(G, W, "lambda_from_direction");
  if (p.size() != G.rows() || c.size() != G.rows())
    throw InvalidInput("lambda_from_direction: length mismatch");
  Vector lambda(W.size());
  Index j = 0;
  for (Index i : W)
    lambda(j++) = -G.row(i).dot(p) - c(i);
  return lambda;
}

void
cholesky_rank1_update(Eigen::Ref<Matrix> L, Eigen::Ref<Vector> v)
{
  const Index n = L.rows();
  for (Index k = 0; k < n; ++k) {
    const double lkk = L(k, k);
    const double r = std::hypot(lkk, v(k));
    const double c = r / lkk;
    const double s = v(k) / lkk;
    L(k, k) = r;
    const Index t = n - k - 1;
    if (t == 0)
      break;
    auto col = L.col(k).tail(t);
    auto rest = v.tail(t);
    col = (col + s * rest) / c;
    rest = c * rest - s * col;
  }
}

void
cholesky_rank1_downdate(Eigen::Ref<Matrix> L,
                        Eigen::Ref<Vector> v,
                        double threshold)
{
  const Index n = L.rows();
  for (Index k = 0; k < n; ++k) {
    const double lkk = L(k, k);
    const double r2 = (lkk - v(k)) * (lkk + v(k));
    if (!(r2 > threshold))
      throw NumericalBreakdown("cholesky downdate: pivot " +
                                 std::to_string(r2) + " at row " +
                                 std::to_string(k),
                               r2);
    const double r = std::sqrt(r2);
    const double c = r / lkk;
    const double s = v(k) / lkk;
    L(k, k) = r;
    const Index t = n - k - 1;
    if (t == 0)
      break;
    auto col = L.col(k).tail(t);
    auto rest = v.tail(t);
    col = (col - s * rest) / c;
    rest = c * rest - s * col;
  }
}

MaskedFactor::MaskedFactor(Matrix G, WorkingSet mask, double epsilon)
  : base_(std::move(G))
  , mask_(std::move(mask))
  , epsilon_(epsilon)
{
  check_square(base_, mask_, "MaskedFactor");
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
    throw InvalidInput("MaskedFactor: epsilon must be positive and finite");
  if (!base_.allFinite())
    throw InvalidInput("MaskedFactor: matrix has non-finite entries");
  refactorize();
}

double
MaskedFactor::breakdown_threshold() const
{
  return 1e-12 * (1.0 + epsilon_ * static_cast<double>(dimension()));
}

void
MaskedFactor::refactorize()
{
  Matrix shifted = build_masked(base_, mask_);
  shifted.diagonal().array() += epsilon_;
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw NumericalBreakdown("MaskedFactor: Cholesky of Gbar + eps I failed",
                             0.0);
  L_ = llt.matrixL();
  valid_ = true;
}

void
MaskedFactor::add_index(Index i)
{
  if (!mask_.in_inequality_range(i) || mask_.contains(i))
    throw PreconditionError("add_index: index " + std::to_string(i) +
                            " cannot be masked");
  if (!valid_)
    refactorize();
  const Index t = dimension() - i - 1;
  Vector v = L_.col(i).tail(t);
  L_.row(i).head(i).setZero();
  L_.col(i).tail(t).setZero();
  L_(i, i) = std::sqrt(1.0 + epsilon_);
  mask_.insert(i);
  if (t > 0)
    cholesky_rank1_update(L_.bottomRightCorner(t, t), v);
}

void
MaskedFactor::remove_index(Index i)
{
  if (!mask_.contains(i))
    throw PreconditionError("remove_index: index " + std::to_string(i) +
                            " is not masked");
  mask_.erase(i);
  if (!valid_) {
    refactorize();
    return;
  }
  const Index n = dimension();
  const Index t = n - i - 1;

  // Column i of the new Gbar + eps I.
  Vector g = base_.col(i);
  for (Index j : mask_)
    g(j) = 0.0;
  g(i) += epsilon_;

  Vector l21 = L_.topLeftCorner(i, i).triangularView<Eigen::Lower>().solve(
    g.head(i));
  const double d = g(i) - l21.squaredNorm();
  if (!(d > breakdown_threshold())) {
    valid_ = false;
    throw NumericalBreakdown("remove_index: pivot " + std::to_string(d) +
                               " at index " + std::to_string(i),
                             d);
  }
  const double l22 = std::sqrt(d);
  Vector l32 = (g.tail(t) - L_.block(i + 1, 0, t, i) * l21) / l22;

  L_.row(i).head(i) = l21.transpose();
  L_(i, i) = l22;
  L_.col(i).tail(t) = l32;
  if (t > 0) {
    try {
      cholesky_rank1_downdate(
        L_.bottomRightCorner(t, t), l32, breakdown_threshold());
    } catch (const NumericalBreakdown&) {
      valid_ = false;
      throw;
    }
  }
}

Vector
MaskedFactor::solve(const Vector& rhs) const
{
  if (rhs.size() != dimension())
    throw InvalidInput("MaskedFactor::solve: length mismatch");
  if (!valid_)
    throw PreconditionError("MaskedFactor::solve: factor needs refactorize()");
  Vector x = L_.triangularView<Eigen::Lower>().solve(rhs);
  L_.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Vector
MaskedFactor::masked_product(const Vector& x) const
{
  if (x.size() != dimension())
    throw InvalidInput("MaskedFactor::masked_product: length mismatch");
  Vector free = x;
  for (Index i : mask_)
    free(i) = 0.0;
  Vector y = base_.selfadjointView<Eigen::Lower>() * free;
  for (Index i : mask_)
    y(i) = x(i);
  return y;
}

Matrix
MaskedFactor::reconstruct() const
{
  return L_ * L_.transpose();
}

double
MaskedFactor::consistency_error() const
{
  Matrix target = build_masked(base_, mask_);
  target.diagonal().array() += epsilon_;
  return (reconstruct() - target).norm() / (1.0 + base_.norm());
}

} // namespace qpdas
