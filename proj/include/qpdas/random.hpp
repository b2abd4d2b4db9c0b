#ifndef QPDAS_RANDOM_HPP
#define QPDAS_RANDOM_HPP

#include "qpdas/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qpdas {

/**
 * Seeded generator with platform-independent output.
 *
 * std::mt19937_64 has a fully specified output sequence, but the standard
 * distributions do not, so the conversions to uniform doubles (top 53 bits)
 * and normals (Box-Muller, both values used) are done here.
 */
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {
  }

  /// Uniform on [0, 1).
  double uniform()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
      u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n)
  {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  Matrix normal_matrix(Index rows, Index cols)
  {
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        M(i, j) = normal();
    return M;
  }

  Vector normal_vector(Index n)
  {
    Vector v(n);
    for (Index i = 0; i < n; ++i)
      v(i) = normal();
    return v;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace qpdas

#endif // QPDAS_RANDOM_HPP
