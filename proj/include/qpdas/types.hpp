#ifndef QPDAS_TYPES_HPP
#define QPDAS_TYPES_HPP

#include <Eigen/Dense>

#include <cstddef>

namespace qpdas {

/// Dense column-major storage. Serialized problem files use row-major
/// nested arrays; see problem_io.hpp.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Zero-based position into the dual variable vector.
using Index = Eigen::Index;

} // namespace qpdas

#endif // QPDAS_TYPES_HPP
