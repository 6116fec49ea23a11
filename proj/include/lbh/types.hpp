#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace lbh {

/// Largest hypersurface dimension m handled by the fixed-capacity types.
inline constexpr int kMaxChartDim = 4;
/// Ambient dimension is m + 1.
inline constexpr int kMaxAmbientDim = kMaxChartDim + 1;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAmbientDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxAmbientDim,
                          kMaxAmbientDim>;

/// Point outside the coordinate chart of the ambient space.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank-deficient differential or failed normal construction.
class DegenerateImmersion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil would read outside the lattice.
class StencilError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters passed to a builder or numerical routine.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Determinant of a square matrix up to 5x5, closed form through 4x4.
double small_det(const Mat& a);
/// Inverse through the fixed-size closed forms for n <= 4.
Mat small_inverse(const Mat& a);

}  // namespace lbh
