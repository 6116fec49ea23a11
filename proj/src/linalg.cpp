#include "lbh/types.hpp"

#include <Eigen/LU>

namespace lbh {
namespace {

template <int N>
Eigen::Matrix<double, N, N> fixed(const Mat& a) {
  return a.template topLeftCorner<N, N>();
}

}  // namespace

double small_det(const Mat& a) {
  switch (a.rows()) {
    case 1: return a(0, 0);
    case 2: return fixed<2>(a).determinant();
    case 3: return fixed<3>(a).determinant();
    case 4: return fixed<4>(a).determinant();
    default: return a.determinant();
  }
}

Mat small_inverse(const Mat& a) {
  switch (a.rows()) {
    case 1: return Mat::Constant(1, 1, 1.0 / a(0, 0));
    case 2: return fixed<2>(a).inverse();
    case 3: return fixed<3>(a).inverse();
    case 4: return fixed<4>(a).inverse();
    default: return a.inverse();
  }
}

}  // namespace lbh
