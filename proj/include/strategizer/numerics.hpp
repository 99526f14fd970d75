#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>

namespace strategizer {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using Index = Eigen::Index;

// ln(sum_i exp(z_i)), evaluated with the maximum factored out so that
// arguments of any magnitude stay finite.
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  if (z.size() == 0) return -std::numeric_limits<Scalar>::infinity();
  const Scalar shift = z.maxCoeff();
  return shift + std::log((z.array() - shift).exp().sum());
}

// exp(z_i) / sum_j exp(z_j), max-subtracted. Every entry is finite and the
// largest one is at least 1/size.
template <typename Derived>
VectorX<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  VectorX<Scalar> w = (z.array() - z.maxCoeff()).exp().matrix();
  return w / w.sum();
}

// Variance of the values u under the distribution softmax(z).
template <typename DerivedZ, typename DerivedU>
typename DerivedZ::Scalar softmax_variance(const Eigen::MatrixBase<DerivedZ>& z,
                                           const Eigen::MatrixBase<DerivedU>& u) {
  const auto p = softmax(z);
  const auto mean = p.dot(u);
  return p.dot((u.array() - mean).square().matrix());
}

// Sum of x in index order. Used wherever bit-reproducible accumulation is
// part of the contract.
template <typename Derived>
typename Derived::Scalar ordered_sum(const Eigen::MatrixBase<Derived>& x) {
  typename Derived::Scalar acc(0);
  for (Index i = 0; i < x.size(); ++i) acc += x(i);
  return acc;
}

}  // namespace strategizer
