#pragma once

// Exact dense linear algebra over a field scalar (Rational in practice).
// Pivoting only looks for nonzero entries; no magnitude heuristics are needed
// because nothing is rounded.

#include "moment_strata/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace moment_strata::linalg {

/// Reduced row echelon form in place; returns pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> rref_in_place(Matrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  Matrix<typename Derived::Scalar> m = a;
  return static_cast<Eigen::Index>(rref_in_place(m).size());
}

/// Unique solution of a square system, or nullopt when singular.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  auto pivots = rref_in_place(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  return Vector<Scalar>(aug.col(n));
}

/// Basis of {x : a x = 0}, one column per free variable.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = a;
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);
  }
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Eigen::Index f = free[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(f, col) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], col) = -m(static_cast<Eigen::Index>(r), f);
    }
  }
  return basis;
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = a;
  const Eigen::Index n = m.rows();
  Scalar det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Scalar f = m(i, col) / m(col, col);
      for (Eigen::Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Sylvester's criterion for a symmetric matrix.
template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index k = 1; k <= a.rows(); ++k) {
    if (determinant(a.topLeftCorner(k, k)) <= 0) return false;
  }
  return true;
}

}  // namespace moment_strata::linalg
