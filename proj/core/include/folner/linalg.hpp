#pragma once

#include <vector>

#include <Eigen/Core>

#include "folner/operator_spec.hpp"

namespace folner::linalg {

// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is
// referenced. Dispatches to the real-symmetric LAPACK path when the matrix
// has no imaginary part.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a);

// Singular values, descending. Empty input yields an empty list.
std::vector<double> singular_values(const Eigen::MatrixXcd& a);

struct Eigenpair {
  double value;
  Eigen::VectorXcd vector;
};

// Largest eigenpair of a Hermitian matrix (LAPACK zheevr, index range n..n).
Eigenpair largest_hermitian_eigenpair(const Eigen::MatrixXcd& a, double abstol = 1e-10);

}  // namespace folner::linalg
