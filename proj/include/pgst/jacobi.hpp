#pragma once

#include <Eigen/Dense>

namespace pgst {

struct JacobiResult {
  Eigen::VectorXd values;   // unsorted, values(i) pairs with vectors.col(i)
  Eigen::MatrixXd vectors;  // orthonormal columns
  int sweeps = 0;
  double off_norm = 0.0;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
/// Sweeps until the off-diagonal Frobenius norm drops below
/// tolerance * max(1, ||A||_F). Throws Error(kNotSymmetric) on asymmetric
/// input and Error(kNormalization) if 100 sweeps do not converge.
JacobiResult jacobi_eigen(const Eigen::MatrixXd& a, double tolerance = 1e-12);

}  // namespace pgst
